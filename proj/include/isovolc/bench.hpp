#pragma once

#include "isovolc/volcano.hpp"

#include <string>
#include <vector>

namespace isovolc {

struct BenchSpec {
    unsigned ell = 3, h = 6, r = 1;
};
std::vector<BenchSpec> default_bench_grid();
BenchSpec parse_bench_spec(const std::string& s);  // "ell:h:r"

// Ordinary curve on the crater of a height-h ell-volcano whose ell-torsion becomes
// rational over the degree-r extension. CM by a class-number-one order.
struct BenchFamily {
    Integer p, t;
    long d0 = 0;
    Curve crater;
};
BenchFamily bench_family(const BenchSpec& spec, Rng& rng);

struct MethodCost {
    double seconds = 0;
    std::uint64_t base_mul = 0;
    std::uint64_t inversions = 0;
    unsigned steps = 0;
    bool reached_crater = false;
    double mul_per_step() const { return steps ? double(base_mul) / steps : 0.0; }
};

struct BenchRow {
    BenchSpec spec;
    BenchFamily family;
    unsigned floor_depth = 0;  // steps taken down during setup
    MethodCost pairing, classical;
    double modpoly_load_seconds = 0;
    double ratio() const;  // classical / pairing multiplications per step
};

// Setup descends to the floor with pairings; both methods then climb back to the crater.
BenchRow run_bench(const BenchSpec& spec, const ModPoly& mp, double modpoly_load_seconds, Rng& rng);

}  // namespace isovolc
