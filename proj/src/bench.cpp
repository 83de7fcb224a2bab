#include "isovolc/bench.hpp"

#include "isovolc/dlog.hpp"
#include "isovolc/error.hpp"

#include <chrono>
#include <sstream>

namespace isovolc {

std::vector<BenchSpec> default_bench_grid() { return {{3, 6, 1}, {5, 6, 1}, {7, 6, 1}}; }

BenchSpec parse_bench_spec(const std::string& s)
{
    BenchSpec b;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> b.ell >> c1 >> b.h >> c2 >> b.r) || c1 != ':' || c2 != ':' || b.h == 0 || b.r == 0)
        raise(ErrorKind::BadInput, "grid entry must look like ell:h:r, got '" + s + "'");
    return b;
}

namespace {

struct CraterJ {
    long d0;
    const char* j;
};

// class number one, excluding j = 0 and 1728
const CraterJ kCrater[] = {
    {-7, "-3375"},           {-8, "8000"},
    {-11, "-32768"},         {-19, "-884736"},
    {-43, "-884736000"},     {-67, "-147197952000"},
    {-163, "-262537412640768000"},
};

Integer element_of_order(unsigned r, const Integer& ell)
{
    for (Integer g = 2; g < ell; ++g) {
        Integer c;
        mpz_powm(c.get_mpz_t(), g.get_mpz_t(), Integer((ell - 1) / r).get_mpz_t(), ell.get_mpz_t());
        if (mult_order(c, ell) == r) return c;
    }
    raise(ErrorKind::BadInput, "no element of that order mod ell");
}

}  // namespace

BenchFamily bench_family(const BenchSpec& spec, Rng& rng)
{
    const Integer ell = spec.ell;
    if (!is_probable_prime(ell) || ell < 3) raise(ErrorKind::BadInput, "bench needs an odd prime ell");
    if ((ell - 1) % spec.r != 0) raise(ErrorKind::BadInput, "r must divide ell - 1");
    const Integer lh = ipow(ell, spec.h);
    const Integer c = spec.r == 1 ? Integer(1) : element_of_order(spec.r, ell);
    for (auto& cj : kCrater) {
        if (kronecker(Integer(cj.d0), ell) == 0) continue;
        const Integer D = lh * lh * Integer(-cj.d0);
        for (long w = 1; w < 200000; ++w) {
            // t = 2 + ell^h w keeps the whole ell^h-torsion structure for r = 1
            Integer t = spec.r == 1 ? Integer(2 + lh * w) : Integer(2 * c + ell * w);
            Integer four_p = t * t + D;
            if (four_p % 4 != 0) continue;
            Integer p = four_p / 4;
            if (p <= 3 || !is_probable_prime(p) || t % p == 0) continue;
            Field F = make_field(p);
            FieldElem j = F->from_integer(parse_integer(cj.j));
            if (j.is_zero() || j == F->from_integer(1728)) continue;
            BenchFamily fam;
            fam.p = p;
            fam.t = t;
            fam.d0 = cj.d0;
            fam.crater = curve_from_j(F, j, t, rng);
            return fam;
        }
    }
    raise(ErrorKind::RandomnessExhausted, "no prime found for the bench family");
}

double BenchRow::ratio() const
{
    double pm = pairing.mul_per_step();
    return pm > 0 ? classical.mul_per_step() / pm : 0.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

BenchRow run_bench(const BenchSpec& spec, const ModPoly& mp, double modpoly_load_seconds, Rng& rng)
{
    BenchRow row;
    row.spec = spec;
    row.modpoly_load_seconds = modpoly_load_seconds;
    row.family = bench_family(spec, rng);
    const Integer ell = spec.ell;
    if (mp.ell() != spec.ell || mp.field()->order() != row.family.p)
        raise(ErrorKind::WrongLevel, "modular polynomial does not match the bench family");

    // setup: walk down with descending kernels
    Curve E = row.family.crater;
    for (;;) {
        DirectionReport rep = find_directions(E, ell, rng);
        if (rep.on_floor) break;
        WorkingCurve W = working_curve(E, ell, rng);
        SylowStructure s = sylow_structure(W.curve, ell, rng);
        rep = find_directions(W, s, ell, rng);
        E = step(W, rep.descending_sample->gen, ell, rng);
        ++row.floor_depth;
    }
    const Curve floor = E;
    const FieldElem crater_j = row.family.crater.j_invariant();

    // pairing ascent: one point of large order while n1 > n2, else Algorithms 1 and 2
    op_counter() = {};
    auto t0 = Clock::now();
    E = floor;
    for (unsigned i = 0; i < row.floor_depth; ++i) {
        WorkingCurve W = working_curve(E, ell, rng);
        std::optional<Point> K = unbalanced_up_kernel(W.curve, ell, rng);
        if (!K) {
            SylowStructure s = sylow_structure(W.curve, ell, rng);
            K = find_directions(W, s, ell, rng).up_or_horizontal.at(0).gen;
        }
        E = step(W, *K, ell, rng);
        ++row.pairing.steps;
    }
    row.pairing.seconds = since(t0);
    row.pairing.base_mul = op_counter().base_mul;
    row.pairing.inversions = op_counter().inversions;
    row.pairing.reached_crater = E.j_invariant() == crater_j;

    // classical ascent
    op_counter() = {};
    t0 = Clock::now();
    FieldElem j = floor.j_invariant();
    std::optional<FieldElem> prev;
    for (unsigned i = 0; i < row.floor_depth; ++i) {
        StepOutcome out = classical_step(j, prev, mp, rng);
        prev = j;
        j = out.targets.at(0);
        ++row.classical.steps;
    }
    row.classical.seconds = since(t0);
    row.classical.base_mul = op_counter().base_mul;
    row.classical.inversions = op_counter().inversions;
    row.classical.reached_crater = j == crater_j;
    return row;
}

}  // namespace isovolc
