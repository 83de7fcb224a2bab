#pragma once

#include "isovolc/isogeny.hpp"
#include "isovolc/pairing.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace isovolc {

struct SylowStructure {
    unsigned n1 = 0, n2 = 0;
    Point P1, P2;  // P2 is O when n2 = 0
    Integer cofactor;
    unsigned n() const { return n1 + n2; }
};

SylowStructure sylow_structure(const Curve& E, const Integer& ell, Rng& rng);

// Shortcut for n1 > n2: a point of ell-order m with 2m > n gives the up/horizontal kernel
// without P2. Nothing after `tries` draws (always the case when n1 = n2).
std::optional<Point> unbalanced_up_kernel(const Curve& E, const Integer& ell, Rng& rng, int tries = 4);

// E or its twist, base-changed until ell-torsion is rational.
struct WorkingCurve {
    Curve base;   // the curve we are asked about
    Curve curve;  // where points live
    unsigned long r = 1;
    bool twisted = false;
};
WorkingCurve working_curve(const Curve& E, const Integer& ell, Rng& rng);
// like working_curve but with an explicit degree (q^r must be 1 mod ell)
WorkingCurve working_curve(const Curve& E, const Integer& ell, unsigned long r, bool twisted, Rng& rng);

enum class Direction { Ascending, Descending, Horizontal };
const char* direction_name(Direction d);

struct KernelChoice {
    Point gen;       // order ell on the working curve
    ProjRoot coord;  // in the basis (ell^{n2-1} Q1, ell^{n2-1} P2); (1:0) when n2 = 0
    Direction dir;
};

struct DirectionReport {
    PairingProfile profile;
    bool profile_computed = false;
    bool on_floor = false;  // floor of the volcano over the base field
    bool above_second_stability = false;
    int level_invariant = 0;         // n1 if n1 > n2, else count - 1
    int definitional_invariant = 0;  // n1 if n1 > n2, else count
    std::optional<int> level;        // depth below the crater
    unsigned height = 0;             // v_ell(g) over the base field
    unsigned working_height = 0;     // v_ell(g) over the working field
    unsigned n1 = 0, n2 = 0;
    std::vector<KernelChoice> up_or_horizontal;
    std::optional<KernelChoice> descending_sample;
    bool pairing_fallback = false;  // ell = 2 with height <= 1: pairings cannot classify
};

// Algorithm 2 on the working curve. With allow_abort, a trivial triple with n1 = n2 is
// reported through above_second_stability instead of thrown.
DirectionReport find_directions(const WorkingCurve& W, const SylowStructure& s, const Integer& ell, Rng& rng,
                                bool allow_abort = false);
DirectionReport find_directions(const Curve& E, const Integer& ell, Rng& rng, bool allow_abort = false);

// Kernel generator for the projective point (x:y) of E[ell] in the Sylow basis.
Point kernel_from_coord(const Curve& W, const SylowStructure& s, const ProjRoot& c, const Integer& ell);
// All ell + 1 kernels of the working curve (needs n2 >= 1), or the single rational one on the floor.
std::vector<KernelChoice> all_kernels(const WorkingCurve& W, const SylowStructure& s, const Integer& ell);
Direction classify_kernel(const DirectionReport& rep, const ProjRoot& c);

// Codomain over the base field with the base trace.
Curve step(const WorkingCurve& W, const Point& kernel, const Integer& ell, Rng& rng);
Curve step(const Curve& E, const Point& kernel, const Integer& ell, Rng& rng);

// ---- classical navigation ------------------------------------------------

struct StepOutcome {
    enum class Kind { Floor, FloorTwoHorizontal, Candidates } kind;
    std::vector<FieldElem> targets;
};

StepOutcome classical_step(const FieldElem& j, const std::optional<FieldElem>& prev_j, const ModPoly& mp, Rng& rng);
unsigned descend_depth(const FieldElem& j, const ModPoly& mp, Rng& rng);

// ---- walks and invariants ------------------------------------------------

std::vector<FieldElem> crater_walk(const Curve& E, const Integer& ell, Rng& rng,
                                   const std::function<void(const FieldElem&)>& on_j = {});

int level_invariant(const Curve& E, const Integer& ell, Rng& rng);

struct EndoStep {
    FieldElem j;
    int k;
};

struct EndoReport {
    Integer ell;
    unsigned v_ell_g = 0;  // height
    int level = 0;         // depth below crater
    int v_ell_f = 0;       // = level
    int index_valuation = 0;  // v_ell([End(E) : Z[pi]]) = v_ell_g - level
    int start_k = -1;
    bool used_classical = false;
    std::vector<EndoStep> path;
};

EndoReport endo_valuation(const Curve& E, const Integer& ell, const ModPoly* mp, Rng& rng);

Direction oracle_direction(const WorkingCurve& W, const Point& kernel, const Integer& ell, const ModPoly& mp, Rng& rng);

}  // namespace isovolc
