#include "isovolc/volcano.hpp"

#include "isovolc/error.hpp"

#include <algorithm>
#include <numeric>

namespace isovolc {

// ---- Algorithm 1 ---------------------------------------------------------

SylowStructure sylow_structure(const Curve& E, const Integer& ell, Rng& rng)
{
    const Integer& q = E.field()->order();
    if ((q - 1) % ell != 0) raise(ErrorKind::NeedExtension, "q is not 1 mod ell");
    Integer N = E.order();
    if (N % ell != 0) {
        if ((q + 1 + E.trace()) % ell == 0) raise(ErrorKind::NeedTwist, "ell divides the twist's order only");
        raise(ErrorKind::Degenerate, "ell does not divide #E");
    }
    const unsigned n = valuation(N, ell);
    SylowStructure s;
    s.cofactor = N / ipow(ell, n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Point P1 = E.mul(s.cofactor, E.random_point(rng));
        unsigned n1 = E.ell_order(P1, ell, n);
        if (n1 == n) {
            s.n1 = n;
            s.n2 = 0;
            s.P1 = P1;
            s.P2 = Point::infinity();
            return s;
        }
        Point P2 = E.mul(s.cofactor, E.random_point(rng));
        unsigned n2 = n - n1;
        if (n1 < n2) continue;
        Integer alpha;
        try {
            Point base = E.mul(ipow(ell, n2), P1);
            Point target = E.mul(ipow(ell, n2), P2);
            alpha = ec_dlog(E, base, target, ell, n1 - n2);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotInSubgroup) throw;
            continue;
        }
        P2 = E.sub(P2, E.mul(alpha, P1));
        Point a = E.mul(ipow(ell, n1 - 1), P1);
        Point b = E.mul(ipow(ell, n2 - 1), P2);
        if (b.inf || weil_pairing(E, a, b, ell, rng).is_one()) continue;
        s.n1 = n1;
        s.n2 = n2;
        s.P1 = P1;
        s.P2 = P2;
        return s;
    }
    raise(ErrorKind::RandomnessExhausted, "Sylow basis not found");
}

std::optional<Point> unbalanced_up_kernel(const Curve& E, const Integer& ell, Rng& rng, int tries)
{
    const unsigned n = valuation(E.order(), ell);
    if (n == 0) raise(ErrorKind::Degenerate, "ell does not divide #E");
    const Integer cof = E.order() / ipow(ell, n);
    for (int i = 0; i < tries; ++i) {
        Point P = E.mul(cof, E.random_point(rng));
        unsigned m = E.ell_order(P, ell, n);
        // n2 <= n - m < m, so ell^{m-1} P sits in the cyclic part
        if (2 * m > n) return E.mul(ipow(ell, m - 1), P);
    }
    return std::nullopt;
}

// ---- working field -------------------------------------------------------

WorkingCurve working_curve(const Curve& E, const Integer&, unsigned long r, bool twisted, Rng& rng)
{
    WorkingCurve W;
    W.base = E;
    W.r = r;
    W.twisted = twisted;
    if (twisted && r % 2 == 0) {
        // the base-field twist becomes E again; twist over the extension instead
        Curve Er = base_change(E, (unsigned)r, rng);
        W.curve = quadratic_twist(Er);
        W.curve.set_base(*Er.base());
        return W;
    }
    Curve src = twisted ? quadratic_twist(E) : E;
    W.curve = base_change(src, (unsigned)r, rng);
    return W;
}

WorkingCurve working_curve(const Curve& E, const Integer& ell, Rng& rng)
{
    const Integer& q = E.field()->order();
    if ((q - 1) % ell == 0 && E.order() % ell == 0) return working_curve(E, ell, 1, false, rng);
    TorsionDegree td = torsion_extension_degree(E, ell);
    return working_curve(E, ell, td.r, td.use_twist, rng);
}

const char* direction_name(Direction d)
{
    switch (d) {
    case Direction::Ascending: return "ascending";
    case Direction::Descending: return "descending";
    case Direction::Horizontal: return "horizontal";
    }
    return "?";
}

// ---- Algorithm 2 ---------------------------------------------------------

Point kernel_from_coord(const Curve& W, const SylowStructure& s, const ProjRoot& c, const Integer& ell)
{
    if (s.n2 == 0) {
        if (c.y != 0) raise(ErrorKind::BadInput, "cyclic structure has a single kernel");
        return W.mul(ipow(ell, s.n1 - 1), s.P1);
    }
    Point Q1 = W.mul(ipow(ell, s.n1 - s.n2), s.P1);
    Point comb = W.add(W.mul(c.x, Q1), W.mul(c.y, s.P2));
    return W.mul(ipow(ell, s.n2 - 1), comb);
}

namespace {

bool has_coord(const std::vector<KernelChoice>& ks, const ProjRoot& c)
{
    for (auto& k : ks)
        if (k.coord == c) return true;
    return false;
}

}  // namespace

DirectionReport find_directions(const WorkingCurve& W, const SylowStructure& s, const Integer& ell, Rng& rng,
                                bool allow_abort)
{
    DirectionReport rep;
    rep.n1 = s.n1;
    rep.n2 = s.n2;
    rep.height = W.base.disc().height(ell);
    rep.working_height = W.curve.disc().height(ell);
    rep.pairing_fallback = ell == 2 && rep.working_height <= 1;
    const Curve& E = W.curve;
    const int n = int(s.n());
    const int hw = int(rep.working_height);
    ProjRoot top{1, 0};

    if (s.n2 == 0) {
        // cyclic: Algorithm 1 already names the only rational kernel
        rep.level_invariant = rep.definitional_invariant = int(s.n1);
        rep.level = hw - n + int(s.n1);
        rep.on_floor = *rep.level == int(rep.height);
        Direction d = *rep.level == 0 ? Direction::Horizontal : Direction::Ascending;
        rep.up_or_horizontal.push_back({kernel_from_coord(E, s, top, ell), top, d});
        return rep;
    }

    rep.profile = pairing_profile(E, s.P1, s.P2, s.n1, s.n2, ell, rng);
    rep.profile_computed = true;
    if (s.n1 > s.n2) {
        rep.level_invariant = rep.definitional_invariant = int(s.n1);
    } else {
        if (rep.profile.trivial()) {
            rep.above_second_stability = true;
            if (!allow_abort) raise(ErrorKind::AboveSecondStability, "pairing triple is (1,1,1)");
            return rep;
        }
        rep.level_invariant = int(rep.profile.count) - 1;
        rep.definitional_invariant = int(rep.profile.count);
    }
    rep.level = hw - n + rep.definitional_invariant;
    rep.on_floor = *rep.level == int(rep.height);
    Direction d = *rep.level == 0 ? Direction::Horizontal : Direction::Ascending;
    if (s.n1 > s.n2) rep.up_or_horizontal.push_back({kernel_from_coord(E, s, top, ell), top, d});
    for (auto& c : rep.profile.roots)
        if (!has_coord(rep.up_or_horizontal, c)) rep.up_or_horizontal.push_back({kernel_from_coord(E, s, c, ell), c, d});
    if (!rep.on_floor) {
        for (Integer x = 0; x <= ell; ++x) {
            ProjRoot c = x < ell ? ProjRoot{x, 1} : top;
            if (has_coord(rep.up_or_horizontal, c)) continue;
            rep.descending_sample = KernelChoice{kernel_from_coord(E, s, c, ell), c, Direction::Descending};
            break;
        }
    }
    return rep;
}

DirectionReport find_directions(const Curve& E, const Integer& ell, Rng& rng, bool allow_abort)
{
    WorkingCurve W = working_curve(E, ell, rng);
    SylowStructure s = sylow_structure(W.curve, ell, rng);
    return find_directions(W, s, ell, rng, allow_abort);
}

std::vector<KernelChoice> all_kernels(const WorkingCurve& W, const SylowStructure& s, const Integer& ell)
{
    std::vector<KernelChoice> out;
    ProjRoot top{1, 0};
    if (s.n2 == 0) {
        out.push_back({kernel_from_coord(W.curve, s, top, ell), top, Direction::Ascending});
        return out;
    }
    for (Integer x = 0; x <= ell; ++x) {
        ProjRoot c = x < ell ? ProjRoot{x, 1} : top;
        out.push_back({kernel_from_coord(W.curve, s, c, ell), c, Direction::Descending});
    }
    return out;
}

Direction classify_kernel(const DirectionReport& rep, const ProjRoot& c)
{
    for (auto& k : rep.up_or_horizontal)
        if (k.coord == c) return k.dir;
    return Direction::Descending;
}

Curve step(const WorkingCurve& W, const Point& kernel, const Integer& ell, Rng& rng)
{
    Isogeny phi = velu(W.curve, kernel, ell);
    if (W.twisted && W.r % 2 == 0) {
        // codomain is a twist over F_{q^r}; come back through j and pick the F_q model by trace
        const BaseInfo& b = *W.curve.base();
        std::optional<FieldElem> j = b.embedding->descend(phi.codomain().j_invariant());
        if (!j) raise(ErrorKind::KernelNotRational, "codomain j-invariant is not in the base field");
        return curve_from_j(b.field, *j, W.base.trace(), rng, 4, &W.base.disc());
    }
    Curve C = descend_codomain(phi, rng);
    if (W.twisted) C = quadratic_twist(C);
    return C;
}

Curve step(const Curve& E, const Point& kernel, const Integer& ell, Rng& rng)
{
    WorkingCurve W;
    W.base = E;
    W.curve = E;
    if (kernel.inf || kernel.x.ctx() != E.field().get()) raise(ErrorKind::BadKernel, "kernel not over the curve field");
    return step(W, kernel, ell, rng);
}

// ---- classical navigation (Algorithm 3) ---------------------------------

namespace {

// Product of the distinct linear factors of Phi(X, j).
Poly rational_part(const ModPoly& mp, const FieldElem& j)
{
    Poly f = mp.specialize(j).monic();
    Poly x = Poly::x(mp.field());
    return gcd(f, powmod(x, mp.field()->order(), f) - x);
}

// One root of a squarefree split polynomial, found by random splitting.
FieldElem one_root(Poly g, Rng& rng)
{
    const Field& F = g.field();
    Integer half = (F->order() - 1) / 2;
    while (g.degree() > 1) {
        Poly shift(F, {F->random(rng), F->one()});
        Poly d = gcd(g, powmod(shift, half, g) - Poly::constant(F, F->one()));
        if (d.degree() <= 0 || d.degree() >= g.degree()) continue;
        Poly other = g / d;
        g = d.degree() <= other.degree() ? d : other;
    }
    g = g.monic();
    return -g[0];
}

Poly without_root(const Poly& g, const FieldElem& r)
{
    const Field& F = g.field();
    Poly lin(F, {-r, F->one()});
    if (!g.eval(r).is_zero()) return g;
    return g / lin;
}

}  // namespace

StepOutcome classical_step(const FieldElem& j0, const std::optional<FieldElem>& prev_j, const ModPoly& mp, Rng& rng)
{
    std::vector<FieldElem> J0 = neighbors(j0, mp, rng);
    StepOutcome out;
    if (J0.empty()) raise(ErrorKind::TrivialVolcano, "Phi(X, j) has no roots");
    if (J0.size() == 1) {
        out.kind = StepOutcome::Kind::Floor;
        out.targets = J0;
        return out;
    }
    if (J0.size() == 2) {
        out.kind = StepOutcome::Kind::FloorTwoHorizontal;
        out.targets = J0;
        return out;
    }
    const std::size_t m = J0.size();
    std::vector<FieldElem> cur = J0, prev(m, j0);
    std::vector<bool> alive(m, true);
    for (;;) {
        bool done = false;
        std::vector<FieldElem> next(m);
        for (std::size_t i = 0; i < m; ++i) {
            Poly g = rational_part(mp, cur[i]);
            if (g.degree() < 2) {
                alive[i] = false;
                done = true;
                continue;
            }
            next[i] = one_root(without_root(g, prev[i]), rng);  // never step back
        }
        if (done) break;
        prev = cur;
        cur = next;
    }
    out.kind = StepOutcome::Kind::Candidates;
    for (std::size_t i = 0; i < m; ++i)
        if (alive[i]) out.targets.push_back(J0[i]);
    if (prev_j && out.targets.size() > 1) {
        std::vector<FieldElem> kept;
        for (auto& t : out.targets)
            if (t != *prev_j) kept.push_back(t);
        if (!kept.empty()) out.targets = kept;
    }
    return out;
}

unsigned descend_depth(const FieldElem& j, const ModPoly& mp, Rng& rng)
{
    std::vector<FieldElem> J0 = neighbors(j, mp, rng);
    if (J0.empty()) raise(ErrorKind::TrivialVolcano, "Phi(X, j) has no roots");
    if (J0.size() <= 2) return 0;
    std::vector<FieldElem> cur(J0.begin(), J0.begin() + 3), prev(3, j);
    for (unsigned d = 1;; ++d) {
        std::vector<FieldElem> next(3);
        for (int i = 0; i < 3; ++i) {
            Poly g = rational_part(mp, cur[i]);
            if (g.degree() < 2) return d;
            next[i] = one_root(without_root(g, prev[i]), rng);
        }
        prev = cur;
        cur = next;
        if (d > 10000) raise(ErrorKind::Degenerate, "descent did not reach the floor");
    }
}

// ---- crater walk, level invariant, endomorphism ring ---------------------

std::vector<FieldElem> crater_walk(const Curve& E, const Integer& ell, Rng& rng,
                                   const std::function<void(const FieldElem&)>& on_j)
{
    std::vector<FieldElem> js{E.j_invariant()};
    Curve cur = E;
    std::optional<FieldElem> prev;
    for (int iter = 0; iter < 1000000; ++iter) {
        WorkingCurve W = working_curve(cur, ell, rng);
        SylowStructure s = sylow_structure(W.curve, ell, rng);
        DirectionReport rep = find_directions(W, s, ell, rng);
        if (!rep.level || *rep.level != 0) raise(ErrorKind::NotOnCrater, "curve is not on the crater");
        if (rep.up_or_horizontal.empty()) {
            if (iter == 0) raise(ErrorKind::RampartSingleton, "no horizontal isogeny: single-curve crater");
            raise(ErrorKind::NotOnCrater, "lost the crater");
        }
        if (iter == 0 && on_j) on_j(js[0]);
        Curve next = step(W, rep.up_or_horizontal[0].gen, ell, rng);
        if (prev && next.j_invariant() == *prev && rep.up_or_horizontal.size() > 1)
            next = step(W, rep.up_or_horizontal[1].gen, ell, rng);
        FieldElem jn = next.j_invariant();
        if (jn == js[0]) return js;
        for (auto& j : js)
            if (j == jn) raise(ErrorKind::NotOnCrater, "walk closed a cycle away from the start");
        js.push_back(jn);
        if (on_j) on_j(jn);
        prev = cur.j_invariant();
        cur = next;
    }
    raise(ErrorKind::NotOnCrater, "crater walk did not close");
}

int level_invariant(const Curve& E, const Integer& ell, Rng& rng)
{
    return find_directions(E, ell, rng).level_invariant;
}

EndoReport endo_valuation(const Curve& E, const Integer& ell, const ModPoly* mp, Rng& rng)
{
    if (ell != 2 && E.trace() % ell == 0) raise(ErrorKind::BadInput, "ell divides the trace");
    EndoReport rep;
    rep.ell = ell;
    rep.v_ell_g = E.disc().height(ell);
    auto finish = [&](int level) {
        rep.level = level;
        rep.v_ell_f = level;
        rep.index_valuation = int(rep.v_ell_g) - level;
        return rep;
    };
    if (rep.v_ell_g == 0) return finish(0);
    DirectionReport d = find_directions(E, ell, rng, true);
    rep.start_k = d.profile.k;
    if (!d.above_second_stability) return finish(*d.level);
    if (!mp) raise(ErrorKind::NeedsModPoly, "curve is above the second stability level; a modular polynomial is needed");
    rep.used_classical = true;

    // three non-backtracking random paths; the first to reach the stability level descended all the way
    const FieldElem j0 = E.j_invariant();
    std::vector<FieldElem> J0 = neighbors(j0, *mp, rng);
    if (J0.size() < 3) raise(ErrorKind::Degenerate, "too few neighbours for a parallel descent");
    for (std::size_t i = J0.size(); i > 1; --i) std::swap(J0[i - 1], J0[rng.below(i)]);
    const int paths = 3;
    std::vector<FieldElem> cur(J0.begin(), J0.begin() + paths), prev(paths, j0);
    std::vector<std::vector<EndoStep>> trail(paths);
    const Field& F = E.field();
    for (int steps = 1; steps <= int(rep.v_ell_g) + 1; ++steps) {
        std::vector<FieldElem> next(paths);
        for (int i = 0; i < paths; ++i) {
            Curve C = curve_from_j(F, cur[i], E.trace(), rng);
            DirectionReport dc = find_directions(C, ell, rng, true);
            trail[i].push_back({cur[i], dc.profile.k});
            if (!dc.above_second_stability) {
                rep.path = trail[i];
                return finish(*dc.level - steps);
            }
            Poly g = rational_part(*mp, cur[i]);
            next[i] = one_root(without_root(g, prev[i]), rng);
        }
        prev = cur;
        cur = next;
    }
    raise(ErrorKind::Degenerate, "no path reached the second stability level");
}

Direction oracle_direction(const WorkingCurve& W, const Point& kernel, const Integer& ell, const ModPoly& mp, Rng& rng)
{
    if (W.base.field()->order() >= Integer(1ul << 32)) raise(ErrorKind::FieldTooLarge, "oracle needs q < 2^32");
    Curve C = step(W, kernel, ell, rng);
    int d0 = int(descend_depth(W.base.j_invariant(), mp, rng));
    int d1 = int(descend_depth(C.j_invariant(), mp, rng));
    if (d1 == d0 + 1) return Direction::Ascending;
    if (d1 + 1 == d0) return Direction::Descending;
    if (d1 == d0) return Direction::Horizontal;
    raise(ErrorKind::Degenerate, "depths differ by more than one");
}

}  // namespace isovolc
