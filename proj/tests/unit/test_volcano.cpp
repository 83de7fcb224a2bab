#include "doctest.h"
#include "corpus.hpp"
#include "isovolc/error.hpp"
#include "isovolc/volcano.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace isovolc;
using props::lib_curve;
using props::tag;

namespace {

template <class F>
bool raises(F&& fn, ErrorKind k)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

// curves whose ell-torsion needs an extension or the twist: p != 1 mod ell or ell not dividing #E
std::vector<corpus::Instance> extension_corpus(long ell, std::size_t count, std::uint64_t seed, long pmax)
{
    std::mt19937_64 g(seed);
    std::vector<corpus::Instance> out;
    std::set<std::pair<long, long>> seen;
    for (int tries = 0; out.size() < count && tries < 200000; ++tries) {
        long p = 100 + long(g() % (pmax - 100));
        if (!oracle::is_prime(p)) continue;
        oracle::Curve O{p, long(g() % p), long(g() % p)};
        if (O.a == 0 || O.b == 0 || oracle::md(4 * oracle::pw(O.a, 3, p) + 27 * O.b * O.b, p) == 0) continue;
        long t = p + 1 - O.count();
        if (p % ell == 1 && (p + 1 - t) % ell == 0) continue;  // those are in the main corpus
        if (t % p == 0 || t % ell == 0) continue;
        oracle::Disc d = oracle::disc(t, p);
        int h = oracle::val(d.g, ell);
        if (h < 1 || d.d_K == -3 || d.d_K == -4) continue;
        if (!seen.insert({p, t}).second) continue;
        out.push_back({ell, p, O.a, O.b, t, h, d.d_K});
    }
    return out;
}

const char* kP = "619074283342666852501391";

}  // namespace

TEST_SUITE("volcano") {

TEST_CASE("Sylow structure against enumeration")
{
    Rng rng(61);
    int n = 0;
    for (long ell : {2L, 3L, 5L, 7L}) {
        for (auto& I : corpus::make(ell, 12, 1300 + ell, 0, 3000)) {
            Curve E = lib_curve(I, rng);
            SylowStructure s = sylow_structure(E, ell, rng);
            auto [n1, n2] = oracle::sylow_shape(oracle::Curve{I.p, I.a, I.b}, ell);
            CHECK(int(s.n1) == n1);
            CHECK(int(s.n2) == n2);
            CHECK(E.ell_order(s.P1, ell, s.n1) == s.n1);
            CHECK(valuation(E.order(), ell) == s.n());
            CHECK(s.cofactor * ipow(ell, s.n()) == E.order());
            CHECK((I.p - 1) % ipow(ell, s.n2) == 0);
            if (s.n2 > 0) {
                CHECK(E.ell_order(s.P2, ell, s.n2) == s.n2);
                Point a = E.mul(ipow(ell, s.n1 - 1), s.P1), b = E.mul(ipow(ell, s.n2 - 1), s.P2);
                CHECK(!weil_pairing(E, a, b, ell, rng).is_one());
            } else {
                CHECK(s.P2.inf);
            }
            ++n;
        }
    }
    CHECK(n >= 40);
}

TEST_CASE("Sylow structure preconditions")
{
    Rng rng(62);
    auto ext = extension_corpus(3, 30, 5, 3000);
    int need_ext = 0, need_twist = 0;
    for (auto& I : ext) {
        Curve E = lib_curve(I, rng);
        if (I.p % 3 != 1) {
            CHECK(raises([&] { sylow_structure(E, 3, rng); }, ErrorKind::NeedExtension));
            ++need_ext;
        } else if ((I.p + 1 + I.t) % 3 == 0) {
            CHECK(raises([&] { sylow_structure(E, 3, rng); }, ErrorKind::NeedTwist));
            ++need_twist;
        } else {
            CHECK(raises([&] { sylow_structure(E, 3, rng); }, ErrorKind::Degenerate));
        }
    }
    // p = 2 mod 3 never has height >= 1 at 3, so the corpus above holds none
    for (long p : {1031L, 2003L, 2999L}) {
        Field F = make_field(p);
        Curve E = Curve::make(F, F->from_integer(5), F->from_integer(7), p + 1 - oracle::Curve{p, 5, 7}.count(), rng);
        CHECK(raises([&] { sylow_structure(E, 3, rng); }, ErrorKind::NeedExtension));
        ++need_ext;
    }
    CHECK(need_ext > 0);
    CHECK(need_twist > 0);
}

TEST_CASE("favorable case shapes and steps")
{
    Rng rng(63);
    Field F = make_field(parse_integer(kP));
    auto el = [&](const char* s) { return F->from_integer(parse_integer(s)); };
    const Integer ell = 100003;
    Curve E = Curve::make(F, el("198950713578094615678321"), el("32044133215969807107747"), 2, rng);
    Curve E1 = Curve::make(F, el("476298723694969288644436"), el("260540808216901292162091"), 2, rng);
    Curve E2 = Curve::make(F, el("21207599576300038652790"), el("471086215466928725193841"), 2, rng);
    SylowStructure s = sylow_structure(E, ell, rng), s1 = sylow_structure(E1, ell, rng), s2 = sylow_structure(E2, ell, rng);
    CHECK(s.n1 == 4);
    CHECK(s.n2 == 0);
    CHECK(s1.n1 == 3);
    CHECK(s1.n2 == 1);
    CHECK(s2.n1 == 2);
    CHECK(s2.n2 == 2);
    Point P = E.point(el("110646719734315214798587"), el("521505339992224627932173"));
    CHECK(step(E, E.mul(ipow(ell, 3), P), ell, rng).j_invariant() == E1.j_invariant());
    Point P1 = E1.point(el("22630045752997075604069"), el("207694187789705800930332"));
    CHECK(step(E1, E1.mul(ipow(ell, 2), P1), ell, rng).j_invariant() == E2.j_invariant());

    DirectionReport r1 = find_directions(E1, ell, rng);
    REQUIRE(r1.up_or_horizontal.size() == 1);
    CHECK(r1.up_or_horizontal[0].dir == Direction::Ascending);
    CHECK(r1.level == 1);
    DirectionReport r2 = find_directions(E2, ell, rng);
    CHECK(r2.level == 0);
    CHECK(r2.up_or_horizontal.size() == 2);
    for (auto& k : r2.up_or_horizontal) CHECK(k.dir == Direction::Horizontal);
    DirectionReport r0 = find_directions(E, ell, rng);
    CHECK(r0.on_floor);
    CHECK(r0.level == 2);
}

TEST_CASE("directions agree with both oracles")
{
    for (long ell : {3L, 5L, 7L}) {
        auto S = props::direction_oracle(ell, 12, 1400 + ell, 4000);
        INFO("ell=" << ell << ": " << S.tally.summary());
        CHECK(S.tally.ok(12));
    }
}

TEST_CASE("one large-order point gives the unbalanced kernel")
{
    Rng rng(66);
    int unbalanced = 0, balanced = 0;
    for (long ell : {2L, 3L, 5L, 7L}) {
        for (auto& I : corpus::make(ell, 40, 1600 + ell, 1, 5000)) {
            Curve E = lib_curve(I, rng);
            SylowStructure s = sylow_structure(E, ell, rng);
            std::optional<Point> K = unbalanced_up_kernel(E, ell, rng, 40);
            if (s.n1 == s.n2) {
                CHECK(!K);
                ++balanced;
                continue;
            }
            REQUIRE(K);
            CHECK(E.ell_order(*K, ell, 1) == 1);
            Point G = E.mul(ipow(ell, s.n1 - 1), s.P1);
            bool same = false;
            for (long i = 1; i < ell && !same; ++i) same = E.mul(i, G) == *K;
            CHECK_MESSAGE(same, tag(I));
            ++unbalanced;
        }
    }
    CHECK(unbalanced >= 60);
    CHECK(balanced >= 3);
}

TEST_CASE("directions for ell = 2")
{
    Rng rng(64);
    props::DirectionSweep S;
    for (auto& I : corpus::make(2, 200, 1502, 2, 4000)) {
        if (S.tally.cases >= 12) break;
        Curve E = lib_curve(I, rng);
        ModPoly mp = load_modpoly(corpus::modpoly_path(2), 2, E.field());
        auto M = props::map_volcano(I);
        props::check_directions(E, 2, M.V, mp, rng, S, tag(I));
    }
    INFO(S.tally.summary());
    CHECK(S.tally.ok(12));
}

TEST_CASE("directions over extension fields")
{
    Rng rng(65);
    for (long ell : {3L, 5L}) {
        props::DirectionSweep S;
        for (auto& I : extension_corpus(ell, 200, 1600 + ell, ell == 3 ? 3000 : 700)) {
            if (S.tally.cases >= 10) break;
            Curve E = lib_curve(I, rng);
            TorsionDegree td;
            try {
                td = torsion_extension_degree(E, ell);
            } catch (const Error&) {
                continue;  // eigenvalues outside F_ell
            }
            if (td.r > 4) continue;
            ModPoly mp = load_modpoly(corpus::modpoly_path(ell), ell, E.field());
            auto M = props::map_volcano(I);
            props::check_directions(E, ell, M.V, mp, rng, S, tag(I) + " r=" + std::to_string(td.r));
        }
        INFO("ell=" << ell << ": " << S.tally.summary());
        CHECK(S.tally.ok(10));
    }
}

TEST_CASE("crater criterion")
{
    for (long ell : {3L, 5L}) {
        auto T = props::crater_criterion(ell, 6, 1700 + ell);
        INFO("ell=" << ell << ": " << T.summary());
        CHECK(T.ok(20));
    }
}

TEST_CASE("level invariant is constant per level")
{
    auto T = props::level_constancy(4, 1800);
    INFO(T.summary());
    CHECK(T.ok(4));
}

TEST_CASE("structure over the degree-ell extension")
{
    Rng rng(66);
    int n = 0;
    for (auto& I : corpus::make(3, 60, 1900, 0, 1500)) {
        Curve E = lib_curve(I, rng);
        SylowStructure s = sylow_structure(E, 3, rng);
        if (s.n2 == 0) continue;
        Curve E3 = base_change(E, 3, rng);
        SylowStructure s3 = sylow_structure(E3, 3, rng);
        CHECK(s3.n1 == s.n1 + 1);
        CHECK(s3.n2 == s.n2 + 1);
        if (++n >= 8) break;
    }
    CHECK(n >= 4);
}

TEST_CASE("classical step and descent depth")
{
    Rng rng(67);
    int split_craters = 0;
    for (long ell : {3L, 5L}) {
        for (auto& I : corpus::make(ell, 40, 2000 + ell, 1, 4000)) {
            auto M = props::map_volcano(I);
            if (M.V.js.size() > 300) continue;
            Field F = make_field(I.p);
            ModPoly mp = load_modpoly(corpus::modpoly_path(ell), ell, F);
            for (oracle::i64 j : M.V.js) {
                FieldElem jf = F->from_integer(j);
                int depth = M.V.level.at(j);
                CHECK(int(descend_depth(jf, mp, rng)) == I.h - depth);
                StepOutcome o = classical_step(jf, std::nullopt, mp, rng);
                if (depth == I.h) {
                    CHECK(o.kind == StepOutcome::Kind::Floor);
                    REQUIRE(o.targets.size() == 1);
                    CHECK(M.V.level.at(o.targets[0].encode().get_si()) == depth - 1);
                } else {
                    CHECK(o.kind == StepOutcome::Kind::Candidates);
                    for (auto& t : o.targets) CHECK(M.V.level.at(t.encode().get_si()) <= depth);
                    if (depth > 0) CHECK(o.targets.size() == 1);
                }
            }
            // split crater: the two candidates are the codomains of the horizontal kernels
            if (kronecker(I.d_K, ell) != 1 || M.V.crater_size() < 3) continue;
            for (oracle::i64 j : M.V.js) {
                if (M.V.level.at(j) != 0) continue;
                Curve E = curve_from_j(F, F->from_integer(j), I.t, rng);
                WorkingCurve W = working_curve(E, ell, rng);
                SylowStructure s = sylow_structure(W.curve, ell, rng);
                DirectionReport rep = find_directions(W, s, ell, rng, true);
                if (rep.above_second_stability) break;
                StepOutcome o = classical_step(F->from_integer(j), std::nullopt, mp, rng);
                std::set<Integer> a, b;
                for (auto& t : o.targets) a.insert(t.encode());
                for (auto& k : rep.up_or_horizontal) b.insert(step(W, k.gen, ell, rng).j_invariant().encode());
                CHECK(a == b);
                CHECK(a.size() == 2);
                ++split_craters;
                break;
            }
        }
    }
    CHECK(split_craters >= 3);
}

TEST_CASE("trivial volcano")
{
    Rng rng(68);
    Field F = make_field(1009);
    ModPoly mp = load_modpoly(corpus::modpoly_path(3), 3, F);
    oracle::ModPoly omp(corpus::modpoly_path(3), 1009);
    int seen = 0;
    for (oracle::i64 j = 2; j < 1009 && seen < 3; ++j) {
        if (!omp.roots(j).empty()) continue;
        CHECK(raises([&] { classical_step(F->from_integer(j), std::nullopt, mp, rng); }, ErrorKind::TrivialVolcano));
        CHECK(raises([&] { descend_depth(F->from_integer(j), mp, rng); }, ErrorKind::TrivialVolcano));
        ++seen;
    }
    CHECK(seen == 3);
}

TEST_CASE("crater walks close on the enumerated crater")
{
    Rng rng(69);
    int walks = 0;
    for (long ell : {3L, 5L, 7L}) {
        for (auto& I : corpus::make(ell, 80, 2100 + ell, 1, 10000)) {
            if (kronecker(I.d_K, ell) != 1) continue;
            auto M = props::map_volcano(I);
            if (M.V.crater_size() < 3 || M.V.js.size() > 600) continue;
            std::set<Integer> crater;
            oracle::i64 start = 0;
            for (auto& [j, l] : M.V.level)
                if (l == 0) crater.insert(Integer(long(j))), start = j;
            Field F = make_field(I.p);
            Curve E = curve_from_j(F, F->from_integer(start), I.t, rng);
            DirectionReport rep = find_directions(E, ell, rng, true);
            if (rep.above_second_stability) continue;
            std::vector<FieldElem> js = crater_walk(E, ell, rng);
            std::set<Integer> got;
            for (auto& j : js) got.insert(j.encode());
            CHECK(got.size() == js.size());
            CHECK(got == crater);
            if (++walks >= 6) break;
        }
    }
    CHECK(walks >= 6);
}

TEST_CASE("crater walk refuses non-crater curves")
{
    Rng rng(70);
    for (auto& I : corpus::make(3, 40, 2200, 2, 4000)) {
        auto M = props::map_volcano(I);
        oracle::i64 j = 0;
        for (auto& [jj, l] : M.V.level)
            if (l == I.h) j = jj;
        Field F = make_field(I.p);
        Curve E = curve_from_j(F, F->from_integer(j), I.t, rng);
        CHECK(raises([&] { crater_walk(E, 3, rng); }, ErrorKind::NotOnCrater));
        return;
    }
}

TEST_CASE("endomorphism valuation matches the enumerated depth")
{
    Rng rng(71);
    int checked = 0, classical = 0;
    for (long ell : {3L, 5L}) {
        for (auto& I : corpus::make(ell, 30, 2300 + ell, 1, 4000)) {
            auto M = props::map_volcano(I);
            if (M.V.js.size() > 200) continue;
            Field F = make_field(I.p);
            ModPoly mp = load_modpoly(corpus::modpoly_path(ell), ell, F);
            for (oracle::i64 j : M.V.js) {
                Curve E = curve_from_j(F, F->from_integer(j), I.t, rng);
                EndoReport r = endo_valuation(E, ell, &mp, rng);
                int depth = M.V.level.at(j);
                CHECK(r.v_ell_f == depth);
                CHECK(r.level == depth);
                CHECK(r.index_valuation == I.h - depth);
                CHECK(int(r.v_ell_g) == I.h);
                if (r.used_classical) {
                    ++classical;
                    CHECK(!r.path.empty());
                    CHECK(r.path.back().k >= 0);
                    CHECK(raises([&] { endo_valuation(E, ell, nullptr, rng); }, ErrorKind::NeedsModPoly));
                }
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
    CHECK(classical > 0);
}

TEST_CASE("endomorphism valuation edge cases")
{
    Rng rng(72);
    // ell divides the trace
    for (long p = 1000; p < 1200; ++p) {
        if (!oracle::is_prime(p)) continue;
        oracle::Curve O{p, 2, 7};
        long t = p + 1 - O.count();
        if (t % 3 != 0 || t == 0) continue;
        Field F = make_field(p);
        Curve E = Curve::make(F, F->from_integer(2), F->from_integer(7), t, rng);
        CHECK(raises([&] { endo_valuation(E, 3, nullptr, rng); }, ErrorKind::BadInput));
        break;
    }
    // height zero
    for (auto& I : corpus::make(5, 20, 2400, 0, 4000)) {
        if (I.h != 0) continue;
        Curve E = lib_curve(I, rng);
        EndoReport r = endo_valuation(E, 5, nullptr, rng);
        CHECK(r.v_ell_f == 0);
        CHECK(r.index_valuation == 0);
        break;
    }
}

TEST_CASE("floor invariant and stepping back")
{
    Rng rng(73);
    int floors = 0;
    for (auto& I : corpus::make(3, 40, 2500, 1, 4000)) {
        auto M = props::map_volcano(I);
        Field F = make_field(I.p);
        ModPoly mp = load_modpoly(corpus::modpoly_path(3), 3, F);
        for (auto& [j, l] : M.V.level) {
            if (l != I.h) continue;
            Curve E = curve_from_j(F, F->from_integer(j), I.t, rng);
            CHECK(level_invariant(E, 3, rng) == int(valuation(E.order(), 3)));
            DirectionReport rep = find_directions(E, 3, rng);
            CHECK(rep.on_floor);
            REQUIRE(rep.up_or_horizontal.size() == 1);
            Curve C = step(E, rep.up_or_horizontal[0].gen, 3, rng);
            auto back = neighbors(C.j_invariant(), mp, rng);
            CHECK(std::find(back.begin(), back.end(), E.j_invariant()) != back.end());
            CHECK(M.V.level.at(C.j_invariant().encode().get_si()) == l - 1);
            ++floors;
            break;
        }
        if (floors >= 10) break;
    }
    CHECK(floors >= 10);
}

TEST_CASE("oracle budget")
{
    Rng rng(74);
    Field F = make_field(parse_integer(kP));
    Curve E = Curve::make(F, F->from_integer(parse_integer("198950713578094615678321")),
                          F->from_integer(parse_integer("32044133215969807107747")), 2, rng);
    WorkingCurve W = working_curve(E, 3, rng);
    ModPoly mp = load_modpoly(corpus::modpoly_path(3), 3, F);
    CHECK(raises([&] { oracle_direction(W, E.random_point(rng), 3, mp, rng); }, ErrorKind::FieldTooLarge));
}

}  // TEST_SUITE
