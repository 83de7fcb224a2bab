#include "doctest.h"
#include "corpus.hpp"
#include "isovolc/error.hpp"
#include "isovolc/isogeny.hpp"
#include "isovolc/volcano.hpp"
#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace isovolc;

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

Curve lib_curve(const corpus::Instance& I, Rng& rng)
{
    Field F = make_field(I.p);
    return Curve::make(F, F->from_integer(I.a), F->from_integer(I.b), I.t, rng);
}

Point order_ell_point(const Curve& E, const Integer& ell, Rng& rng)
{
    unsigned v = valuation(E.order(), ell);
    for (;;) {
        Point P = E.mul(E.order() / ipow(ell, v), E.random_point(rng));
        if (P.inf) continue;
        while (!E.mul(ell, P).inf) P = E.mul(ell, P);
        return P;
    }
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("isogeny") {

TEST_CASE("Velu kernel, homomorphism, trace")
{
    Rng rng(51);
    for (long ell : {2L, 3L, 5L, 7L, 11L, 13L}) {
        int done = 0;
        for (auto& I : corpus::make(ell, 6, 900 + ell, 0, 5000)) {
            Curve E = lib_curve(I, rng);
            Point K = order_ell_point(E, ell, rng);
            Isogeny phi = velu(E, K, ell);
            CHECK(phi(K).inf);
            CHECK(phi(E.dbl(K)).inf);
            CHECK(phi.codomain().trace() == E.trace());
            CHECK(cardinality_small(phi.codomain()) == E.order());
            for (int i = 0; i < 100 / 6 + 1; ++i) {
                Point P = E.random_point(rng), Q = E.random_point(rng);
                CHECK(phi.codomain().contains(phi(P)));
                CHECK(phi(E.add(P, Q)) == phi.codomain().add(phi(P), phi(Q)));
                CHECK(phi(E.neg(P)) == phi.codomain().neg(phi(P)));
            }
            ModPoly mp = load_modpoly(corpus::modpoly_path(ell), ell, E.field());
            CHECK(mp.eval(E.j_invariant(), phi.codomain().j_invariant()).is_zero());
            auto nb = neighbors(E.j_invariant(), mp, rng);
            CHECK(std::find(nb.begin(), nb.end(), phi.codomain().j_invariant()) != nb.end());
            ++done;
        }
        CHECK(done >= 3);
    }
}

TEST_CASE("Velu rejects bad kernels")
{
    Rng rng(52);
    auto I = corpus::make(5, 1, 3, 0)[0];
    Curve E = lib_curve(I, rng);
    CHECK(raises([&] { velu(E, Point::infinity(), 5); }, ErrorKind::BadKernel));
    Point K = order_ell_point(E, 5, rng);
    CHECK(raises([&] { velu(E, K, 7); }, ErrorKind::BadKernel));
}

TEST_CASE("composition with the dual is multiplication by ell")
{
    Rng rng(53);
    int done = 0;
    for (long ell : {3L, 5L, 7L}) {
        for (auto& I : corpus::make(ell, 300, 1000 + ell, 0, 10000)) {
            Curve E = lib_curve(I, rng);
            SylowStructure s = sylow_structure(E, ell, rng);
            if (s.n2 == 0) continue;
            Point K = E.mul(ipow(ell, s.n1 - 1), s.P1), T = E.mul(ipow(ell, s.n2 - 1), s.P2);
            Isogeny phi = velu(E, K, ell);
            Isogeny psi = velu(phi.codomain(), phi(T), ell);
            const Curve& C = psi.codomain();
            CHECK(C.j_invariant() == E.j_invariant());
            // C is E scaled by u: A_C = u^4 A, B_C = u^6 B
            FieldElem u2 = (C.b() / E.b()) / (C.a() / E.a());
            CHECK(u2.square() * E.a() == C.a());
            for (int i = 0; i < 5; ++i) {
                Point P = E.random_point(rng);
                Point L = E.mul(ell, P), R = psi(phi(P));
                CHECK(L.inf == R.inf);
                if (!L.inf) CHECK(R.x == u2 * L.x);
            }
            if (++done >= 8) break;
        }
    }
    CHECK(done >= 6);
}

TEST_CASE("Phi_2 matches the classical polynomial")
{
    Rng rng(54);
    for (long p : {10007L, 1000003L}) {
        Field F = make_field(p);
        ModPoly mp = load_modpoly(corpus::modpoly_path(2), 2, F);
        CHECK(mp.ell() == 2);
        for (std::size_t i = 0; i < mp.dense().size(); ++i)
            for (std::size_t j = 0; j < mp.dense().size(); ++j) CHECK(mp.dense()[i][j] == mp.dense()[j][i]);
        auto c = [&](const char* s) { return F->from_integer(parse_integer(s)); };
        for (int t = 0; t < 20; ++t) {
            FieldElem X = F->random(rng), Y = F->random(rng);
            FieldElem want = X.pow(3) + Y.pow(3) - X.square() * Y.square() +
                             c("1488") * (X.square() * Y + X * Y.square()) - c("162000") * (X.square() + Y.square()) +
                             c("40773375") * X * Y + c("8748000000") * (X + Y) - c("157464000000000");
            CHECK(mp.eval(X, Y) == want);
        }
    }
}

TEST_CASE("2-isogenous j-invariants are roots of Phi_2")
{
    Rng rng(55);
    for (auto& I : corpus::make(2, 10, 1100, 0, 10000)) {
        Curve E = lib_curve(I, rng);
        Point K = order_ell_point(E, 2, rng);
        Isogeny phi = velu(E, K, 2);
        ModPoly mp = load_modpoly(corpus::modpoly_path(2), 2, E.field());
        CHECK(mp.eval(E.j_invariant(), phi.codomain().j_invariant()).is_zero());
        CHECK(cardinality_small(phi.codomain()) == E.order());
    }
}

TEST_CASE("modular polynomial files")
{
    for (long ell : {2L, 3L, 5L, 7L, 11L, 13L}) {
        std::string text = slurp(corpus::modpoly_path(ell));
        std::istringstream in(text);
        ModPolyFile f = parse_modpoly(in);
        CHECK(f.ell == unsigned(ell));
        std::ostringstream out;
        write_modpoly(out, f);
        CHECK(out.str() == text);
        for (auto& t : f.terms) CHECK(t.i >= t.j);
    }
    Field F = make_field(101);
    CHECK(raises([&] { load_modpoly("/nonexistent/phi_3.txt", 3, F); }, ErrorKind::ParseError));
    CHECK(raises([&] { load_modpoly(corpus::modpoly_path(3), 5, F); }, ErrorKind::WrongLevel));
    for (const char* bad : {"", "ell\n", "level 3\n", "ell 3\n1 2 5\n", "ell 3\n4 0\n", "ell 3\n9 0 1\n", "ell 3\n1 0 x\n"}) {
        std::istringstream in(bad);
        CHECK(raises([&] { parse_modpoly(in); }, ErrorKind::ParseError));
    }
}

TEST_CASE("neighbors agree with brute-force roots")
{
    Rng rng(56);
    for (long ell : {2L, 3L, 5L, 7L}) {
        for (auto& I : corpus::make(ell, 5, 1200 + ell, 0, 3000)) {
            Field F = make_field(I.p);
            ModPoly mp = load_modpoly(corpus::modpoly_path(ell), ell, F);
            oracle::ModPoly omp(corpus::modpoly_path(ell), I.p);
            for (int k = 0; k < 4; ++k) {
                oracle::i64 j = k == 0 ? oracle::Curve{I.p, I.a, I.b}.j() : oracle::i64(rng.below(I.p));
                auto got = neighbors(F->from_integer(j), mp, rng);
                auto want = omp.roots(j);
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].encode() == want[i]);
            }
        }
    }
}

TEST_CASE("favorable case: kernel ell^3 P gives E1")
{
    Rng rng(57);
    Field F = make_field(parse_integer("619074283342666852501391"));
    auto el = [&](const char* s) { return F->from_integer(parse_integer(s)); };
    const Integer ell = 100003;
    Curve E = Curve::make(F, el("198950713578094615678321"), el("32044133215969807107747"), 2, rng);
    Point P = E.point(el("110646719734315214798587"), el("521505339992224627932173"));
    Isogeny phi = velu(E, E.mul(ipow(ell, 3), P), ell);
    CHECK(phi.codomain().j_invariant() == j_invariant(el("476298723694969288644436"), el("260540808216901292162091")));
}

}  // TEST_SUITE
