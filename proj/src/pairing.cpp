#include "isovolc/pairing.hpp"

#include "isovolc/dlog.hpp"
#include "isovolc/error.hpp"

#include <algorithm>

namespace isovolc {

namespace {

// Accumulates line/vertical quotients at S1 over S2 as separate numerator and denominator.
struct MillerAcc {
    const Curve& E;
    const Point& S1;
    const Point& S2;
    FieldElem num, den;

    static void nonzero(const FieldElem& v)
    {
        if (v.is_zero()) raise(ErrorKind::DivisorSupportHit, "evaluation point meets the divisor support");
    }

    // multiply by l_{T,U} / v_{T+U}; returns T+U
    Point step(const Point& T, const Point& U)
    {
        if (T.inf) return U;
        if (U.inf) return T;
        if (T.x == U.x && (T.y != U.y || T.y.is_zero())) {
            // vertical line, T + U = O
            FieldElem l1 = S1.x - T.x, l2 = S2.x - T.x;
            nonzero(l1);
            nonzero(l2);
            num *= l1;
            den *= l2;
            return Point::infinity();
        }
        FieldElem lam = (T == U) ? (T.x.square() * 3 + E.a()) / (T.y * 2) : (U.y - T.y) / (U.x - T.x);
        FieldElem x3 = lam.square() - T.x - U.x;
        FieldElem y3 = lam * (T.x - x3) - T.y;
        FieldElem l1 = S1.y - T.y - lam * (S1.x - T.x);
        FieldElem l2 = S2.y - T.y - lam * (S2.x - T.x);
        FieldElem v1 = S1.x - x3, v2 = S2.x - x3;
        nonzero(l1);
        nonzero(l2);
        nonzero(v1);
        nonzero(v2);
        num *= l1 * v2;
        den *= l2 * v1;
        return Point(x3, y3);
    }
};

}  // namespace

FieldElem miller(const Curve& E, const Point& P, const Integer& m, const Point& S1, const Point& S2)
{
    const Field& F = E.field();
    if (m <= 0) raise(ErrorKind::BadInput, "Miller loop needs m >= 1");
    if (P.inf) return F->one();
    if (S1.inf || S2.inf) raise(ErrorKind::DivisorSupportHit, "evaluation at O");
    MillerAcc acc{E, S1, S2, F->one(), F->one()};
    Point T = P;
    for (std::size_t i = mpz_sizeinbase(m.get_mpz_t(), 2) - 1; i-- > 0;) {
        acc.num = acc.num.square();
        acc.den = acc.den.square();
        T = acc.step(T, T);
        if (mpz_tstbit(m.get_mpz_t(), i)) T = acc.step(T, P);
    }
    return acc.num / acc.den;
}

FieldElem tate_reduced(const Curve& E, const Point& P, const Point& Q, const Integer& m, Rng& rng)
{
    const Field& F = E.field();
    Integer qm1 = F->order() - 1;
    if (!mpz_divisible_p(qm1.get_mpz_t(), m.get_mpz_t()))
        raise(ErrorKind::EmbeddingDegree, "m does not divide q - 1");
    if (!E.mul(m, P).inf) raise(ErrorKind::BadOrder, "m P != O");
    if (P.inf || Q.inf) return F->one();
    Integer e = qm1 / m;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Point R = E.random_point(rng);
        Point S1 = E.add(Q, R);
        if (S1.inf) continue;
        try {
            return miller(E, P, m, S1, R).pow(e);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::DivisorSupportHit) throw;
        }
    }
    raise(ErrorKind::RandomnessExhausted, "no auxiliary point avoided the divisor support");
}

FieldElem tate_reduced(const Curve& E, const Point& P, const Point& Q, const Integer& ell, unsigned n, Rng& rng)
{
    return tate_reduced(E, P, Q, ipow(ell, n), rng);
}

FieldElem weil_pairing(const Curve& E, const Point& P, const Point& Q, const Integer& m, Rng& rng)
{
    const Field& F = E.field();
    if (P.inf || Q.inf) return F->one();
    for (int attempt = 0; attempt < 32; ++attempt) {
        Point R = E.random_point(rng);
        Point QR = E.add(Q, R), PmR = E.sub(P, R), mR = E.neg(R);
        if (QR.inf || PmR.inf) continue;
        try {
            FieldElem fp = miller(E, P, m, QR, R);
            FieldElem fq = miller(E, Q, m, mR, PmR);
            return fp * fq;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::DivisorSupportHit) throw;
        }
    }
    raise(ErrorKind::RandomnessExhausted, "no auxiliary point avoided the divisor support");
}

std::vector<ProjRoot> projective_roots(const Integer& a0, const Integer& b0, const Integer& c0, const Integer& ell)
{
    auto red = [&](const Integer& v) {
        Integer r = v % ell;
        if (r < 0) r += ell;
        return r;
    };
    Integer a = red(a0), b = red(b0), c = red(c0);
    std::vector<ProjRoot> out;
    if (ell == 2) {
        // (0:1), (1:1), (1:0)
        if (c == 0) out.push_back({0, 1});
        if (red(a + b + c) == 0) out.push_back({1, 1});
        if (a == 0) out.push_back({1, 0});
        return out;
    }
    if (a == 0 && b == 0 && c == 0) raise(ErrorKind::Degenerate, "zero form has every point as a root");
    // affine roots (x : 1) of a x^2 + b x + c
    if (a != 0) {
        Integer disc = red(b * b - 4 * a * c);
        Integer s;
        if (sqrt_mod_prime(disc, ell, s)) {
            Integer inv2a;
            Integer twoa = red(2 * a);
            mpz_invert(inv2a.get_mpz_t(), twoa.get_mpz_t(), ell.get_mpz_t());
            Integer r1 = red((-b + s) * inv2a), r2 = red((-b - s) * inv2a);
            out.push_back({r1, 1});
            if (r2 != r1) out.push_back({r2, 1});
        }
    } else if (b != 0) {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), ell.get_mpz_t());
        out.push_back({red(-c * inv), 1});
    }
    std::sort(out.begin(), out.end(), [](const ProjRoot& u, const ProjRoot& v) { return u.x < v.x; });
    if (a == 0) out.push_back({1, 0});
    return out;
}

PairingProfile pairing_profile(const Curve& E, const Point& P1, const Point& P2, unsigned n1, unsigned n2,
                               const Integer& ell, Rng& rng)
{
    if (n2 == 0) raise(ErrorKind::FloorCurve, "cyclic Sylow subgroup, no pairing profile");
    if (n1 < n2) raise(ErrorKind::BadInput, "n1 < n2");
    const Field& F = E.field();
    Integer m = ipow(ell, n2);
    Integer qm1 = F->order() - 1;
    if (!mpz_divisible_p(qm1.get_mpz_t(), m.get_mpz_t())) raise(ErrorKind::EmbeddingDegree, "ell^n2 does not divide q - 1");
    Point Q1 = E.mul(ipow(ell, n1 - n2), P1);
    FieldElem a = tate_reduced(E, Q1, Q1, m, rng);
    FieldElem b = tate_reduced(E, Q1, P2, m, rng) * tate_reduced(E, P2, Q1, m, rng);
    FieldElem c = tate_reduced(E, P2, P2, m, rng);
    PairingProfile prof;
    prof.n2 = n2;
    if (a.is_one() && b.is_one() && c.is_one()) return prof;
    FieldElem a1 = a, b1 = b, c1 = c;
    unsigned count = 0;
    do {
        a1 = a;
        b1 = b;
        c1 = c;
        a = a.pow(ell);
        b = b.pow(ell);
        c = c.pow(ell);
        ++count;
    } while (!(a.is_one() && b.is_one() && c.is_one()));
    prof.count = count;
    prof.k = int(count) - 1;
    FieldElem g = primitive_root_of_unity(F, ell, 1, rng);
    DlogContext dl(g, ell, 1);
    prof.La = dl.log(a1);
    prof.Lb = dl.log(b1);
    prof.Lc = dl.log(c1);
    prof.roots = projective_roots(prof.La, prof.Lb, prof.Lc, ell);
    return prof;
}

}  // namespace isovolc
