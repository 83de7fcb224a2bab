#pragma once

#include "isovolc/curve.hpp"

#include <vector>

namespace isovolc {

// f_{m,P}(S1) / f_{m,P}(S2) with div f_{m,P} = m(P) - m(O). Throws DivisorSupportHit.
FieldElem miller(const Curve& E, const Point& P, const Integer& m, const Point& S1, const Point& S2);

// T_m(P, Q) = (f_{m,P}(Q+R) / f_{m,P}(R))^{(q-1)/m}, random R, up to 32 attempts.
FieldElem tate_reduced(const Curve& E, const Point& P, const Point& Q, const Integer& m, Rng& rng);
FieldElem tate_reduced(const Curve& E, const Point& P, const Point& Q, const Integer& ell, unsigned n, Rng& rng);

// e_m(P, Q) for P, Q of order dividing m.
FieldElem weil_pairing(const Curve& E, const Point& P, const Point& Q, const Integer& m, Rng& rng);

struct ProjRoot {
    Integer x, y;  // (x : 1) or (1 : 0)
    bool operator==(const ProjRoot& o) const { return x == o.x && y == o.y; }
};

// Projective zeros of a x^2 + b xy + c y^2 mod ell; sorted, (1:0) last.
std::vector<ProjRoot> projective_roots(const Integer& a, const Integer& b, const Integer& c, const Integer& ell);

struct PairingProfile {
    unsigned n2 = 0;
    unsigned count = 0;  // ell-powerings until the triple dies; 0 means (1,1,1)
    int k = -1;          // count - 1
    Integer La, Lb, Lc;
    std::vector<ProjRoot> roots;
    bool trivial() const { return count == 0; }
};

// Pairing triple on Q1 = ell^{n1-n2} P1 and P2, logs of the last nontrivial power, roots of the form.
PairingProfile pairing_profile(const Curve& E, const Point& P1, const Point& P2, unsigned n1, unsigned n2,
                               const Integer& ell, Rng& rng);

}  // namespace isovolc
