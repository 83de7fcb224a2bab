#pragma once

#include "isovolc/field.hpp"

#include <memory>
#include <optional>
#include <utility>

namespace isovolc {

struct DiscriminantData {
    Integer d_pi;  // t^2 - 4q
    Integer d_K;   // fundamental discriminant
    Integer g;     // d_pi = g^2 d_K
    unsigned height(const Integer& ell) const { return valuation(g, ell); }
};

// Factors d_pi (trial division to 10^6, then rho).
DiscriminantData discriminant_data(const Integer& t, const Integer& q);
// Data for the r-th power of Frobenius: same d_K, g scaled by |U_r|.
DiscriminantData discriminant_after_base_change(const DiscriminantData& d, const Integer& t, const Integer& q, unsigned r);

// t_r with t_0 = 2, t_1 = t, t_k = t t_{k-1} - q t_{k-2}
Integer trace_power(const Integer& t, const Integer& q, unsigned r);

// Embedding of a subfield F_small -> F_big, fixed by the image of the generator of F_small.
struct Embedding {
    Field small, big;
    FieldElem gen_image;
    FieldElem map(const FieldElem& z) const;
    std::optional<FieldElem> descend(const FieldElem& z) const;
};
std::shared_ptr<const Embedding> make_embedding(const Field& small, const Field& big, Rng& rng);

struct Point {
    FieldElem x, y;
    bool inf = true;

    Point() = default;
    Point(FieldElem x_, FieldElem y_) : x(std::move(x_)), y(std::move(y_)), inf(false) {}
    static Point infinity() { return Point(); }
    bool operator==(const Point& o) const;
    bool operator!=(const Point& o) const { return !(*this == o); }
};

class Curve;

// Where a base-changed curve came from, so codomains can be coerced back.
struct BaseInfo {
    Field field;
    Integer trace;
    DiscriminantData disc;
    unsigned degree = 1;
    std::shared_ptr<const Embedding> embedding;
};

class Curve {
public:
    Curve() = default;
    // Checks discriminant, j, |t| <= 2 sqrt(q), ordinarity and the group order on random points.
    // A known discriminant skips the factorization.
    static Curve make(const Field& F, const FieldElem& A, const FieldElem& B, const Integer& t, Rng& rng,
                      unsigned checks = 8, const DiscriminantData* known = nullptr);
    // No checks; the caller vouches for t and disc.
    static Curve trusted(const Field& F, const FieldElem& A, const FieldElem& B, const Integer& t,
                         const DiscriminantData& disc);

    const Field& field() const { return F_; }
    const FieldElem& a() const { return A_; }
    const FieldElem& b() const { return B_; }
    const Integer& trace() const { return t_; }
    Integer order() const { return F_->order() + 1 - t_; }
    const DiscriminantData& disc() const { return disc_; }
    const std::optional<BaseInfo>& base() const { return base_; }
    void set_base(BaseInfo b) { base_ = std::move(b); }

    FieldElem j_invariant() const;
    bool contains(const Point& P) const;
    Point point(const FieldElem& x, const FieldElem& y) const;  // validated

    Point neg(const Point& P) const;
    Point add(const Point& P, const Point& Q) const;
    Point dbl(const Point& P) const;
    Point mul(const Integer& k, const Point& P) const;
    Point sub(const Point& P, const Point& Q) const { return add(P, neg(Q)); }

    Point random_point(Rng& rng) const;
    // smallest e with ell^e P = O, capped at max_e (returns max_e + 1 when exceeded)
    unsigned ell_order(const Point& P, const Integer& ell, unsigned max_e) const;

private:
    void check_point(const Point& P) const;

    Field F_;
    FieldElem A_, B_;
    Integer t_;
    DiscriminantData disc_;
    std::optional<BaseInfo> base_;
};

FieldElem j_invariant(const FieldElem& A, const FieldElem& B);
std::pair<FieldElem, FieldElem> short_form(const FieldElem& a1, const FieldElem& a2, const FieldElem& a3,
                                           const FieldElem& a4, const FieldElem& a6);

Curve curve_from_j(const Field& F, const FieldElem& j, const Integer& t, Rng& rng, int checks = 8,
                   const DiscriminantData* known = nullptr);
Curve quadratic_twist(const Curve& E);
// E over F_{q^r}; coefficients embedded, trace t_r.
Curve base_change(const Curve& E, unsigned r, Rng& rng);

struct TorsionDegree {
    unsigned long r;
    bool use_twist;
};
TorsionDegree torsion_extension_degree(const Curve& E, const Integer& ell);

// alpha in [0, ell^k) with target = alpha * base; base of order ell^k
Integer ec_dlog(const Curve& E, const Point& base, const Point& target, const Integer& ell, unsigned k);

Integer cardinality_small(const Field& F, const FieldElem& A, const FieldElem& B);
Integer cardinality_small(const Curve& E);

}  // namespace isovolc
