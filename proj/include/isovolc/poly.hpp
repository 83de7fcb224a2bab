#pragma once

#include "isovolc/field.hpp"

#include <string>
#include <vector>

namespace isovolc {

// Dense univariate polynomial over a field; no trailing zeros.
class Poly {
public:
    explicit Poly(Field f) : field_(std::move(f)) {}
    Poly(Field f, std::vector<FieldElem> coeffs);

    static Poly x(const Field& f);
    static Poly constant(const Field& f, const FieldElem& c);

    const Field& field() const { return field_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const FieldElem& lead() const { return c_.back(); }
    FieldElem operator[](std::size_t i) const;

    Poly monic() const;
    FieldElem eval(const FieldElem& z) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scale(const FieldElem& k) const;

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    friend Poly operator%(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    std::string str() const;  // space-separated encodings, constant term first

private:
    void trim();
    Field field_;
    std::vector<FieldElem> c_;
};

Poly gcd(Poly a, Poly b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, const Integer& e, const Poly& m);

// Distinct roots in the field, sorted by canonical encoding.
std::vector<FieldElem> poly_roots(const Poly& f, Rng& rng);

}  // namespace isovolc
