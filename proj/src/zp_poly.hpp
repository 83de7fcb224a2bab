#pragma once
// Dense polynomials over F_p as little-endian Integer vectors (no trailing zeros).

#include "isovolc/integer.hpp"

#include <vector>

namespace isovolc::zp {

using Vec = std::vector<Integer>;

void trim(Vec& a);
Vec sub(const Vec& a, const Vec& b, const Integer& p);
Vec mul(const Vec& a, const Vec& b, const Integer& p);
void divmod(const Vec& a, const Vec& b, const Integer& p, Vec& q, Vec& r);
Vec mod(const Vec& a, const Vec& b, const Integer& p);
Vec gcd(Vec a, Vec b, const Integer& p);  // monic
// (a * b) mod f, f monic of degree r given by its full coefficient vector
Vec mulmod(const Vec& a, const Vec& b, const Vec& f, const Integer& p);
Vec powmod(const Vec& base, const Integer& e, const Vec& f, const Integer& p);
// inverse of a modulo f, empty if not invertible
Vec invmod(const Vec& a, const Vec& f, const Integer& p);

}  // namespace isovolc::zp
