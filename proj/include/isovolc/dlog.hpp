#pragma once

#include "isovolc/field.hpp"

#include <utility>
#include <vector>

namespace isovolc {

// smallest r >= 1 with q^r = 1 mod ell (ell prime, ell does not divide q)
unsigned long mult_order(const Integer& q, const Integer& ell);

// element of exact order ell^n
FieldElem primitive_root_of_unity(const Field& F, const Integer& ell, unsigned n, Rng& rng);

// Discrete logs to base g of order ell^n. Digits come from a sorted table of
// the ell powers of g^{ell^{n-1}} when ell <= 2^20, baby-step giant-step otherwise.
class DlogContext {
public:
    DlogContext(const FieldElem& g, const Integer& ell, unsigned n);
    Integer log(const FieldElem& x) const;  // throws NotInSubgroup

private:
    Integer digit(const FieldElem& h) const;

    FieldElem g_, g_inv_, gamma_;
    Integer ell_;
    unsigned n_;
    bool tabled_;
    std::vector<std::pair<Integer, unsigned long>> table_;  // (encoding of gamma^i, i)
    unsigned long giant_ = 0;
    FieldElem giant_step_;  // gamma^{-giant}
};

Integer dlog_prime_power(const FieldElem& g, const FieldElem& x, const Integer& ell, unsigned n);

}  // namespace isovolc
