#pragma once

#include "isovolc/integer.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace isovolc {

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

// Per-thread tallies of F_p multiplications and field inversions.
struct OpCounter {
    std::uint64_t base_mul = 0;
    std::uint64_t inversions = 0;
};
OpCounter& op_counter();

class FieldElem {
public:
    FieldElem() = default;

    const FieldCtx& field() const { return *ctx_; }
    const FieldCtx* ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    const std::vector<Integer>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool in_prime_field() const;
    Integer encode() const;  // sum c_i p^i
    std::string str() const { return to_decimal(encode()); }

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);
    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
    FieldElem operator*(long k) const;
    friend FieldElem operator*(long k, const FieldElem& a) { return a * k; }
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem square() const;
    FieldElem inv() const;
    FieldElem pow(const Integer& e) const;
    FieldElem frobenius() const;  // x -> x^p
    bool is_square() const;
    std::optional<FieldElem> sqrt() const;

private:
    friend class FieldCtx;
    FieldElem(const FieldCtx* ctx, std::vector<Integer> c) : ctx_(ctx), c_(std::move(c)) {}
    void check(const FieldElem& o) const;

    const FieldCtx* ctx_ = nullptr;
    std::vector<Integer> c_;
};

class FieldCtx {
public:
    const Integer& p() const { return p_; }
    unsigned degree() const { return r_; }
    const Integer& order() const { return q_; }
    // c_0 .. c_{r-1} of the monic modulus; empty for prime fields
    const std::vector<Integer>& modulus() const { return mod_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_integer(const Integer& n) const;  // image of n in the prime subfield
    FieldElem from_encoding(const Integer& e) const;
    FieldElem from_coeffs(std::vector<Integer> c) const;
    FieldElem generator() const;  // the class of x, or 1 when r = 1
    FieldElem random(Rng& rng) const;
    const FieldElem& nonresidue() const { return nonres_; }

    // internal representation helpers
    void reduce_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, std::vector<Integer>& out) const;
    std::vector<Integer> invert(const std::vector<Integer>& a) const;

private:
    friend Field make_field(const Integer& p, unsigned r);
    FieldCtx() = default;
    void setup_small();
    void setup_sqrt();

    Integer p_, q_;
    unsigned r_ = 1;
    std::vector<Integer> mod_;
    bool small_ = false;  // p < 2^62: word-sized multiplication path
    std::uint64_t p64_ = 0;
    unsigned acc_limit_ = 1;
    std::vector<std::pair<unsigned, std::uint64_t>> negmod_;  // (index, p - c_i) for nonzero c_i

    FieldElem nonres_;
    unsigned two_adicity_ = 0;
    Integer odd_part_;
    FieldElem ts_root_;  // nonres^odd_part
    friend class FieldElem;
};

// Interned: equal (p, r) share one context.
Field make_field(const Integer& p, unsigned r = 1);

// x^r + c_{r-1}x^{r-1} + ... + c_0 over F_p, coefficients low to high (monic term implicit)
bool is_irreducible_mod_p(const std::vector<Integer>& low, const Integer& p);

}  // namespace isovolc
