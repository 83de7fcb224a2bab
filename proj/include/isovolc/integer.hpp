#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isovolc {

using Integer = mpz_class;

Integer parse_integer(std::string_view text);
std::string to_decimal(const Integer& n);

// Miller-Rabin with 64 rounds, error below 2^-128.
bool is_probable_prime(const Integer& n);

// v_p(n); n must be nonzero.
unsigned valuation(const Integer& n, const Integer& p);
Integer ipow(const Integer& base, unsigned long e);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
// Kronecker symbol (a/n)
int kronecker(const Integer& a, const Integer& n);

using Factorization = std::vector<std::pair<Integer, unsigned>>;

// Trial division to 10^6, then Pollard rho on the remaining composite part.
// Throws UnfactorableDiscriminant when rho gives up.
Factorization factor(const Integer& n);
std::vector<Integer> prime_divisors(const Integer& n);

// sqrt of a mod an odd prime p, if a is a square
bool sqrt_mod_prime(const Integer& a, const Integer& p, Integer& root);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t bound);
    Integer below(const Integer& bound);  // uniform in [0, bound)
    Rng split() { return Rng(next()); }

private:
    std::mt19937_64 eng_;
};

}  // namespace isovolc
