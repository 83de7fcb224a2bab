#include "isovolc/integer.hpp"

#include "isovolc/error.hpp"

#include <algorithm>

namespace isovolc {

Integer parse_integer(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\r' || s.back() == '\t'))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    s = s.substr(start);
    std::size_t digits = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() <= digits)
        raise(ErrorKind::ParseError, "empty integer");
    for (std::size_t i = digits; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            raise(ErrorKind::ParseError, "not a decimal integer: '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

std::string to_decimal(const Integer& n) { return n.get_str(10); }

bool is_probable_prime(const Integer& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

unsigned valuation(const Integer& n, const Integer& p)
{
    if (n == 0) raise(ErrorKind::BadInput, "valuation of zero");
    Integer m = abs(n);
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Integer ipow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

namespace {

bool rho(const Integer& n, Integer& divisor, std::uint64_t seed)
{
    // Brent's variant, batched gcds
    Integer c = 1 + seed % 1000;
    Integer y = 2 + seed % 97, x, ys, q = 1, g = 1;
    const unsigned long m = 128;
    unsigned long r = 1;
    const unsigned long limit = 1ul << 26;
    auto f = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                f(y);
                q = q * abs(x - y);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
        if (r > limit) return false;
    }
    if (g == n) {
        do {
            f(ys);
            Integer d = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return false;
    divisor = g;
    return true;
}

void split_into(const Integer& n, Factorization& out)
{
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    if (is_square(n)) {
        Integer s = isqrt(n);
        Factorization sub;
        split_into(s, sub);
        for (auto& [p, e] : sub) out.emplace_back(p, 2 * e);
        return;
    }
    Integer d;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        if (rho(n, d, seed)) {
            split_into(d, out);
            Integer rest = n / d;
            split_into(rest, out);
            return;
        }
    }
    raise(ErrorKind::UnfactorableDiscriminant, "could not factor " + to_decimal(n));
}

}  // namespace

Factorization factor(const Integer& n0)
{
    if (n0 == 0) raise(ErrorKind::BadInput, "factor of zero");
    Integer n = abs(n0);
    Factorization out;
    auto strip = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e) out.emplace_back(Integer(p), e);
    };
    strip(2);
    strip(3);
    for (unsigned long p = 5; p <= 1000000 && n > 1; p += 6) {
        if (Integer(p) * p > n) break;
        strip(p);
        strip(p + 2);
    }
    if (n > 1) {
        Factorization rest;
        split_into(n, rest);
        for (auto& pe : rest) out.push_back(pe);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Factorization merged;
    for (auto& pe : out) {
        if (!merged.empty() && merged.back().first == pe.first)
            merged.back().second += pe.second;
        else
            merged.push_back(pe);
    }
    return merged;
}

std::vector<Integer> prime_divisors(const Integer& n)
{
    std::vector<Integer> ps;
    for (auto& [p, e] : factor(n)) ps.push_back(p);
    return ps;
}

bool sqrt_mod_prime(const Integer& a0, const Integer& p, Integer& root)
{
    Integer a = a0 % p;
    if (a < 0) a += p;
    if (a == 0) {
        root = 0;
        return true;
    }
    if (p == 2) {
        root = a;
        return true;
    }
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return false;
    Integer q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Integer c, t, r, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (unsigned k = 0; k + i + 1 < m; ++k) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    root = r;
    return true;
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0) raise(ErrorKind::BadInput, "empty range");
    std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
    return d(eng_);
}

Integer Rng::below(const Integer& bound)
{
    if (bound <= 0) raise(ErrorKind::BadInput, "empty range");
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    std::size_t top_bits = bits - 64 * (words - 1);
    std::uint64_t top_mask = top_bits == 64 ? ~0ull : ((1ull << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    Integer r;
    for (;;) {
        for (auto& w : buf) w = eng_();
        buf.back() &= top_mask;
        mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (r < bound) return r;
    }
}

}  // namespace isovolc
