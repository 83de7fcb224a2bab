#include "zp_poly.hpp"

#include <algorithm>

namespace isovolc::zp {

void trim(Vec& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec sub(const Vec& a, const Vec& b, const Integer& p)
{
    Vec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = a[i];
        if (i < b.size()) r[i] -= b[i];
        if (r[i] < 0) r[i] += p;
    }
    trim(r);
    return r;
}

Vec mul(const Vec& a, const Vec& b, const Integer& p)
{
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (auto& c : r) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    trim(r);
    return r;
}

void divmod(const Vec& a, const Vec& b, const Integer& p, Vec& q, Vec& r)
{
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    Integer lead_inv;
    mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
    q.assign(r.size() - b.size() + 1, Integer(0));
    Integer c;
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (r[k] == 0) continue;
        c = r[k] * lead_inv;
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_submul(r[shift + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
            mpz_mod(r[shift + j].get_mpz_t(), r[shift + j].get_mpz_t(), p.get_mpz_t());
        }
    }
    trim(r);
    trim(q);
}

Vec mod(const Vec& a, const Vec& b, const Integer& p)
{
    Vec q, r;
    divmod(a, b, p, q, r);
    return r;
}

Vec gcd(Vec a, Vec b, const Integer& p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

Vec mulmod(const Vec& a, const Vec& b, const Vec& f, const Integer& p)
{
    Vec prod = mul(a, b, p);
    if (prod.size() < f.size()) return prod;
    // f monic
    std::size_t r = f.size() - 1;
    for (std::size_t k = prod.size(); k-- > r;) {
        if (prod[k] == 0) continue;
        Integer c = prod[k];
        for (std::size_t j = 0; j < r; ++j) {
            if (f[j] == 0) continue;
            mpz_submul(prod[k - r + j].get_mpz_t(), c.get_mpz_t(), f[j].get_mpz_t());
            mpz_mod(prod[k - r + j].get_mpz_t(), prod[k - r + j].get_mpz_t(), p.get_mpz_t());
        }
        prod[k] = 0;
    }
    trim(prod);
    return prod;
}

Vec powmod(const Vec& base, const Integer& e, const Vec& f, const Integer& p)
{
    Vec result{Integer(1)};
    Vec b = mod(base, f, p);
    for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
        result = mulmod(result, result, f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, f, p);
    }
    return result;
}

Vec invmod(const Vec& a, const Vec& f, const Integer& p)
{
    Vec r0 = f, r1 = a, s0, s1{Integer(1)};
    trim(r1);
    if (r1.empty()) return {};
    while (r1.size() > 1) {
        Vec q, rem;
        divmod(r0, r1, p, q, rem);
        Vec s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) return {};
    }
    Integer inv;
    mpz_invert(inv.get_mpz_t(), r1[0].get_mpz_t(), p.get_mpz_t());
    for (auto& c : s1) c = c * inv % p;
    s1 = mod(s1, f, p);
    return s1;
}

}  // namespace isovolc::zp
