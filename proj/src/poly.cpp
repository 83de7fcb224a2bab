#include "isovolc/poly.hpp"

#include "isovolc/error.hpp"

#include <algorithm>

namespace isovolc {

Poly::Poly(Field f, std::vector<FieldElem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

Poly Poly::x(const Field& f) { return Poly(f, {f->zero(), f->one()}); }

Poly Poly::constant(const Field& f, const FieldElem& c) { return Poly(f, {c}); }

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem Poly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }

Poly Poly::monic() const
{
    if (c_.empty()) return *this;
    return scale(lead().inv());
}

FieldElem Poly::eval(const FieldElem& z) const
{
    FieldElem acc = field_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.field_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(a.field_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b)
{
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.field_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(a.field_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, a.field_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.field_, std::move(c));
}

Poly Poly::scale(const FieldElem& k) const
{
    std::vector<FieldElem> c = c_;
    for (auto& x : c) x *= k;
    return Poly(field_, std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r)
{
    if (b.is_zero()) raise(ErrorKind::DivisionByZero, "polynomial division by zero");
    const Field& F = a.field_;
    std::vector<FieldElem> rem = a.c_;
    if (rem.size() < b.c_.size()) {
        q = Poly(F);
        r = a;
        return;
    }
    FieldElem inv = b.lead().inv();
    bool monic = b.lead().is_one();
    std::vector<FieldElem> quo(rem.size() - b.c_.size() + 1, F->zero());
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k].is_zero()) continue;
        FieldElem c = monic ? rem[k] : rem[k] * inv;
        std::size_t s = k - db;
        for (std::size_t j = 0; j < db; ++j)
            if (!b.c_[j].is_zero()) rem[s + j] -= c * b.c_[j];
        rem[k] = F->zero();
        quo[s] = std::move(c);
    }
    rem.resize(db);
    q = Poly(F, std::move(quo));
    r = Poly(F, std::move(rem));
}

Poly operator%(const Poly& a, const Poly& b)
{
    Poly q(a.field_), r(a.field_);
    Poly::divmod(a, b, q, r);
    return r;
}

Poly operator/(const Poly& a, const Poly& b)
{
    Poly q(a.field_), r(a.field_);
    Poly::divmod(a, b, q, r);
    return q;
}

std::string Poly::str() const
{
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ' ';
        s += c_[i].str();
    }
    return s;
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const Integer& e, const Poly& m)
{
    const Field& F = m.field();
    Poly r = Poly::constant(F, F->one()) % m;
    Poly b = base % m;
    for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

namespace {

void split_linear(const Poly& g, Rng& rng, std::vector<FieldElem>& out)
{
    const Field& F = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        Poly m = g.monic();
        out.push_back(-m[0]);
        return;
    }
    const Integer& q = F->order();
    if (q == 2 || mpz_even_p(q.get_mpz_t())) raise(ErrorKind::BadCharacteristic, "odd characteristic required");
    Integer half = (q - 1) / 2;
    for (;;) {
        Poly shift(F, {F->random(rng), F->one()});
        Poly h = powmod(shift, half, g) - Poly::constant(F, F->one());
        Poly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(g / d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FieldElem> poly_roots(const Poly& f, Rng& rng)
{
    if (f.is_zero()) raise(ErrorKind::BadInput, "roots of the zero polynomial");
    const Field& F = f.field();
    std::vector<FieldElem> roots;
    if (f.degree() < 1) return roots;
    Poly m = f.monic();
    Poly x = Poly::x(F);
    Poly xq = powmod(x, F->order(), m);
    Poly g = gcd(m, xq - x);
    split_linear(g, rng, roots);
    std::vector<std::pair<Integer, FieldElem>> keyed;
    for (auto& r : roots) keyed.emplace_back(r.encode(), r);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    roots.clear();
    for (std::size_t i = 0; i < keyed.size(); ++i)
        if (i == 0 || keyed[i].first != keyed[i - 1].first) roots.push_back(keyed[i].second);
    return roots;
}

}  // namespace isovolc
