#include "isovolc/field.hpp"

#include "isovolc/error.hpp"
#include "zp_poly.hpp"

#include <map>
#include <mutex>

namespace isovolc {

OpCounter& op_counter()
{
    thread_local OpCounter c;
    return c;
}

// ---- FieldElem ----------------------------------------------------------

void FieldElem::check(const FieldElem& o) const
{
    if (ctx_ != o.ctx_ || ctx_ == nullptr)
        raise(ErrorKind::ContextMismatch, "operands live in different fields");
}

bool FieldElem::is_zero() const
{
    for (auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool FieldElem::is_one() const
{
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElem::in_prime_field() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Integer FieldElem::encode() const
{
    Integer e = 0;
    for (std::size_t i = c_.size(); i-- > 0;) e = e * ctx_->p_ + c_[i];
    return e;
}

FieldElem FieldElem::operator-() const
{
    FieldElem r = *this;
    for (auto& c : r.c_)
        if (c != 0) c = ctx_->p_ - c;
    return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o)
{
    check(o);
    const Integer& p = ctx_->p_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpz_add(c_[i].get_mpz_t(), c_[i].get_mpz_t(), o.c_[i].get_mpz_t());
        if (c_[i] >= p) mpz_sub(c_[i].get_mpz_t(), c_[i].get_mpz_t(), p.get_mpz_t());
    }
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o)
{
    check(o);
    const Integer& p = ctx_->p_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpz_sub(c_[i].get_mpz_t(), c_[i].get_mpz_t(), o.c_[i].get_mpz_t());
        if (mpz_sgn(c_[i].get_mpz_t()) < 0) mpz_add(c_[i].get_mpz_t(), c_[i].get_mpz_t(), p.get_mpz_t());
    }
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o)
{
    check(o);
    if (c_.size() == 1) {
        ++op_counter().base_mul;
        mpz_mul(c_[0].get_mpz_t(), c_[0].get_mpz_t(), o.c_[0].get_mpz_t());
        mpz_mod(c_[0].get_mpz_t(), c_[0].get_mpz_t(), ctx_->p_.get_mpz_t());
        return *this;
    }
    std::vector<Integer> out;
    ctx_->reduce_mul(c_, o.c_, out);
    c_ = std::move(out);
    return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o)
{
    check(o);
    return *this *= o.inv();
}

FieldElem FieldElem::operator*(long k) const
{
    FieldElem r = *this;
    for (auto& c : r.c_) {
        c *= k;
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ctx_->p_.get_mpz_t());
    }
    return r;
}

bool FieldElem::operator==(const FieldElem& o) const
{
    check(o);
    return c_ == o.c_;
}

FieldElem FieldElem::square() const { return *this * *this; }

FieldElem FieldElem::inv() const
{
    if (is_zero()) raise(ErrorKind::DivisionByZero, "inverse of zero");
    ++op_counter().inversions;
    if (c_.size() == 1) {
        FieldElem r = *this;
        mpz_invert(r.c_[0].get_mpz_t(), c_[0].get_mpz_t(), ctx_->p_.get_mpz_t());
        return r;
    }
    return FieldElem(ctx_, ctx_->invert(c_));
}

FieldElem FieldElem::pow(const Integer& e0) const
{
    if (e0 < 0) return inv().pow(-e0);
    if (e0 == 0) return ctx_->one();
    // 4-bit fixed window
    std::vector<FieldElem> table(16);
    table[0] = ctx_->one();
    table[1] = *this;
    std::size_t bits = mpz_sizeinbase(e0.get_mpz_t(), 2);
    if (bits > 8)
        for (int i = 2; i < 16; ++i) table[i] = table[i - 1] * *this;
    FieldElem r = ctx_->one();
    if (bits <= 8) {
        for (std::size_t i = bits; i-- > 0;) {
            r = r.square();
            if (mpz_tstbit(e0.get_mpz_t(), i)) r *= *this;
        }
        return r;
    }
    std::size_t top = (bits + 3) / 4;
    bool started = false;
    for (std::size_t w = top; w-- > 0;) {
        unsigned digit = 0;
        for (int b = 3; b >= 0; --b) digit = (digit << 1) | mpz_tstbit(e0.get_mpz_t(), 4 * w + b);
        if (started)
            for (int s = 0; s < 4; ++s) r = r.square();
        if (digit) {
            if (started)
                r *= table[digit];
            else
                r = table[digit];
            started = true;
        }
    }
    return r;
}

FieldElem FieldElem::frobenius() const
{
    if (c_.size() == 1) return *this;
    return pow(ctx_->p_);
}

bool FieldElem::is_square() const
{
    if (is_zero()) return true;
    if (c_.size() == 1) return mpz_legendre(c_[0].get_mpz_t(), ctx_->p_.get_mpz_t()) == 1;
    return pow((ctx_->q_ - 1) / 2).is_one();
}

std::optional<FieldElem> FieldElem::sqrt() const
{
    if (is_zero()) return *this;
    const FieldCtx& F = *ctx_;
    // Tonelli-Shanks: q - 1 = 2^s Q
    FieldElem w = pow((F.odd_part_ - 1) / 2);
    FieldElem r = *this * w;
    FieldElem t = r * w;
    FieldElem c = F.ts_root_;
    unsigned m = F.two_adicity_;
    while (!t.is_one()) {
        unsigned i = 0;
        FieldElem tt = t;
        while (!tt.is_one()) {
            tt = tt.square();
            if (++i == m) return std::nullopt;
        }
        FieldElem b = c;
        for (unsigned k = 0; k + i + 1 < m; ++k) b = b.square();
        m = i;
        c = b.square();
        t *= c;
        r *= b;
    }
    return r;
}

// ---- FieldCtx -----------------------------------------------------------

FieldElem FieldCtx::zero() const { return FieldElem(this, std::vector<Integer>(r_, Integer(0))); }

FieldElem FieldCtx::one() const
{
    FieldElem e = zero();
    e.c_[0] = 1;
    return e;
}

FieldElem FieldCtx::from_integer(const Integer& n) const
{
    FieldElem e = zero();
    mpz_mod(e.c_[0].get_mpz_t(), n.get_mpz_t(), p_.get_mpz_t());
    return e;
}

FieldElem FieldCtx::from_encoding(const Integer& enc) const
{
    if (enc < 0 || enc >= q_) raise(ErrorKind::BadInput, "encoding out of range: " + to_decimal(enc));
    FieldElem e = zero();
    Integer rest = enc;
    for (unsigned i = 0; i < r_; ++i) {
        mpz_fdiv_qr(rest.get_mpz_t(), e.c_[i].get_mpz_t(), rest.get_mpz_t(), p_.get_mpz_t());
    }
    return e;
}

FieldElem FieldCtx::from_coeffs(std::vector<Integer> c) const
{
    if (c.size() > r_) raise(ErrorKind::BadInput, "too many coefficients");
    c.resize(r_, Integer(0));
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
    return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::generator() const
{
    if (r_ == 1) return one();
    FieldElem e = zero();
    e.c_[1] = 1;
    return e;
}

FieldElem FieldCtx::random(Rng& rng) const
{
    FieldElem e = zero();
    for (auto& c : e.c_) c = rng.below(p_);
    return e;
}

void FieldCtx::reduce_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, std::vector<Integer>& out) const
{
    const unsigned r = r_;
    op_counter().base_mul += std::uint64_t(r) * r;
    out.assign(r, Integer(0));
    if (small_) {
        thread_local std::vector<std::uint64_t> av, bv, res;
        thread_local std::vector<unsigned __int128> acc;
        av.resize(r);
        bv.resize(r);
        for (unsigned i = 0; i < r; ++i) {
            av[i] = mpz_get_ui(a[i].get_mpz_t());
            bv[i] = mpz_get_ui(b[i].get_mpz_t());
        }
        const std::uint64_t p = p64_;
        res.assign(2 * r - 1, 0);
        for (unsigned k = 0; k < 2 * r - 1; ++k) {
            unsigned lo = k >= r ? k - r + 1 : 0, hi = k < r ? k : r - 1;
            unsigned __int128 s = 0;
            unsigned cnt = 0;
            for (unsigned i = lo; i <= hi; ++i) {
                s += (unsigned __int128)av[i] * bv[k - i];
                if (++cnt == acc_limit_) {
                    s %= p;
                    cnt = 1;
                }
            }
            res[k] = (std::uint64_t)(s % p);
        }
        for (unsigned k = 2 * r - 1; k-- > r;) {
            std::uint64_t c = res[k];
            if (!c) continue;
            for (auto& [j, nm] : negmod_) {
                unsigned __int128 s = (unsigned __int128)nm * c + res[k - r + j];
                res[k - r + j] = (std::uint64_t)(s % p);
            }
        }
        for (unsigned i = 0; i < r; ++i) out[i] = (unsigned long)res[i];
        return;
    }
    std::vector<Integer> acc(2 * r - 1);
    for (unsigned i = 0; i < r; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < r; ++j) mpz_addmul(acc[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (unsigned k = 2 * r - 1; k-- > r;) {
        mpz_mod(acc[k].get_mpz_t(), acc[k].get_mpz_t(), p_.get_mpz_t());
        if (acc[k] == 0) continue;
        for (unsigned j = 0; j < r; ++j)
            if (mod_[j] != 0) mpz_submul(acc[k - r + j].get_mpz_t(), acc[k].get_mpz_t(), mod_[j].get_mpz_t());
    }
    for (unsigned i = 0; i < r; ++i) {
        mpz_mod(acc[i].get_mpz_t(), acc[i].get_mpz_t(), p_.get_mpz_t());
        out[i] = std::move(acc[i]);
    }
}

std::vector<Integer> FieldCtx::invert(const std::vector<Integer>& a) const
{
    zp::Vec f = mod_;
    f.push_back(1);
    zp::Vec inv = zp::invmod(a, f, p_);
    if (inv.empty()) raise(ErrorKind::DivisionByZero, "non-invertible element");
    inv.resize(r_, Integer(0));
    return inv;
}

void FieldCtx::setup_small()
{
    small_ = r_ > 1 && mpz_sizeinbase(p_.get_mpz_t(), 2) <= 62;
    if (!small_) return;
    p64_ = mpz_get_ui(p_.get_mpz_t());
    unsigned bits = mpz_sizeinbase(p_.get_mpz_t(), 2);
    unsigned head = 128 - 2 * bits;
    acc_limit_ = head >= 31 ? (1u << 31) : (1u << head);
    for (unsigned j = 0; j < r_; ++j)
        if (mod_[j] != 0) negmod_.emplace_back(j, mpz_get_ui(Integer(p_ - mod_[j]).get_mpz_t()));
}

void FieldCtx::setup_sqrt()
{
    // smallest encoding that is a non-square; in even degree F_p holds only squares, so start at x
    Integer half = (q_ - 1) / 2;
    for (Integer e = r_ > 1 ? p_ : Integer(2);; ++e) {
        FieldElem z = from_encoding(e);
        if (!z.pow(half).is_one()) {
            nonres_ = z;
            break;
        }
    }
    odd_part_ = q_ - 1;
    two_adicity_ = 0;
    while (mpz_even_p(odd_part_.get_mpz_t())) {
        odd_part_ /= 2;
        ++two_adicity_;
    }
    ts_root_ = nonres_.pow(odd_part_);
}

// ---- construction -------------------------------------------------------

bool is_irreducible_mod_p(const std::vector<Integer>& low, const Integer& p)
{
    const std::size_t r = low.size();
    if (r == 1) return true;
    if (low[0] == 0) return false;
    zp::Vec f = low;
    f.push_back(1);
    zp::Vec x{Integer(0), Integer(1)};
    zp::Vec xp = zp::powmod(x, p, f, p);
    // cheap rejection of linear factors
    if (zp::gcd(f, zp::sub(xp, x, p), p).size() > 1) return false;
    // Frobenius as a linear map: column i is x^{ip} mod f
    std::vector<zp::Vec> cols(r);
    cols[0] = {Integer(1)};
    for (std::size_t i = 1; i < r; ++i) cols[i] = zp::mulmod(cols[i - 1], xp, f, p);
    auto frob = [&](const zp::Vec& g) {
        zp::Vec out(r);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) continue;
            for (std::size_t k = 0; k < cols[i].size(); ++k)
                mpz_addmul(out[k].get_mpz_t(), g[i].get_mpz_t(), cols[i][k].get_mpz_t());
        }
        for (auto& c : out) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        zp::trim(out);
        return out;
    };
    std::vector<std::size_t> maximal;
    for (auto& d : prime_divisors(Integer((unsigned long)r))) maximal.push_back(r / d.get_ui());
    zp::Vec cur = xp;
    for (std::size_t k = 1; k <= r; ++k) {
        if (k > 1) cur = frob(cur);
        bool check_gcd = false;
        for (auto m : maximal)
            if (m == k) check_gcd = true;
        if (check_gcd && zp::gcd(f, zp::sub(cur, x, p), p).size() > 1) return false;
    }
    return zp::sub(cur, x, p).empty();
}

namespace {

bool binomials_possible(const Integer& p, unsigned r)
{
    // x^r - a irreducible for some a iff every prime factor of r divides p - 1,
    // and 4 | p - 1 when 4 | r
    Integer pm1 = p - 1;
    for (auto& d : prime_divisors(Integer(r)))
        if (!mpz_divisible_p(pm1.get_mpz_t(), d.get_mpz_t())) return false;
    if (r % 4 == 0 && !mpz_divisible_ui_p(pm1.get_mpz_t(), 4)) return false;
    return true;
}

std::vector<Integer> smallest_modulus(const Integer& p, unsigned r)
{
    Integer start = 1;
    // the binomial family is exactly encodings below p; skip it when provably empty
    if (!binomials_possible(p, r)) start = p;
    for (Integer m = start;; ++m) {
        std::vector<Integer> low(r);
        Integer rest = m;
        for (unsigned i = 0; i < r; ++i) mpz_fdiv_qr(rest.get_mpz_t(), low[i].get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        if (low[0] == 0) continue;
        if (is_irreducible_mod_p(low, p)) return low;
    }
}

}  // namespace

Field make_field(const Integer& p, unsigned r)
{
    if (r < 1) raise(ErrorKind::BadInput, "extension degree must be >= 1");
    if (p == 2 || p == 3) raise(ErrorKind::BadCharacteristic, "characteristic 2 and 3 are not supported");
    if (!is_probable_prime(p)) raise(ErrorKind::NonPrime, to_decimal(p) + " is not prime");

    static std::mutex mu;
    static std::map<std::pair<std::string, unsigned>, std::weak_ptr<const FieldCtx>> registry;
    auto key = std::make_pair(to_decimal(p), r);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(key);
        if (it != registry.end())
            if (auto sp = it->second.lock()) return sp;
    }
    std::shared_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->p_ = p;
    ctx->r_ = r;
    ctx->q_ = ipow(p, r);
    if (r > 1) ctx->mod_ = smallest_modulus(p, r);
    ctx->setup_small();
    ctx->setup_sqrt();
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[key];
    if (auto sp = slot.lock()) return sp;
    slot = ctx;
    return ctx;
}

}  // namespace isovolc
