#include "isovolc/dlog.hpp"

#include "isovolc/error.hpp"

#include <algorithm>

namespace isovolc {

unsigned long mult_order(const Integer& q, const Integer& ell)
{
    if (ell < 2 || !is_probable_prime(ell)) raise(ErrorKind::BadInput, "ell must be prime");
    Integer qm = q % ell;
    if (qm == 0) raise(ErrorKind::BadInput, "ell divides q");
    Integer order = ell - 1;
    if (order == 1) return 1;
    for (auto& [d, e] : factor(order)) {
        for (unsigned i = 0; i < e; ++i) {
            Integer cand = order / d, t;
            mpz_powm(t.get_mpz_t(), qm.get_mpz_t(), cand.get_mpz_t(), ell.get_mpz_t());
            if (t == 1)
                order = cand;
            else
                break;
        }
    }
    return order.get_ui();
}

FieldElem primitive_root_of_unity(const Field& F, const Integer& ell, unsigned n, Rng& rng)
{
    Integer m = ipow(ell, n);
    Integer qm1 = F->order() - 1;
    if (n == 0 || !mpz_divisible_p(qm1.get_mpz_t(), m.get_mpz_t()))
        raise(ErrorKind::BadInput, "ell^n does not divide q - 1");
    Integer cof = qm1 / m;
    Integer sub = ipow(ell, n - 1);
    for (;;) {
        FieldElem h = F->random(rng);
        if (h.is_zero()) continue;
        FieldElem g = h.pow(cof);
        if (!g.pow(sub).is_one()) return g;
    }
}

DlogContext::DlogContext(const FieldElem& g, const Integer& ell, unsigned n)
    : g_(g), g_inv_(g.inv()), ell_(ell), n_(n)
{
    gamma_ = g.pow(ipow(ell, n - 1));
    tabled_ = ell <= (1 << 20);
    if (tabled_) {
        unsigned long L = ell.get_ui();
        table_.reserve(L);
        FieldElem cur = g.field().one();
        for (unsigned long i = 0; i < L; ++i) {
            table_.emplace_back(cur.encode(), i);
            cur *= gamma_;
        }
        std::sort(table_.begin(), table_.end());
    } else {
        Integer m = isqrt(ell) + 1;
        giant_ = m.get_ui();
        FieldElem cur = g.field().one();
        table_.reserve(giant_);
        for (unsigned long i = 0; i < giant_; ++i) {
            table_.emplace_back(cur.encode(), i);
            cur *= gamma_;
        }
        std::sort(table_.begin(), table_.end());
        giant_step_ = cur.inv();
    }
}

Integer DlogContext::digit(const FieldElem& h) const
{
    auto lookup = [&](const Integer& key, unsigned long& idx) {
        auto it = std::lower_bound(table_.begin(), table_.end(), std::make_pair(key, 0ul),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == table_.end() || it->first != key) return false;
        idx = it->second;
        return true;
    };
    unsigned long idx;
    if (tabled_) {
        if (!lookup(h.encode(), idx)) raise(ErrorKind::NotInSubgroup, "element not in the subgroup");
        return Integer(idx);
    }
    FieldElem cur = h;
    for (unsigned long j = 0; j <= giant_; ++j) {
        if (lookup(cur.encode(), idx)) {
            Integer d = Integer(j) * giant_ + idx;
            return d % ell_;
        }
        cur *= giant_step_;
    }
    raise(ErrorKind::NotInSubgroup, "element not in the subgroup");
}

Integer DlogContext::log(const FieldElem& x) const
{
    if (x.ctx() != g_.ctx()) raise(ErrorKind::ContextMismatch, "dlog operands in different fields");
    Integer e = 0, li = 1;
    FieldElem cur = x;  // x * g^{-e}
    for (unsigned i = 0; i < n_; ++i) {
        FieldElem h = cur.pow(ipow(ell_, n_ - 1 - i));
        Integer d = digit(h);
        if (d != 0) {
            cur *= g_inv_.pow(d * li);
            e += d * li;
        }
        li *= ell_;
    }
    if (!cur.is_one()) raise(ErrorKind::NotInSubgroup, "element not in the subgroup");
    return e;
}

Integer dlog_prime_power(const FieldElem& g, const FieldElem& x, const Integer& ell, unsigned n)
{
    DlogContext ctx(g, ell, n);
    return ctx.log(x);
}

}  // namespace isovolc
