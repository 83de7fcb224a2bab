#include "isovolc/curve.hpp"

#include "isovolc/dlog.hpp"
#include "isovolc/error.hpp"
#include "isovolc/poly.hpp"

#include <algorithm>

namespace isovolc {

// ---- discriminant bookkeeping ------------------------------------------

DiscriminantData discriminant_data(const Integer& t, const Integer& q)
{
    DiscriminantData d;
    d.d_pi = t * t - 4 * q;
    if (d.d_pi >= 0) raise(ErrorKind::BadTrace, "t^2 - 4q must be negative");
    Integer square = 1, free = 1;
    for (auto& [p, e] : factor(d.d_pi)) {
        square *= ipow(p, e / 2);
        if (e % 2) free *= p;
    }
    Integer dk = -free;
    Integer m4 = dk % 4;
    if (m4 < 0) m4 += 4;
    if (m4 == 1) {
        d.d_K = dk;
        d.g = square;
    } else {
        d.d_K = 4 * dk;
        d.g = square / 2;
    }
    return d;
}

Integer trace_power(const Integer& t, const Integer& q, unsigned r)
{
    if (r == 0) return 2;
    Integer prev = 2, cur = t;
    for (unsigned k = 2; k <= r; ++k) {
        Integer next = t * cur - q * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

DiscriminantData discriminant_after_base_change(const DiscriminantData& d, const Integer& t, const Integer& q, unsigned r)
{
    Integer u_prev = 0, u = 1;
    for (unsigned k = 2; k <= r; ++k) {
        Integer next = t * u - q * u_prev;
        u_prev = u;
        u = next;
    }
    DiscriminantData out;
    out.d_K = d.d_K;
    out.g = d.g * abs(u);
    Integer tr = trace_power(t, q, r);
    out.d_pi = tr * tr - 4 * ipow(q, r);
    if (out.g * out.g * out.d_K != out.d_pi)
        raise(ErrorKind::BadInput, "discriminant bookkeeping mismatch after base change");
    return out;
}

// ---- subfield embeddings -----------------------------------------------

FieldElem Embedding::map(const FieldElem& z) const
{
    const auto& c = z.coeffs();
    FieldElem acc = big->zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * gen_image + big->from_integer(c[i]);
    return acc;
}

std::optional<FieldElem> Embedding::descend(const FieldElem& z) const
{
    if (small->degree() == 1) {
        if (!z.in_prime_field()) return std::nullopt;
        return small->from_integer(z.coeffs()[0]);
    }
    // solve sum s_i gen_image^i = z over F_p
    const Integer& p = big->p();
    const unsigned a = small->degree(), n = big->degree();
    std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(a + 1));
    FieldElem pw = big->one();
    for (unsigned i = 0; i < a; ++i) {
        for (unsigned k = 0; k < n; ++k) rows[k][i] = pw.coeffs()[k];
        pw *= gen_image;
    }
    for (unsigned k = 0; k < n; ++k) rows[k][a] = z.coeffs()[k];
    unsigned rank = 0;
    std::vector<int> pivot_col;
    for (unsigned col = 0; col < a && rank < n; ++col) {
        unsigned piv = rank;
        while (piv < n && rows[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(rows[piv], rows[rank]);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), rows[rank][col].get_mpz_t(), p.get_mpz_t());
        for (auto& v : rows[rank]) v = v * inv % p;
        for (unsigned k = 0; k < n; ++k) {
            if (k == rank || rows[k][col] == 0) continue;
            Integer f = rows[k][col];
            for (unsigned c = 0; c <= a; ++c) {
                rows[k][c] -= f * rows[rank][c];
                mpz_mod(rows[k][c].get_mpz_t(), rows[k][c].get_mpz_t(), p.get_mpz_t());
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (unsigned k = rank; k < n; ++k)
        if (rows[k][a] != 0) return std::nullopt;
    std::vector<Integer> s(a, Integer(0));
    for (unsigned i = 0; i < rank; ++i) s[pivot_col[i]] = rows[i][a];
    return small->from_coeffs(s);
}

std::shared_ptr<const Embedding> make_embedding(const Field& small, const Field& big, Rng& rng)
{
    if (small->p() != big->p() || big->degree() % small->degree() != 0)
        raise(ErrorKind::BadInput, "not a subfield");
    auto emb = std::make_shared<Embedding>();
    emb->small = small;
    emb->big = big;
    if (small->degree() == 1) {
        emb->gen_image = big->one();
        return emb;
    }
    std::vector<FieldElem> c;
    for (auto& m : small->modulus()) c.push_back(big->from_integer(m));
    c.push_back(big->one());
    auto roots = poly_roots(Poly(big, c), rng);
    if (roots.empty()) raise(ErrorKind::BadInput, "subfield modulus has no root");
    emb->gen_image = roots.front();
    return emb;
}

// ---- points and curves ---------------------------------------------------

bool Point::operator==(const Point& o) const
{
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
}

FieldElem j_invariant(const FieldElem& A, const FieldElem& B)
{
    FieldElem a3 = A.square() * A * 4;
    FieldElem den = a3 + B.square() * 27;
    return a3 * 1728 / den;
}

std::pair<FieldElem, FieldElem> short_form(const FieldElem& a1, const FieldElem& a2, const FieldElem& a3,
                                           const FieldElem& a4, const FieldElem& a6)
{
    FieldElem b2 = a1.square() + a2 * 4;
    FieldElem b4 = a4 * 2 + a1 * a3;
    FieldElem b6 = a3.square() + a6 * 4;
    FieldElem c4 = b2.square() - b4 * 24;
    FieldElem c6 = -(b2.square() * b2) + b2 * b4 * 36 - b6 * 216;
    FieldElem inv48 = (a1.field().from_integer(48)).inv();
    FieldElem inv864 = (a1.field().from_integer(864)).inv();
    return {-(c4 * inv48), -(c6 * inv864)};
}

Curve Curve::trusted(const Field& F, const FieldElem& A, const FieldElem& B, const Integer& t,
                     const DiscriminantData& disc)
{
    Curve E;
    E.F_ = F;
    E.A_ = A;
    E.B_ = B;
    E.t_ = t;
    E.disc_ = disc;
    return E;
}

Curve Curve::make(const Field& F, const FieldElem& A, const FieldElem& B, const Integer& t, Rng& rng, unsigned checks,
                  const DiscriminantData* known)
{
    if (A.ctx() != F.get() || B.ctx() != F.get()) raise(ErrorKind::ContextMismatch, "coefficients not in the curve field");
    FieldElem delta = A.square() * A * 4 + B.square() * 27;
    if (delta.is_zero()) raise(ErrorKind::SingularCurve, "4A^3 + 27B^2 = 0");
    if (A.is_zero()) raise(ErrorKind::SpecialJInvariant, "j = 0");
    if (B.is_zero()) raise(ErrorKind::SpecialJInvariant, "j = 1728");
    const Integer& q = F->order();
    if (t * t > 4 * q) raise(ErrorKind::BadTrace, "|t| exceeds 2 sqrt(q)");
    if (t % F->p() == 0) raise(ErrorKind::Supersingular, "p divides t");
    Curve E = trusted(F, A, B, t, DiscriminantData{});
    Integer N = E.order();
    for (unsigned i = 0; i < checks; ++i)
        if (!E.mul(N, E.random_point(rng)).inf) raise(ErrorKind::BadTrace, "q + 1 - t does not annihilate a random point");
    if (q < 65536 && cardinality_small(F, A, B) != N) raise(ErrorKind::BadTrace, "point count disagrees with q + 1 - t");
    E.disc_ = known ? *known : discriminant_data(t, q);
    return E;
}

FieldElem Curve::j_invariant() const { return isovolc::j_invariant(A_, B_); }

bool Curve::contains(const Point& P) const
{
    if (P.inf) return true;
    if (P.x.ctx() != F_.get()) return false;
    return P.y.square() == (P.x.square() + A_) * P.x + B_;
}

void Curve::check_point(const Point& P) const
{
    if (!P.inf && P.x.ctx() != F_.get()) raise(ErrorKind::ContextMismatch, "point not over the curve field");
}

Point Curve::point(const FieldElem& x, const FieldElem& y) const
{
    Point P(x, y);
    if (!contains(P)) raise(ErrorKind::BadInput, "point is not on the curve");
    return P;
}

Point Curve::neg(const Point& P) const
{
    check_point(P);
    if (P.inf) return P;
    return Point(P.x, -P.y);
}

Point Curve::dbl(const Point& P) const
{
    check_point(P);
    if (P.inf || P.y.is_zero()) return Point::infinity();
    FieldElem lam = (P.x.square() * 3 + A_) / (P.y * 2);
    FieldElem x3 = lam.square() - P.x * 2;
    FieldElem y3 = lam * (P.x - x3) - P.y;
    return Point(x3, y3);
}

Point Curve::add(const Point& P, const Point& Q) const
{
    check_point(P);
    check_point(Q);
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
        if (P.y == Q.y) return dbl(P);
        return Point::infinity();
    }
    FieldElem lam = (Q.y - P.y) / (Q.x - P.x);
    FieldElem x3 = lam.square() - P.x - Q.x;
    FieldElem y3 = lam * (P.x - x3) - P.y;
    return Point(x3, y3);
}

namespace {

struct Jac {
    FieldElem X, Y, Z;
    bool inf;
};

void jac_dbl(Jac& R, const FieldElem& A)
{
    if (R.inf) return;
    if (R.Y.is_zero()) {
        R.inf = true;
        return;
    }
    FieldElem XX = R.X.square(), YY = R.Y.square(), ZZ = R.Z.square();
    FieldElem YYYY = YY.square();
    FieldElem S = R.X * YY * 4;
    FieldElem M = XX * 3 + A * ZZ.square();
    FieldElem X3 = M.square() - S * 2;
    FieldElem Y3 = M * (S - X3) - YYYY * 8;
    FieldElem Z3 = R.Y * R.Z * 2;
    R.X = std::move(X3);
    R.Y = std::move(Y3);
    R.Z = std::move(Z3);
}

void jac_add_affine(Jac& R, const Point& P, const FieldElem& A)
{
    if (P.inf) return;
    if (R.inf) {
        R.X = P.x;
        R.Y = P.y;
        R.Z = P.x.field().one();
        R.inf = false;
        return;
    }
    FieldElem Z1Z1 = R.Z.square();
    FieldElem U2 = P.x * Z1Z1;
    FieldElem S2 = P.y * R.Z * Z1Z1;
    FieldElem H = U2 - R.X;
    FieldElem r = S2 - R.Y;
    if (H.is_zero()) {
        if (r.is_zero())
            jac_dbl(R, A);
        else
            R.inf = true;
        return;
    }
    FieldElem HH = H.square();
    FieldElem HHH = H * HH;
    FieldElem V = R.X * HH;
    FieldElem X3 = r.square() - HHH - V * 2;
    FieldElem Y3 = r * (V - X3) - R.Y * HHH;
    FieldElem Z3 = R.Z * H;
    R.X = std::move(X3);
    R.Y = std::move(Y3);
    R.Z = std::move(Z3);
}

}  // namespace

Point Curve::mul(const Integer& k, const Point& P) const
{
    check_point(P);
    if (P.inf || k == 0) return Point::infinity();
    if (k < 0) return mul(-k, neg(P));
    if (k == 1) return P;
    Jac R{FieldElem(), FieldElem(), FieldElem(), true};
    for (std::size_t i = mpz_sizeinbase(k.get_mpz_t(), 2); i-- > 0;) {
        jac_dbl(R, A_);
        if (mpz_tstbit(k.get_mpz_t(), i)) jac_add_affine(R, P, A_);
    }
    if (R.inf) return Point::infinity();
    FieldElem zi = R.Z.inv();
    FieldElem zi2 = zi.square();
    return Point(R.X * zi2, R.Y * zi2 * zi);
}

Point Curve::random_point(Rng& rng) const
{
    for (;;) {
        FieldElem x = F_->random(rng);
        FieldElem f = (x.square() + A_) * x + B_;
        auto y = f.sqrt();
        if (!y) continue;
        if (rng.next() & 1) return Point(x, -*y);
        return Point(x, *y);
    }
}

unsigned Curve::ell_order(const Point& P, const Integer& ell, unsigned max_e) const
{
    Point Q = P;
    unsigned e = 0;
    while (!Q.inf) {
        if (e == max_e) return max_e + 1;
        Q = mul(ell, Q);
        ++e;
    }
    return e;
}

// ---- constructions -------------------------------------------------------

Curve curve_from_j(const Field& F, const FieldElem& j, const Integer& t, Rng& rng, int checks,
                   const DiscriminantData* known)
{
    FieldElem c1728 = F->from_integer(1728);
    if (j.is_zero() || j == c1728) raise(ErrorKind::SpecialJInvariant, "j in {0, 1728}");
    FieldElem k = j / (c1728 - j);
    FieldElem A = k * 3, B = k * 2;
    try {
        return Curve::make(F, A, B, t, rng, checks, known);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BadTrace) throw;
    }
    const FieldElem& c = F->nonresidue();
    FieldElem c2 = c.square();
    try {
        return Curve::make(F, A * c2, B * c2 * c, t, rng, checks, known);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BadTrace) throw;
    }
    raise(ErrorKind::NoMatchingTwist, "neither the curve nor its twist has trace " + to_decimal(t));
}

Curve quadratic_twist(const Curve& E)
{
    const FieldElem& c = E.field()->nonresidue();
    FieldElem c2 = c.square();
    Curve T = Curve::trusted(E.field(), E.a() * c2, E.b() * c2 * c, -E.trace(), E.disc());
    return T;
}

Curve base_change(const Curve& E, unsigned r, Rng& rng)
{
    if (r < 1) raise(ErrorKind::BadInput, "extension degree must be >= 1");
    if (r == 1) return E;
    const Field& F = E.field();
    Field G = make_field(F->p(), F->degree() * r);
    auto emb = make_embedding(F, G, rng);
    Integer tr = trace_power(E.trace(), F->order(), r);
    DiscriminantData d = discriminant_after_base_change(E.disc(), E.trace(), F->order(), r);
    Curve out = Curve::trusted(G, emb->map(E.a()), emb->map(E.b()), tr, d);
    out.set_base(BaseInfo{F, E.trace(), E.disc(), r, emb});
    return out;
}

TorsionDegree torsion_extension_degree(const Curve& E, const Integer& ell)
{
    const Integer& q = E.field()->order();
    unsigned long ord = mult_order(q, ell);
    for (unsigned long r : {ord, 2 * ord}) {
        Integer tr = trace_power(E.trace(), q, (unsigned)r);
        Integer qr = ipow(q, r);
        if ((qr + 1 - tr) % ell == 0) return {r, false};
        // quadratic twist over F_{q^r}
        if ((qr + 1 + tr) % ell == 0) return {r, true};
    }
    raise(ErrorKind::BadInput, "no rational ell-torsion in degree ord or 2 ord");
}

// ---- discrete logs on the curve ----------------------------------------

namespace {

struct SubgroupLog {
    const Curve& E;
    Integer ell;
    unsigned long m;
    std::vector<std::pair<Integer, unsigned long>> baby;  // (x encoding, j) for j*gamma, j = 1..m-1
    std::vector<Point> pts;
    Point giant;  // -m gamma

    SubgroupLog(const Curve& E_, const Point& gamma, const Integer& ell_) : E(E_), ell(ell_)
    {
        Integer s = isqrt(ell) + 1;
        m = s.get_ui();
        Point cur = gamma;
        pts.push_back(Point::infinity());
        for (unsigned long j = 1; j < m; ++j) {
            pts.push_back(cur);
            if (!cur.inf) baby.emplace_back(cur.x.encode(), j);
            cur = E.add(cur, gamma);
        }
        std::sort(baby.begin(), baby.end());
        giant = E.neg(E.mul(Integer(m), gamma));
    }

    bool digit(const Point& h, Integer& d) const
    {
        Point cur = h;
        for (unsigned long i = 0; i <= m; ++i) {
            Integer base = Integer(i) * m;
            if (cur.inf) {
                d = base % ell;
                return true;
            }
            Integer key = cur.x.encode();
            auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(key, 0ul),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            for (; it != baby.end() && it->first == key; ++it) {
                const Point& B = pts[it->second];
                if (B.y == cur.y) {
                    d = (base + it->second) % ell;
                    return true;
                }
                if (B.y == -cur.y) {
                    d = (base - it->second) % ell;
                    if (d < 0) d += ell;
                    return true;
                }
            }
            cur = E.add(cur, giant);
        }
        return false;
    }
};

}  // namespace

Integer ec_dlog(const Curve& E, const Point& base, const Point& target, const Integer& ell, unsigned k)
{
    if (target.inf) return 0;
    if (k == 0) raise(ErrorKind::NotInSubgroup, "trivial base");
    Point gamma = E.mul(ipow(ell, k - 1), base);
    if (gamma.inf) raise(ErrorKind::BadOrder, "base does not have order ell^k");
    SubgroupLog sl(E, gamma, ell);
    Integer e = 0, li = 1;
    Point cur = target;
    for (unsigned i = 0; i < k; ++i) {
        Point h = E.mul(ipow(ell, k - 1 - i), cur);
        Integer d;
        if (!sl.digit(h, d)) raise(ErrorKind::NotInSubgroup, "target not in <base>");
        if (d != 0) {
            cur = E.sub(cur, E.mul(d * li, base));
            e += d * li;
        }
        li *= ell;
    }
    if (!cur.inf) raise(ErrorKind::NotInSubgroup, "target not in <base>");
    return e;
}

// ---- small-field point count -------------------------------------------

namespace {

int jacobi_u64(unsigned long a, unsigned long n)
{
    int s = 1;
    a %= n;
    while (a) {
        while (!(a & 1)) {
            a >>= 1;
            unsigned long r = n & 7;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

}  // namespace

Integer cardinality_small(const Field& F, const FieldElem& A, const FieldElem& B)
{
    const Integer& q = F->order();
    if (q >= Integer(1ul << 32)) raise(ErrorKind::FieldTooLarge, "point counting needs q < 2^32");
    unsigned long Q = q.get_ui();
    long count = 1;
    if (F->degree() == 1) {
        unsigned long p = Q, a = A.coeffs()[0].get_ui(), b = B.coeffs()[0].get_ui();
        for (unsigned long x = 0; x < p; ++x) {
            unsigned long f = ((x * x % p + a) % p * x + b) % p;
            count += 1 + jacobi_u64(f, p);
        }
        return count;
    }
    for (unsigned long e = 0; e < Q; ++e) {
        FieldElem x = F->from_encoding(e);
        FieldElem f = (x.square() + A) * x + B;
        if (f.is_zero())
            count += 1;
        else
            count += f.is_square() ? 2 : 0;
    }
    return count;
}

Integer cardinality_small(const Curve& E) { return cardinality_small(E.field(), E.a(), E.b()); }

}  // namespace isovolc
