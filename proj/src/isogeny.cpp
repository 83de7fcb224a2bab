#include "isovolc/isogeny.hpp"

#include "isovolc/error.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace isovolc {

// ---- Velu ----------------------------------------------------------------

Isogeny velu(const Curve& E, const Point& K, const Integer& ell)
{
    if (K.inf) raise(ErrorKind::BadKernel, "kernel generator is O");
    if (!E.contains(K)) raise(ErrorKind::BadKernel, "kernel generator not on the curve");
    if (!E.mul(ell, K).inf) raise(ErrorKind::BadKernel, "kernel generator does not have order ell");
    Isogeny phi;
    phi.dom_ = E;
    phi.K_ = K;
    phi.ell_ = ell;
    const Field& F = E.field();
    FieldElem v = F->zero(), w = F->zero();
    // representatives of (<K> \ O) / +-
    unsigned long half = ell == 2 ? 1 : (ell.get_ui() - 1) / 2;
    Point Q = K;
    for (unsigned long i = 0; i < half; ++i) {
        Isogeny::KernelTerm t;
        t.x = Q.x;
        t.y = Q.y;
        t.gx = Q.x.square() * 3 + E.a();
        t.gy = -(Q.y * 2);
        t.v = Q.y.is_zero() ? t.gx : t.gx * 2;
        t.u = t.gy.square();
        v += t.v;
        w += t.u + t.x * t.v;
        phi.terms_.push_back(std::move(t));
        if (i + 1 < half) Q = E.add(Q, K);
    }
    FieldElem A2 = E.a() - v * 5, B2 = E.b() - w * 7;
    phi.cod_ = Curve::trusted(F, A2, B2, E.trace(), E.disc());
    if (E.base()) phi.cod_.set_base(*E.base());
    return phi;
}

Point Isogeny::operator()(const Point& P) const
{
    if (P.inf) return P;
    const Field& F = dom_.field();
    // batch-invert x - x_Q
    std::vector<FieldElem> d, prefix;
    d.reserve(terms_.size());
    prefix.reserve(terms_.size());
    FieldElem acc = F->one();
    for (auto& t : terms_) {
        d.push_back(P.x - t.x);
        if (d.back().is_zero()) return Point::infinity();
        prefix.push_back(acc);
        acc *= d.back();
    }
    FieldElem inv = acc.inv();
    std::vector<FieldElem> dinv(terms_.size());
    for (std::size_t i = terms_.size(); i-- > 0;) {
        dinv[i] = inv * prefix[i];
        inv *= d[i];
    }
    FieldElem X = P.x, Y = P.y;
    FieldElem y2 = P.y * 2;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        FieldElem i1 = dinv[i], i2 = i1.square(), i3 = i2 * i1;
        X += t.v * i1 + t.u * i2;
        Y -= t.u * y2 * i3 + (t.v * (P.y - t.y) - t.gx * t.gy) * i2;
    }
    return Point(X, Y);
}

Curve descend_codomain(const Isogeny& phi, Rng& rng)
{
    const Curve& C = phi.codomain();
    if (!C.base()) return C;
    const BaseInfo& b = *C.base();
    auto A = b.embedding->descend(C.a());
    auto B = b.embedding->descend(C.b());
    if (!A || !B) raise(ErrorKind::KernelNotRational, "codomain is not defined over the base field");
    (void)rng;
    return Curve::trusted(b.field, *A, *B, b.trace, b.disc);
}

// ---- modular polynomials -------------------------------------------------

ModPolyFile parse_modpoly(std::istream& in)
{
    ModPolyFile f;
    std::string line;
    bool header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ls(line);
        if (!header) {
            std::string kw, lv;
            ls >> kw >> lv;
            if (kw != "ell" || lv.empty()) raise(ErrorKind::ParseError, "expected 'ell <n>' header");
            Integer l = parse_integer(lv);
            if (l < 2 || l > 100000) raise(ErrorKind::ParseError, "unreasonable level");
            f.ell = l.get_ui();
            header = true;
            continue;
        }
        std::string si, sj, sc, extra;
        ls >> si >> sj >> sc >> extra;
        if (sc.empty() || !extra.empty()) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'i j c'");
        Integer i = parse_integer(si), j = parse_integer(sj);
        if (i < 0 || j < 0 || i > f.ell + 1) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": degree out of range");
        if (i < j) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": terms must have i >= j");
        f.terms.push_back({(unsigned)i.get_ui(), (unsigned)j.get_ui(), parse_integer(sc)});
    }
    if (!header) raise(ErrorKind::ParseError, "empty modular polynomial file");
    return f;
}

void write_modpoly(std::ostream& out, const ModPolyFile& f)
{
    out << "ell " << f.ell << '\n';
    for (auto& t : f.terms) out << t.i << ' ' << t.j << ' ' << to_decimal(t.c) << '\n';
}

ModPoly::ModPoly(const ModPolyFile& file, const Field& F) : ell_(file.ell), F_(F)
{
    const unsigned n = ell_ + 2;
    c_.assign(n, std::vector<FieldElem>(n, F->zero()));
    for (auto& t : file.terms) {
        FieldElem v = F->from_integer(t.c);
        c_[t.i][t.j] += v;
        if (t.i != t.j) c_[t.j][t.i] += v;
    }
}

Poly ModPoly::specialize(const FieldElem& j) const
{
    const unsigned n = ell_ + 2;
    std::vector<FieldElem> pw(n);
    pw[0] = F_->one();
    for (unsigned k = 1; k < n; ++k) pw[k] = pw[k - 1] * j;
    std::vector<FieldElem> out(n, F_->zero());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k)
            if (!c_[i][k].is_zero()) out[i] += c_[i][k] * pw[k];
    return Poly(F_, std::move(out));
}

FieldElem ModPoly::eval(const FieldElem& x, const FieldElem& y) const { return specialize(y).eval(x); }

ModPoly load_modpoly(const std::filesystem::path& path, const Integer& ell, const Field& F)
{
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ParseError, "cannot open " + path.string());
    ModPolyFile f = parse_modpoly(in);
    if (Integer(f.ell) != ell)
        raise(ErrorKind::WrongLevel, "file holds Phi_" + std::to_string(f.ell) + ", wanted Phi_" + to_decimal(ell));
    return ModPoly(f, F);
}

std::vector<FieldElem> neighbors(const FieldElem& j, const ModPoly& mp, Rng& rng)
{
    return poly_roots(mp.specialize(j), rng);
}

}  // namespace isovolc
