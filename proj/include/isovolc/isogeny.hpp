#pragma once

#include "isovolc/curve.hpp"
#include "isovolc/poly.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace isovolc {

// Degree-ell isogeny from Velu's formulas. The codomain lives over the domain's field.
class Isogeny {
public:
    const Curve& domain() const { return dom_; }
    const Curve& codomain() const { return cod_; }
    const Point& kernel_generator() const { return K_; }
    const Integer& degree() const { return ell_; }
    Point operator()(const Point& P) const;

private:
    friend Isogeny velu(const Curve& E, const Point& K, const Integer& ell);
    struct KernelTerm {
        FieldElem x, y, gx, gy, v, u;
    };
    Curve dom_, cod_;
    Point K_;
    Integer ell_;
    std::vector<KernelTerm> terms_;
};

Isogeny velu(const Curve& E, const Point& K, const Integer& ell);

// Recognize codomain coefficients in the base field of a base-changed curve.
// Throws KernelNotRational when they are not Frobenius-stable.
Curve descend_codomain(const Isogeny& phi, Rng& rng);

struct ModPolyTerm {
    unsigned i, j;
    Integer c;
};

// Raw file contents, kept in file order for exact round trips.
struct ModPolyFile {
    unsigned ell = 0;
    std::vector<ModPolyTerm> terms;
};

ModPolyFile parse_modpoly(std::istream& in);
void write_modpoly(std::ostream& out, const ModPolyFile& f);

class ModPoly {
public:
    ModPoly(const ModPolyFile& file, const Field& F);
    unsigned ell() const { return ell_; }
    const Field& field() const { return F_; }
    // Phi(X, j) as a polynomial in X
    Poly specialize(const FieldElem& j) const;
    FieldElem eval(const FieldElem& x, const FieldElem& y) const;
    const std::vector<std::vector<FieldElem>>& dense() const { return c_; }

private:
    unsigned ell_;
    Field F_;
    std::vector<std::vector<FieldElem>> c_;  // (ell+2) x (ell+2), symmetric
};

ModPoly load_modpoly(const std::filesystem::path& path, const Integer& ell, const Field& F);

// Distinct roots of Phi(X, j), sorted.
std::vector<FieldElem> neighbors(const FieldElem& j, const ModPoly& mp, Rng& rng);

}  // namespace isovolc
