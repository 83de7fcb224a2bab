#pragma once

#include "isovolc/isogeny.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace isovolc {

// Canonical integer encoding; negative values are read in the prime subfield.
FieldElem parse_elem(const Field& F, const std::string& s);

// y^2 = x^3 + A x + B with a known trace, or the trace counted when q < 2^32.
Curve build_curve(const Field& F, const FieldElem& A, const FieldElem& B, const std::optional<Integer>& t, Rng& rng);

// "p r A B t" or "p r a1 a2 a3 a4 a6 t"; a trailing "?" asks for the trace to be counted.
Curve parse_curve_text(const std::string& text, Rng& rng);

// Bundled Phi_ell, if shipped.
std::optional<std::filesystem::path> bundled_modpoly(const Integer& ell);

}  // namespace isovolc
