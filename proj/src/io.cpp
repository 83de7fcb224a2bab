#include "isovolc/io.hpp"

#include "isovolc/error.hpp"

#include <sstream>
#include <vector>

#ifndef ISOVOLC_DATA_DIR
#define ISOVOLC_DATA_DIR "data"
#endif

namespace isovolc {

FieldElem parse_elem(const Field& F, const std::string& s)
{
    Integer v = parse_integer(s);
    if (v < 0) return F->from_integer(v);
    if (v >= F->order()) raise(ErrorKind::BadInput, "field element " + s + " is not a canonical encoding");
    return F->from_encoding(v);
}

Curve build_curve(const Field& F, const FieldElem& A, const FieldElem& B, const std::optional<Integer>& t, Rng& rng)
{
    if (t) return Curve::make(F, A, B, *t, rng);
    if (F->order() >= Integer(1ul << 32))
        raise(ErrorKind::BadInput, "the trace is required when q >= 2^32");
    Integer N = cardinality_small(F, A, B);
    return Curve::make(F, A, B, F->order() + 1 - N, rng);
}

Curve parse_curve_text(const std::string& text, Rng& rng)
{
    std::istringstream in(text);
    std::vector<std::string> tok;
    for (std::string w; in >> w;) {
        if (w[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        tok.push_back(w);
    }
    if (tok.size() != 5 && tok.size() != 8)
        raise(ErrorKind::ParseError, "curve text needs 5 or 8 tokens, got " + std::to_string(tok.size()));
    Integer p = parse_integer(tok[0]);
    Integer r = parse_integer(tok[1]);
    if (r < 1 || r > 1000) raise(ErrorKind::ParseError, "bad extension degree " + tok[1]);
    Field F = make_field(p, unsigned(r.get_ui()));
    std::optional<Integer> t;
    if (tok.back() != "?") t = parse_integer(tok.back());
    if (tok.size() == 5) return build_curve(F, parse_elem(F, tok[2]), parse_elem(F, tok[3]), t, rng);
    auto [A, B] = short_form(parse_elem(F, tok[2]), parse_elem(F, tok[3]), parse_elem(F, tok[4]), parse_elem(F, tok[5]),
                             parse_elem(F, tok[6]));
    return build_curve(F, A, B, t, rng);
}

std::optional<std::filesystem::path> bundled_modpoly(const Integer& ell)
{
    std::filesystem::path p = std::filesystem::path(ISOVOLC_DATA_DIR) / "modpoly" / ("phi_" + to_decimal(ell) + ".txt");
    if (std::filesystem::exists(p)) return p;
    return std::nullopt;
}

}  // namespace isovolc
