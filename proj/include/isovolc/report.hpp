#pragma once

#include "isovolc/volcano.hpp"

#include "json.hpp"

namespace isovolc {

using Json = nlohmann::ordered_json;

// Big integers go out as decimal strings; points as [x, y] or null for O.
Json int_json(const Integer& n);
Json elem_json(const FieldElem& z);
Json point_json(const Point& P);
Json curve_json(const Curve& E);

Json sylow_json(const SylowStructure& s, const WorkingCurve& W, const Integer& ell);
Json directions_json(const DirectionReport& rep, const WorkingCurve& W);
Json endo_json(const EndoReport& rep);

}  // namespace isovolc
