#include "isovolc/report.hpp"

namespace isovolc {

Json int_json(const Integer& n) { return to_decimal(n); }

Json elem_json(const FieldElem& z) { return z.str(); }

Json point_json(const Point& P)
{
    if (P.inf) return nullptr;
    return Json::array({elem_json(P.x), elem_json(P.y)});
}

Json curve_json(const Curve& E)
{
    Json j;
    j["p"] = int_json(E.field()->p());
    j["r"] = E.field()->degree();
    j["A"] = elem_json(E.a());
    j["B"] = elem_json(E.b());
    j["trace"] = int_json(E.trace());
    j["j"] = elem_json(E.j_invariant());
    return j;
}

namespace {

Json working_json(const WorkingCurve& W)
{
    Json j;
    j["degree"] = W.r;
    j["twisted"] = W.twisted;
    if (W.r > 1) j["modulus"] = [&] {
        Json m = Json::array();
        for (auto& c : W.curve.field()->modulus()) m.push_back(int_json(c));
        return m;
    }();
    return j;
}

Json coord_json(const ProjRoot& c) { return Json::array({int_json(c.x), int_json(c.y)}); }

}  // namespace

Json sylow_json(const SylowStructure& s, const WorkingCurve& W, const Integer& ell)
{
    Json j;
    j["ell"] = int_json(ell);
    j["n1"] = s.n1;
    j["n2"] = s.n2;
    j["P1"] = point_json(s.P1);
    j["P2"] = point_json(s.P2);
    j["cofactor"] = int_json(s.cofactor);
    j["working_field"] = working_json(W);
    return j;
}

Json directions_json(const DirectionReport& rep, const WorkingCurve& W)
{
    Json j;
    j["n1"] = rep.n1;
    j["n2"] = rep.n2;
    j["height"] = rep.height;
    j["working_field"] = working_json(W);
    j["above_second_stability"] = rep.above_second_stability;
    j["on_floor"] = rep.on_floor;
    if (rep.above_second_stability) {
        j["level_invariant"] = nullptr;
        j["level"] = nullptr;
    } else {
        j["level_invariant"] = rep.level_invariant;
        j["level"] = *rep.level;
    }
    if (rep.profile_computed) {
        Json p;
        p["count"] = rep.profile.count;
        p["k"] = rep.profile.k;
        p["La"] = int_json(rep.profile.La);
        p["Lb"] = int_json(rep.profile.Lb);
        p["Lc"] = int_json(rep.profile.Lc);
        j["profile"] = p;
    } else {
        j["profile"] = nullptr;
    }
    Json roots = Json::array();
    for (auto& c : rep.profile.roots) roots.push_back(coord_json(c));
    j["roots"] = roots;
    Json ks = Json::array();
    for (auto& k : rep.up_or_horizontal) {
        Json e;
        e["coord"] = coord_json(k.coord);
        e["generator"] = point_json(k.gen);
        e["direction"] = direction_name(k.dir);
        ks.push_back(e);
    }
    j["kernels"] = ks;
    if (rep.descending_sample) {
        Json e;
        e["coord"] = coord_json(rep.descending_sample->coord);
        e["generator"] = point_json(rep.descending_sample->gen);
        e["direction"] = "descending";
        j["descending_sample"] = e;
    } else {
        j["descending_sample"] = nullptr;
    }
    j["pairing_fallback"] = rep.pairing_fallback;
    return j;
}

Json endo_json(const EndoReport& rep)
{
    Json j;
    j["ell"] = int_json(rep.ell);
    j["valuation"] = rep.index_valuation;
    j["conductor_valuation"] = rep.v_ell_f;
    j["height"] = rep.v_ell_g;
    j["level"] = rep.level;
    j["start_k"] = rep.start_k;
    j["used_classical"] = rep.used_classical;
    Json path = Json::array();
    for (auto& s : rep.path) path.push_back({{"j", elem_json(s.j)}, {"k", s.k}});
    j["path"] = path;
    return j;
}

}  // namespace isovolc
