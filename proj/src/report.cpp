#include "repfield/report.hpp"

namespace repfield {

namespace {

Json subgroup_json(const AbelianGroup& g, const Subgroup& s) {
    Json elems = Json::array();
    for (auto i : s.elements) elems.push_back(g.element(i));
    return Json{{"order", s.order()}, {"elements", elems}, {"quotient", s.quotient_invariant_factors}};
}

}  // namespace

Json image_report(const LocalDefinedReport& r) {
    Json j;
    j["n"] = r.image.n;
    j["modulus"] = r.image.modulus;
    j["classes"] = r.image.classes;
    j["is_group"] = r.is_group;
    j["generated"] = r.generated.elements();
    j["stabilizer"] = r.stabilizer.elements();
    j["certified"] = r.image.certified;
    j["depth"] = r.image.depth;
    return j;
}

Json residual_report(const LocalOrder& h, const IrreducibleProfile& prof, int ext_degree, std::size_t residual_dimension) {
    Json j;
    j["n"] = h.n();
    j["p"] = h.ring().p();
    j["ext_degree"] = ext_degree;
    j["field"] = FiniteField::create(h.ring().p(), ext_degree)->name();
    j["residual_dimension"] = residual_dimension;
    j["dims"] = prof.dims;
    j["t"] = prof.t;
    j["uniform"] = prof.uniform;
    return j;
}

Json scenario_report(const GaloisScenario& sc, const GlobalVerdict& v) {
    const auto& g = sc.group;
    Json image = Json::array();
    for (auto i : v.image) image.push_back(g.element(i));
    Json j;
    j["group"] = g.invariant_factors();
    j["n"] = sc.n;
    j["image"] = image;
    j["is_group"] = v.image_is_subgroup;
    j["lower"] = subgroup_json(g, v.lower);
    j["upper"] = subgroup_json(g, v.upper);
    j["defined"] = v.defined;
    return j;
}

Json scenario_t_report(const GaloisScenario& sc, const Subgroup& lower) {
    Json j;
    j["group"] = sc.group.invariant_factors();
    j["n"] = sc.n;
    j["lower"] = subgroup_json(sc.group, lower);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace repfield
