#pragma once

#include <string>

#include <json.hpp>

#include "repfield/classfield.hpp"
#include "repfield/residual.hpp"
#include "repfield/spinor.hpp"

namespace repfield {

using Json = nlohmann::ordered_json;

/// {"n", "modulus", "classes", "is_group", "generated", "stabilizer", "certified", "depth"};
/// subgroups are listed by their elements.
Json image_report(const LocalDefinedReport& r);
/// {"n", "p", "ext_degree", "field", "residual_dimension", "dims", "t", "uniform"}.
Json residual_report(const LocalOrder& h, const IrreducibleProfile& prof, int ext_degree, std::size_t residual_dimension);
/// {"group", "n", "image", "is_group", "lower", "upper", "defined"}; subgroups as
/// {"order", "elements", "quotient"} with quotient invariant factors of the fixed field.
Json scenario_report(const GaloisScenario& sc, const GlobalVerdict& v);

/// {"group", "n", "lower"} for scenarios whose places carry t-invariants.
Json scenario_t_report(const GaloisScenario& sc, const Subgroup& lower);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace repfield
