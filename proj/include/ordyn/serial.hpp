#pragma once

#include <json.hpp>

#include "ordyn/certify.hpp"
#include "ordyn/dynamics.hpp"
#include "ordyn/group.hpp"
#include "ordyn/norms.hpp"
#include "ordyn/simple_function.hpp"
#include "ordyn/weight.hpp"
#include "ordyn/young.hpp"

namespace ordyn {

// Deterministic report/object encoding: insertion-ordered keys, '.' decimals
// (nlohmann emits locale-independent shortest round-trip doubles).
using json = nlohmann::ordered_json;

json young_to_json(const YoungFunction& phi);
YoungFunction young_from_json(const json& j);

json group_to_json(const GroupSpace& G);
GroupSpace group_from_json(const json& j);

json point_to_json(const GroupPoint& p);
GroupPoint point_from_json(const GroupSpace& G, const json& j);

json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j);

json function_to_json(const SimpleFunction& f);
SimpleFunction function_from_json(const GroupSpace& G, const json& j);

json pointset_to_json(const PointSet& s);
PointSet pointset_from_json(const GroupSpace& G, const json& j);

json norm_result_to_json(const NormResult& r);
json equivalence_to_json(const EquivalenceCheck& e);
json conjugate_table_to_json(const ConjugateTable& t);  // +inf encoded as "inf"
json validation_to_json(const WeightValidation& v);
json aperiodicity_to_json(const AperiodicityReport& r);
json orbit_to_json(const OrbitTrace& t);
json periodic_to_json(const PeriodicCandidate& c, double recomputed_residual);
json certificate_to_json(const Certificate& c);
json blowup_to_json(const BlowupProbe& p);
json obstruction_to_json(const ObstructionReport& r);

}  // namespace ordyn
