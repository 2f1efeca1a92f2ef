#pragma once

#include <string>

#include <json.hpp>

#include "bes/bridge.hpp"
#include "bes/hilbert.hpp"
#include "bes/kripke.hpp"
#include "bes/relation.hpp"
#include "bes/semantics.hpp"

namespace bes {

using Json = nlohmann::json;

Json universe_to_json(const RuleUniverse& u);
RuleUniverse universe_from_json(const Json& j);

Json base_to_json(const Base& b);
Base base_from_json(const RuleUniverse& u, const Json& j);

Json relation_to_json(const ExtensionalRelation& r);
ExtensionalRelation relation_from_json(const RuleUniverse& u, const Json& j);

Json relation_to_json(const GeneratedRelation& r);
GeneratedRelation generated_relation_from_json(const RuleUniverse& u, const Json& j);

Json kripke_to_json(const KripkeModel& m);
KripkeModel kripke_from_json(const Json& j);

Json proof_to_json(const HilbertProof& p);
HilbertProof proof_from_json(const Json& j);

Json condition_report_to_json(const ConditionReport& r, const RuleUniverse& u);
Json verdict_to_json(const Verdict& v, const RuleUniverse& u);
Json bridge_report_to_json(const BridgeReport& r);
Json euclid_report_to_json(const EuclidReport& r);

std::string bridge_report_to_text(const BridgeReport& r);
std::string euclid_report_to_text(const EuclidReport& r);

}  // namespace bes
