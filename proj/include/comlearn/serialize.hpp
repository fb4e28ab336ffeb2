#pragma once

#include "comlearn/analytics.hpp"
#include "comlearn/comonotone.hpp"
#include "comlearn/cycles.hpp"
#include "comlearn/permute.hpp"
#include "comlearn/witness.hpp"

#include <json.hpp>

namespace comlearn {

// Every report uses ordered_json so that field order, and hence the output
// bytes, depend only on the inputs. Rationals are "n/d" strings.
using Json = nlohmann::ordered_json;

Json to_json(const ChoiceDataset& data, const CycleWitness& cycle);
Json to_json(const ChoiceDataset& data, const RationalizationWitness& w);
Json to_json(const ChoiceDataset& data, const ComonotoneWitness& w, bool enumerate_joint = false);
Json to_json(const ChoiceDataset& data, const PermutationAssignment& kappa);
Json to_json(const ChoiceDataset& data, const BlockedCombination& blocked);
Json to_json(const DiscriminationReport& report);
Json to_json(const ChoiceDataset& data, const CounterfactualReport& report);
Json to_json(const ChoiceDataset& data, const Verdict& verdict);
Json to_json(const ChoiceDataset& data, const ComonotoneVerdict& verdict);

/// Inverses of the witness writers. Throw ParseError (bad_document) on
/// malformed input or labels that do not match the dataset.
RationalizationWitness witness_from_json(const ChoiceDataset& data, const Json& doc);
ComonotoneWitness comonotone_witness_from_json(const ChoiceDataset& data, const Json& doc);

} // namespace comlearn
