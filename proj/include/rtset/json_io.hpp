#pragma once

// JSON encoding of specs, certificates, witnesses, and reports.  Emission
// uses ordered_json throughout so identical inputs serialize to identical
// bytes, which is what makes stored run configs reproducible.

#include <json.hpp>

#include "rtset/blockfam.hpp"
#include "rtset/density.hpp"
#include "rtset/families.hpp"
#include "rtset/natset.hpp"
#include "rtset/setspec.hpp"
#include "rtset/shiftlab.hpp"

namespace rtset {

using Json = nlohmann::ordered_json;

Json to_json(const SetSpec& spec);
SetSpec set_spec_from_json(const Json& j);

Json to_json(const DensityEstimates& est);
Json to_json(const DensityProfile& profile);

// Certificates carry a "variant" discriminator.
Json to_json(const FamilyCertificate& cert);
FamilyCertificate certificate_from_json(const Json& j);

Json to_json(const BlockWitness& w);           // {f_elements, f_horizon, depth, translates}
BlockWitness block_witness_from_json(const Json& j);

Json to_json(const ClassifyReport& report);

Json to_json(const WeightSpec& w);
WeightSpec weight_spec_from_json(const Json& j);

// {laterality, norm {kind, p}, weights, horizon}
Json space_to_json(const ShiftSpace& space, const WeightSpec& weights);
ShiftSpace space_from_json(const Json& j, WeightSpec* weights_out = nullptr);

Json to_json(const SparseVector& v);
SparseVector sparse_vector_from_json(const Json& j);

Json to_json(const SeriesCheck& c);
Json to_json(const TailTranslateCheck& c);
Json to_json(const ReturnVectorReport& r);

}  // namespace rtset
