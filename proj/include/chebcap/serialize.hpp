#pragma once

#include "json.hpp"

#include "chebcap/apriori.hpp"
#include "chebcap/stability.hpp"
#include "chebcap/validate.hpp"

namespace chebcap {

inline constexpr int kSchemaVersion = 1;

// Intervals are stored as [lo, hi] pairs of C99 hex-float strings so they round-trip exactly.
nlohmann::json to_json(const Interval& x);
Interval interval_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoeffSeq& u);
CoeffSeq coeffseq_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProblemSpec& s);
ProblemSpec problemspec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExistenceCertificate& c);
ExistenceCertificate existence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DiskEnclosure& d);
DiskEnclosure disk_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StabilityCertificate& s);
StabilityCertificate stability_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AprioriBound& a);
AprioriBound apriori_from_json(const nlohmann::json& j);

}  // namespace chebcap
