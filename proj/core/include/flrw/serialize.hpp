#pragma once

// JSON records with stable field names. Non-finite numbers are written as
// the strings "inf", "-inf" and "nan".

#include <nlohmann/json.hpp>

#include "flrw/comparison_ode.hpp"
#include "flrw/cosmology.hpp"
#include "flrw/scaling.hpp"
#include "flrw/thresholds.hpp"
#include "flrw/weak_identity.hpp"

namespace flrw {

nlohmann::json number_json(double x);

nlohmann::json to_json(const CosmologyParams& params);
nlohmann::json to_json(const MassBounds& bounds);
nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const AnalyticLadder& ladder);
nlohmann::json to_json(const ScalingVerdict& verdict);
nlohmann::json to_json(const ThresholdReport& report);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const WeakIdentityTerms& terms);

/// Sidecar for a trajectory CSV: status, blow-up time and step statistics.
nlohmann::json trajectory_metadata(const Trajectory& trajectory, const OdeProblem& problem);

/// Summary of a field run (without the per-sample series).
nlohmann::json run_metadata(const Diagnostics& diagnostics);

}  // namespace flrw
