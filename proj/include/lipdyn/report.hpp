#pragma once

#include <string>

#include <json.hpp>

#include "lipdyn/lipschitz.hpp"
#include "lipdyn/lyapunov.hpp"

namespace lipdyn {

std::string lyap_status_name(LyapStatus s);

/// Doubles formatted with 17 significant digits so values round-trip.
nlohmann::json json_number(double v);

nlohmann::json classification_to_json(const Classification& cls);

nlohmann::json analyze_report(const std::string& map_label, double x0, long iters, long burn_in,
                              const ChaosReport& report);

/// One entry of the classify report's fixed_points array.
nlohmann::json classify_entry(double p, const Classification& cls,
                              const Classification* smooth_oracle);

std::string format_g17(double v);

}  // namespace lipdyn
