#pragma once

#include <limits>
#include <span>
#include <string_view>

namespace femto {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Outcome of one replicate under one strategy. Metrics that do not apply to
/// the strategy (or are undefined for the realization, e.g. mean femto SINR
/// with no femto users) stay NaN and are skipped by aggregation.
struct MetricsRecord {
  int femtocells = 0;
  int femto_users = 0;

  double mean_femto_sinr_db = kNaN;
  double rate_macro = 0.0;  // bits/s/Hz
  double rate_femto = 0.0;
  double rate_sum = 0.0;
  double split_gain = kNaN;
  double shared_gain = kNaN;
  // Bound with the realized femtocell count, so it is a per-realization bound.
  double r_max_realized = kNaN;

  int served_femto = 0;
  int served_macro = 0;
  double served_macro_fraction = kNaN;

  int handovers = 0;            // surviving macro-femto SIC pairs
  int handover_successes = 0;   // pairs whose macro user is decoded at this epsilon
  double handover_fraction = 0.0;

  double mean_macro_power_mw = kNaN;
  double mean_femto_power_mw = kNaN;
  double macro_power_savings = kNaN;  // sic vs pc on the same topology
  double femto_power_savings = kNaN;

  double max_budget_ratio = 0.0;  // max over channels of femto interference at BS / budget
  bool converged = true;
};

/// Named scalar view of a record; drives aggregation and CSV columns.
struct MetricField {
  std::string_view name;
  double (*get)(const MetricsRecord&);
};

std::span<const MetricField> metric_fields();

/// Lookup by name; throws std::out_of_range for an unknown metric.
const MetricField& metric_field(std::string_view name);

}  // namespace femto
