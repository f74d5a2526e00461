#include "femto/metrics.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace femto {

namespace {

const std::array kFields = {
    MetricField{"femtocells", [](const MetricsRecord& r) { return double(r.femtocells); }},
    MetricField{"femto_users", [](const MetricsRecord& r) { return double(r.femto_users); }},
    MetricField{"mean_femto_sinr_db", [](const MetricsRecord& r) { return r.mean_femto_sinr_db; }},
    MetricField{"rate_macro", [](const MetricsRecord& r) { return r.rate_macro; }},
    MetricField{"rate_femto", [](const MetricsRecord& r) { return r.rate_femto; }},
    MetricField{"rate_sum", [](const MetricsRecord& r) { return r.rate_sum; }},
    MetricField{"split_gain", [](const MetricsRecord& r) { return r.split_gain; }},
    MetricField{"shared_gain", [](const MetricsRecord& r) { return r.shared_gain; }},
    MetricField{"r_max_realized", [](const MetricsRecord& r) { return r.r_max_realized; }},
    MetricField{"served_femto", [](const MetricsRecord& r) { return double(r.served_femto); }},
    MetricField{"served_macro", [](const MetricsRecord& r) { return double(r.served_macro); }},
    MetricField{"served_macro_fraction",
                [](const MetricsRecord& r) { return r.served_macro_fraction; }},
    MetricField{"handovers", [](const MetricsRecord& r) { return double(r.handovers); }},
    MetricField{"handover_successes",
                [](const MetricsRecord& r) { return double(r.handover_successes); }},
    MetricField{"handover_fraction", [](const MetricsRecord& r) { return r.handover_fraction; }},
    MetricField{"mean_macro_power_mw", [](const MetricsRecord& r) { return r.mean_macro_power_mw; }},
    MetricField{"mean_femto_power_mw", [](const MetricsRecord& r) { return r.mean_femto_power_mw; }},
    MetricField{"macro_power_savings", [](const MetricsRecord& r) { return r.macro_power_savings; }},
    MetricField{"femto_power_savings", [](const MetricsRecord& r) { return r.femto_power_savings; }},
    MetricField{"max_budget_ratio", [](const MetricsRecord& r) { return r.max_budget_ratio; }},
    MetricField{"flagged", [](const MetricsRecord& r) { return r.converged ? 0.0 : 1.0; }},
};

}  // namespace

std::span<const MetricField> metric_fields() { return kFields; }

const MetricField& metric_field(std::string_view name) {
  for (const auto& f : kFields) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("unknown metric '" + std::string(name) + "'");
}

}  // namespace femto
