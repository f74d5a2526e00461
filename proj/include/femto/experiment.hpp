#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "femto/config.hpp"
#include "femto/metrics.hpp"

namespace femto {

struct SweepSpec {
  NetworkConfig base;
  std::vector<double> n_f_values;
  std::vector<int> gamma_values;
  std::vector<double> epsilon_values;
  std::vector<Strategy> strategies;
  int replicates = 1000;
  std::string figure;  // tag only; empty for ad-hoc sweeps
};

struct GridPoint {
  double n_f = 0.0;
  int gamma = 0;
  double epsilon = 0.0;
  Strategy strategy = Strategy::split;
};

struct MetricSummary {
  double mean = kNaN;
  double std_error = kNaN;  // NaN with fewer than two samples
  double ci95 = kNaN;       // normal approximation, 1.96 standard errors
  std::size_t count = 0;    // replicates where the metric was defined
};

struct AggregateRow {
  GridPoint point;
  std::vector<MetricSummary> metrics;  // aligned with metric_fields()
  double flagged_fraction = 0.0;

  const MetricSummary& metric(std::string_view name) const;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<AggregateRow> rows;
};

/// Throws ConfigError for empty axes, replicates < 1 or an invalid grid config.
void validate(const SweepSpec& spec);

/// Cartesian product in (strategy, gamma, epsilon, n_f) order, n_f fastest.
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

NetworkConfig config_at(const SweepSpec& spec, const GridPoint& point);

/// One replicate: sample the topology for (seed, replicate) and evaluate it.
MetricsRecord run_replicate(const NetworkConfig& config, Strategy strategy,
                            std::uint64_t replicate);

/// Per-replicate records, grid-point major. The OpenMP version distributes
/// (grid point, replicate) units over threads; the serial version is the
/// reference it must match bit for bit.
std::vector<MetricsRecord> run_records(const SweepSpec& spec);
std::vector<MetricsRecord> run_records_serial(const SweepSpec& spec);

/// Mean, standard error and CI of the defined (non-NaN) values, summed with
/// compensation in the given order.
MetricSummary summarize(std::span<const double> values);

SweepResult aggregate(const SweepSpec& spec, const std::vector<MetricsRecord>& records);

SweepResult run_sweep(const SweepSpec& spec);
SweepResult run_sweep_serial(const SweepSpec& spec);

/// All metrics, one row per grid point.
std::string sweep_csv(const SweepResult& result);

enum class FigureId { fig2, fig3, fig4, fig5, fig6, fig7, fig8 };

FigureId parse_figure_id(const std::string& text);  // throws ConfigError
std::string to_string(FigureId id);

struct FigureOptions {
  NetworkConfig base;  // replicates, seed and count mode come from here
  std::optional<std::vector<double>> n_f_values;
  std::optional<std::vector<double>> epsilon_values;
};

/// Default N_f axis of the figures: 0, 1, ..., 40.
std::vector<double> default_n_f_axis();
std::vector<double> default_epsilon_axis();

SweepSpec figure_spec(FigureId id, const FigureOptions& options);

struct FigureDataset {
  FigureId id;
  SweepResult result;
  std::string csv;
};

FigureDataset figure_dataset(FigureId id, const FigureOptions& options);
std::string figure_csv(FigureId id, const SweepResult& result);

/// Run manifest: resolved config (re-readable by parse_config), axes, seed.
std::string manifest_json(const SweepSpec& spec);

}  // namespace femto
