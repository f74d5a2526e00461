#include "femto/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include <omp.h>

#include "femto/config_io.hpp"
#include "femto/shared_scheme.hpp"
#include "femto/split_scheme.hpp"
#include "femto/topology.hpp"

namespace femto {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::size_t metric_index(std::string_view name) {
  const auto fields = metric_fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == name) return i;
  }
  throw std::out_of_range("unknown metric '" + std::string(name) + "'");
}

}  // namespace

const MetricSummary& AggregateRow::metric(std::string_view name) const {
  return metrics.at(metric_index(name));
}

void validate(const SweepSpec& spec) {
  if (spec.n_f_values.empty() || spec.gamma_values.empty() || spec.epsilon_values.empty() ||
      spec.strategies.empty()) {
    throw ConfigError("invalid sweep: every axis needs at least one value");
  }
  if (spec.replicates < 1) throw ConfigError("invalid sweep: replicates must be >= 1");
  for (const auto& point : expand_grid(spec)) femto::validate(config_at(spec, point));
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
  std::vector<GridPoint> grid;
  for (auto strategy : spec.strategies) {
    for (int gamma : spec.gamma_values) {
      for (double epsilon : spec.epsilon_values) {
        for (double n_f : spec.n_f_values) grid.push_back({n_f, gamma, epsilon, strategy});
      }
    }
  }
  return grid;
}

NetworkConfig config_at(const SweepSpec& spec, const GridPoint& point) {
  NetworkConfig c = spec.base;
  c.n_f_mean = point.n_f;
  c.gamma = point.gamma;
  c.epsilon = point.epsilon;
  c.replicates = spec.replicates;
  return c;
}

namespace {

// Records of one replicate at every epsilon of the sweep.
std::vector<MetricsRecord> run_replicate_over_epsilon(const NetworkConfig& config,
                                                      Strategy strategy,
                                                      std::uint64_t replicate,
                                                      std::span<const double> epsilons) {
  const ReplicateStream stream(config.seed, replicate);
  const auto topology = sample_topology(config, stream);
  const auto distances = build_distance_table(topology, config);
  if (strategy == Strategy::split) {  // epsilon plays no part
    return std::vector<MetricsRecord>(
        epsilons.size(),
        evaluate_split(config, topology, distances, allocate_split(config, topology, stream)));
  }
  return evaluate_shared(topology, distances, config, strategy, epsilons);
}

// A work unit is one replicate of one (strategy, gamma, n_f) cell; it fills
// that replicate's record at every epsilon. Records stay grid-point major in
// expand_grid order.
class SweepKernel {
 public:
  explicit SweepKernel(const SweepSpec& spec)
      : spec_(spec),
        reps_(static_cast<std::size_t>(spec.replicates)),
        n_f_count_(spec.n_f_values.size()),
        eps_count_(spec.epsilon_values.size()),
        gamma_count_(spec.gamma_values.size()) {
    validate(spec);
  }

  std::size_t units() const {
    return spec_.strategies.size() * gamma_count_ * n_f_count_ * reps_;
  }
  std::size_t records() const { return units() * eps_count_; }

  void run(std::size_t unit, std::vector<MetricsRecord>& out) const {
    const std::size_t r = unit % reps_;
    std::size_t cell = unit / reps_;
    const std::size_t n = cell % n_f_count_;
    cell /= n_f_count_;
    const std::size_t g = cell % gamma_count_;
    const std::size_t s = cell / gamma_count_;
    const GridPoint point{spec_.n_f_values[n], spec_.gamma_values[g], spec_.epsilon_values[0],
                          spec_.strategies[s]};
    const auto recs = run_replicate_over_epsilon(config_at(spec_, point), point.strategy, r,
                                                 spec_.epsilon_values);
    for (std::size_t e = 0; e < eps_count_; ++e) {
      const std::size_t grid_index = ((s * gamma_count_ + g) * eps_count_ + e) * n_f_count_ + n;
      out[grid_index * reps_ + r] = recs[e];
    }
  }

 private:
  const SweepSpec& spec_;
  std::size_t reps_, n_f_count_, eps_count_, gamma_count_;
};

}  // namespace

MetricsRecord run_replicate(const NetworkConfig& config, Strategy strategy,
                            std::uint64_t replicate) {
  const double epsilon = config.epsilon;
  return run_replicate_over_epsilon(config, strategy, replicate, {&epsilon, 1}).front();
}

std::vector<MetricsRecord> run_records_serial(const SweepSpec& spec) {
  const SweepKernel kernel(spec);
  std::vector<MetricsRecord> records(kernel.records());
  for (std::size_t u = 0; u < kernel.units(); ++u) kernel.run(u, records);
  return records;
}

std::vector<MetricsRecord> run_records(const SweepSpec& spec) {
  const SweepKernel kernel(spec);
  std::vector<MetricsRecord> records(kernel.records());
  const auto units = static_cast<std::ptrdiff_t>(kernel.units());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t u = 0; u < units; ++u) {
    try {
      kernel.run(static_cast<std::size_t>(u), records);
    } catch (...) {
#pragma omp critical(femto_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

MetricSummary summarize(std::span<const double> values) {
  // Neumaier summation of the values and of their squared deviations.
  auto compensated = [](auto&& terms, std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
      if (std::isnan(x)) continue;
      const double v = terms(x);
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
    return sum + comp;
  };

  MetricSummary s;
  for (double x : values) s.count += std::isnan(x) ? 0 : 1;
  if (s.count == 0) return s;
  const auto n = static_cast<double>(s.count);
  s.mean = compensated([](double x) { return x; }, values) / n;
  if (s.count < 2) return s;
  const double mean = s.mean;
  const double ss = compensated([mean](double x) { return (x - mean) * (x - mean); }, values);
  s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  s.ci95 = 1.96 * s.std_error;
  return s;
}

SweepResult aggregate(const SweepSpec& spec, const std::vector<MetricsRecord>& records) {
  const auto grid = expand_grid(spec);
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const auto fields = metric_fields();
  SweepResult result{spec, {}};
  std::vector<double> column(reps);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    AggregateRow row{grid[g], {}, 0.0};
    for (const auto& field : fields) {
      for (std::size_t r = 0; r < reps; ++r) column[r] = field.get(records[g * reps + r]);
      row.metrics.push_back(summarize(column));
    }
    row.flagged_fraction = row.metric("flagged").mean;
    result.rows.push_back(std::move(row));
  }
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) { return aggregate(spec, run_records(spec)); }

SweepResult run_sweep_serial(const SweepSpec& spec) {
  return aggregate(spec, run_records_serial(spec));
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "n_f,gamma,epsilon,strategy";
  for (const auto& f : metric_fields()) out << ',' << f.name << ',' << f.name << "_ci95";
  out << ",flagged_fraction,replicates\n";
  for (const auto& row : result.rows) {
    out << num(row.point.n_f) << ',' << row.point.gamma << ',' << num(row.point.epsilon) << ','
        << to_string(row.point.strategy);
    for (const auto& m : row.metrics) out << ',' << num(m.mean) << ',' << num(m.ci95);
    out << ',' << num(row.flagged_fraction) << ',' << result.spec.replicates << '\n';
  }
  return out.str();
}

FigureId parse_figure_id(const std::string& text) {
  static const char* names[] = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  for (int i = 0; i < 7; ++i) {
    if (text == names[i]) return static_cast<FigureId>(i);
  }
  throw ConfigError("unknown figure id '" + text + "' (expected fig2..fig8)");
}

std::string to_string(FigureId id) { return "fig" + std::to_string(static_cast<int>(id) + 2); }

std::vector<double> default_n_f_axis() {
  std::vector<double> axis;
  for (int n = 0; n <= 40; ++n) axis.push_back(n);
  return axis;
}

std::vector<double> default_epsilon_axis() { return {0.0, 0.025, 0.05, 0.075, 0.1, 0.125}; }

SweepSpec figure_spec(FigureId id, const FigureOptions& options) {
  SweepSpec spec;
  spec.base = options.base;
  spec.replicates = options.base.replicates;
  spec.figure = to_string(id);
  spec.n_f_values = options.n_f_values.value_or(default_n_f_axis());
  spec.gamma_values = {options.base.gamma};
  spec.epsilon_values = {0.0};
  const int f = options.base.n_femto_users_per_cell;
  const int n_c = options.base.n_channels;

  switch (id) {
    case FigureId::fig2:
    case FigureId::fig3: {
      spec.strategies = {Strategy::split};
      spec.gamma_values.clear();
      // F, then evenly up to N_C (5, 10, ..., 25 with the default network)
      for (int g = f; g <= n_c; g += f) spec.gamma_values.push_back(g);
      if (spec.gamma_values.back() != n_c) spec.gamma_values.push_back(n_c);
      if (id == FigureId::fig2 && !options.n_f_values) {
        // mean femto SINR is undefined without femtocells
        spec.n_f_values.erase(spec.n_f_values.begin());
      }
      break;
    }
    case FigureId::fig4:
    case FigureId::fig5:
      spec.strategies = {Strategy::sic};
      spec.epsilon_values = options.epsilon_values.value_or(default_epsilon_axis());
      break;
    case FigureId::fig6:
      spec.strategies = {Strategy::sic};
      break;
    case FigureId::fig7:
    case FigureId::fig8:
      spec.strategies = {Strategy::pc, Strategy::sic};
      break;
  }
  return spec;
}

std::string figure_csv(FigureId id, const SweepResult& result) {
  std::ostringstream out;
  auto col = [](const AggregateRow& row, std::string_view name) {
    const auto& m = row.metric(name);
    return num(m.mean) + "," + num(m.ci95);
  };
  switch (id) {
    case FigureId::fig2:
      out << "n_f,gamma,mean_femto_sinr_db,ci95\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ',' << row.point.gamma << ','
            << col(row, "mean_femto_sinr_db") << '\n';
      }
      break;
    case FigureId::fig3:
      out << "n_f,gamma,split_gain,ci95\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ',' << row.point.gamma << ',' << col(row, "split_gain")
            << '\n';
      }
      break;
    case FigureId::fig4:
      out << "n_f,epsilon,handover_successes,ci95,handovers,handover_fraction,flagged_fraction\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ',' << num(row.point.epsilon) << ','
            << col(row, "handover_successes") << ',' << num(row.metric("handovers").mean) << ','
            << num(row.metric("handover_fraction").mean) << ',' << num(row.flagged_fraction)
            << '\n';
      }
      break;
    case FigureId::fig5:
      out << "n_f,epsilon,served_macro_fraction,ci95,flagged_fraction\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ',' << num(row.point.epsilon) << ','
            << col(row, "served_macro_fraction") << ',' << num(row.flagged_fraction) << '\n';
      }
      break;
    case FigureId::fig6:
      out << "n_f,class,savings_fraction,ci95,flagged_fraction\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ",macro," << col(row, "macro_power_savings") << ','
            << num(row.flagged_fraction) << '\n';
        out << num(row.point.n_f) << ",femto," << col(row, "femto_power_savings") << ','
            << num(row.flagged_fraction) << '\n';
      }
      break;
    case FigureId::fig7:
      out << "n_f,strategy,mean_served_femto,ci95,flagged_fraction\n";
      for (const auto& row : result.rows) {
        out << num(row.point.n_f) << ',' << to_string(row.point.strategy) << ','
            << col(row, "served_femto") << ',' << num(row.flagged_fraction) << '\n';
      }
      break;
    case FigureId::fig8:
      out << "n_f,strategy,shared_gain,ci95,r_max,flagged_fraction\n";
      for (const auto& row : result.rows) {
        const auto config = config_at(result.spec, row.point);
        out << num(row.point.n_f) << ',' << to_string(row.point.strategy) << ','
            << col(row, "shared_gain") << ',' << num(shared_gain_bound(row.point.n_f, config))
            << ',' << num(row.flagged_fraction) << '\n';
      }
      break;
  }
  return out.str();
}

FigureDataset figure_dataset(FigureId id, const FigureOptions& options) {
  const auto spec = figure_spec(id, options);
  auto result = run_sweep(spec);
  auto csv = figure_csv(id, result);
  return {id, std::move(result), std::move(csv)};
}

std::string manifest_json(const SweepSpec& spec) {
  nlohmann::ordered_json j;
  if (!spec.figure.empty()) j["figure"] = spec.figure;
  auto config = config_to_json(spec.base);
  config["replicates"] = spec.replicates;
  j["config"] = config;
  j["resolved"]["p_femto_const_dbm"] = spec.base.femto_const_power_dbm();
  j["resolved"]["noise_mw"] = spec.base.noise_mw();
  j["axes"]["n_f"] = spec.n_f_values;
  j["axes"]["gamma"] = spec.gamma_values;
  j["axes"]["epsilon"] = spec.epsilon_values;
  std::vector<std::string> strategies;
  for (auto s : spec.strategies) strategies.push_back(to_string(s));
  j["axes"]["strategy"] = strategies;
  j["seed"] = spec.base.seed;
  j["threads"] = omp_get_max_threads();
  return j.dump(2) + "\n";
}

}  // namespace femto
