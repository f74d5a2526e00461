#include "femto/split_scheme.hpp"

#include <cmath>
#include <numeric>

#include "femto/radio.hpp"

namespace femto {

namespace {

// First k entries of a uniformly random permutation of `pool`.
std::vector<int> sample_without_replacement(std::vector<int> pool, int k, std::mt19937_64& engine) {
  const auto n = pool.size();
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    const auto j = i + uniform_index(engine, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

double macro_only_rate(const NetworkConfig& config) {
  return config.n_macro_users * std::log2(1.0 + config.beta_m());
}

double split_gain(double r_sum, const NetworkConfig& config) {
  const double baseline = macro_only_rate(config);
  return (r_sum - baseline) / baseline;
}

SplitAllocation allocate_split(const NetworkConfig& config, const Topology& topology,
                               const ReplicateStream& stream) {
  const int f = config.n_femto_users_per_cell;
  if (config.gamma < f) throw ConfigError("invalid configuration: gamma < F (gamma >= F required)");
  if (config.gamma > config.n_channels) throw ConfigError("invalid configuration: gamma > n_channels");

  SplitAllocation alloc;
  alloc.macro_served_count = config.n_channels - config.gamma;

  std::vector<int> all(config.n_channels);
  std::iota(all.begin(), all.end(), 0);
  auto partition = stream.engine(StreamTag::split_partition);
  alloc.femto_channel_ids = sample_without_replacement(all, config.gamma, partition);

  alloc.per_cell_choice.reserve(topology.femtocell_count());
  for (std::size_t c = 0; c < topology.femtocell_count(); ++c) {
    auto engine = stream.engine(StreamTag::split_choice, c);
    alloc.per_cell_choice.push_back(sample_without_replacement(alloc.femto_channel_ids, f, engine));
  }
  return alloc;
}

std::vector<double> split_femto_sinr(const NetworkConfig& config, const Topology& topology,
                                     const DistanceTable& dist, const SplitAllocation& alloc) {
  const std::size_t cells = topology.femtocell_count();
  const std::size_t f = static_cast<std::size_t>(config.n_femto_users_per_cell);
  const double power = config.femto_const_power_mw();
  const double clamp = config.min_distance_m;

  // users_on[ch] = (cell, user) pairs transmitting on channel ch
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> users_on(config.n_channels);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t u = 0; u < f; ++u) users_on[alloc.per_cell_choice[c][u]].emplace_back(c, u);
  }

  std::vector<double> out(cells * f);
  std::vector<LinkBudgetTerm> interferers;
  for (const auto& on_channel : users_on) {
    for (const auto& [c, u] : on_channel) {
      const LinkBudgetTerm signal{power, path_gain(dist.femto_fap(c, u, c), config.alpha, clamp),
                                  LinkRole::signal};
      interferers.clear();
      for (const auto& [c2, u2] : on_channel) {
        if (c2 == c) continue;
        interferers.push_back({power, path_gain(dist.femto_fap(c2, u2, c), config.phi, clamp)});
      }
      out[c * f + u] = sinr(signal, interferers, config.noise_mw());
    }
  }
  return out;
}

MetricsRecord evaluate_split(const NetworkConfig& config, const Topology& topology,
                             const DistanceTable& dist, const SplitAllocation& alloc) {
  const double beta_f = config.beta_f();
  const auto sinrs = split_femto_sinr(config, topology, dist, alloc);

  MetricsRecord rec;
  rec.femtocells = static_cast<int>(topology.femtocell_count());
  rec.femto_users = static_cast<int>(sinrs.size());

  double sinr_db_sum = 0.0;
  for (double g : sinrs) {
    sinr_db_sum += linear_to_db(g);
    if (g >= beta_f) ++rec.served_femto;
  }

  if (rec.femto_users > 0) rec.mean_femto_sinr_db = sinr_db_sum / rec.femto_users;
  rec.rate_macro = alloc.macro_served_count * std::log2(1.0 + config.beta_m());
  rec.rate_femto = rec.served_femto * std::log2(1.0 + beta_f);
  rec.rate_sum = rec.rate_macro + rec.rate_femto;
  rec.split_gain = split_gain(rec.rate_sum, config);
  rec.served_macro = alloc.macro_served_count;
  rec.served_macro_fraction = double(alloc.macro_served_count) / config.n_macro_users;
  rec.mean_femto_power_mw = rec.femto_users > 0 ? config.femto_const_power_mw() : kNaN;
  return rec;
}

}  // namespace femto
