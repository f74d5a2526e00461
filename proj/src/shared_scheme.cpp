#include "femto/shared_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "femto/radio.hpp"
#include "femto/split_scheme.hpp"

namespace femto {

namespace {

// Power control aims this far above the SINR threshold so that a converged
// link still clears it after floating-point rounding.
constexpr double kTargetSlack = 1e-9;

struct Dims {
  std::size_t cells;
  std::size_t per_cell;
  std::size_t channels;
};

Dims dims_of(const Topology& topology, const NetworkConfig& config) {
  return {topology.femtocell_count(), static_cast<std::size_t>(config.n_femto_users_per_cell),
          static_cast<std::size_t>(config.n_channels)};
}

std::vector<double> cell_caps(const DistanceTable& dist, const NetworkConfig& config) {
  std::vector<double> caps(dist.cells());
  for (std::size_t c = 0; c < caps.size(); ++c) caps[c] = femto_power_cap(dist.fap_bs(c), config);
  return caps;
}

// Femto users (global index) transmitting on each channel.
std::vector<std::vector<std::size_t>> users_by_channel(const ChannelAllocation& alloc,
                                                       std::size_t channels) {
  std::vector<std::vector<std::size_t>> on(channels);
  for (std::size_t g = 0; g < alloc.femto_channel.size(); ++g) {
    if (alloc.femto_channel[g] >= 0) on[alloc.femto_channel[g]].push_back(g);
  }
  return on;
}

// Interference at FAP `cell` from femto users of other cells on `users`,
// each at `power(g)`.
template <typename PowerOf>
double femto_interference_at_fap(std::span<const std::size_t> users, std::size_t cell,
                                 const DistanceTable& dist, std::size_t per_cell,
                                 const NetworkConfig& config, PowerOf power) {
  double sum = 0.0;
  for (auto g : users) {
    const std::size_t c = g / per_cell;
    if (c == cell) continue;
    sum += power(g) * path_gain(dist.femto_fap(c, g % per_cell, cell), config.phi,
                                config.min_distance_m);
  }
  return sum;
}

// Sequential interference-sensing assignment. FAPs act in cell order, each
// sensing macro users at their current powers plus every femto transmitter
// already holding a channel (pair members first) at its cell cap.
ChannelAllocation assign_all_cells(const Dims& d, const DistanceTable& dist,
                                   const NetworkConfig& config, std::vector<SicPair> pairs,
                                   std::span<const double> macro_tx, std::span<const double> caps) {
  ChannelAllocation alloc;
  alloc.femto_channel.assign(d.cells * d.per_cell, -1);
  std::vector<std::vector<std::size_t>> placed(d.channels);
  for (const auto& p : pairs) {
    const std::size_t g = p.cell * d.per_cell + p.femto_user;
    alloc.femto_channel[g] = p.channel;
    placed[p.channel].push_back(g);
  }

  std::vector<double> measured(d.channels);
  std::vector<int> pair_channels;
  std::vector<std::size_t> unpaired;
  for (std::size_t c = 0; c < d.cells; ++c) {
    for (std::size_t n = 0; n < d.channels; ++n) {
      const double macro = macro_tx[n] * path_gain(dist.macro_fap(n, c), config.psi,
                                                   config.min_distance_m);
      measured[n] = macro + femto_interference_at_fap(
                                placed[n], c, dist, d.per_cell, config,
                                [&](std::size_t g) { return caps[g / d.per_cell]; });
    }
    pair_channels.clear();
    unpaired.clear();
    for (const auto& p : pairs) {
      if (static_cast<std::size_t>(p.cell) == c) pair_channels.push_back(p.channel);
    }
    for (std::size_t u = 0; u < d.per_cell; ++u) {
      if (alloc.femto_channel[c * d.per_cell + u] < 0) unpaired.push_back(u);
    }
    const auto chosen =
        assign_channels_shared(pair_channels, measured, static_cast<int>(unpaired.size()));
    // Quietest channel to the user farthest from its FAP.
    std::stable_sort(unpaired.begin(), unpaired.end(), [&](std::size_t a, std::size_t b) {
      return dist.femto_fap(c, a, c) > dist.femto_fap(c, b, c);
    });
    for (std::size_t i = 0; i < unpaired.size(); ++i) {
      const std::size_t g = c * d.per_cell + unpaired[i];
      alloc.femto_channel[g] = chosen[i];
      placed[chosen[i]].push_back(g);
    }
  }
  alloc.pairs = std::move(pairs);
  return alloc;
}

}  // namespace

double macro_min_power(double d_mb, const NetworkConfig& config) {
  return config.kappa_m * config.beta_m() * config.noise_mw() * std::pow(d_mb, config.phi);
}

double interference_budget(const NetworkConfig& config) {
  if (!(config.kappa_m > 1.0)) {
    throw ConfigError("invalid configuration: kappa_m must be > 1 (interference budget is zero)");
  }
  return config.noise_mw() * (config.kappa_m - 1.0);
}

double femto_power_cap(double d_ab, const NetworkConfig& config) {
  if (!(config.n_f_mean > 0.0)) {
    throw ConfigError("invalid configuration: femto power cap needs n_f_mean > 0");
  }
  const double worst = std::max(d_ab - config.r_femto_m, config.min_distance_m);
  return interference_budget(config) * std::pow(worst, config.phi) / config.n_f_mean;
}

bool handover_decision(double d_mb, double d_ma, double interference_at_fap_mw,
                       const NetworkConfig& config) {
  const double noise = config.noise_mw();
  const double lhs = std::pow(d_mb, config.phi);
  const double rhs = (interference_at_fap_mw + noise) * std::pow(d_ma, config.psi) /
                     (config.kappa_m * noise);
  return lhs > rhs;
}

bool handover_decision(int macro_user, int cell, const DistanceTable& distances,
                       double interference_at_fap_mw, const NetworkConfig& config) {
  return handover_decision(distances.macro_bs(macro_user), distances.macro_fap(macro_user, cell),
                           interference_at_fap_mw, config);
}

double required_fap_power(double d_ma, double interference_at_fap_mw, const NetworkConfig& config) {
  return config.beta_m() * (interference_at_fap_mw + config.noise_mw()) *
         std::pow(d_ma, config.psi);
}

double fap_transmit_power(double required_mw, double d_mb, const NetworkConfig& config) {
  return std::min(config.kappa_m * required_mw, macro_min_power(d_mb, config));
}

double required_fap_power(int macro_user, int cell, const DistanceTable& distances,
                          double interference_at_fap_mw, const NetworkConfig& config) {
  return required_fap_power(distances.macro_fap(macro_user, cell), interference_at_fap_mw, config);
}

HandoverOutcome run_handover_phase(const Topology& topology, const DistanceTable& dist,
                                   const NetworkConfig& config, const InterferenceMap& provisional) {
  const Dims d = dims_of(topology, config);
  const int macros = config.n_macro_users;
  HandoverOutcome out;
  out.attachment.assign(macros, std::nullopt);
  out.fap_power_mw.assign(macros, 0.0);

  // Best first-stage link each cell can offer: its closest user at the cap.
  std::vector<double> best_femto_rx(d.cells, 0.0);
  for (std::size_t c = 0; c < d.cells; ++c) {
    const double cap = femto_power_cap(dist.fap_bs(c), config);
    for (std::size_t u = 0; u < d.per_cell; ++u) {
      best_femto_rx[c] = std::max(
          best_femto_rx[c], cap * path_gain(dist.femto_fap(c, u, c), config.alpha,
                                            config.min_distance_m));
    }
  }

  // (required power, macro user) candidates per cell
  std::vector<std::vector<std::pair<double, int>>> requests(d.cells);
  for (int m = 0; m < macros; ++m) {
    int best_cell = -1;
    double best_power = 0.0;
    for (std::size_t c = 0; c < d.cells; ++c) {
      const double interference = provisional.at(c, m);
      if (!handover_decision(m, static_cast<int>(c), dist, interference, config)) continue;
      const double p = required_fap_power(m, static_cast<int>(c), dist, interference, config);
      // A FAP that could never decode its partner first is no candidate.
      const double macro_rx = fap_transmit_power(p, dist.macro_bs(m), config) *
                              path_gain(dist.macro_fap(m, c), config.psi, config.min_distance_m);
      if (best_femto_rx[c] < config.beta_f() * (macro_rx + interference + config.noise_mw())) {
        continue;
      }
      if (best_cell < 0 || p < best_power) {
        best_cell = static_cast<int>(c);
        best_power = p;
      }
    }
    if (best_cell >= 0) requests[best_cell].emplace_back(best_power, m);
  }

  for (std::size_t c = 0; c < d.cells; ++c) {
    auto& req = requests[c];
    std::sort(req.begin(), req.end());
    if (req.size() > d.per_cell) req.resize(d.per_cell);

    std::vector<bool> taken(d.per_cell, false);
    for (const auto& [power, m] : req) {
      std::size_t partner = d.per_cell;
      for (std::size_t u = 0; u < d.per_cell; ++u) {
        if (taken[u]) continue;
        if (partner == d.per_cell || dist.femto_fap(c, u, c) < dist.femto_fap(c, partner, c)) {
          partner = u;
        }
      }
      taken[partner] = true;
      out.attachment[m] = static_cast<int>(c);
      out.fap_power_mw[m] = fap_transmit_power(power, dist.macro_bs(m), config);
      out.pairs.push_back(SicPair{.cell = static_cast<int>(c),
                                  .macro_user = m,
                                  .femto_user = static_cast<int>(partner),
                                  .channel = m});
    }
  }
  return out;
}

SicPair sic_evaluate(SicPair pair, double macro_tx_mw, double femto_tx_mw,
                     const DistanceTable& dist, double external_mw, const NetworkConfig& config) {
  const double noise = config.noise_mw();
  const double macro_rx =
      macro_tx_mw * path_gain(dist.macro_fap(pair.macro_user, pair.cell), config.psi,
                              config.min_distance_m);
  const double femto_rx =
      femto_tx_mw * path_gain(dist.femto_fap(pair.cell, pair.femto_user, pair.cell), config.alpha,
                              config.min_distance_m);

  // First stage: femto user decoded with the macro user as noise.
  pair.fu_decoded = femto_rx / (macro_rx + external_mw + noise) >= config.beta_f();

  // Second stage: femto signal removed up to the residual that costs the
  // macro user an epsilon fraction of its SINR.
  pair.macro_sinr = macro_rx / (external_mw + noise);
  pair.residual_mw = config.epsilon / (1.0 - config.epsilon) * (external_mw + noise);
  pair.post_sic_sinr = macro_rx / (pair.residual_mw + external_mw + noise);
  pair.mu_decoded = pair.fu_decoded && pair.post_sic_sinr >= config.beta_m();
  return pair;
}

std::vector<int> assign_channels_shared(std::span<const int> pair_channels,
                                        std::span<const double> measured_mw, int needed) {
  std::vector<int> free;
  free.reserve(measured_mw.size());
  for (int n = 0; n < static_cast<int>(measured_mw.size()); ++n) {
    if (std::find(pair_channels.begin(), pair_channels.end(), n) == pair_channels.end()) {
      free.push_back(n);
    }
  }
  std::stable_sort(free.begin(), free.end(),
                   [&](int a, int b) { return measured_mw[a] < measured_mw[b]; });
  free.resize(std::min<std::size_t>(free.size(), std::max(needed, 0)));
  return free;
}

PowerControlResult femto_power_control(const Topology& topology, const DistanceTable& dist,
                                       const ChannelAllocation& alloc,
                                       std::span<const double> macro_tx_mw,
                                       std::span<const double> caps_mw,
                                       const NetworkConfig& config) {
  const Dims d = dims_of(topology, config);
  const double noise = config.noise_mw();
  const double target = config.beta_f() * (1.0 + kTargetSlack);
  const double clamp = config.min_distance_m;
  const auto on = users_by_channel(alloc, d.channels);
  const std::size_t total = d.cells * d.per_cell;

  // Per-user constants: own-link gain, fixed macro interference, cap.
  std::vector<double> own_gain(total), macro_term(total), cap(total);
  for (std::size_t g = 0; g < total; ++g) {
    const std::size_t c = g / d.per_cell;
    const std::size_t u = g % d.per_cell;
    const int n = alloc.femto_channel[g];
    own_gain[g] = path_gain(dist.femto_fap(c, u, c), config.alpha, clamp);
    macro_term[g] = macro_tx_mw[n] * path_gain(dist.macro_fap(n, c), config.psi, clamp);
    cap[g] = caps_mw[c];
  }

  // Co-channel cross gains, one dense block per channel: cross[n][i*k + j] is
  // the gain from transmitter j to the FAP of receiver i.
  std::vector<std::vector<double>> cross(d.channels);
  for (std::size_t n = 0; n < d.channels; ++n) {
    const auto& users = on[n];
    const std::size_t k = users.size();
    cross[n].assign(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t rx_cell = users[i] / d.per_cell;
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        const std::size_t tx = users[j];
        cross[n][i * k + j] =
            path_gain(dist.femto_fap(tx / d.per_cell, tx % d.per_cell, rx_cell), config.phi, clamp);
      }
    }
  }

  auto interference = [&](const std::vector<double>& p, std::vector<double>& out) {
    for (std::size_t n = 0; n < d.channels; ++n) {
      const auto& users = on[n];
      const std::size_t k = users.size();
      for (std::size_t i = 0; i < k; ++i) {
        double sum = macro_term[users[i]];
        for (std::size_t j = 0; j < k; ++j) sum += cross[n][i * k + j] * p[users[j]];
        out[users[i]] = sum;
      }
    }
  };

  PowerControlResult res;
  std::vector<double> p = cap;
  std::vector<double> next(total), interf(total);
  res.converged = false;
  for (int round = 1; round <= kPowerControlMaxRounds; ++round) {
    interference(p, interf);
    double max_change = 0.0;
    for (std::size_t g = 0; g < total; ++g) {
      next[g] = std::min(cap[g], target * (interf[g] + noise) / own_gain[g]);
      const double scale = std::max(p[g], next[g]);
      if (scale > 0.0) max_change = std::max(max_change, std::abs(next[g] - p[g]) / scale);
    }
    p.swap(next);
    res.iterations = round;
    if (max_change < kPowerControlTolerance) {
      res.converged = true;
      break;
    }
  }

  interference(p, interf);
  res.femto_sinr.resize(total);
  for (std::size_t g = 0; g < total; ++g) {
    res.femto_sinr[g] = p[g] * own_gain[g] / (interf[g] + noise);
  }
  res.femto_tx_mw = std::move(p);
  return res;
}

namespace {

// Interference each FAP senses on each channel with the femto users of other
// cells provisionally at their caps on the given channels.
InterferenceMap provisional_interference(const Dims& d, const DistanceTable& dist,
                                         const NetworkConfig& config,
                                         const ChannelAllocation& alloc,
                                         std::span<const double> caps) {
  const auto on = users_by_channel(alloc, d.channels);
  InterferenceMap map{d.channels, std::vector<double>(d.cells * d.channels, 0.0)};
  for (std::size_t c = 0; c < d.cells; ++c) {
    for (std::size_t n = 0; n < d.channels; ++n) {
      map.mw[c * d.channels + n] =
          femto_interference_at_fap(on[n], c, dist, d.per_cell, config,
                                    [&](std::size_t g) { return caps[g / d.per_cell]; });
    }
  }
  return map;
}

// Decode flags of every pair at config.epsilon against the final powers.
void score_pairs(SharedOutcome& out, const DistanceTable& dist, const NetworkConfig& config) {
  const std::size_t per_cell = static_cast<std::size_t>(config.n_femto_users_per_cell);
  const auto on = users_by_channel(out.allocation, static_cast<std::size_t>(config.n_channels));
  const auto& femto_tx = out.powers.femto_tx_mw;
  for (auto& pr : out.allocation.pairs) {
    const double external =
        femto_interference_at_fap(on[pr.channel], pr.cell, dist, per_cell, config,
                                  [&](std::size_t g) { return femto_tx[g]; });
    pr = sic_evaluate(pr, out.powers.macro_tx_mw[pr.macro_user],
                      femto_tx[pr.cell * per_cell + pr.femto_user], dist, external, config);
  }
}

// Assignment, power control and the BS-side SINRs, starting from `out.powers`
// (macro powers, attachments, caps) and `pairs`. A pair that cannot be decoded
// under perfect cancellation is dissolved and the round repeated.
void settle(const Topology& topology, const DistanceTable& dist, const NetworkConfig& config,
            std::vector<SicPair> pairs, std::span<const double> bs_power, SharedOutcome& out) {
  const Dims d = dims_of(topology, config);
  auto& powers = out.powers;
  NetworkConfig perfect = config;
  perfect.epsilon = 0.0;
  PowerControlResult pc;
  for (;;) {
    out.allocation = assign_all_cells(d, dist, config, pairs, powers.macro_tx_mw,
                                      powers.femto_cap_mw);
    pc = femto_power_control(topology, dist, out.allocation, powers.macro_tx_mw,
                             powers.femto_cap_mw, config);
    ++out.pc_rounds;
    const auto on = users_by_channel(out.allocation, d.channels);
    std::vector<SicPair> kept;
    for (const auto& pr : pairs) {
      const double external =
          femto_interference_at_fap(on[pr.channel], pr.cell, dist, d.per_cell, config,
                                    [&](std::size_t g) { return pc.femto_tx_mw[g]; });
      const auto eval = sic_evaluate(pr, powers.macro_tx_mw[pr.macro_user],
                                     pc.femto_tx_mw[pr.cell * d.per_cell + pr.femto_user], dist,
                                     external, perfect);
      if (eval.mu_decoded) {
        kept.push_back(pr);
      } else {
        powers.macro_tx_mw[pr.macro_user] = bs_power[pr.macro_user];
        powers.attachment[pr.macro_user] = std::nullopt;
      }
    }
    if (kept.size() == pairs.size()) break;
    pairs = std::move(kept);
  }

  out.allocation.pairs = std::move(pairs);
  out.converged = pc.converged;
  out.femto_sinr = std::move(pc.femto_sinr);
  powers.femto_tx_mw = std::move(pc.femto_tx_mw);
  score_pairs(out, dist, config);

  const double clamp = config.min_distance_m;
  out.bs_interference_mw.assign(d.channels, 0.0);
  for (std::size_t g = 0; g < powers.femto_tx_mw.size(); ++g) {
    const std::size_t c = g / d.per_cell;
    const std::size_t u = g % d.per_cell;
    out.bs_interference_mw[out.allocation.femto_channel[g]] +=
        powers.femto_tx_mw[g] * path_gain(dist.femto_bs(c, u), config.phi, clamp);
  }
  out.macro_bs_sinr.assign(config.n_macro_users, kNaN);
  for (int m = 0; m < config.n_macro_users; ++m) {
    if (powers.attachment[m]) continue;
    const double rx = powers.macro_tx_mw[m] * path_gain(dist.macro_bs(m), config.phi, clamp);
    out.macro_bs_sinr[m] = rx / (out.bs_interference_mw[m] + config.noise_mw());
  }
}

SharedOutcome initial_state(const DistanceTable& dist, const NetworkConfig& config) {
  SharedOutcome out;
  auto& powers = out.powers;
  powers.macro_tx_mw.resize(config.n_macro_users);
  for (int m = 0; m < config.n_macro_users; ++m) {
    powers.macro_tx_mw[m] = macro_min_power(dist.macro_bs(m), config);
  }
  powers.attachment.assign(config.n_macro_users, std::nullopt);
  powers.femto_cap_mw = dist.cells() > 0 ? cell_caps(dist, config) : std::vector<double>{};
  return out;
}

SharedOutcome run_pc(const Topology& topology, const DistanceTable& dist,
                     const NetworkConfig& config) {
  auto out = initial_state(dist, config);
  const auto bs_power = out.powers.macro_tx_mw;
  settle(topology, dist, config, {}, bs_power, out);
  return out;
}

// Handover decisions are taken against the pc channel plan with every femto
// user provisionally at its cap.
SharedOutcome run_sic(const Topology& topology, const DistanceTable& dist,
                      const NetworkConfig& config, const SharedOutcome& baseline) {
  const Dims d = dims_of(topology, config);
  auto out = initial_state(dist, config);
  const auto bs_power = out.powers.macro_tx_mw;
  auto& powers = out.powers;

  std::vector<SicPair> pairs;
  if (d.cells > 0) {
    const auto sensed = provisional_interference(d, dist, config, baseline.allocation,
                                                 baseline.powers.femto_cap_mw);
    const auto handover = run_handover_phase(topology, dist, config, sensed);
    out.pairs_admitted = static_cast<int>(handover.pairs.size());
    for (const auto& pair : handover.pairs) {
      const double fap_power = handover.fap_power_mw[pair.macro_user];
      const auto checked = sic_evaluate(pair, fap_power, powers.femto_cap_mw[pair.cell], dist,
                                        sensed.at(pair.cell, pair.channel), config);
      if (!checked.fu_decoded) continue;  // infeasible even at the cap: macro stays on the BS
      powers.macro_tx_mw[pair.macro_user] = fap_power;
      powers.attachment[pair.macro_user] = pair.cell;
      pairs.push_back(pair);
    }
  }
  settle(topology, dist, config, std::move(pairs), bs_power, out);
  return out;
}

}  // namespace

SharedOutcome run_shared_pipeline(const Topology& topology, const DistanceTable& dist,
                                  const NetworkConfig& config, Strategy strategy) {
  switch (strategy) {
    case Strategy::pc: return run_pc(topology, dist, config);
    case Strategy::sic: return run_sic(topology, dist, config, run_pc(topology, dist, config));
    case Strategy::split: break;
  }
  throw ConfigError("run_shared_pipeline: strategy must be pc or sic");
}

double shared_gain_bound(double femtocells, const NetworkConfig& config) {
  return config.n_femto_users_per_cell * femtocells * std::log2(1.0 + config.beta_f()) /
         macro_only_rate(config);
}

MetricsRecord shared_metrics(const SharedOutcome& out, const Topology& topology,
                             const NetworkConfig& config) {
  const double beta_f = config.beta_f();
  const double beta_m = config.beta_m();
  MetricsRecord rec;
  rec.femtocells = static_cast<int>(topology.femtocell_count());
  rec.femto_users = static_cast<int>(out.femto_sinr.size());

  double sinr_db_sum = 0.0;
  for (double g : out.femto_sinr) {
    sinr_db_sum += linear_to_db(g);
    if (g >= beta_f) ++rec.served_femto;
  }
  if (rec.femto_users > 0) rec.mean_femto_sinr_db = sinr_db_sum / rec.femto_users;

  for (int m = 0; m < config.n_macro_users; ++m) {
    if (!out.powers.attachment[m] && out.macro_bs_sinr[m] >= beta_m) ++rec.served_macro;
  }
  for (const auto& pair : out.allocation.pairs) {
    ++rec.handovers;
    if (pair.mu_decoded) {
      ++rec.handover_successes;
      ++rec.served_macro;
    }
  }
  rec.served_macro_fraction = double(rec.served_macro) / config.n_macro_users;
  rec.handover_fraction = double(rec.handovers) / config.n_macro_users;

  rec.rate_macro = rec.served_macro * std::log2(1.0 + beta_m);
  rec.rate_femto = rec.served_femto * std::log2(1.0 + beta_f);
  rec.rate_sum = rec.rate_macro + rec.rate_femto;
  rec.shared_gain = rec.rate_femto / macro_only_rate(config);
  rec.r_max_realized = shared_gain_bound(rec.femtocells, config);

  const auto& macro = out.powers.macro_tx_mw;
  rec.mean_macro_power_mw = std::accumulate(macro.begin(), macro.end(), 0.0) / macro.size();
  const auto& femto = out.powers.femto_tx_mw;
  if (!femto.empty()) {
    rec.mean_femto_power_mw = std::accumulate(femto.begin(), femto.end(), 0.0) / femto.size();
  }

  if (!out.bs_interference_mw.empty() && rec.femtocells > 0) {
    const double budget = interference_budget(config);
    for (double i : out.bs_interference_mw) {
      rec.max_budget_ratio = std::max(rec.max_budget_ratio, i / budget);
    }
  }
  rec.converged = out.converged;
  return rec;
}

std::vector<MetricsRecord> evaluate_shared(const Topology& topology, const DistanceTable& dist,
                                           const NetworkConfig& config, Strategy strategy,
                                           std::span<const double> epsilons) {
  if (strategy == Strategy::split) {
    throw ConfigError("evaluate_shared: strategy must be pc or sic");
  }
  const auto pc = run_pc(topology, dist, config);
  const auto baseline = shared_metrics(pc, topology, config);
  if (strategy == Strategy::pc) return std::vector<MetricsRecord>(epsilons.size(), baseline);

  // Epsilon only enters the final decode of each pair, so the pipeline runs once.
  auto sic = run_sic(topology, dist, config, pc);
  std::vector<MetricsRecord> out;
  out.reserve(epsilons.size());
  for (double epsilon : epsilons) {
    NetworkConfig at = config;
    at.epsilon = epsilon;
    score_pairs(sic, dist, at);
    auto rec = shared_metrics(sic, topology, at);
    rec.macro_power_savings = 1.0 - rec.mean_macro_power_mw / baseline.mean_macro_power_mw;
    if (rec.femto_users > 0 && baseline.mean_femto_power_mw > 0.0) {
      rec.femto_power_savings = 1.0 - rec.mean_femto_power_mw / baseline.mean_femto_power_mw;
    }
    rec.converged = rec.converged && baseline.converged;
    out.push_back(rec);
  }
  return out;
}

MetricsRecord evaluate_shared(const Topology& topology, const DistanceTable& dist,
                              const NetworkConfig& config, Strategy strategy) {
  const double epsilon = config.epsilon;
  return evaluate_shared(topology, dist, config, strategy, {&epsilon, 1}).front();
}

}  // namespace femto
