#pragma once

#include <optional>
#include <span>
#include <vector>

#include "femto/config.hpp"
#include "femto/metrics.hpp"
#include "femto/topology.hpp"

namespace femto {

// Femto users are indexed globally as cell * F + user throughout this module.

/// Where a macro user uplinks: the BS (nullopt) or the FAP of a cell.
using Attachment = std::optional<int>;

struct PowerAllocation {
  std::vector<double> macro_tx_mw;
  std::vector<double> femto_tx_mw;
  std::vector<double> femto_cap_mw;  // per cell
  std::vector<Attachment> attachment;  // per macro user
};

/// A macro user sharing its own channel with a femto user of the femtocell it
/// joined, separated at the FAP by successive interference cancellation.
struct SicPair {
  int cell = 0;
  int macro_user = 0;
  int femto_user = 0;  // index within the cell
  int channel = 0;
  double residual_mw = 0.0;
  double macro_sinr = 0.0;     // perfect-cancellation SINR of the macro user at the FAP
  double post_sic_sinr = 0.0;  // (1 - epsilon) * macro_sinr
  bool fu_decoded = false;
  bool mu_decoded = false;
};

/// Shared-mode channel map. Channel n always carries macro user n (N_C = M);
/// femto_channel holds, per global femto user, the channel it transmits on.
struct ChannelAllocation {
  std::vector<int> femto_channel;
  std::vector<SicPair> pairs;
};

/// Per (cell, channel) interference power at the FAP, row-major by cell.
struct InterferenceMap {
  std::size_t channels = 0;
  std::vector<double> mw;

  double at(std::size_t cell, std::size_t channel) const { return mw[cell * channels + channel]; }
  std::span<const double> row(std::size_t cell) const {
    return {mw.data() + cell * channels, channels};
  }
};

/// kappa_M beta_M noise d_MB^phi: the BS-attached macro transmit power.
double macro_min_power(double d_mb, const NetworkConfig& config);

/// noise (kappa_M - 1): aggregate femto interference allowed per channel at
/// the BS. Throws ConfigError when kappa_M <= 1.
double interference_budget(const NetworkConfig& config);

/// Per-femtocell transmit power ceiling, using d_AB - r_f (clamped) as the
/// worst-case femto-user-to-BS distance and dividing the budget by N_f.
/// Throws ConfigError when n_f_mean <= 0 (no femtocells to share the budget).
double femto_power_cap(double d_ab, const NetworkConfig& config);

/// True iff joining the FAP needs strictly less power than reaching the BS.
bool handover_decision(double d_mb, double d_ma, double interference_at_fap_mw,
                       const NetworkConfig& config);
bool handover_decision(int macro_user, int cell, const DistanceTable& distances,
                       double interference_at_fap_mw, const NetworkConfig& config);

/// beta_M (I + noise) d_MA^psi.
double required_fap_power(double d_ma, double interference_at_fap_mw, const NetworkConfig& config);
double required_fap_power(int macro_user, int cell, const DistanceTable& distances,
                          double interference_at_fap_mw, const NetworkConfig& config);

/// Power a handed-over macro user transmits at its FAP: the required power
/// with the same kappa_m margin used toward the BS, never above the BS power.
double fap_transmit_power(double required_mw, double d_mb, const NetworkConfig& config);

struct HandoverOutcome {
  std::vector<Attachment> attachment;
  std::vector<double> fap_power_mw;  // transmit power of each admitted macro user at its FAP, else 0
  std::vector<SicPair> pairs;
};

/// Each macro user tests the handover rule against every FAP (interference
/// on its own channel from `provisional`) and picks, among FAPs whose closest
/// femto user at the cap could still be decoded over it, the one needing the
/// least power. Each cell admits at most F, lowest required power first (ties by
/// user id), and pairs every admitted macro user with the unpaired in-cell
/// femto user closest to the FAP.
HandoverOutcome run_handover_phase(const Topology& topology, const DistanceTable& distances,
                                   const NetworkConfig& config, const InterferenceMap& provisional);

/// Fills the decode flags, the residual interference and both macro SINRs.
/// `external_mw` is co-channel femto interference at the FAP from other cells.
SicPair sic_evaluate(SicPair pair, double macro_tx_mw, double femto_tx_mw,
                     const DistanceTable& distances, double external_mw,
                     const NetworkConfig& config);

/// The `needed` least-interfered channels outside `pair_channels`, ascending
/// by interference, ties by lowest channel id.
std::vector<int> assign_channels_shared(std::span<const int> pair_channels,
                                        std::span<const double> measured_mw, int needed);

struct PowerControlResult {
  std::vector<double> femto_tx_mw;
  std::vector<double> femto_sinr;  // at the own FAP, macro partner counted as interference
  int iterations = 0;
  bool converged = true;
};

inline constexpr double kPowerControlTolerance = 1e-6;
inline constexpr int kPowerControlMaxRounds = 100;

/// Synchronous target-SINR iteration for every femto user under its cell cap,
/// starting from the caps. Macro transmitters are held at `macro_tx_mw`.
PowerControlResult femto_power_control(const Topology& topology, const DistanceTable& distances,
                                       const ChannelAllocation& allocation,
                                       std::span<const double> macro_tx_mw,
                                       std::span<const double> caps_mw,
                                       const NetworkConfig& config);

/// Everything the shared pipeline produced for one topology and strategy.
struct SharedOutcome {
  ChannelAllocation allocation;
  PowerAllocation powers;
  std::vector<double> femto_sinr;
  std::vector<double> macro_bs_sinr;       // NaN for FAP-attached users
  std::vector<double> bs_interference_mw;  // per channel, femto users only
  int pairs_admitted = 0;                  // before any dissolution
  int pc_rounds = 0;
  bool converged = true;
};

/// powers -> caps -> [sic: handover, pairing, screening] -> channel
/// assignment -> femto power control -> final SINRs.
SharedOutcome run_shared_pipeline(const Topology& topology, const DistanceTable& distances,
                                  const NetworkConfig& config, Strategy strategy);

/// Metrics of the shared scheme; under `sic` the power savings against the
/// pc baseline on the same topology are filled too.
MetricsRecord evaluate_shared(const Topology& topology, const DistanceTable& distances,
                              const NetworkConfig& config, Strategy strategy);

/// One record per epsilon for a single pipeline run; record i equals
/// evaluate_shared with config.epsilon = epsilons[i].
std::vector<MetricsRecord> evaluate_shared(const Topology& topology,
                                           const DistanceTable& distances,
                                           const NetworkConfig& config, Strategy strategy,
                                           std::span<const double> epsilons);

/// Metrics of a finished pipeline, without the savings comparison.
MetricsRecord shared_metrics(const SharedOutcome& outcome, const Topology& topology,
                             const NetworkConfig& config);

/// F N_f log2(1 + beta_F) / (M log2(1 + beta_M)) for `femtocells` cells.
double shared_gain_bound(double femtocells, const NetworkConfig& config);

}  // namespace femto
