#pragma once

#include <vector>

#include "femto/config.hpp"
#include "femto/metrics.hpp"
#include "femto/random.hpp"
#include "femto/topology.hpp"

namespace femto {

/// Orthogonal partition: gamma channels for the femto tier, the remaining
/// N_C - gamma for macro users, and each femtocell's random pick of F
/// distinct femto channels (user u of cell c transmits on per_cell_choice[c][u]).
struct SplitAllocation {
  std::vector<int> femto_channel_ids;
  std::vector<std::vector<int>> per_cell_choice;
  int macro_served_count = 0;
};

/// Throws ConfigError when gamma < F.
SplitAllocation allocate_split(const NetworkConfig& config, const Topology& topology,
                               const ReplicateStream& stream);

/// SINR of every femto user at its own FAP, indexed cell * F + user. Co-channel
/// users of other cells interfere at phi.
std::vector<double> split_femto_sinr(const NetworkConfig& config, const Topology& topology,
                                     const DistanceTable& distances,
                                     const SplitAllocation& allocation);

/// Constant-power femto tier, no cross-tier interference. Fills the rates,
/// split gain, mean femto SINR and served counts.
MetricsRecord evaluate_split(const NetworkConfig& config, const Topology& topology,
                             const DistanceTable& distances, const SplitAllocation& allocation);

/// Sum-rate gain relative to the macro-only network with all M users served.
double split_gain(double r_sum, const NetworkConfig& config);

/// Sum rate of the macro-only baseline, M log2(1 + beta_M).
double macro_only_rate(const NetworkConfig& config);

}  // namespace femto
