#pragma once

#include <cstddef>
#include <vector>

#include "femto/config.hpp"
#include "femto/random.hpp"

namespace femto {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

/// One random network realization. The BS sits at the origin.
struct Topology {
  Point bs{};
  std::vector<Point> fap_positions;
  std::vector<std::vector<Point>> femto_user_positions;  // [cell][user]
  std::vector<Point> macro_user_positions;

  std::size_t femtocell_count() const { return fap_positions.size(); }
  std::size_t femto_user_count() const;
};

/// Uniform point in the disk of `radius` around `center`.
Point uniform_in_disk(std::mt19937_64& engine, Point center, double radius);

/// Number of femtocells in a realization: Poisson(n_f_mean) by inversion of
/// the replicate's count uniform, or round(n_f_mean) in fixed mode.
int sample_femtocell_count(const NetworkConfig& config, const ReplicateStream& stream);

Topology sample_topology(const NetworkConfig& config, const ReplicateStream& stream);

/// Cached Euclidean distances, each clamped below at min_distance_m. Femto
/// users are addressed by (cell, user-within-cell).
class DistanceTable {
 public:
  DistanceTable(const Topology& topology, double clamp_m);

  std::size_t cells() const { return cells_; }
  std::size_t users_per_cell() const { return users_per_cell_; }
  std::size_t macro_users() const { return macros_; }

  double macro_bs(std::size_t m) const { return macro_bs_[m]; }
  double fap_bs(std::size_t c) const { return fap_bs_[c]; }
  double femto_bs(std::size_t c, std::size_t u) const { return femto_bs_[c * users_per_cell_ + u]; }
  double macro_fap(std::size_t m, std::size_t c) const { return macro_fap_[m * cells_ + c]; }
  /// Femto user (c, u) to the FAP of `to_cell`.
  double femto_fap(std::size_t c, std::size_t u, std::size_t to_cell) const {
    return femto_fap_[(c * users_per_cell_ + u) * cells_ + to_cell];
  }

 private:
  std::size_t cells_ = 0;
  std::size_t users_per_cell_ = 0;
  std::size_t macros_ = 0;
  std::vector<double> macro_bs_;
  std::vector<double> fap_bs_;
  std::vector<double> femto_bs_;
  std::vector<double> macro_fap_;
  std::vector<double> femto_fap_;
};

DistanceTable build_distance_table(const Topology& topology, const NetworkConfig& config);

}  // namespace femto
