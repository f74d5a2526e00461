#include "femto/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace femto {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t Topology::femto_user_count() const {
  std::size_t n = 0;
  for (const auto& cell : femto_user_positions) n += cell.size();
  return n;
}

Point uniform_in_disk(std::mt19937_64& engine, Point center, double radius) {
  const double r = radius * std::sqrt(uniform01(engine));
  const double theta = 2.0 * std::numbers::pi * uniform01(engine);
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

int sample_femtocell_count(const NetworkConfig& config, const ReplicateStream& stream) {
  if (config.femtocell_count_mode == CountMode::fixed) {
    return static_cast<int>(std::llround(config.n_f_mean));
  }
  auto engine = stream.engine(StreamTag::femtocell_count);
  return poisson_inverse(config.n_f_mean, uniform01(engine));
}

Topology sample_topology(const NetworkConfig& config, const ReplicateStream& stream) {
  Topology topo;
  const int cells = sample_femtocell_count(config, stream);
  topo.fap_positions.reserve(cells);
  topo.femto_user_positions.reserve(cells);
  for (int c = 0; c < cells; ++c) {
    auto engine = stream.engine(StreamTag::femtocell, static_cast<std::uint64_t>(c));
    const Point fap = uniform_in_disk(engine, topo.bs, config.r_macro_m);
    std::vector<Point> users;
    users.reserve(config.n_femto_users_per_cell);
    for (int u = 0; u < config.n_femto_users_per_cell; ++u) {
      users.push_back(uniform_in_disk(engine, fap, config.r_femto_m));
    }
    topo.fap_positions.push_back(fap);
    topo.femto_user_positions.push_back(std::move(users));
  }
  auto engine = stream.engine(StreamTag::macro_users);
  topo.macro_user_positions.reserve(config.n_macro_users);
  for (int m = 0; m < config.n_macro_users; ++m) {
    topo.macro_user_positions.push_back(uniform_in_disk(engine, topo.bs, config.r_macro_m));
  }
  return topo;
}

DistanceTable::DistanceTable(const Topology& topo, double clamp_m)
    : cells_(topo.femtocell_count()),
      users_per_cell_(topo.femto_user_positions.empty() ? 0 : topo.femto_user_positions[0].size()),
      macros_(topo.macro_user_positions.size()) {
  auto d = [clamp_m](Point a, Point b) { return std::max(distance(a, b), clamp_m); };

  macro_bs_.reserve(macros_);
  for (const auto& m : topo.macro_user_positions) macro_bs_.push_back(d(m, topo.bs));

  fap_bs_.reserve(cells_);
  for (const auto& a : topo.fap_positions) fap_bs_.push_back(d(a, topo.bs));

  macro_fap_.reserve(macros_ * cells_);
  for (const auto& m : topo.macro_user_positions) {
    for (const auto& a : topo.fap_positions) macro_fap_.push_back(d(m, a));
  }

  femto_bs_.reserve(cells_ * users_per_cell_);
  femto_fap_.reserve(cells_ * users_per_cell_ * cells_);
  for (const auto& cell : topo.femto_user_positions) {
    for (const auto& f : cell) {
      femto_bs_.push_back(d(f, topo.bs));
      for (const auto& a : topo.fap_positions) femto_fap_.push_back(d(f, a));
    }
  }
}

DistanceTable build_distance_table(const Topology& topology, const NetworkConfig& config) {
  return DistanceTable(topology, config.min_distance_m);
}

}  // namespace femto
