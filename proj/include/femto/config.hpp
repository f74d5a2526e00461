#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace femto {

/// Thrown for any configuration that violates a model rule. The message names
/// the rule (e.g. "gamma < F").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CountMode { poisson, fixed };

/// Which uplink architecture a replicate is evaluated under.
enum class Strategy { split, pc, sic };

std::string to_string(CountMode mode);
std::string to_string(Strategy strategy);
CountMode parse_count_mode(const std::string& text);
Strategy parse_strategy(const std::string& text);

/// Every scalar of the two-tier uplink model. Values are stored in the units
/// they are configured in (dB, dBm, meters); the linear accessors below are
/// what the simulation kernels consume.
struct NetworkConfig {
  double n_f_mean = 20.0;
  CountMode femtocell_count_mode = CountMode::poisson;
  int n_channels = 25;
  int n_macro_users = 25;
  int n_femto_users_per_cell = 5;
  double beta_m_db = 20.0;
  double beta_f_db = 25.0;
  double kappa_m = 2.0;
  double noise_dbm = -95.0;
  double r_macro_m = 400.0;
  double r_femto_m = 30.0;
  double alpha = 2.0;
  double psi = 3.0;
  double phi = 3.5;
  int gamma = 5;
  double epsilon = 0.0;
  // Unset means "derive": the power at which a femto user on the femtocell
  // edge meets beta_F over noise alone.
  std::optional<double> p_femto_const_dbm;
  double min_distance_m = 1.0;
  std::uint64_t seed = 1;
  int replicates = 1000;

  double noise_mw() const;
  double beta_m() const;
  double beta_f() const;
  double femto_const_power_mw() const;
  double femto_const_power_dbm() const;
};

/// Throws ConfigError for the first violated invariant.
void validate(const NetworkConfig& config);

}  // namespace femto
