#include "femto/config.hpp"

#include <cmath>

#include "femto/radio.hpp"

namespace femto {

std::string to_string(CountMode mode) {
  return mode == CountMode::poisson ? "poisson" : "fixed";
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::split: return "split";
    case Strategy::pc: return "pc";
    case Strategy::sic: return "sic";
  }
  return "?";
}

CountMode parse_count_mode(const std::string& text) {
  if (text == "poisson") return CountMode::poisson;
  if (text == "fixed") return CountMode::fixed;
  throw ConfigError("unknown femtocell_count_mode '" + text + "' (expected poisson|fixed)");
}

Strategy parse_strategy(const std::string& text) {
  if (text == "split") return Strategy::split;
  if (text == "pc") return Strategy::pc;
  if (text == "sic") return Strategy::sic;
  throw ConfigError("unknown strategy '" + text + "' (expected split|pc|sic)");
}

double NetworkConfig::noise_mw() const { return dbm_to_mw(noise_dbm); }
double NetworkConfig::beta_m() const { return db_to_linear(beta_m_db); }
double NetworkConfig::beta_f() const { return db_to_linear(beta_f_db); }

double NetworkConfig::femto_const_power_mw() const {
  if (p_femto_const_dbm) return dbm_to_mw(*p_femto_const_dbm);
  return beta_f() * noise_mw() * std::pow(r_femto_m, alpha);
}

double NetworkConfig::femto_const_power_dbm() const {
  return p_femto_const_dbm ? *p_femto_const_dbm : mw_to_dbm(femto_const_power_mw());
}

namespace {

void require(bool ok, const std::string& rule) {
  if (!ok) throw ConfigError("invalid configuration: " + rule);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const NetworkConfig& c) {
  require(finite(c.n_f_mean) && c.n_f_mean >= 0.0, "n_f_mean must be >= 0");
  require(c.n_macro_users > 0, "n_macro_users must be > 0");
  require(c.n_femto_users_per_cell > 0, "n_femto_users_per_cell must be > 0");
  require(c.n_channels == c.n_macro_users, "n_channels != n_macro_users (N_C = M required)");
  require(c.n_channels >= c.n_femto_users_per_cell, "n_channels < F");
  require(c.gamma >= c.n_femto_users_per_cell, "gamma < F (gamma >= F required)");
  require(c.gamma <= c.n_channels, "gamma > n_channels");
  require(finite(c.kappa_m) && c.kappa_m > 1.0,
          "kappa_m must be > 1 (interference budget noise*(kappa_m-1) must be positive)");
  require(finite(c.epsilon) && c.epsilon >= 0.0 && c.epsilon < 1.0, "epsilon must lie in [0, 1)");
  require(finite(c.r_femto_m) && c.r_femto_m > 0.0, "r_femto_m must be > 0");
  require(finite(c.r_macro_m) && c.r_femto_m < c.r_macro_m, "r_femto_m must be < r_macro_m");
  require(c.alpha >= 2.0 && c.psi >= 2.0 && c.phi >= 2.0, "pathloss exponents must be >= 2");
  require(finite(c.min_distance_m) && c.min_distance_m > 0.0, "min_distance_m must be > 0");
  require(finite(c.beta_m_db) && finite(c.beta_f_db) && finite(c.noise_dbm),
          "beta_m_db, beta_f_db and noise_dbm must be finite");
  require(!c.p_femto_const_dbm || finite(*c.p_femto_const_dbm),
          "p_femto_const_dbm must be finite");
  require(c.replicates >= 1, "replicates must be >= 1");
}

}  // namespace femto
