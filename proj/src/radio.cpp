#include "femto/radio.hpp"

#include <algorithm>
#include <cmath>

namespace femto {

double path_gain(double distance_m, double exponent, double clamp_m) {
  return std::pow(std::max(distance_m, clamp_m), -exponent);
}

double sinr(const LinkBudgetTerm& signal, std::span<const LinkBudgetTerm> interferers,
            double noise_mw) {
  double interference = 0.0;
  for (const auto& term : interferers) interference += term.received_mw();
  return signal.received_mw() / (interference + noise_mw);
}

double threshold_rate(double sinr_linear, double beta_linear) {
  return sinr_linear >= beta_linear ? std::log2(1.0 + beta_linear) : 0.0;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
double mw_to_dbm(double mw) { return linear_to_db(mw); }

}  // namespace femto
