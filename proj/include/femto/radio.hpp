#pragma once

#include <span>

namespace femto {

enum class LinkRole { signal, interference };

/// One received-power contribution to a link: P_T times d^-exponent.
struct LinkBudgetTerm {
  double tx_power_mw = 0.0;
  double path_gain = 0.0;
  LinkRole role = LinkRole::interference;

  double received_mw() const { return tx_power_mw * path_gain; }
};

/// max(distance, clamp)^-exponent.
double path_gain(double distance_m, double exponent, double clamp_m);

/// Linear SINR of `signal` against the sum of `interferers` plus noise.
double sinr(const LinkBudgetTerm& signal, std::span<const LinkBudgetTerm> interferers,
            double noise_mw);

/// log2(1 + beta) when the link meets its threshold, else 0. The credited
/// rate is the threshold rate, never the achieved one.
double threshold_rate(double sinr_linear, double beta_linear);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

}  // namespace femto
