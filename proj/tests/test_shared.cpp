#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "femto/radio.hpp"
#include "femto/shared_scheme.hpp"
#include "femto/split_scheme.hpp"
#include "femto/topology.hpp"
#include "test_support.hpp"

using namespace femto;

namespace {

// The hand examples are written with sigma^2 = 3.1623e-13 mW.
constexpr double kSigma = 3.1623e-13;

NetworkConfig hand_config() {
  NetworkConfig c;
  c.noise_dbm = mw_to_dbm(kSigma);
  return c;
}

NetworkConfig small_config(int macros, int per_cell, double n_f) {
  NetworkConfig c;
  c.n_channels = macros;
  c.n_macro_users = macros;
  c.n_femto_users_per_cell = per_cell;
  c.gamma = std::max(per_cell, 1);
  c.n_f_mean = n_f;
  c.femtocell_count_mode = CountMode::fixed;
  return c;
}

InterferenceMap quiet(std::size_t cells, std::size_t channels) {
  return {channels, std::vector<double>(cells * channels, 0.0)};
}

}  // namespace

TEST_CASE("macro minimum power") {
  const auto c = hand_config();
  check_rel(c.noise_mw(), kSigma, 1e-12);
  const double p = macro_min_power(400.0, c);
  check_rel(p, 2.0 * 100.0 * kSigma * 1.28e9);
  CHECK(p == doctest::Approx(8.10e-2).epsilon(2e-3));

  auto unit = c;
  unit.kappa_m = 1.0;
  check_rel(macro_min_power(250.0, unit), 100.0 * kSigma * std::pow(250.0, 3.5));
  check_rel(macro_min_power(200.0, c) / macro_min_power(100.0, c), std::pow(2.0, 3.5));
}

TEST_CASE("interference budget") {
  const auto c = hand_config();
  check_rel(interference_budget(c), kSigma);

  auto k11 = c;
  k11.kappa_m = 11.0;
  k11.noise_dbm = mw_to_dbm(1e-13);
  check_rel(interference_budget(k11), 1e-12);

  auto thin = c;
  thin.kappa_m = 1.0 + 1e-9;
  CHECK(interference_budget(thin) < 1e-8 * kSigma);

  auto none = c;
  none.kappa_m = 1.0;
  CHECK_THROWS_AS(interference_budget(none), ConfigError);
}

TEST_CASE("femto power cap") {
  auto c = hand_config();
  c.n_f_mean = 10.0;
  const double cap = femto_power_cap(200.0, c);
  check_rel(cap, kSigma * std::pow(170.0, 3.5) / 10.0);
  CHECK(cap == doctest::Approx(2.03e-6).epsilon(5e-3));

  auto twice = c;
  twice.n_f_mean = 20.0;
  CHECK(femto_power_cap(200.0, twice) == cap / 2.0);

  // FAP closer to the BS than r_f: the distance is clamped, not negative
  CHECK(femto_power_cap(10.0, c) == interference_budget(c) * 1.0 / 10.0);
}

TEST_CASE("cap with d_AB - r_f never exceeds the cap with the true distance") {
  NetworkConfig c;
  c.n_f_mean = 20.0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto t = sample_topology(c, ReplicateStream(31, r));
    const DistanceTable d(t, c.min_distance_m);
    for (std::size_t a = 0; a < d.cells(); ++a) {
      for (std::size_t u = 0; u < 5; ++u) {
        const double eq8 = interference_budget(c) * std::pow(d.femto_bs(a, u), c.phi) / c.n_f_mean;
        CHECK(femto_power_cap(d.fap_bs(a), c) <= eq8);
      }
    }
  }
}

TEST_CASE("handover decision rule") {
  const auto c = hand_config();
  CHECK(handover_decision(400.0, 30.0, 0.0, c));
  check_rel(std::pow(400.0, 3.5), 1.28e9, 1e-12);
  CHECK(std::pow(400.0, 3.5) > std::pow(30.0, 3.0) / 2.0);
  CHECK_FALSE(handover_decision(400.0, 1e6, 0.0, c));

  // exact equality of both sides: 4^3.5 = 128 = 16^2 / 2
  auto eq = c;
  eq.psi = 2.0;
  CHECK(std::pow(4.0, 3.5) == 128.0);
  CHECK_FALSE(handover_decision(4.0, 16.0, 0.0, eq));
  CHECK(handover_decision(4.0, 15.99, 0.0, eq));

  // the rule is exactly "FAP power below BS power"
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(1.0, 400.0), interf(0.0, 20.0);
  for (int t = 0; t < 2000; ++t) {
    const double d_mb = dist(rng), d_ma = dist(rng), i = interf(rng) * c.noise_mw();
    const double p_fap = required_fap_power(d_ma, i, c);
    const double p_bs = macro_min_power(d_mb, c);
    if (std::abs(p_fap - p_bs) > 1e-9 * p_bs) {
      CHECK(handover_decision(d_mb, d_ma, i, c) == (p_fap < p_bs));
    }
  }
}

TEST_CASE("required FAP power") {
  const auto c = hand_config();
  const double p = required_fap_power(30.0, 0.0, c);
  check_rel(p, 27000.0 * 100.0 * kSigma);
  CHECK(p == doctest::Approx(8.54e-7).epsilon(2e-3));
  CHECK(required_fap_power(30.0, c.noise_mw(), c) == 2.0 * p);
  check_rel(required_fap_power(1.0, 0.5 * kSigma, c), 100.0 * 1.5 * kSigma);
}

TEST_CASE("FAP transmit power keeps the kappa margin below the BS power") {
  const auto c = hand_config();
  const double req = required_fap_power(30.0, 0.0, c);
  check_rel(fap_transmit_power(req, 400.0, c), 2.0 * req);
  CHECK(fap_transmit_power(req, 5.0, c) == macro_min_power(5.0, c));
}

TEST_CASE("no femtocells, no handovers") {
  const auto c = small_config(25, 5, 0);
  const auto t = sample_topology(c, ReplicateStream(1, 0));
  const DistanceTable d(t, 1.0);
  const auto h = run_handover_phase(t, d, c, quiet(0, 25));
  CHECK(h.pairs.empty());
  for (const auto& a : h.attachment) CHECK_FALSE(a.has_value());
}

TEST_CASE("macro user inside a quiet femtocell hands over") {
  auto c = small_config(5, 5, 1);
  Topology t;
  t.fap_positions = {{390.0, 0.0}};
  t.femto_user_positions = {{{390.0, 5.0}, {394.0, 0.0}, {390.0, -8.0}, {380.0, 3.0}, {392.0, 6.0}}};
  t.macro_user_positions = {{380.0, 0.0}, {2.0, 0.0}, {0.0, 3.0}, {-4.0, 0.0}, {0.0, -5.0}};
  const DistanceTable d(t, 1.0);
  CHECK(d.macro_bs(0) == 380.0);
  CHECK(d.macro_fap(0, 0) == 10.0);
  CHECK(handover_decision(0, 0, d, 0.0, c));

  const auto h = run_handover_phase(t, d, c, quiet(1, 5));
  REQUIRE(h.pairs.size() == 1);
  const auto& p = h.pairs[0];
  CHECK(p.macro_user == 0);
  CHECK(p.cell == 0);
  CHECK(p.channel == 0);
  CHECK(p.femto_user == 1);  // closest to the FAP
  CHECK(h.attachment[0] == 0);
  check_rel(h.fap_power_mw[0], 2.0 * required_fap_power(0, 0, d, 0.0, c), 1e-12);
  for (int m = 1; m < 5; ++m) CHECK_FALSE(h.attachment[m].has_value());
}

TEST_CASE("a femtocell admits at most F macro users, lowest power first") {
  auto c = small_config(7, 5, 1);
  Topology t;
  t.fap_positions = {{350.0, 0.0}};
  t.femto_user_positions = {{{352.0, 0.0}, {350.0, 3.0}, {348.0, 0.0}, {350.0, -4.0}, {353.0, 3.0}}};
  for (int m = 0; m < 7; ++m) t.macro_user_positions.push_back({360.0 + 3.0 * m, 0.0});
  const DistanceTable d(t, 1.0);
  const auto h = run_handover_phase(t, d, c, quiet(1, 7));
  REQUIRE(h.pairs.size() == 5);
  std::set<int> admitted, partners;
  for (const auto& p : h.pairs) {
    admitted.insert(p.macro_user);
    partners.insert(p.femto_user);
    CHECK(p.channel == p.macro_user);
  }
  CHECK(admitted == std::set<int>{0, 1, 2, 3, 4});
  CHECK(partners.size() == 5);
}

TEST_CASE("SIC decode stages") {
  auto c = small_config(5, 5, 1);
  Topology t;
  t.fap_positions = {{300.0, 0.0}};
  t.femto_user_positions = {{{304.0, 0.0}, {310.0, 0.0}, {300.0, 12.0}, {290.0, 0.0}, {300.0, -20.0}}};
  t.macro_user_positions = {{320.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}, {4.0, 4.0}};
  const DistanceTable d(t, 1.0);
  const SicPair pair{.cell = 0, .macro_user = 0, .femto_user = 0, .channel = 0};
  const double noise = c.noise_mw();
  const double external = 0.3 * noise;
  const double macro_tx = 2.0 * required_fap_power(0, 0, d, external, c);
  const double macro_rx = macro_tx * std::pow(20.0, -3.0);

  c.epsilon = 0.0;
  const auto perfect = sic_evaluate(pair, macro_tx, 1e-3, d, external, c);
  CHECK(perfect.residual_mw == 0.0);
  CHECK(perfect.post_sic_sinr == perfect.macro_sinr);
  check_rel(perfect.macro_sinr, macro_rx / (external + noise), 1e-12);
  const double femto_rx = 1e-3 * std::pow(4.0, -2.0);
  CHECK(perfect.fu_decoded == (femto_rx / (macro_rx + external + noise) >= c.beta_f()));
  CHECK(perfect.fu_decoded);
  CHECK(perfect.mu_decoded);

  c.epsilon = 0.125;
  const auto lossy = sic_evaluate(pair, macro_tx, 1e-3, d, external, c);
  check_rel(lossy.post_sic_sinr, 0.875 * lossy.macro_sinr, 1e-12);
  check_rel(lossy.residual_mw, 0.125 / 0.875 * (external + noise), 1e-12);

  // a weak femto user is not decoded first, so neither is the macro user
  const auto weak = sic_evaluate(pair, macro_tx, 1e-9, d, external, c);
  CHECK_FALSE(weak.fu_decoded);
  CHECK_FALSE(weak.mu_decoded);
}

TEST_CASE("decoded macro users never grow with epsilon") {
  auto c = small_config(5, 5, 1);
  Topology t;
  t.fap_positions = {{300.0, 0.0}};
  t.femto_user_positions = {{{304.0, 0.0}, {310.0, 0.0}, {300.0, 12.0}, {290.0, 0.0}, {300.0, -20.0}}};
  t.macro_user_positions = {{320.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}, {4.0, 4.0}};
  const DistanceTable d(t, 1.0);
  const SicPair pair{.cell = 0, .macro_user = 0, .femto_user = 0, .channel = 0};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> scale(0.5, 3.0), ext(0.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double external = ext(rng) * c.noise_mw();
    const double macro_tx = scale(rng) * required_fap_power(0, 0, d, external, c);
    bool previous = true;
    for (double eps : {0.0, 0.025, 0.05, 0.1, 0.125, 0.3, 0.6}) {
      c.epsilon = eps;
      const auto p = sic_evaluate(pair, macro_tx, 1e-3, d, external, c);
      CHECK(p.residual_mw >= 0.0);
      CHECK((p.residual_mw == 0.0) == (eps == 0.0));
      if (!previous) CHECK_FALSE(p.mu_decoded);
      previous = p.mu_decoded;
    }
  }
}

TEST_CASE("least-interfered channel assignment") {
  const std::vector<double> three{3e-13, 1e-13, 2e-13};
  CHECK(assign_channels_shared({}, three, 2) == std::vector<int>{1, 2});

  const std::vector<double> flat(25, 1e-13);
  CHECK(assign_channels_shared({}, flat, 5) == std::vector<int>{0, 1, 2, 3, 4});
  const std::vector<int> pair_on{0};
  CHECK(assign_channels_shared(pair_on, flat, 4) == std::vector<int>{1, 2, 3, 4});

  std::vector<double> varied(25);
  for (int n = 0; n < 25; ++n) varied[n] = (n * 7 % 25) * 1e-13;
  const std::vector<int> pair7{7};
  const auto four = assign_channels_shared(pair7, varied, 4);
  CHECK(four.size() == 4);
  CHECK(std::find(four.begin(), four.end(), 7) == four.end());
  for (std::size_t i = 1; i < four.size(); ++i) CHECK(varied[four[i - 1]] <= varied[four[i]]);
}

TEST_CASE("power control: lone user reaches the closed form") {
  auto c = small_config(1, 1, 1);
  Topology t;
  t.fap_positions = {{200.0, 0.0}};
  t.femto_user_positions = {{{212.0, 0.0}}};
  t.macro_user_positions = {{-100.0, 0.0}};
  const DistanceTable d(t, 1.0);
  const ChannelAllocation alloc{{0}, {}};
  const std::vector<double> macro_tx{0.0};
  const std::vector<double> caps{femto_power_cap(200.0, c)};
  const auto res = femto_power_control(t, d, alloc, macro_tx, caps, c);
  CHECK(res.converged);
  CHECK(res.iterations <= 2);
  check_rel(res.femto_tx_mw[0], c.beta_f() * c.noise_mw() * 144.0, 1e-8);
  CHECK(res.femto_sinr[0] >= c.beta_f());
}

TEST_CASE("power control: two users locked at their caps") {
  auto c = small_config(1, 1, 2);
  Topology t;
  t.fap_positions = {{300.0, 0.0}, {300.0, 40.0}};
  t.femto_user_positions = {{{300.0, 25.0}}, {{300.0, 15.0}}};
  t.macro_user_positions = {{-100.0, 0.0}};
  const DistanceTable d(t, 1.0);
  const ChannelAllocation alloc{{0, 0}, {}};
  const std::vector<double> macro_tx{0.0};
  const std::vector<double> caps{femto_power_cap(d.fap_bs(0), c), femto_power_cap(d.fap_bs(1), c)};

  // With the other user at its cap, each would need beta_F * cross / own > 1
  // times its own cap, so both stay pinned at the cap.
  const double own = std::pow(25.0, -2.0), cross = std::pow(15.0, -3.5);
  REQUIRE(c.beta_f() * cross / own > 1.0);

  const auto res = femto_power_control(t, d, alloc, macro_tx, caps, c);
  CHECK(res.converged);
  CHECK(res.femto_tx_mw[0] == caps[0]);
  CHECK(res.femto_tx_mw[1] == caps[1]);
  check_rel(res.femto_sinr[0], caps[0] * own / (caps[1] * cross + c.noise_mw()), 1e-12);
  check_rel(res.femto_sinr[1], caps[1] * own / (caps[0] * cross + c.noise_mw()), 1e-12);
  CHECK(res.femto_sinr[0] < c.beta_f());
  CHECK(res.femto_sinr[1] < c.beta_f());
}

TEST_CASE("zero femtocells in the shared scheme") {
  const auto c = small_config(25, 5, 0);
  const auto t = sample_topology(c, ReplicateStream(1, 0));
  const DistanceTable d(t, 1.0);
  for (auto s : {Strategy::pc, Strategy::sic}) {
    const auto out = run_shared_pipeline(t, d, c, s);
    for (int m = 0; m < 25; ++m) {
      CHECK(out.powers.macro_tx_mw[m] == macro_min_power(d.macro_bs(m), c));
      CHECK_FALSE(out.powers.attachment[m].has_value());
    }
    const auto rec = shared_metrics(out, t, c);
    CHECK(rec.rate_femto == 0.0);
    CHECK(rec.shared_gain == 0.0);
    CHECK(rec.served_macro == 25);
  }
}

TEST_CASE("gain bound") {
  const NetworkConfig c;
  const double expected = 5.0 * 40.0 * std::log2(1.0 + std::pow(10.0, 2.5)) /
                          (25.0 * std::log2(101.0));
  check_rel(shared_gain_bound(40.0, c), expected);
  check_rel(shared_gain_bound(20.0, c), expected / 2.0);
  CHECK(shared_gain_bound(0.0, c) == 0.0);
}

TEST_CASE("an all-served network reaches the gain bound exactly") {
  auto c = small_config(5, 5, 1);
  Topology t;
  t.fap_positions = {{300.0, 0.0}};
  t.femto_user_positions = {{{302.0, 0.0}, {300.0, 3.0}, {298.0, 0.0}, {300.0, -4.0}, {303.0, 3.0}}};
  t.macro_user_positions = {{-300.0, 0.0}, {-250.0, 10.0}, {-200.0, -30.0}, {-320.0, 40.0}, {-280.0, 0.0}};
  const DistanceTable d(t, 1.0);
  const auto rec = evaluate_shared(t, d, c, Strategy::pc);
  REQUIRE(rec.served_femto == 5);
  check_rel(rec.shared_gain, rec.r_max_realized, 1e-12);
}

namespace {

struct Realization {
  NetworkConfig config;
  Topology topology;
  DistanceTable distances;
};

Realization realize(double n_f, CountMode mode, std::uint64_t r, double epsilon = 0.0) {
  NetworkConfig c;
  c.n_f_mean = n_f;
  c.femtocell_count_mode = mode;
  c.epsilon = epsilon;
  auto t = sample_topology(c, ReplicateStream(c.seed, r));
  DistanceTable d(t, c.min_distance_m);
  return {c, std::move(t), std::move(d)};
}

}  // namespace

TEST_CASE("pipeline invariants over random topologies") {
  for (double n_f : {3.0, 12.0, 30.0}) {
    for (std::uint64_t r = 0; r < 40; ++r) {
      const auto [c, t, d] = realize(n_f, CountMode::fixed, r);
      const std::size_t cells = t.femtocell_count();
      for (auto s : {Strategy::pc, Strategy::sic}) {
        const auto out = run_shared_pipeline(t, d, c, s);
        const auto& alloc = out.allocation;
        REQUIRE(alloc.femto_channel.size() == cells * 5);

        // once-only channel use per cell, every femto user placed
        for (std::size_t a = 0; a < cells; ++a) {
          std::set<int> used;
          for (std::size_t u = 0; u < 5; ++u) {
            const int ch = alloc.femto_channel[a * 5 + u];
            CHECK(ch >= 0);
            CHECK(ch < 25);
            used.insert(ch);
          }
          CHECK(used.size() == 5);
        }

        // pairs sit on their macro user's channel, at most F per cell
        std::vector<int> per_cell(cells, 0);
        for (const auto& p : alloc.pairs) {
          CHECK(s == Strategy::sic);
          CHECK(p.channel == p.macro_user);
          CHECK(alloc.femto_channel[p.cell * 5 + p.femto_user] == p.channel);
          CHECK(out.powers.attachment[p.macro_user] == p.cell);
          CHECK(p.mu_decoded);  // epsilon = 0
          ++per_cell[p.cell];
        }
        for (int n : per_cell) CHECK(n <= 5);

        // powers under the caps; a handover never costs the macro user power
        for (std::size_t g = 0; g < cells * 5; ++g) {
          CHECK(out.powers.femto_tx_mw[g] <= out.powers.femto_cap_mw[g / 5]);
        }
        for (int m = 0; m < 25; ++m) {
          CHECK(out.powers.macro_tx_mw[m] <= macro_min_power(d.macro_bs(m), c));
        }

        // fixed-count realizations keep the per-channel budget at the BS
        for (double i : out.bs_interference_mw) {
          CHECK(i <= interference_budget(c) * (1.0 + 1e-12));
        }

        // a converged, uncapped user meets its target
        if (out.converged) {
          for (std::size_t g = 0; g < cells * 5; ++g) {
            if (out.powers.femto_tx_mw[g] < out.powers.femto_cap_mw[g / 5] * (1.0 - 1e-6)) {
              CHECK(out.femto_sinr[g] >= c.beta_f());
            }
          }
        }

        const auto rec = shared_metrics(out, t, c);
        CHECK(rec.served_macro == 25);
        if (rec.served_femto < rec.femto_users) CHECK(rec.shared_gain < rec.r_max_realized);
        CHECK(rec.rate_sum == rec.rate_macro + rec.rate_femto);
      }
    }
  }
}

TEST_CASE("epsilon changes only the decode flags") {
  for (std::uint64_t r = 0; r < 40; ++r) {
    const auto [c0, t, d] = realize(20, CountMode::poisson, r);
    auto c1 = c0;
    c1.epsilon = 0.1;
    const auto a = run_shared_pipeline(t, d, c0, Strategy::sic);
    const auto b = run_shared_pipeline(t, d, c1, Strategy::sic);
    CHECK(a.powers.macro_tx_mw == b.powers.macro_tx_mw);
    CHECK(a.powers.femto_tx_mw == b.powers.femto_tx_mw);
    REQUIRE(a.allocation.pairs.size() == b.allocation.pairs.size());
    for (std::size_t i = 0; i < a.allocation.pairs.size(); ++i) {
      if (b.allocation.pairs[i].mu_decoded) CHECK(a.allocation.pairs[i].mu_decoded);
    }
  }
}

TEST_CASE("batched epsilon evaluation matches single evaluations") {
  const std::vector<double> eps{0.0, 0.05, 0.125, 0.4};
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto [c, t, d] = realize(15, CountMode::poisson, r);
    for (auto s : {Strategy::pc, Strategy::sic}) {
      const auto batch = evaluate_shared(t, d, c, s, eps);
      REQUIRE(batch.size() == eps.size());
      int previous = 1 << 20;
      for (std::size_t i = 0; i < eps.size(); ++i) {
        auto at = c;
        at.epsilon = eps[i];
        const auto one = evaluate_shared(t, d, at, s);
        for (const auto& f : metric_fields()) {
          const double x = f.get(batch[i]), y = f.get(one);
          CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
        }
        CHECK(batch[i].handover_successes <= previous);
        previous = batch[i].handover_successes;
      }
    }
  }
}

TEST_CASE("without pairs sic is pc") {
  int compared = 0;
  for (std::uint64_t r = 0; r < 300; ++r) {
    const auto [c, t, d] = realize(1, CountMode::poisson, r);
    if (t.femtocell_count() == 0) continue;
    const auto sic = run_shared_pipeline(t, d, c, Strategy::sic);
    if (!sic.allocation.pairs.empty()) continue;
    const auto pc = run_shared_pipeline(t, d, c, Strategy::pc);
    CHECK(sic.powers.femto_tx_mw == pc.powers.femto_tx_mw);
    CHECK(shared_metrics(sic, t, c).served_femto == shared_metrics(pc, t, c).served_femto);
    ++compared;
  }
  CHECK(compared > 0);
}
