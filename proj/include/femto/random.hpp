#pragma once

#include <cstdint>
#include <random>

namespace femto {

/// Independent purposes a replicate draws randomness for. Each gets its own
/// engine so that, for example, adding femtocells never perturbs where the
/// macro users land.
enum class StreamTag : std::uint64_t {
  femtocell_count = 1,
  femtocell = 2,
  macro_users = 3,
  split_partition = 4,
  split_choice = 5,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives engines for one Monte Carlo replicate from (seed, replicate index).
///
/// Streams do not depend on the sweep grid point, so replicate r at N_f = 10
/// and at N_f = 11 share FAP positions, users and the count uniform (common
/// random numbers). Combined with inverse-CDF count sampling this makes
/// topologies nested in N_f.
class ReplicateStream {
 public:
  ReplicateStream(std::uint64_t seed, std::uint64_t replicate)
      : seed_(seed), replicate_(replicate) {}

  std::mt19937_64 engine(StreamTag tag, std::uint64_t index = 0) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replicate() const { return replicate_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replicate_;
};

/// Uniform on [0, 1) from the top 53 bits; platform independent, unlike
/// std::uniform_real_distribution.
double uniform01(std::mt19937_64& engine);

/// Uniform integer in [0, n).
std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n);

/// Poisson(mean) by CDF inversion of `u`. Monotone in `mean` for fixed `u`.
int poisson_inverse(double mean, double u);

}  // namespace femto
