#include "femto/random.hpp"

#include <cmath>

namespace femto {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 ReplicateStream::engine(StreamTag tag, std::uint64_t index) const {
  std::uint64_t h = mix64(seed_);
  h = mix64(h ^ replicate_);
  h = mix64(h ^ static_cast<std::uint64_t>(tag));
  h = mix64(h ^ index);
  return std::mt19937_64(h);
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
  // Lemire's nearly-divisionless method.
  unsigned __int128 m = static_cast<unsigned __int128>(engine()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

int poisson_inverse(double mean, double u) {
  if (mean <= 0.0) return 0;
  // Walk the CDF in log space so exp(-mean) never underflows for large means.
  double log_pmf = -mean;
  double cdf = std::exp(log_pmf);
  int k = 0;
  const int limit = static_cast<int>(mean + 40.0 * std::sqrt(mean) + 100.0);
  while (u >= cdf && k < limit) {
    ++k;
    log_pmf += std::log(mean) - std::log(static_cast<double>(k));
    cdf += std::exp(log_pmf);
  }
  return k;
}

}  // namespace femto
