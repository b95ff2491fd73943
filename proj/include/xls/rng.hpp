#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace xls {

// One SplitMix64 step; also the mixing primitive for stream derivation.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Derives an independent stream seed from a base seed and a textual tag.
// Every consumer (sampler, experiment cell) owns a stream keyed by its tag,
// so parallel work never shares generator state.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) noexcept;

// xoshiro256** with SplitMix64 seeding. All variate generators below are
// implemented in-repo so that ensembles are reproducible bit-for-bit for a
// fixed (seed, draw order), independent of the standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;

  double uniform01() noexcept;    // [0,1), 53-bit resolution
  double uniform_open() noexcept; // (0,1)

  double normal();                // standard normal (Marsaglia polar)
  double exponential();           // rate 1
  double gamma(double shape);     // scale 1 (Marsaglia-Tsang)
  double beta(double a, double b);
  std::vector<double> dirichlet(const std::vector<double>& alpha);

private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

} // namespace xls
