#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ncmaj {

// Identifies one reproducible random stream. Distinct stream indices under the
// same master seed are statistically independent; the same pair always yields
// the same draw sequence.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Counter-based stream derivation: the engine seed is a splitmix64 hash of
// (master_seed, stream_index), so streams can be created in any order on any
// worker without shared state.
class Rng {
  public:
    explicit Rng(RngStream stream);

    std::uint64_t next_u64() { return engine_(); }

    // uniform double in [0, 1)
    double uniform();

    // standard real Gaussian, Box-Muller (second value cached)
    double gaussian();

    // standard complex Gaussian with E g = 0, E |g|^2 = 1
    std::complex<double> cgaussian();

    // uniform sign in {-1, +1}
    int sign();

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ncmaj
