#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bandsim {

/// Inverse standard-normal CDF (Wichura's AS241, double precision).
/// Requires p in (0, 1).
double normal_quantile(double p);

/// Deterministic generator: mt19937_64 with inverse-CDF normals, so a given
/// seed produces the same stream on every platform. Substreams are derived by
/// hashing (master seed, tag, index), keeping replications, agents, and market
/// paths independent without coordination.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform draw on the open interval (0, 1), 53-bit resolution.
    double uniform() {
        const std::uint64_t x = eng_();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the inverse CDF.
    double normal() { return normal_quantile(uniform()); }

    /// Uniform draw on (lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Substream seed derived from (master, tag, index).
    static std::uint64_t substream_seed(std::uint64_t master, std::string_view tag,
                                        std::uint64_t index);

    /// Generator for the derived substream.
    static Rng stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
        return Rng(substream_seed(master, tag, index));
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace bandsim
