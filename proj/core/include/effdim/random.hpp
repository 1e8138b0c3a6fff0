#pragma once

// Counter-based normal variates. Draw `index` of replicate `replicate` under
// `master_seed` is a pure function of those three integers, so replicates can
// be simulated in any order or on any number of threads with identical
// results.

#include <array>
#include <cstdint>

namespace effdim {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11).
Philox4x32Counter philox4x32(Philox4x32Counter counter, Philox4x32Key key);

struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Uniform on (0, 1] from the top 53 bits of a 64-bit word.
double unit_open_closed(std::uint64_t bits);

/// Standard normal draw via Box-Muller on one Philox block.
double standard_normal(const StreamKey& key, std::uint64_t index);

}  // namespace effdim
