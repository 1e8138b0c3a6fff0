#include "effdim/random.hpp"

#include <cmath>
#include <numbers>

namespace effdim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32Counter round(const Philox4x32Counter& c,
                               const Philox4x32Key& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32Counter philox4x32(Philox4x32Counter counter, Philox4x32Key key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

double unit_open_closed(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double standard_normal(const StreamKey& key, std::uint64_t index) {
  const Philox4x32Counter ctr{
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(key.replicate),
      static_cast<std::uint32_t>(key.replicate >> 32)};
  const Philox4x32Key k{static_cast<std::uint32_t>(key.master_seed),
                        static_cast<std::uint32_t>(key.master_seed >> 32)};
  const auto out = philox4x32(ctr, k);
  const std::uint64_t w0 = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  const std::uint64_t w1 = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  const double u1 = unit_open_closed(w0);
  const double u2 = unit_open_closed(w1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace effdim
