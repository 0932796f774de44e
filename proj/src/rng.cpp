#include "polytess/rng.hpp"

namespace polytess {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~stream));
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

double uniform01(Rng& rng) {
  // 53 random mantissa bits
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_open_closed(Rng& rng) { return 1.0 - uniform01(rng); }

}  // namespace polytess
