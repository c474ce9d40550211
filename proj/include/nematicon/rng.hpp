#pragma once

#include "nematicon/types.hpp"

#include <cstdint>

// Seeded generator with an explicit word-to-double map, so the same seed
// yields bit-identical streams on every platform and standard library.
namespace nematicon::rng {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline Real unit(uint64_t& state) {
  return static_cast<Real>(splitmix64(state) >> 11) * 0x1.0p-53;
}

inline Real uniform(uint64_t& state, Real lo, Real hi) {
  return lo + (hi - lo) * unit(state);
}

}  // namespace nematicon::rng
