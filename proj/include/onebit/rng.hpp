#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace onebit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mixes a base seed with a path of stream indices. Used to give every
/// trial / restart / read its own generator without depending on call order.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (auto p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// std::uniform_real_distribution and std::normal_distribution are
// implementation-defined; these are not, so streams match across toolchains.
inline double uniform01(Engine& e) {
  return static_cast<double>(e() >> 11) * 0x1.0p-53;
}

/// One Box-Muller pair of independent N(0,1) draws.
inline std::pair<double, double> normal_pair(Engine& e) {
  double u1 = uniform01(e);
  while (u1 <= 0.0) u1 = uniform01(e);
  const double u2 = uniform01(e);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace onebit
