// rng.hpp — counter-based deterministic random source (splitmix64 + Box-Muller)
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace focklsi::rng {

// Stateless mix: identical output for identical (seed, stream, counter) on any
// platform, unlike std::normal_distribution whose algorithm is unspecified.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CounterRng {
  std::uint64_t seed;
  std::uint64_t stream;
  std::uint64_t counter = 0;
  bool have_cached = false;
  double cached = 0.0;

  explicit CounterRng(std::uint64_t seed_, std::uint64_t stream_ = 0)
      : seed(seed_), stream(stream_) {}

  std::uint64_t next_u64() {
    std::uint64_t v = splitmix64(seed ^ splitmix64(stream ^ splitmix64(counter)));
    ++counter;
    return v;
  }

  // uniform in (0,1); never returns 0 so log() below is safe
  double uniform() {
    double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double gauss() {
    if (have_cached) {
      have_cached = false;
      return cached;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached = r * std::sin(a);
    have_cached = true;
    return r * std::cos(a);
  }

  // complex with independent standard-normal real and imaginary parts
  std::complex<double> cgauss() {
    double re = gauss();
    double im = gauss();
    return {re, im};
  }
};

}  // namespace focklsi::rng
