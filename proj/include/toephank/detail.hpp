/*
   Copyright 2026 The toephank authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toephank::detail {

using Complex = std::complex<double>;

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

inline long next_power_of_two(long n) {
  long m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Nonnegative remainder, also for negative j.
inline long mod(long j, long n) {
  long r = j % n;
  return r < 0 ? r + n : r;
}

// In-place radix-2 FFT, length must be a power of two. sign = -1 gives the
// unnormalized forward transform sum_m v[m] e^{-2*pi*i*r*m/N}, sign = +1 the
// unnormalized inverse. Callers scale by 1/N where needed.
inline void fft(std::vector<Complex>& v, int sign) {
  const std::size_t n = v.size();
  if (n == 0) return;
  if (!is_power_of_two(static_cast<long>(n)))
    throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  const double pi = 3.14159265358979323846;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * pi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        Complex u = v[i + k];
        Complex t = v[i + k + len / 2] * w;
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
}

// Golden-section search for the maximum of f on [a, b]; f assumed unimodal on
// the bracket. Returns (argmax, max).
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double a, double b, int iters = 120) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// splitmix64; used to derive independent per-start seeds from one base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic uniform doubles in [0,1); avoids std::uniform_real_distribution
// so that identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0xdeadbeefcafef00dULL) {
    // warm up
    splitmix64(state_);
    splitmix64(state_);
  }
  std::uint64_t next_u64() { return splitmix64(state_); }
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  Complex uniform_complex(double lo, double hi) {
    double re = uniform(lo, hi);
    double im = uniform(lo, hi);
    return {re, im};
  }
  double sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace toephank::detail
