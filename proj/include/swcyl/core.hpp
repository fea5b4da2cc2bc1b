// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace swcyl {

using cplx = std::complex<double>;

inline constexpr double pi     = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx   I{0.0, 1.0};

/// Map an angle to [0, 2pi).
inline double wrap_angle(double x)
{
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  if (y >= two_pi) y = 0.0;
  return y;
}

/// Map an angle to (-pi, pi].
inline double wrap_signed(double x)
{
  double y = wrap_angle(x);
  return y > pi ? y - two_pi : y;
}

inline double circular_distance(double x, double y) { return std::abs(wrap_signed(x - y)); }

/// i^k for integer k.
inline cplx ipow(int k)
{
  switch (((k % 4) + 4) % 4) {
  case 0: return {1.0, 0.0};
  case 1: return {0.0, 1.0};
  case 2: return {-1.0, 0.0};
  default: return {0.0, -1.0};
  }
}

inline double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct UndersamplingError : Error
{
  using Error::Error;
};

struct BandMismatchError : Error
{
  using Error::Error;
};

struct BandTooSmallError : Error
{
  using Error::Error;
};

struct NonConvergentTraceError : Error
{
  double tail;
  NonConvergentTraceError(const std::string & what, double tail_magnitude)
      : Error(what), tail(tail_magnitude)
  {}
};

struct MissingKernelFormError : Error
{
  using Error::Error;
};

struct NotACylinderPointError : Error
{
  using Error::Error;
};

struct InvariantViolation : Error
{
  using Error::Error;
};

struct GridTooCoarseError : Error
{
  using Error::Error;
};

struct GridMismatchError : Error
{
  using Error::Error;
};

struct NonTracialKernelError : Error
{
  using Error::Error;
};

struct RankAmbiguityError : Error
{
  using Error::Error;
};

struct OutOfExtentError : Error
{
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Parallel map over an index range. Each index is visited exactly once;
// callers write to disjoint output slots.

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> & fn,
                         std::size_t min_chunk = 8)
{
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, (n + min_chunk - 1) / std::max<std::size_t>(1, min_chunk));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto & t : pool) t.join();
}

}  // namespace swcyl
