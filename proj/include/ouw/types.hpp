#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "ouw/errors.hpp"

namespace ouw {

inline constexpr double pi = 3.14159265358979323846;

using cplx = std::complex<double>;

// drift rate lambda >= 0, nonzero start point, stability index (2 = Gaussian noise)
struct OuParams {
  double lambda = 1.0;
  cplx z0 = {1.0, 0.0};
  double alpha = 2.0;

  void validate() const {
    if (lambda < 0.0) throw std::invalid_argument("OuParams: lambda must be >= 0");
    if (std::abs(z0) <= 0.0) throw std::invalid_argument("OuParams: z0 must be nonzero");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("OuParams: alpha in (0,2]");
  }
};

// strictly increasing times, t[0] = 0
struct TimeGrid {
  std::vector<double> t;

  std::size_t size() const { return t.size(); }
  double dt(std::size_t k) const { return t[k + 1] - t[k]; }
  double horizon() const { return t.back(); }

  void validate() const {
    if (t.size() < 2) throw std::invalid_argument("TimeGrid: need at least 2 points");
    if (t.front() != 0.0) throw std::invalid_argument("TimeGrid: t[0] must be 0");
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
      if (!(t[k] < t[k + 1])) throw std::invalid_argument("TimeGrid: not strictly increasing");
  }

  // n equal steps over [0, t_end]; endpoints exact
  static TimeGrid uniform_n(double t_end, std::size_t n) {
    TimeGrid g;
    g.t.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) g.t[k] = t_end * double(k) / double(n);
    return g;
  }
  // step <= dt_max
  static TimeGrid uniform(double t_end, double dt_max) {
    auto n = static_cast<std::size_t>(std::ceil(t_end / dt_max - 1e-9));
    if (n < 1) n = 1;
    return uniform_n(t_end, n);
  }
};

// identical (master_seed, stream_id) reproduces a stream bitwise
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

}  // namespace ouw
