#include "ouw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ouw {

EmpiricalDist::EmpiricalDist(std::vector<double> samples) : x_(std::move(samples)) {
  if (x_.empty()) throw std::invalid_argument("EmpiricalDist: empty sample");
  std::sort(x_.begin(), x_.end());
}

double EmpiricalDist::mean() const {
  double acc = 0.0;
  for (double v : x_) acc += v;
  return acc / double(x_.size());
}

double EmpiricalDist::sample_variance() const {
  if (x_.size() < 2) throw std::invalid_argument("sample_variance: need n >= 2");
  double m = mean(), acc = 0.0;
  for (double v : x_) acc += (v - m) * (v - m);
  return acc / double(x_.size() - 1);
}

double EmpiricalDist::se_mean() const {
  return std::sqrt(sample_variance() / double(x_.size()));
}

double EmpiricalDist::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");
  if (x_.size() == 1) return x_[0];
  double pos = p * double(x_.size() - 1);
  auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= x_.size()) return x_.back();
  double frac = pos - double(i);
  return x_[i] + frac * (x_[i + 1] - x_[i]);
}

double EmpiricalDist::ecdf(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return double(it - x_.begin()) / double(x_.size());
}

double ks_distance(const EmpiricalDist& dist, const std::function<double(double)>& cdf) {
  const auto& x = dist.sorted();
  double n = double(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max(d, std::abs(f - double(i) / n));
    d = std::max(d, std::abs(f - double(i + 1) / n));
  }
  return d;
}

double ks_two_sample(const EmpiricalDist& a, const EmpiricalDist& b) {
  const auto& xa = a.sorted();
  const auto& xb = b.sorted();
  double na = double(xa.size()), nb = double(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  return d;
}

}  // namespace ouw
