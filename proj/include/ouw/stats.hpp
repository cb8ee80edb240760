#pragma once
#include <functional>
#include <vector>

namespace ouw {

// sorted sample set; quantiles use linear interpolation between order statistics
class EmpiricalDist {
 public:
  explicit EmpiricalDist(std::vector<double> samples);

  std::size_t n() const { return x_.size(); }
  const std::vector<double>& sorted() const { return x_; }

  double mean() const;
  double sample_variance() const;  // unbiased
  double se_mean() const;          // sample std / sqrt(n)
  double quantile(double p) const;
  double median() const { return quantile(0.5); }
  double half_iqr() const { return 0.5 * (quantile(0.75) - quantile(0.25)); }
  double ecdf(double x) const;

 private:
  std::vector<double> x_;
};

// sup_x |ECDF - cdf| with the two-sided step convention
double ks_distance(const EmpiricalDist& dist, const std::function<double(double)>& cdf);

double ks_two_sample(const EmpiricalDist& a, const EmpiricalDist& b);

}  // namespace ouw
