#pragma once

#include <cstdint>
#include <vector>

namespace pamlab {

// Welford accumulator; merge() lets chunked runs combine deterministically.
class OnlineStats {
 public:
  void add(double x);
  void merge(const OnlineStats& o);
  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance
  double stddev() const;
  double standard_error() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Kolmogorov-Smirnov distance of samples against Exponential(mean).
double ks_exponential(std::vector<double> samples, double mean);

// KS distance against U[0,1].
double ks_uniform(std::vector<double> samples);

// Total variation between two histograms normalized to probability vectors.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Pearson chi-square statistic of observed counts against expected counts.
double chi_square_stat(const std::vector<std::int64_t>& observed,
                       const std::vector<double>& expected);

// Wilson-Hilferty approximation of the chi-square quantile.
double chi_square_quantile(double p, int df);

double percentile(std::vector<double> sorted_values, double p);

}  // namespace pamlab
