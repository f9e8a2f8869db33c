#pragma once

#include <cstdint>
#include <vector>

namespace schubert {

struct ChiSquare {
  double statistic = 0;
  int df = 0;
  double p_value = 1;
};

// Upper tail P(X >= x) for X ~ chi^2(df).
double chi_square_upper_tail(double x, int df);

// Pearson test of observed counts against expected probabilities (which
// need not be normalized). df = number of cells - 1.
ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed, const std::vector<double>& weights);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Wilson score interval for a binomial proportion at the given confidence.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

}  // namespace schubert
