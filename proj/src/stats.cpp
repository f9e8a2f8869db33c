#include "schubert/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace schubert {

double chi_square_upper_tail(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi-square needs df >= 1");
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed, const std::vector<double>& weights) {
  if (observed.size() != weights.size() || observed.size() < 2)
    throw std::invalid_argument("chi-square needs matching cells, at least two");
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  ChiSquare r;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    double e = total * weights[k] / wsum;
    if (e <= 0) throw std::invalid_argument("chi-square cell with zero expectation");
    double d = static_cast<double>(observed[k]) - e;
    r.statistic += d * d / e;
  }
  r.df = static_cast<int>(observed.size()) - 1;
  r.p_value = chi_square_upper_tail(r.statistic, r.df);
  return r;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) return {0, 1};
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2);
  const double nn = static_cast<double>(trials), p = successes / nn;
  const double denom = 1 + z * z / nn;
  const double center = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace schubert
