#ifndef PCITY_NUMERICS_HPP
#define PCITY_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pcity::numerics {

// How the integration range is presented to the adaptive rule.
enum class RangeMap {
  finite,          // [a, b] as given
  semi_infinite,   // [a, inf) via s = a + w/(1-w)
  sqrt_lower,      // [a, b] with integrable (x-a)^(-1/2) singularity, x = a + w^2
};

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  unsigned max_depth = 18;
  RangeMap map = RangeMap::finite;
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (15 point) integration. Throws QuadratureFailure if
// the error estimate misses max(abs_tol, rel_tol*|value|).
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Same, over consecutive pieces [p0,p1], [p1,p2], ...; helps with sharp peaks
// whose location is known.
QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> breaks,
                                  const QuadratureSpec& spec = {});

struct MillsBounds {
  double upper = 0.0;  // Sampford: 4 / (sqrt(p^2+8) + 3p), valid for p > -1
  double lower = 0.0;  // Birnbaum: (sqrt(p^2+4) - p) / 2, valid for p >= 0
  double exact = 0.0;  // e^{p^2/2} int_p^inf e^{-s^2/2} ds
};

MillsBounds mills_bounds(double p);
double mills_ratio(double p);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);
// One-sample test; requires at least 20 samples.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// log C(n, k); exact integer arithmetic for n <= 60.
double log_choose(std::int64_t n, std::int64_t k);
// Exact C(n, k) for n <= 67 (fits in 64 bits).
std::uint64_t choose_u64(unsigned n, unsigned k);

double normal_cdf(double x);
// P(chi^2_dof >= x).
double chi_square_sf(double x, double dof);

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MeanStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::size_t count = 0;
};

MeanStats mean_stats(std::span<const double> xs);
double covariance(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
};

// Ordinary least squares of y on x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace pcity::numerics

#endif
