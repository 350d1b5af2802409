#include "pcity/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pcity/errors.hpp"

namespace pcity::numerics {

namespace {

QuadratureResult gk(const Integrand& g, double a, double b, const QuadratureSpec& spec) {
  double err = 0.0;
  double l1 = 0.0;
  // The adaptive rule may stop marginally above the tolerance it was given;
  // ask for a quarter of it so the final check is meaningful.
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      g, a, b, spec.max_depth, 0.25 * spec.rel_tol, &err, &l1);
  return {value, err};
}

void check(const QuadratureResult& r, const QuadratureSpec& spec) {
  if (!std::isfinite(r.value) ||
      r.err_estimate > std::max(spec.abs_tol, spec.rel_tol * std::fabs(r.value))) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "value %.12g, error estimate %.3g", r.value, r.err_estimate);
    throw QuadratureFailure(msg);
  }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  QuadratureResult r;
  switch (spec.map) {
    case RangeMap::finite:
      r = gk(f, a, b, spec);
      break;
    case RangeMap::semi_infinite: {
      // s = a + w/(1-w), ds = dw/(1-w)^2
      auto g = [&](double w) {
        if (w >= 1.0) return 0.0;
        const double om = 1.0 - w;
        const double v = f(a + w / om) / (om * om);
        return std::isfinite(v) ? v : 0.0;
      };
      r = gk(g, 0.0, 1.0, spec);
      break;
    }
    case RangeMap::sqrt_lower: {
      // x = a + w^2, dx = 2w dw
      auto g = [&](double w) { return w > 0.0 ? 2.0 * w * f(a + w * w) : 0.0; };
      r = gk(g, 0.0, std::sqrt(b - a), spec);
      break;
    }
  }
  check(r, spec);
  return r;
}

QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> breaks,
                                  const QuadratureSpec& spec) {
  QuadratureResult total;
  CompensatedSum v;
  QuadratureSpec piece = spec;
  piece.map = RangeMap::finite;
  piece.abs_tol = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    const auto r = gk(f, breaks[i], breaks[i + 1], piece);
    v += r.value;
    total.err_estimate += r.err_estimate;
  }
  total.value = v.value();
  check(total, spec);
  return total;
}

double mills_ratio(double p) {
  // Shift s = p + w: e^{p^2/2} int_p^inf e^{-s^2/2} ds = int_0^inf e^{-p w - w^2/2} dw.
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.map = RangeMap::semi_infinite;
  return integrate([p](double w) { return std::exp(-p * w - 0.5 * w * w); }, 0.0, 0.0, spec).value;
}

MillsBounds mills_bounds(double p) {
  MillsBounds b;
  b.upper = 4.0 / (std::sqrt(p * p + 8.0) + 3.0 * p);
  b.lower = 0.5 * (std::sqrt(p * p + 4.0) - p);
  b.exact = mills_ratio(p);
  return b;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form converges fast for small lambda.
    const double y = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
    double s = 0.0;
    for (int k = 1; k <= 9; k += 2) s += std::pow(y, k * k);
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 20) throw DomainError("ks_test needs at least 20 samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

std::uint64_t choose_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // c * (n-k+i) / i is exact at every step; use 128 bits for the product.
    c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) * (n - k + i) / i);
  }
  return c;
}

double log_choose(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log_choose requires 0 <= k <= n");
  if (n <= 60) return std::log(static_cast<double>(choose_u64(static_cast<unsigned>(n), static_cast<unsigned>(k))));
  const long double ln = static_cast<long double>(n);
  const long double lk = static_cast<long double>(k);
  return static_cast<double>(std::lgamma(ln + 1.0L) - std::lgamma(lk + 1.0L) - std::lgamma(ln - lk + 1.0L));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

MeanStats mean_stats(std::span<const double> xs) {
  MeanStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  CompensatedSum sum;
  for (double x : xs) sum += x;
  s.mean = sum.value() / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    CompensatedSum ss;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss.value() / static_cast<double>(xs.size() - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(xs.size()));
  }
  return s;
}

double covariance(std::span<const double> xs, std::span<const double> ys) {
  const double mx = mean_stats(xs).mean;
  const double my = mean_stats(ys).mean;
  CompensatedSum s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
  return s.value() / static_cast<double>(xs.size() - 1);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double mx = mean_stats(x).mean;
  const double my = mean_stats(y).mean;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

}  // namespace pcity::numerics
