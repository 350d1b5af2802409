#include "pcity/growth_levy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "pcity/errors.hpp"
#include "pcity/io.hpp"
#include "pcity/numerics.hpp"

namespace pcity::growth {

using std::numbers::pi;

namespace {

// 1 - cos theta without cancellation near 0.
double one_minus_cos(double theta) {
  const double s = std::sin(0.5 * theta);
  return 2.0 * s * s;
}

struct Stepper {
  GrowthState st;

  // Advances by dt of excess time at the current angle.
  void drift(double dt) {
    const double omc = one_minus_cos(st.theta);
    st.x += progress_rate(st.theta) * dt;
    st.h += height_rate(st.theta) * dt;
    st.s += dt / omc;
    st.t += dt;
  }
};

}  // namespace

double progress_rate(double theta) { return std::cos(theta) / one_minus_cos(theta); }

double height_rate(double theta) { return 1.0 / std::tan(0.5 * theta); }

double theta_after_jump(double theta, double v) {
  if (!(theta > 0.0 && theta <= pi)) throw DomainError("theta must lie in (0, pi]");
  // sin^2(Delta/2) = V sin^2(theta/2): same as arccos(1 - V(1 - cos theta)), stable for small angles.
  const double delta = 2.0 * std::asin(std::min(1.0, std::sqrt(v) * std::sin(0.5 * theta)));
  return std::max(theta - delta, 0.0);
}

double sample_theta_jump(double theta, RngStream& rng) { return theta_after_jump(theta, rng.uniform()); }

double sample_initial_theta(Initial initial, RngStream& rng) {
  return initial == Initial::theta0_pi ? pi : std::asin(rng.uniform());
}

GrowthPath simulate_growth(double n, Initial initial, RngStream& rng) {
  if (!(n > 0.0)) throw DomainError("simulate_growth requires n > 0");
  GrowthPath path;
  path.initial = initial;
  Stepper sp;
  sp.st.theta = sample_initial_theta(initial, rng);
  path.events.push_back(sp.st);
  for (std::size_t k = 0; k < kMaxJumps; ++k) {
    const double dt = rng.exponential(0.5);
    const double rate = progress_rate(sp.st.theta);
    if (rate > 0.0 && sp.st.x + rate * dt >= n) {
      path.sigma = sp.st.t + (n - sp.st.x) / rate;
      return path;
    }
    sp.drift(dt);
    sp.st.theta = sample_theta_jump(sp.st.theta, rng);
    path.events.push_back(sp.st);
  }
  throw HorizonExceeded("growth process did not reach the target");
}

std::vector<double> simulate_sigma_levels(std::span<const double> levels, Initial initial, RngStream& rng) {
  std::vector<double> sigma(levels.size());
  if (levels.empty()) return sigma;
  if (!(levels.front() > 0.0) || !std::is_sorted(levels.begin(), levels.end())) {
    throw DomainError("levels must be positive and ascending");
  }
  Stepper sp;
  sp.st.theta = sample_initial_theta(initial, rng);
  std::size_t next = 0;
  for (std::size_t k = 0; k < kMaxJumps; ++k) {
    const double dt = rng.exponential(0.5);
    const double rate = progress_rate(sp.st.theta);
    while (next < levels.size() && rate > 0.0 && sp.st.x + rate * dt >= levels[next]) {
      sigma[next] = sp.st.t + (levels[next] - sp.st.x) / rate;
      ++next;
    }
    if (next == levels.size()) return sigma;
    sp.drift(dt);
    sp.st.theta = sample_theta_jump(sp.st.theta, rng);
  }
  throw HorizonExceeded("growth process did not reach the top level");
}

std::vector<GrowthState> simulate_growth_arclength(std::size_t jumps, Initial initial, RngStream& rng) {
  std::vector<GrowthState> out;
  GrowthState st;
  st.theta = sample_initial_theta(initial, rng);
  for (std::size_t k = 0; k < jumps; ++k) {
    const double ds = rng.exponential(0.5 * one_minus_cos(st.theta));
    st.x += std::cos(st.theta) * ds;
    st.h += std::sin(st.theta) * ds;
    st.t += one_minus_cos(st.theta) * ds;
    st.s += ds;
    st.theta = sample_theta_jump(st.theta, rng);
    out.push_back(st);
  }
  return out;
}

std::vector<GrowthState> simulate_growth_jumps(std::size_t jumps, Initial initial, RngStream& rng) {
  std::vector<GrowthState> out;
  Stepper sp;
  sp.st.theta = sample_initial_theta(initial, rng);
  for (std::size_t k = 0; k < jumps; ++k) {
    sp.drift(rng.exponential(0.5));
    sp.st.theta = sample_theta_jump(sp.st.theta, rng);
    out.push_back(sp.st);
  }
  return out;
}

InitialSegmentMoments initial_segment_moments() {
  const double r3 = std::sqrt(3.0);
  return {8.0 * (1.0 + pi / (3.0 * r3)), 32.0 * (3.0 + (2.0 / r3) * (pi + std::log(2.0 + r3)))};
}

double sample_initial_segment(RngStream& rng) {
  const double t1 = rng.exponential(0.25);
  const double t2 = rng.exponential(0.25);
  // U has cdf (2/sqrt 3) sin u on (0, pi/3).
  const double u = std::asin(rng.uniform() * std::sqrt(3.0) / 2.0);
  return t1 + t2 + t1 / std::cos(u);
}

double xi_jump_from_mark(double j) { return -std::log(-std::expm1(-0.5 * j)); }

double eta_jump_from_mark(double j) { return -std::log(-std::expm1(-2.0 * j / pi)); }

namespace {

void append_jump(SubordinatorPath& p, double t, double j) {
  const double xi_before = p.xi_after.empty() ? 0.0 : p.xi_after.back();
  const double eta_before = p.eta_after.empty() ? 0.0 : p.eta_after.back();
  const double t_before = p.jump_times.empty() ? 0.0 : p.jump_times.back();
  const double i_before = p.integral_at_jump.empty() ? 0.0 : p.integral_at_jump.back();
  p.jump_times.push_back(t);
  p.marks.push_back(j);
  p.xi_jumps.push_back(xi_jump_from_mark(j));
  p.eta_jumps.push_back(eta_jump_from_mark(j));
  p.xi_after.push_back(xi_before + p.xi_jumps.back());
  p.eta_after.push_back(eta_before + p.eta_jumps.back());
  p.integral_at_jump.push_back(i_before + std::exp(2.0 * xi_before) * (t - t_before));
}

// Index of the last jump at or before t, or -1.
std::ptrdiff_t last_jump(const SubordinatorPath& p, double t) {
  const auto it = std::upper_bound(p.jump_times.begin(), p.jump_times.end(), t);
  return static_cast<std::ptrdiff_t>(it - p.jump_times.begin()) - 1;
}

}  // namespace

double SubordinatorPath::xi_at(double t) const {
  const auto k = last_jump(*this, t);
  return k < 0 ? 0.0 : xi_after[k];
}

double SubordinatorPath::eta_at(double t) const {
  const auto k = last_jump(*this, t);
  return k < 0 ? 0.0 : eta_after[k];
}

double SubordinatorPath::integral_exp2xi(double t) const {
  const auto k = last_jump(*this, t);
  if (k < 0) return t;
  return integral_at_jump[k] + std::exp(2.0 * xi_after[k]) * (t - jump_times[k]);
}

SubordinatorPath simulate_subordinators(double t_max, RngStream& rng) {
  if (!(t_max > 0.0)) throw DomainError("horizon must be positive");
  SubordinatorPath p;
  p.horizon = t_max;
  double t = 0.0;
  for (;;) {
    t += rng.exponential(0.5);
    if (t > t_max) break;
    append_jump(p, t, rng.exponential(1.0));
  }
  return p;
}

SubordinatorPath simulate_subordinators_to_integral(double target, RngStream& rng) {
  if (!(target > 0.0)) throw DomainError("integral target must be positive");
  SubordinatorPath p;
  double t = 0.0;
  while (p.integral_at_jump.empty() || p.integral_at_jump.back() < target) {
    if (p.jump_times.size() >= kMaxJumps) throw HorizonExceeded("integral target not reached");
    t += rng.exponential(0.5);
    append_jump(p, t, rng.exponential(1.0));
  }
  p.horizon = t;
  return p;
}

double laplace_exponent(double q) {
  if (!(q > -1.0)) throw DomainError("laplace_exponent requires q > -1");
  return q * (3.0 + q) / (2.0 * (1.0 + q) * (2.0 + q));
}

double tau_first_passage(const SubordinatorPath& p, double n) {
  if (!(n > 0.0)) throw DomainError("tau_first_passage requires n > 0");
  const auto it = std::lower_bound(p.integral_at_jump.begin(), p.integral_at_jump.end(), n);
  const auto k = static_cast<std::ptrdiff_t>(it - p.integral_at_jump.begin());
  // Crossing happens in the interval that ends at jump k (or after the last jump).
  const double t0 = k == 0 ? 0.0 : p.jump_times[k - 1];
  const double i0 = k == 0 ? 0.0 : p.integral_at_jump[k - 1];
  const double xi = k == 0 ? 0.0 : p.xi_after[k - 1];
  const double tau = t0 + (n - i0) * std::exp(-2.0 * xi);
  const double end = it != p.integral_at_jump.end() ? p.jump_times[k] : p.horizon;
  if (tau > end) throw HorizonExceeded("path integral does not reach n");
  return tau;
}

double tau_representation(double n, double tau, double xi) {
  const double m = xi - 0.75 * tau;
  return (2.0 / 3.0) * (std::log(n) - 2.0 * m + (2.0 * xi - std::log(n)));
}

InverseMoment lamperti_inverse_moment(double n, std::size_t replicates, RngStream& rng) {
  if (!(n >= 1.0)) throw DomainError("lamperti_inverse_moment requires n >= 1");
  InverseMoment out;
  out.formula = (2.0 / 3.0) * (1.0 + (n - 1.0) * std::exp(-0.5 * n));
  if (replicates > 0) {
    const auto est = lamperti_moment_mc(n, 1.0, replicates, rng);
    out.mc_estimate = est.value;
    out.std_error = est.std_error;
  }
  return out;
}

double higher_moment_printed(double n, double p) {
  const double np = std::pow(n, p);
  // int_0^{n^p/2} v^{p-1} e^{-v/2} dv = 2^p gamma_lower(p, n^p/4)
  const double integral = std::pow(2.0, p) * boost::math::tgamma_lower(p, 0.25 * np);
  return (2.0 * p / (2.0 * p + 1.0)) * (np * std::exp(-0.5 * np) - std::pow(0.5 * np, 1.0 - p) * integral);
}

MomentEstimate lamperti_moment_mc(double n, double p, std::size_t replicates, RngStream& rng) {
  std::vector<double> v(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    RngStream r = rng.derive(0x1a3b, i);
    const auto path = simulate_subordinators_to_integral(n, r);
    const double tau = tau_first_passage(path, n);
    v[i] = std::pow(n * std::exp(-2.0 * path.xi_at(tau)), p);
  }
  const auto st = numerics::mean_stats(v);
  return {st.mean, st.std_error};
}

double multiplier_density(double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  return 0.25 * pi * std::pow(1.0 - std::sqrt(x), 0.5 * pi - 1.0) / std::sqrt(x);
}

double multiplier_moment(int k) {
  // x = w^2 removes the x^{-1/2} endpoint; w = 1 - y^2 then smooths the
  // (1 - w)^{pi/2 - 1} factor at the other end. Jacobian 2w * 2y.
  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-14;
  auto f = [k](double y) {
    if (y <= 0.0) return 0.0;
    const double w = 1.0 - y * y;
    const double x = w * w;
    return std::pow(x, k) * multiplier_density(x) * 2.0 * w * 2.0 * y;
  };
  return numerics::integrate(f, 0.0, 1.0, spec).value;
}

double perpetuity_multiplier_mean() { return multiplier_moment(1); }

PerpetuityEstimate perpetuity_analytic() {
  PerpetuityEstimate e;
  e.value = 1.0 / (1.0 - perpetuity_multiplier_mean());
  return e;
}

double sample_perpetuity(RngStream& rng, std::size_t* terms, double* tail) {
  static const double em = perpetuity_multiplier_mean();
  double prod = 1.0;
  double sum = 1.0;
  std::size_t k = 0;
  while (prod >= 1e-12) {
    const double w = -std::expm1(-2.0 * rng.exponential(1.0) / pi);
    prod *= w * w;
    sum += prod;
    ++k;
  }
  if (terms) *terms = k;
  // Conditional mean of the dropped tail given the current product.
  if (tail) *tail = prod * em / (1.0 - em);
  return sum;
}

PerpetuityEstimate perpetuity(std::size_t replicates, RngStream& rng) {
  std::vector<double> v(replicates);
  PerpetuityEstimate e;
  for (std::size_t i = 0; i < replicates; ++i) {
    std::size_t terms = 0;
    double tail = 0.0;
    v[i] = sample_perpetuity(rng, &terms, &tail);
    e.truncation_level = std::max(e.truncation_level, terms);
    e.tail_bound = std::max(e.tail_bound, tail);
  }
  const auto st = numerics::mean_stats(v);
  e.value = st.mean;
  e.std_error = st.std_error;
  return e;
}

void write_growth_csv(std::ostream& out, const GrowthPath& path) {
  out << "t,theta,x,h\n";
  for (const auto& e : path.events) {
    out << io::num(e.t) << ',' << io::num(e.theta) << ',' << io::num(e.x) << ',' << io::num(e.h) << '\n';
  }
}

void write_subordinator_csv(std::ostream& out, const SubordinatorPath& path) {
  out << "t,J,xi,eta\n";
  for (std::size_t i = 0; i < path.jump_times.size(); ++i) {
    out << io::num(path.jump_times[i]) << ',' << io::num(path.marks[i]) << ',' << io::num(path.xi_after[i]) << ','
        << io::num(path.eta_after[i]) << '\n';
  }
}

}  // namespace pcity::growth
