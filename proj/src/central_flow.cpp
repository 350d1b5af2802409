#include "pcity/central_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pcity/errors.hpp"
#include "pcity/numerics.hpp"
#include "pcity/parallel.hpp"

namespace pcity::flow {

using geom::Line;
using geom::Point;
using numerics::integrate;
using numerics::QuadratureSpec;
using numerics::RangeMap;
using std::numbers::pi;

namespace {

QuadratureSpec tol(double rel, RangeMap map = RangeMap::finite) {
  QuadratureSpec s;
  s.rel_tol = rel;
  s.abs_tol = 1e-300;
  s.max_depth = 15;
  s.map = map;
  return s;
}

}  // namespace

double mean_flow_quadrature(double n) {
  if (!(n > 0.0)) throw DomainError("mean_flow_quadrature requires n > 0");
  // r = n a, s = n b; r + s - rho = 4 r s sin^2(theta/2) / (r + s + rho).
  auto inner = [n](double theta, double a) {
    const double h = std::sin(0.5 * theta);
    const double g = std::cos(0.5 * theta);
    auto f = [=](double b) {
      // rho^2 = a^2 + b^2 + 2ab cos(theta), written without cancellation.
      const double rho = std::sqrt((a - b) * (a - b) + 4.0 * a * b * g * g);
      const double gap = 4.0 * a * b * h * h / (a + b + rho);
      return std::exp(-0.5 * n * gap) * b;
    };
    QuadratureSpec s = tol(1e-8);
    s.abs_tol = 1e-15;
    // rho has a kink at b = a when theta is near pi.
    const std::array<double, 3> br{0.0, a, 1.0};
    return numerics::integrate_pieces(f, br, s).value;
  };
  auto middle = [&](double theta) {
    QuadratureSpec s = tol(1e-7);
    s.abs_tol = 1e-14;
    return integrate([&](double a) { return a * inner(theta, a); }, 0.0, 1.0, s).value;
  };
  // The theta-integrand decays on the scale n^{-1/2}; break the range there.
  std::vector<double> breaks{0.0};
  for (double k = 0.25; k / std::sqrt(n) < pi && k <= 256.0; k *= 2.0) breaks.push_back(k / std::sqrt(n));
  breaks.push_back(pi);
  const auto r = numerics::integrate_pieces([&](double th) { return th * middle(th); }, breaks, tol(1e-6));
  return n * n * n * n * r.value;
}

CenterSeparator::CenterSeparator(std::span<const Line> lines) : lines_(lines.begin(), lines.end()) {
  std::vector<std::array<double, 3>> rows;
  rows.reserve(lines.size());
  for (const auto& l : lines) {
    // Orient each normal so that the line is {n.p = r} with r >= 0.
    const double s = l.r() < 0.0 ? -1.0 : 1.0;
    rows.push_back({s * l.r(), s * l.normal().x, s * l.normal().y});
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) {
    r_.push_back(row[0]);
    nx_.push_back(row[1]);
    ny_.push_back(row[2]);
  }
}

bool CenterSeparator::unseparated(Point p, Point q) const {
  // A line with o on its negative side separates iff both ends are on the
  // positive side; that needs r < min(|p|, |q|).
  const double reach = std::min(geom::norm(p), geom::norm(q));
  for (std::size_t i = 0; i < r_.size() && r_[i] < reach; ++i) {
    if (nx_[i] * p.x + ny_[i] * p.y > r_[i] && nx_[i] * q.x + ny_[i] * q.y > r_[i]) return false;
  }
  return true;
}

bool CenterSeparator::unseparated_brute(Point p, Point q) const {
  const geom::Segment seg(p, q);
  for (const auto& l : lines_) {
    if (geom::separates(l, {0.0, 0.0}, seg)) return false;
  }
  return true;
}

bool center_indicator(const CenterSeparator& sep, Point p, Point q) {
  // Pairs straddling the conditioned x-axis never route through o.
  if (!((p.y > 0.0 && q.y > 0.0) || (p.y < 0.0 && q.y < 0.0))) return false;
  return sep.unseparated(p, q);
}

FlowEstimate simulate_center_flow(double n, std::size_t outer, std::size_t inner, std::uint64_t seed,
                                  unsigned threads) {
  if (!(n > 0.0) || outer < 1 || inner < 1) throw DomainError("simulate_center_flow: bad parameters");
  FlowEstimate est;
  est.n = n;
  est.outer_replicates = outer;
  est.inner_samples = inner;
  est.seed = seed;
  est.stream = stream_id(11, 0, 0);
  est.replicate_values.resize(outer);
  est.replicate_sampling_variance.resize(outer);
  const double area = pi * n * n;
  // Ordered pairs with p-_1 < p+_1 have measure (pi n^2)^2 / 2; T_n carries a further 1/2.
  const double scale = 0.25 * area * area / (n * n * n);
  parallel_for(outer, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(11, 0, i));
    auto pattern = lines::sample_pattern(lines::DiskWindow({0.0, 0.0}, n), rng);
    pattern = lines::add_line_through(std::move(pattern), {0.0, 0.0}, 0.0, rng);
    const CenterSeparator sep(pattern.lines);
    auto draw = [&] {
      const double rad = n * std::sqrt(rng.uniform());
      const double ang = rng.uniform(0.0, 2.0 * pi);
      return Point{rad * std::cos(ang), rad * std::sin(ang)};
    };
    std::size_t hits = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      Point p = draw();
      Point q = draw();
      if (q.x < p.x) std::swap(p, q);
      if (center_indicator(sep, p, q)) ++hits;
    }
    const double m = static_cast<double>(hits) / static_cast<double>(inner);
    est.replicate_values[i] = scale * m;
    est.replicate_sampling_variance[i] = scale * scale * m * (1.0 - m) / std::max<double>(1.0, inner - 1.0);
  });
  const auto st = numerics::mean_stats(est.replicate_values);
  est.value = st.mean;
  est.std_error = st.std_error;
  return est;
}

double limit_pair_probability(const LimitPair& p) {
  if (!(p.a > 0.0 && p.u > 0.0)) throw DomainError("limit pair needs a, u > 0");
  const double t = p.height();
  return std::exp(-0.25 * t * t * (1.0 / p.a + 1.0 / p.u));
}

double limit_separating_measure(const LimitPair& p, double cap) {
  // Lines y = y0 + k x with 0 < y0 < min(v - k u, b + a k); intensity (1/2) dy0 dk.
  const double k_lo = -p.b / p.a;
  const double k_hi = p.v / p.u;
  const double k_star = (p.v - p.b) / (p.a + p.u);
  const double lo = cap > 0.0 ? std::max(k_lo, -cap) : k_lo;
  const double hi = cap > 0.0 ? std::min(k_hi, cap) : k_hi;
  auto linear = [](double c0, double c1, double x0, double x1) {
    if (x1 <= x0) return 0.0;
    return c0 * (x1 - x0) + 0.5 * c1 * (x1 * x1 - x0 * x0);
  };
  const double area = linear(p.b, p.a, lo, std::min(hi, k_star)) + linear(p.v, -p.u, std::max(lo, k_star), hi);
  return 0.5 * area;
}

double limit_mean_quadrature() {
  auto inner = [](double a, double u) {
    const double c = 0.25 * (1.0 / a + 1.0 / u);
    const double w = (a + u) * (1.0 / a + 1.0 / u);
    return integrate([=](double t) { return w * std::exp(-c * t * t) * t; }, 0.0, 0.0,
                     tol(1e-10, RangeMap::semi_infinite))
        .value;
  };
  auto middle = [&](double a) {
    return integrate([&](double u) { return inner(a, u); }, 0.0, 1.0, tol(1e-9)).value;
  };
  return integrate(middle, 0.0, 1.0, tol(1e-8)).value;
}

double limit_mean_closed_form() {
  // int_0^inf t exp(-c t^2) dt = 1/(2c) turns the integrand into 2(a + u).
  return integrate([](double a) { return 2.0 * a + 1.0; }, 0.0, 1.0, tol(1e-12)).value;
}

namespace {

// int_x^inf erfc(s) ds = e^{-x^2}/sqrt(pi) - x erfc(x).
double ierfc(double x) {
  if (x > 26.0) return 0.0;
  if (x > 5.0) {
    const double r = 1.0 / (x * x);
    return std::exp(-x * x) / std::sqrt(pi) * 0.5 * r * (1.0 - 1.5 * r + 3.75 * r * r);
  }
  return std::exp(-x * x) / std::sqrt(pi) - x * std::erfc(x);
}

}  // namespace

double limit_height_cap_mass(double h) {
  if (!(h > 0.0)) throw DomainError("height cap must be positive");
  // Pairs with b > h, or with b < h and v > h. With t = beta b + alpha v the
  // v-integral is an erfc and the b-integral a repeated erfc integral:
  // (sqrt(pi) / (2 alpha beta c)) [ierfc(lambda h) + ierfc(mu) - ierfc(lambda h + mu)],
  // lambda = sqrt(c) beta, mu = sqrt(c) alpha h.
  auto f = [h](double a, double u) {
    const double c = 0.25 * (1.0 / a + 1.0 / u);
    const double alpha = a / (a + u);
    const double beta = u / (a + u);
    const double lam = std::sqrt(c) * beta * h;
    const double mu = std::sqrt(c) * alpha * h;
    return std::sqrt(pi) / (2.0 * alpha * beta * c) * (ierfc(lam) + ierfc(mu) - ierfc(lam + mu));
  };
  // f depends on sqrt(u) and sqrt(a) near the axes: integrate in u = w^2, a = z^2.
  QuadratureSpec s = tol(1e-8);
  s.abs_tol = 1e-14;
  auto row = [&](double a) {
    // Mass concentrates where u ~ a^2 / h^2 or a ~ u^2 / h^2 (one end of the
    // pair close to the axis lets the other reach far up).
    std::vector<double> br{0.0};
    for (double m : {0.1, 0.3, 1.0, 3.0}) br.push_back(m * a / h);
    for (double m : {0.5, 1.0, 2.0}) br.push_back(m * std::sqrt(h * std::sqrt(a)));
    br.push_back(1.0);
    std::sort(br.begin(), br.end());
    br.erase(std::upper_bound(br.begin(), br.end(), 1.0), br.end());
    return numerics::integrate_pieces([&](double w) { return 2.0 * w * f(a, w * w); }, br, s).value;
  };
  QuadratureSpec o = tol(1e-7);
  o.abs_tol = 1e-12;
  const std::vector<double> br{0.0, 0.1, 0.3, 1.0};
  return numerics::integrate_pieces([&](double z) { return 2.0 * z * row(z * z); }, br, o).value;
}

namespace {

// Strip lines with positive height, sorted by height, as geom lines.
struct PositiveLines {
  std::vector<double> height;
  std::vector<Line> line;

  PositiveLines(std::span<const lines::StripLine> strip, bool reflect) {
    std::vector<lines::StripLine> pos;
    for (auto s : strip) {
      if (reflect) s = {-s.y_minus, -s.y_plus};
      if (s.height() > 0.0) pos.push_back(s);
    }
    std::sort(pos.begin(), pos.end(),
              [](const lines::StripLine& x, const lines::StripLine& y) { return x.height() < y.height(); });
    for (const auto& s : pos) {
      height.push_back(s.height());
      line.push_back(s.line());
    }
  }

  bool unseparated(const LimitPair& p) const {
    // A separating line passes below the segment at x = 0.
    const double t = p.height();
    const geom::Segment seg({-p.a, p.b}, {p.u, p.v});
    for (std::size_t i = 0; i < height.size() && height[i] < t; ++i) {
      if (geom::separates(line[i], {0.0, 0.0}, seg)) return false;
    }
    return true;
  }
};

}  // namespace

bool limit_unseparated(std::span<const lines::StripLine> strip, const LimitPair& pair) {
  return PositiveLines(strip, false).unseparated(pair);
}

FlowEstimate simulate_limit_flow(double h_max, double y_bound, std::size_t pairs, std::size_t realizations,
                                 std::uint64_t seed, unsigned threads) {
  if (!(h_max > 0.0) || !(y_bound > h_max) || pairs < 2 || realizations < 1) {
    throw DomainError("simulate_limit_flow: need 0 < h_max < y_bound, pairs >= 2");
  }
  FlowEstimate est;
  est.n = std::numeric_limits<double>::infinity();
  est.outer_replicates = realizations;
  est.inner_samples = pairs;
  est.seed = seed;
  est.stream = stream_id(12, 0, 0);
  est.replicate_values.resize(realizations);
  est.replicate_sampling_variance.resize(realizations);
  std::vector<double> slope_gap(realizations);
  const double vol = h_max * h_max;
  const double cap = y_bound - h_max;
  parallel_for(realizations, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(12, 0, i));
    const auto strip = lines::sample_improper_strip(-y_bound, y_bound, rng);
    const PositiveLines up(strip, false);
    const PositiveLines down(strip, true);
    std::array<std::size_t, 2> hits{0, 0};
    double gap = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
      for (int side = 0; side < 2; ++side) {
        LimitPair p;
        p.a = 1.0 - rng.uniform();
        p.b = rng.uniform(0.0, h_max);
        p.u = 1.0 - rng.uniform();
        p.v = rng.uniform(0.0, h_max);
        if ((side == 0 ? up : down).unseparated(p)) ++hits[side];
        gap += std::exp(-limit_separating_measure(p, cap)) - limit_pair_probability(p);
      }
    }
    const double m_up = static_cast<double>(hits[0]) / pairs;
    const double m_dn = static_cast<double>(hits[1]) / pairs;
    est.replicate_values[i] = 0.5 * vol * (m_up + m_dn);
    est.replicate_sampling_variance[i] =
        0.25 * vol * vol * (m_up * (1.0 - m_up) + m_dn * (1.0 - m_dn)) / static_cast<double>(pairs - 1);
    slope_gap[i] = vol * gap / (2.0 * pairs);
  });
  const auto st = numerics::mean_stats(est.replicate_values);
  est.value = st.mean;
  est.std_error = st.std_error;
  est.bias_bound = limit_height_cap_mass(h_max) + numerics::mean_stats(slope_gap).mean;
  return est;
}

DiskAverages disk_average_report(double n) {
  if (!(n > 0.0)) throw DomainError("disk_average_report requires n > 0");
  const double d = 128.0 / (45.0 * pi);
  return {0.5 * pi * pi * n * n, d * n, d * n * n * n};
}

double excess_lower_bound(double n) {
  if (!(n > 1.0)) throw DomainError("excess_lower_bound requires n > 1");
  // 1 - int_0^inf exp(-s - D/2) ds = int_0^inf e^{-s} (1 - e^{-D/2}) ds,
  // D = sqrt(x^2 + s^2/u^2) - x = (s^2/u^2) / (sqrt(x^2 + s^2/u^2) + x).
  auto miss = [](double x, double u) {
    auto f = [=](double s) {
      const double q = s * s / (u * u);
      const double d = q / (std::sqrt(x * x + q) + x);
      return std::exp(-s) * -std::expm1(-0.5 * d);
    };
    QuadratureSpec s = tol(1e-10, RangeMap::semi_infinite);
    s.abs_tol = 1e-15;
    return integrate(f, 0.0, 0.0, s).value;
  };
  auto g = [&](double x) {
    QuadratureSpec s = tol(1e-9);
    s.abs_tol = 1e-15;
    return integrate([&](double u) { const double m = miss(x, u); return m * m * u; }, 0.0, pi / 2.0, s).value;
  };
  // x = e^y spreads the 1/x decay evenly over log n.
  return integrate([&](double y) { const double x = std::exp(y); return g(x) * x; }, 0.0, std::log(n), tol(1e-7))
      .value;
}

double lower_bound_constant() {
  auto f = [](double v) {
    const double r = std::sqrt(v * v + 4.0);
    const double q = (r - v) / (r + 3.0 * v);
    return q * q * v;
  };
  QuadratureSpec s = tol(1e-10, RangeMap::semi_infinite);
  s.abs_tol = 1e-15;
  return integrate(f, 0.0, 0.0, s).value;
}

double lower_bound_exact_slope() {
  // (1 - p R(p))^2 v with p = sqrt 2 v and R the Mills ratio.
  auto f = [](double v) {
    const double p = std::sqrt(2.0) * v;
    const double w = 1.0 - p * numerics::mills_ratio(p);
    return w * w * v;
  };
  QuadratureSpec s = tol(1e-9, RangeMap::semi_infinite);
  s.abs_tol = 1e-13;
  return integrate(f, 0.0, 0.0, s).value;
}

}  // namespace pcity::flow
