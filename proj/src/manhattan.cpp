#include "pcity/manhattan.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pcity/errors.hpp"
#include "pcity/io.hpp"
#include "pcity/numerics.hpp"
#include "pcity/parallel.hpp"

namespace pcity::grid {

using std::numbers::pi;

namespace {

void check_pair(const QuadrantPair& p) {
  if (p.u < 0 || p.v < 0 || p.x < 0 || p.y < 0) throw DomainError("quadrant pair needs nonnegative entries");
  if (p.total() < 1) throw DomainError("quadrant pair needs u+v+x+y >= 1");
}

Rational binom(std::int64_t n, std::int64_t k) {
  boost::multiprecision::cpp_int c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return Rational(c);
}

}  // namespace

double through_origin_prob(const QuadrantPair& p) {
  check_pair(p);
  using numerics::log_choose;
  return std::exp(log_choose(p.u + p.v, p.u) + log_choose(p.x + p.y, p.x) - log_choose(p.total(), p.u + p.x));
}

Rational through_origin_rational(const QuadrantPair& p) {
  check_pair(p);
  return binom(p.u + p.v, p.u) * binom(p.x + p.y, p.x) / binom(p.total(), p.u + p.x);
}

double through_origin_prob_binomial(const QuadrantPair& p, double prob) {
  check_pair(p);
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("p must lie in (0,1)");
  using numerics::log_choose;
  const double lp = std::log(prob);
  const double lq = std::log1p(-prob);
  auto log_pmf = [&](std::int64_t m, std::int64_t k) { return log_choose(m, k) + k * lp + (m - k) * lq; };
  return std::exp(log_pmf(p.u + p.v, p.u) + log_pmf(p.x + p.y, p.x) - log_pmf(p.total(), p.u + p.x));
}

namespace {

// Paths from (i, j) to (tx, ty) with unit right/up steps; counts those through (0, 0).
void walk(std::int64_t i, std::int64_t j, std::int64_t tx, std::int64_t ty, bool seen, PathCount& c) {
  seen = seen || (i == 0 && j == 0);
  if (i == tx && j == ty) {
    ++c.total;
    if (seen) ++c.through_origin;
    return;
  }
  if (i < tx) walk(i + 1, j, tx, ty, seen, c);
  if (j < ty) walk(i, j + 1, tx, ty, seen, c);
}

}  // namespace

PathCount brute_force_count(const QuadrantPair& p) {
  check_pair(p);
  if (p.total() > kBruteForceLimit) throw TooLarge("brute force limited to u+v+x+y <= 24");
  PathCount c;
  walk(-p.u, -p.v, p.x, p.y, false, c);
  return c;
}

double brute_force_prob(const QuadrantPair& p) {
  const auto c = brute_force_count(p);
  return static_cast<double>(c.through_origin) / static_cast<double>(c.total);
}

double stirling_prob(const QuadrantPair& p) {
  const double u = p.u, v = p.v, x = p.x, y = p.y;
  const double uv = u + v, xy = x + y, ux = u + x, vy = v + y;
  if (uv < 1 || xy < 1 || ux < 1 || vy < 1) throw DomainError("stirling_prob needs nonzero marginals");
  const double m = u + v + x + y;
  const double d = u * y - x * v;
  const double den = uv * xy * ux * vy;
  return std::pow(m, 1.5) / std::sqrt(2.0 * pi * den) * std::exp(-m * d * d / (2.0 * den));
}

namespace {

std::vector<std::int64_t> quarter_widths(std::int64_t n) {
  // widths[u] = number of v >= 0 with u^2 + v^2 <= n^2.
  std::vector<std::int64_t> w(n + 1);
  std::int64_t v = n;
  for (std::int64_t u = 0; u <= n; ++u) {
    while (v >= 0 && u * u + v * v > n * n) --v;
    w[u] = v + 1;
  }
  return w;
}

}  // namespace

GridFlowResult uniform_protocol_flow(std::int64_t n, unsigned threads) {
  if (n < 0) throw DomainError("n must be nonnegative");
  GridFlowResult r;
  r.n = n;
  r.protocol = Protocol::uniform_geodesic;
  if (n == 0) return r;
  const auto w = quarter_widths(n);
  const std::int64_t top = 4 * n;
  // log k! in extended precision; log C(m, k) table for m <= 4n.
  std::vector<long double> lf(top + 1, 0.0L);
  for (std::int64_t k = 1; k <= top; ++k) lf[k] = lf[k - 1] + std::log(static_cast<long double>(k));
  auto lc = [&](std::int64_t m, std::int64_t k) { return lf[m] - lf[k] - lf[m - k]; };
  std::vector<double> table(static_cast<std::size_t>((top + 1) * (top + 1)), 0.0);
  for (std::int64_t m = 0; m <= top; ++m) {
    for (std::int64_t k = 0; k <= m; ++k) table[m * (top + 1) + k] = static_cast<double>(lc(m, k));
  }
  // One row per source point (u, v); rows are independent and summed in order.
  std::vector<std::pair<std::int64_t, std::int64_t>> sources;
  for (std::int64_t u = 0; u <= n; ++u) {
    for (std::int64_t v = 0; v < w[u]; ++v) sources.emplace_back(u, v);
  }
  std::vector<double> rows(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    const auto [u, v] = sources[i];
    const double a = table[(u + v) * (top + 1) + u];
    numerics::CompensatedSum s;
    for (std::int64_t x = 0; x <= n; ++x) {
      for (std::int64_t y = 0; y < w[x]; ++y) {
        const std::int64_t m = u + v + x + y;
        if (m == 0) continue;
        s += std::exp(a + table[(x + y) * (top + 1) + x] - table[m * (top + 1) + u + x]);
      }
    }
    rows[i] = s.value();
  });
  numerics::CompensatedSum total;
  for (double x : rows) total += x;
  const double n3 = static_cast<double>(n) * n * n;
  r.quadrant_sum = total.value();
  r.total_flow = 2.0 * r.quadrant_sum;
  r.bond_flow = 0.5 * r.total_flow;
  r.scaled = r.total_flow / n3;
  return r;
}

Rational uniform_quadrant_sum_exact(std::int64_t n) {
  const auto w = quarter_widths(n);
  Rational s = 0;
  for (std::int64_t u = 0; u <= n; ++u) {
    for (std::int64_t v = 0; v < w[u]; ++v) {
      for (std::int64_t x = 0; x <= n; ++x) {
        for (std::int64_t y = 0; y < w[x]; ++y) {
          if (u + v + x + y == 0) continue;
          s += through_origin_rational({u, v, x, y});
        }
      }
    }
  }
  return s;
}

double uniform_quadrant_sum_brute(std::int64_t n) {
  const auto w = quarter_widths(n);
  numerics::CompensatedSum s;
  for (std::int64_t u = 0; u <= n; ++u) {
    for (std::int64_t v = 0; v < w[u]; ++v) {
      for (std::int64_t x = 0; x <= n; ++x) {
        for (std::int64_t y = 0; y < w[x]; ++y) {
          if (u + v + x + y == 0) continue;
          s += brute_force_prob({u, v, x, y});
        }
      }
    }
  }
  return s.value();
}

std::int64_t positive_quarter_disk_count(std::int64_t n) {
  const auto w = quarter_widths(n);
  std::int64_t c = 0;
  for (std::int64_t x = 1; x <= n; ++x) c += w[x] - 1;
  return c;
}

GridFlowResult extreme_protocol_flow(std::int64_t n) {
  if (n < 1) throw DomainError("extreme_protocol_flow requires n >= 1");
  GridFlowResult r;
  r.n = n;
  r.protocol = Protocol::extreme_geodesic;
  const double nd = static_cast<double>(n);
  const double one_case = 2.0 * static_cast<double>(positive_quarter_disk_count(n)) * 0.5 * nd;
  r.total_flow = 4.0 * one_case;
  r.bond_flow = 0.5 * r.total_flow;
  r.scaled = r.total_flow / (nd * nd * nd);
  return r;
}

ComparisonReport comparison_report() {
  ComparisonReport c;
  c.segment_length = 4.0 / pi;
  const double k = pi / 4.0;  // grid rescaled from n to (pi/4) n
  // Traffic correction (pi n^2)^2 / (pi (k n)^2)^2 times bond flow (pi/2)(k n)^3.
  c.extreme_comparable = 1.0 / std::pow(k, 4) * (pi / 2.0) * std::pow(k, 3);
  c.uniform_comparable = 1.0 / std::pow(k, 4) * 2.0 * std::pow(k, 3);
  c.uniform_over_poisson = c.uniform_comparable / c.poisson_centre;
  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  const std::vector<double> br{0.0, pi / 2.0, pi, 1.5 * pi, 2.0 * pi};
  c.distance_factor =
      numerics::integrate_pieces([](double t) { return std::fabs(std::sin(t)) + std::fabs(std::cos(t)); }, br, spec)
          .value /
      (2.0 * pi);
  return c;
}

const char* protocol_name(Protocol p) {
  return p == Protocol::uniform_geodesic ? "uniform_geodesic" : "extreme_geodesic";
}

void write_grid_csv_header(std::ostream& out) { out << "n,protocol,total_flow,scaled\n"; }

void write_grid_csv_row(std::ostream& out, const GridFlowResult& r) {
  out << r.n << ',' << protocol_name(r.protocol) << ',' << io::num(r.total_flow) << ',' << io::num(r.scaled) << '\n';
}

}  // namespace pcity::grid
