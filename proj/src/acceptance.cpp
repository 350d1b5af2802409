#include "pcity/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>

#include "pcity/central_flow.hpp"
#include "pcity/errors.hpp"
#include "pcity/experiments.hpp"
#include "pcity/growth_levy.hpp"
#include "pcity/io.hpp"
#include "pcity/manhattan.hpp"
#include "pcity/numerics.hpp"
#include "pcity/rng.hpp"

namespace pcity::acceptance {

using numerics::mean_stats;
using std::numbers::pi;

namespace {

// Pinned tolerances and scales.
constexpr double kSigmas = 3.0;
constexpr std::size_t kPatterns = 10000;
constexpr double kHitLength = 5.0;
constexpr std::size_t kSeparationReps = 10000;
constexpr double kLateralN = 1000.0;
constexpr std::size_t kLateralSamples = 2000;
constexpr double kKsAlpha = 0.01;
constexpr double kLateralRelTol = 0.10;
constexpr std::size_t kExcessReps = 1000;
constexpr double kExcessRelTol = 0.10;
constexpr std::size_t kGrowthReps = 10000;
constexpr double kGrowthMeanRelTol = 0.10;
constexpr double kGrowthVarRelTol = 0.20;
constexpr std::size_t kSubordinatorSamples = 100000;
constexpr double kLaplaceT = 4.0;
constexpr double kTauTol = 1e-9;
constexpr std::size_t kTauPaths = 10000;
constexpr std::size_t kLampertiReps = 100000;
constexpr std::size_t kPerpetuityReps = 100000;
constexpr double kFlowN = 1000.0;
constexpr std::size_t kFlowOuter = 200;
constexpr std::size_t kFlowInner = 5000;
constexpr double kLimitRelTol = 0.10;
constexpr double kLimitHMax = 6.0;
constexpr double kLimitYBound = 8.0 * kLimitHMax;
constexpr std::size_t kLimitPairs = 2000;
constexpr std::size_t kLimitRealizations = 400;
constexpr double kLimitQuadTol = 1e-4;
constexpr double kVarianceAlpha = 0.01;
constexpr double kLowerBoundConstTol = 1e-6;
constexpr double kLowerBoundSlopeTarget = 0.1363;
constexpr double kLowerBoundSlopeRelTol = 0.05;
constexpr std::size_t kDiskPairs = 1000000;
constexpr std::size_t kDiskPatterns = 10000;
constexpr std::int64_t kGridExactMax = 5;
constexpr std::int64_t kGridUniformN = 150;
constexpr std::int64_t kGridExtremeN = 300;
constexpr double kFourDigits = 5e-4;

constexpr std::array<const char*, kCriterionCount> kTitles = {
    "hitting calibration",
    "intersection intensity",
    "separation oracle",
    "lateral displacement",
    "route excess slope",
    "growth process sigma(n)",
    "subordinator identities",
    "tau representation",
    "Lamperti inverse moment",
    "perpetuity mean",
    "centre flow mean",
    "limit flow",
    "lower bound",
    "Mills bracket",
    "disk geometry",
    "Manhattan exactness",
    "Manhattan asymptotics",
    "determinism",
};

double log_fit_slope(std::span<const double> ns, std::span<const double> ys) {
  std::vector<double> x(ns.size());
  std::transform(ns.begin(), ns.end(), x.begin(), [](double n) { return std::log(n); });
  return numerics::least_squares(x, ys).slope;
}

// Standard error of the sample variance, from the squared deviations.
double variance_std_error(std::span<const double> xs) {
  const double m = mean_stats(xs).mean;
  std::vector<double> d(xs.size());
  std::transform(xs.begin(), xs.end(), d.begin(), [m](double x) { return (x - m) * (x - m); });
  return mean_stats(d).std_error;
}

// One-sided test of "the replicate values have no variance beyond their own
// sampling noise": (R-1) S^2 / mean(sampling variance) against chi^2_{R-1}.
double excess_variance_p_value(std::span<const double> values, std::span<const double> sampling_variance) {
  const auto st = mean_stats(values);
  const double noise = mean_stats(sampling_variance).mean;
  const double dof = static_cast<double>(values.size() - 1);
  return numerics::chi_square_sf(dof * st.variance / noise, dof);
}

void c01(const Options& o, Outcome& out) {
  const auto counts = experiments::hitting_counts(kHitLength, kPatterns, o.seed, o.threads);
  const auto st = mean_stats(counts);
  out.metrics.push_back(within("mean crossings", st.mean, kHitLength, kSigmas * st.std_error));
  io::Csv csv("pattern,crossings");
  for (std::size_t i = 0; i < counts.size(); ++i) csv.row(i, counts[i]);
  out.csv = csv.str();
}

void c02(const Options& o, Outcome& out) {
  const auto counts = experiments::intersection_counts(kPatterns, o.seed, o.threads);
  const auto st = mean_stats(counts);
  out.metrics.push_back(within("points per unit area", st.mean, pi / 2.0, kSigmas * st.std_error));
  out.metrics.push_back(info("points per unit area vs pi/4", st.mean, pi / 4.0, kSigmas * st.std_error));
  out.metrics.push_back(info("ordered line pairs per unit area", 2.0 * st.mean, pi / 2.0, 2.0 * kSigmas * st.std_error));
  io::Csv csv("pattern,points");
  for (std::size_t i = 0; i < counts.size(); ++i) csv.row(i, counts[i]);
  out.csv = csv.str();
}

void c03(const Options& o, Outcome& out) {
  using geom::Point;
  const Point origin{0.0, 0.0};
  auto polar = [](double r, double deg) { return Point{r * std::cos(deg * pi / 180.0), r * std::sin(deg * pi / 180.0)}; };
  const std::array<std::array<Point, 2>, 5> geometries = {{
      {polar(1.0, 0.0), polar(1.0, 90.0)},
      {polar(1.0, 0.0), polar(1.0, 120.0)},
      {polar(2.0, 0.0), polar(0.5, 60.0)},
      {polar(1.0, 0.0), polar(3.0, 150.0)},
      {Point{-1.0, 0.5}, Point{2.0, 0.5}},
  }};
  io::Csv csv("geometry,replicates,unseparated,frequency,formula");
  for (std::size_t g = 0; g < geometries.size(); ++g) {
    const auto t = experiments::separation_trial(geometries[g][0], geometries[g][1], origin, kSeparationReps, o.seed, g);
    const double se = std::sqrt(t.formula * (1.0 - t.formula) / static_cast<double>(t.replicates));
    out.metrics.push_back(within("geometry " + std::to_string(g + 1), t.frequency(), t.formula, kSigmas * se));
    csv.row(g + 1, t.replicates, t.unseparated, t.frequency(), t.formula);
  }
  out.csv = csv.str();
}

void c04(const Options& o, Outcome& out) {
  const auto samples = experiments::lateral_samples(kLateralN, kLateralSamples, o.seed, o.threads);
  std::vector<double> us;
  std::vector<double> v2;
  io::Csv csv("replicate,u,v");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    us.push_back(samples[i].u);
    if (samples[i].u > 0.45 && samples[i].u < 0.55) v2.push_back(samples[i].v * samples[i].v);
    csv.row(i, samples[i].u, samples[i].v);
  }
  const auto ks = numerics::ks_test(us, [](double u) { return std::clamp(u, 0.0, 1.0); });
  out.metrics.push_back(above("KS p-value of U", ks.p_value, kKsAlpha));
  const auto st = mean_stats(v2);
  out.metrics.push_back(within("E[V^2 | U in (0.45,0.55)]", st.mean, 2.0, kLateralRelTol * 2.0));
  // Window average of 8u(1-u) under the limit law.
  out.metrics.push_back(info("limit window average", 8.0 * (0.25 - 0.01 / 12.0)));
  out.metrics.push_back(info("samples in window", static_cast<double>(v2.size())));
  out.metrics.push_back(info("conditional std error", st.std_error));
  out.csv = csv.str();
}

void c05(const Options& o, Outcome& out) {
  std::vector<double> ns;
  std::vector<double> means;
  io::Csv csv("n,replicate,excess");
  for (double n = 128.0; n <= 4096.0; n *= 2.0) {
    const auto ex = experiments::excess_samples(n, kExcessReps, o.seed, o.threads);
    ns.push_back(n);
    means.push_back(mean_stats(ex).mean);
    for (std::size_t i = 0; i < ex.size(); ++i) csv.row(n, i, ex[i]);
  }
  const double target = 4.0 / 3.0;
  std::vector<double> logs(ns.size());
  std::transform(ns.begin(), ns.end(), logs.begin(), [](double n) { return std::log(n); });
  const auto fit = numerics::least_squares(logs, means);
  out.metrics.push_back(within("slope vs log n", fit.slope, target, kExcessRelTol * target));
  out.metrics.push_back(info("slope std error", fit.slope_std_error));
  out.csv = csv.str();
}

void c06(const Options& o, Outcome& out) {
  std::vector<double> levels;
  for (double n = 128.0; n <= 8192.0; n *= 2.0) levels.push_back(n);
  const auto sig = experiments::growth_sigma(levels, kGrowthReps, growth::Initial::theta0_cosine, o.seed, o.threads);
  std::vector<double> means;
  std::vector<double> vars;
  io::Csv csv("replicate,level,sigma");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::vector<double> col(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) col[i] = sig[i][k];
    const auto st = mean_stats(col);
    means.push_back(st.mean);
    vars.push_back(st.variance);
  }
  for (std::size_t i = 0; i < sig.size(); ++i) {
    for (std::size_t k = 0; k < levels.size(); ++k) csv.row(i, levels[k], sig[i][k]);
  }
  const double mean_target = 2.0 / 3.0;
  const double var_target = 20.0 / 27.0;
  const double mean_slope = log_fit_slope(levels, means);
  const double var_slope = log_fit_slope(levels, vars);
  out.metrics.push_back(within("slope of E[sigma]", mean_slope, mean_target, kGrowthMeanRelTol * mean_target));
  out.metrics.push_back(within("slope of Var[sigma]", var_slope, var_target, kGrowthVarRelTol * var_target));
  // (4/9) Var slope of 2M with E[M_t^2] = (7/4) t, times 2/3 per log n.
  const double corrected = 56.0 / 27.0;
  out.metrics.push_back(info("slope of Var[sigma] vs 56/27", var_slope, corrected, kGrowthVarRelTol * corrected));
  out.csv = csv.str();
}

void c07(const Options& o, Outcome& out) {
  const auto jumps = experiments::xi_jump_samples(kSubordinatorSamples, o.seed);
  const auto js = mean_stats(jumps);
  out.metrics.push_back(within("xi jump mean", js.mean, 1.5, kSigmas * js.std_error));
  out.metrics.push_back(within("xi jump variance", js.variance, 1.25, kSigmas * variance_std_error(jumps)));
  const auto xi = experiments::xi_endpoints(kLaplaceT, kSubordinatorSamples, o.seed, o.threads);
  for (double q : {0.5, 1.0, 2.0}) {
    std::vector<double> e(xi.size());
    std::transform(xi.begin(), xi.end(), e.begin(), [q](double x) { return std::exp(-q * x); });
    const auto st = mean_stats(e);
    const double phi = -std::log(st.mean) / kLaplaceT;
    const double se = st.std_error / (kLaplaceT * st.mean);
    out.metrics.push_back(within("Phi(" + io::num(q) + ")", phi, growth::laplace_exponent(q), kSigmas * se));
  }
  std::vector<double> m(xi.size());
  std::vector<double> m2(xi.size());
  std::vector<double> m2c(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    m[i] = xi[i] - 0.75 * kLaplaceT;
    m2[i] = m[i] * m[i] - 0.625 * kLaplaceT;
    m2c[i] = m[i] * m[i] - 1.75 * kLaplaceT;
  }
  const auto ms = mean_stats(m);
  const auto m2s = mean_stats(m2);
  const auto m2cs = mean_stats(m2c);
  out.metrics.push_back(within("mean of M_t", ms.mean, 0.0, kSigmas * ms.std_error));
  out.metrics.push_back(within("mean of M_t^2 - (5/8)t", m2s.mean, 0.0, kSigmas * m2s.std_error));
  out.metrics.push_back(info("mean of M_t^2 - (7/4)t", m2cs.mean, 0.0, kSigmas * m2cs.std_error));
  io::Csv csv("sample,index,value");
  for (std::size_t i = 0; i < jumps.size(); ++i) csv.row("xi_jump", i, jumps[i]);
  for (std::size_t i = 0; i < xi.size(); ++i) csv.row("xi_t", i, xi[i]);
  out.csv = csv.str();
}

void c08(const Options& o, Outcome& out) {
  const std::array<double, 5> levels = {1.0, 2.0, 10.0, 100.0, 1000.0};
  const auto checks = experiments::tau_identity(levels, kTauPaths, o.seed);
  io::Csv csv("level,paths,max_abs_error,mean_tau");
  for (const auto& c : checks) {
    out.metrics.push_back(within("max error at n=" + io::num(c.level), c.max_abs_error, 0.0, kTauTol));
    csv.row(c.level, c.paths, c.max_abs_error, c.mean_tau);
  }
  out.csv = csv.str();
}

void c09(const Options& o, Outcome& out) {
  io::Csv csv("n,formula,mc_estimate,std_error");
  std::uint64_t k = 0;
  for (double n : {1.0, 2.0, 5.0}) {
    RngStream rng(o.seed, stream_id(14, k++, 0));
    const auto im = growth::lamperti_inverse_moment(n, kLampertiReps, rng);
    out.metrics.push_back(within("n=" + io::num(n), im.mc_estimate, im.formula, kSigmas * im.std_error));
    csv.row(n, im.formula, im.mc_estimate, im.std_error);
  }
  out.csv = csv.str();
}

void c10(const Options& o, Outcome& out) {
  RngStream rng(o.seed, stream_id(15, 0, 0));
  const auto mc = growth::perpetuity(kPerpetuityReps, rng);
  const auto an = growth::perpetuity_analytic();
  out.metrics.push_back(within("mean of U", mc.value, an.value, kSigmas * mc.std_error));
  out.metrics.push_back(info("E[m] by quadrature", growth::perpetuity_multiplier_mean()));
  out.metrics.push_back(info("tail bound", mc.tail_bound));
  io::Csv csv("estimate,std_error,truncation_level,tail_bound,analytic");
  csv.row(mc.value, mc.std_error, mc.truncation_level, mc.tail_bound, an.value);
  out.csv = csv.str();
}

void c11(const Options& o, Outcome& out) {
  const double n3 = kFlowN * kFlowN * kFlowN;
  const double quad = flow::mean_flow_quadrature(kFlowN) / n3;
  const auto mc = flow::simulate_center_flow(kFlowN, kFlowOuter, kFlowInner, o.seed, o.threads);
  out.metrics.push_back(within("quadrature E[T_n]/n^3", quad, 2.0, 0.1));
  out.metrics.push_back(within("nested MC vs quadrature", mc.value, quad, kSigmas * mc.std_error));
  out.metrics.push_back(within("quadrature vs limit 2", quad, 2.0, kLimitRelTol * 2.0));
  out.metrics.push_back(within("nested MC vs limit 2", mc.value, 2.0, kSigmas * mc.std_error + kLimitRelTol * 2.0));
  out.metrics.push_back(
      info("replicate variance p-value", excess_variance_p_value(mc.replicate_values, mc.replicate_sampling_variance)));
  io::Csv csv("replicate,value,sampling_variance");
  for (std::size_t i = 0; i < mc.replicate_values.size(); ++i) {
    csv.row(i, mc.replicate_values[i], mc.replicate_sampling_variance[i]);
  }
  out.csv = csv.str();
}

void c12(const Options& o, Outcome& out) {
  out.metrics.push_back(within("limit_mean_quadrature", flow::limit_mean_quadrature(), 2.0, kLimitQuadTol));
  const auto est = flow::simulate_limit_flow(kLimitHMax, kLimitYBound, kLimitPairs, kLimitRealizations, o.seed, o.threads);
  out.metrics.push_back(within("limit flow mean", est.value, 2.0, kSigmas * est.std_error + est.bias_bound));
  out.metrics.push_back(
      below("variance test p-value", excess_variance_p_value(est.replicate_values, est.replicate_sampling_variance),
            kVarianceAlpha));
  out.metrics.push_back(info("bias bound", est.bias_bound));
  out.metrics.push_back(info("across-realization variance", mean_stats(est.replicate_values).variance));
  io::Csv csv("realization,value,sampling_variance");
  for (std::size_t i = 0; i < est.replicate_values.size(); ++i) {
    csv.row(i, est.replicate_values[i], est.replicate_sampling_variance[i]);
  }
  out.csv = csv.str();
}

void c13(const Options&, Outcome& out) {
  out.metrics.push_back(within("lower_bound_constant", flow::lower_bound_constant(), std::log(4.0) - 1.25,
                               kLowerBoundConstTol));
  const std::array<double, 4> ns = {1e2, 1e3, 1e4, 1e5};
  std::array<double, 4> ys{};
  std::transform(ns.begin(), ns.end(), ys.begin(), [](double n) { return flow::excess_lower_bound(n); });
  out.metrics.push_back(within("slope vs log n", log_fit_slope(ns, ys), kLowerBoundSlopeTarget,
                               kLowerBoundSlopeRelTol * kLowerBoundSlopeTarget));
  out.metrics.push_back(info("exact-Mills limit slope", flow::lower_bound_exact_slope()));
}

void c14(const Options&, Outcome& out) {
  int violations = 0;
  double margin = INFINITY;
  for (int k = 0; k <= 100; ++k) {
    const auto b = numerics::mills_bounds(0.1 * k);
    if (!(b.lower < b.exact && b.exact < b.upper)) ++violations;
    margin = std::min({margin, b.exact - b.lower, b.upper - b.exact});
  }
  out.metrics.push_back(within("grid points outside bracket", violations, 0.0, 0.0));
  out.metrics.push_back(info("smallest margin", margin));
}

void c15(const Options& o, Outcome& out) {
  const auto d = experiments::disk_distances(kDiskPairs, o.seed, o.threads);
  const auto st = mean_stats(d);
  const double target = 128.0 / (45.0 * pi);
  out.metrics.push_back(within("mean distance", st.mean, target, kSigmas * st.std_error));
  int mismatches = 0;
  for (double n : {1.0, 10.0, 1000.0}) {
    if (flow::disk_average_report(n).network_length != pi * pi * n * n / 2.0) ++mismatches;
  }
  out.metrics.push_back(within("network length formula mismatches", mismatches, 0.0, 0.0));
  const auto len = experiments::disk_network_lengths(kDiskPatterns, o.seed);
  const auto ls = mean_stats(len);
  out.metrics.push_back(info("MC network length in unit disk", ls.mean, pi * pi / 2.0, kSigmas * ls.std_error));
  io::Csv csv("block,mean_distance");
  constexpr std::size_t kBlock = 10000;
  for (std::size_t b = 0; b * kBlock < d.size(); ++b) {
    const auto part = std::span<const double>(d).subspan(b * kBlock, std::min(kBlock, d.size() - b * kBlock));
    csv.row(b, mean_stats(part).mean);
  }
  for (std::size_t i = 0; i < len.size(); ++i) csv.row("length", len[i]);
  out.csv = csv.str();
}

void c16(const Options&, Outcome& out) {
  int mismatches = 0;
  int checked = 0;
  double max_float_error = 0.0;
  for (std::int64_t u = 0; u <= kGridExactMax; ++u) {
    for (std::int64_t v = 0; v <= kGridExactMax; ++v) {
      for (std::int64_t x = 0; x <= kGridExactMax; ++x) {
        for (std::int64_t y = 0; y <= kGridExactMax; ++y) {
          const grid::QuadrantPair p{u, v, x, y};
          if (p.total() == 0) continue;
          const auto c = grid::brute_force_count(p);
          const grid::Rational brute(c.through_origin, c.total);
          const grid::Rational exact = grid::through_origin_rational(p);
          if (brute != exact) ++mismatches;
          max_float_error = std::max(max_float_error, std::fabs(grid::through_origin_prob(p) - exact.convert_to<double>()));
          ++checked;
        }
      }
    }
  }
  out.metrics.push_back(within("rational mismatches", mismatches, 0.0, 0.0));
  out.metrics.push_back(info("tuples checked", checked));
  out.metrics.push_back(info("max log-space error", max_float_error));
}

void c17(const Options& o, Outcome& out) {
  const auto uni = grid::uniform_protocol_flow(kGridUniformN, o.threads);
  const double n3 = static_cast<double>(kGridUniformN) * kGridUniformN * kGridUniformN;
  out.metrics.push_back(within("uniform quadrant sum / n^3", uni.quadrant_sum / n3, 2.0, 0.2));
  const auto ext = grid::extreme_protocol_flow(kGridExtremeN);
  out.metrics.push_back(within("extreme total / n^3", ext.scaled, pi, 0.15));
  const auto c = grid::comparison_report();
  out.metrics.push_back(within("uniform comparable coefficient", c.uniform_comparable, 2.54648, kFourDigits));
  out.metrics.push_back(within("uniform / Poisson ratio", c.uniform_over_poisson, 1.2732, kFourDigits));
  out.metrics.push_back(within("extreme comparable coefficient", c.extreme_comparable, 2.0, kFourDigits));
  out.metrics.push_back(within("distance factor", c.distance_factor, 4.0 / pi, 1e-9));
}

void c18(const Options& o, Outcome& out) {
  int mismatches = 0;
  int compared = 0;
  const Options serial{o.seed, 1};
  const Options wide{o.seed, std::max(2u, o.threads)};
  for (int id = 1; id < kCriterionCount; ++id) {
    if (!is_monte_carlo(id)) continue;
    const auto a = run(id, serial);
    const auto b = run(id, wide);
    const bool same = a.error.empty() && b.error.empty() && !a.csv.empty() && a.csv == b.csv;
    if (!same) ++mismatches;
    ++compared;
    out.metrics.push_back(info("criterion " + std::to_string(id) + " bytes", static_cast<double>(a.csv.size())));
  }
  out.metrics.insert(out.metrics.begin(), within("criteria with differing CSV", mismatches, 0.0, 0.0));
  out.metrics.insert(out.metrics.begin() + 1, info("criteria compared", compared));
}

using Runner = void (*)(const Options&, Outcome&);
constexpr std::array<Runner, kCriterionCount> kRunners = {c01, c02, c03, c04, c05, c06, c07, c08, c09,
                                                          c10, c11, c12, c13, c14, c15, c16, c17, c18};

const char* check_symbol(Check c) {
  switch (c) {
    case Check::within: return "+-";
    case Check::above: return ">";
    case Check::below: return "<";
    case Check::info: return "~";
  }
  return "?";
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Metric within(std::string name, double value, double target, double tolerance) {
  return {std::move(name), value, target, tolerance, Check::within, std::fabs(value - target) <= tolerance};
}

Metric above(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, Check::above, value > bound};
}

Metric below(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, Check::below, value < bound};
}

Metric info(std::string name, double value, double target, double tolerance) {
  return {std::move(name), value, target, tolerance, Check::info, true};
}

bool Outcome::pass() const {
  if (!error.empty()) return false;
  bool decided = false;
  for (const auto& m : metrics) {
    if (m.check == Check::info) continue;
    if (!m.pass) return false;
    decided = true;
  }
  return decided;
}

const char* title(int id) {
  if (id < 1 || id > kCriterionCount) throw DomainError("no such criterion");
  return kTitles[id - 1];
}

bool is_monte_carlo(int id) {
  switch (id) {
    case 13:
    case 14:
    case 16:
    case 17:
    case 18:
      return false;
    default:
      return id >= 1 && id <= kCriterionCount;
  }
}

Outcome run(int id, const Options& options) {
  Outcome out;
  out.id = id;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.title = title(id);
    kRunners[id - 1](options, out);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string summary_line(const Outcome& o) {
  std::ostringstream s;
  char id[8];
  std::snprintf(id, sizeof id, "%02d", o.id);
  s << (o.pass() ? "PASS " : "FAIL ") << id << ' ' << o.title << " |";
  for (const auto& m : o.metrics) {
    s << ' ' << m.name << '=' << short_num(m.value) << " (" << check_symbol(m.check) << ' ' << short_num(m.target);
    if (m.check == Check::within || (m.check == Check::info && m.tolerance > 0.0)) s << " tol " << short_num(m.tolerance);
    if (m.check != Check::info && !m.pass) s << " MISS";
    s << ");";
  }
  if (!o.error.empty()) s << " error: " << o.error;
  char t[32];
  std::snprintf(t, sizeof t, " [%.1fs]", o.seconds);
  s << t;
  return s.str();
}

}  // namespace pcity::acceptance
