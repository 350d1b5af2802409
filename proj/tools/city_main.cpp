#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcity/acceptance.hpp"
#include "pcity/central_flow.hpp"
#include "pcity/city_routes.hpp"
#include "pcity/errors.hpp"
#include "pcity/experiments.hpp"
#include "pcity/growth_levy.hpp"
#include "pcity/io.hpp"
#include "pcity/line_process.hpp"
#include "pcity/manhattan.hpp"
#include "pcity/numerics.hpp"

namespace {

using json = nlohmann::json;
using pcity::acceptance::Metric;
namespace acc = pcity::acceptance;
namespace fs = std::filesystem;
using std::numbers::pi;

constexpr double kSigmas = 3.0;

struct Common {
  std::uint64_t seed = acc::kDefaultSeed;
  unsigned threads = 1;
  std::string out = "city_out";
};

struct Report {
  explicit Report(std::string name) : subcommand(std::move(name)) {}

  std::string subcommand;
  json params = json::object();
  std::vector<Metric> metrics;
  std::string csv;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json metric_json(const Metric& m) {
  return {{"name", m.name},
          {"value", m.value},
          {"target", m.target},
          {"tolerance", m.tolerance},
          {"pass", m.check == acc::Check::info ? json(nullptr) : json(m.pass)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// Writes <out>/<subcommand>.csv and summary.json; 2 if a checked metric failed.
int finish(const Common& c, Report& r) {
  fs::create_directories(c.out);
  write_text(fs::path(c.out) / (r.subcommand + ".csv"), r.csv);
  json summary;
  summary["subcommand"] = r.subcommand;
  r.params["threads"] = c.threads;
  r.params["out"] = c.out;
  summary["params"] = r.params;
  summary["metrics"] = json::array();
  bool ok = true;
  for (const auto& m : r.metrics) {
    summary["metrics"].push_back(metric_json(m));
    if (m.check != acc::Check::info && !m.pass) ok = false;
    const char* tag = m.check == acc::Check::info ? "info" : (m.pass ? "pass" : "FAIL");
    std::printf("%-4s  %-40s %14.8g  target %-12.8g tol %.4g\n", tag, m.name.c_str(), m.value, m.target, m.tolerance);
  }
  summary["seed"] = c.seed;
  summary["timestamp"] = utc_timestamp();
  write_text(fs::path(c.out) / "summary.json", summary.dump(2) + "\n");
  return ok ? 0 : 2;
}

std::vector<double> log_of(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs) out.push_back(std::log(x));
  return out;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed (falls back to CITY_SEED)");
  sub->add_option("--threads", c.threads, "Replicate worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson city experiments: line patterns, cells and routes, growth dynamics, centre flow, grid city"};
  app.require_subcommand(1);

  Common common;
  if (const char* env = std::getenv("CITY_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: CITY_SEED is not an unsigned integer: %s\n", env);
      return 1;
    }
  }
  common.threads = std::max(1u, std::thread::hardware_concurrency());

  std::function<Report()> job;
  auto bind = [&](CLI::App* sub, std::function<Report()> fn) {
    add_common(sub, common);
    sub->callback([&job, fn] { job = fn; });
  };

  // sample-lines
  double radius = 10.0;
  bool conditioned = false;
  bool improper = false;
  double strip_bound = 8.0;
  auto* s_lines = app.add_subcommand("sample-lines", "Sample a line pattern on a disk or a strip of the improper limit process");
  s_lines->footer("CSV sample-lines.csv: kind,r,theta,y_minus,y_plus (kind = poisson | conditioned | strip)");
  s_lines->add_option("--radius", radius, "Disk window radius")->check(CLI::PositiveNumber);
  s_lines->add_flag("--conditioned", conditioned, "Add a uniformly directed line through the window centre");
  s_lines->add_flag("--improper", improper, "Sample the improper strip process instead");
  s_lines->add_option("--y-bound", strip_bound, "Intercept bound for --improper")->check(CLI::PositiveNumber);
  bind(s_lines, [&] {
    Report r{"sample-lines"};
    pcity::RngStream rng(common.seed, pcity::stream_id(20, 0, 0));
    std::ostringstream csv;
    if (improper) {
      const auto strip = pcity::lines::sample_improper_strip(-strip_bound, strip_bound, rng);
      pcity::lines::write_strip_csv(csv, strip);
      const double mean = strip_bound * strip_bound;  // (1/4)(2b)^2
      r.metrics.push_back(acc::info("strip lines", static_cast<double>(strip.size()), mean, kSigmas * std::sqrt(mean)));
      r.params = {{"improper", true}, {"y_bound", strip_bound}};
    } else {
      auto pat = pcity::lines::sample_pattern(pcity::lines::DiskWindow({0.0, 0.0}, radius), rng);
      if (conditioned) pat = pcity::lines::add_line_through(std::move(pat), {0.0, 0.0}, std::nullopt, rng);
      pcity::lines::write_pattern_csv(csv, pat);
      const double mean = pi * radius;
      r.metrics.push_back(acc::info("lines hitting disk", static_cast<double>(pat.lines.size()), mean, kSigmas * std::sqrt(mean)));
      r.params = {{"radius", radius}, {"conditioned", conditioned}};
    }
    r.csv = csv.str();
    return r;
  });

  // cell
  double cell_n = 1000.0;
  bool emit_svg = false;
  std::string y_scale = "auto";
  auto* s_cell = app.add_subcommand("cell", "Build the cell of (0,0), (n,0) and its two semi-perimeter routes");
  s_cell->footer("CSV cell.csv: x,y,role (role = vertex | p_minus | p_plus | ray_back | ray_forward); cell.svg with --emit-svg");
  s_cell->add_option("--n", cell_n, "Separation of the two points")->check(CLI::PositiveNumber);
  s_cell->add_flag("--emit-svg", emit_svg, "Also write cell.svg");
  s_cell->add_option("--y-scale", y_scale, "Vertical exaggeration for the SVG, or 'auto' for sqrt(n)/4");
  bind(s_cell, [&] {
    Report r{"cell"};
    pcity::RngStream rng(common.seed, pcity::stream_id(21, 0, 0));
    const auto cell = pcity::routes::build_cell({0.0, 0.0}, {cell_n, 0.0}, rng);
    const auto rp = pcity::routes::semi_perimeter_routes(cell);
    const auto apex = pcity::routes::max_lateral_displacement(cell);
    std::ostringstream csv;
    pcity::routes::write_cell_csv(csv, cell, rp);
    r.csv = csv.str();
    double scale = std::sqrt(cell_n) / 4.0;
    if (y_scale != "auto") {
      try {
        scale = std::stod(y_scale);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--y-scale", "expected a number or 'auto'");
      }
      if (!(scale > 0.0)) throw CLI::ValidationError("--y-scale", "must be positive");
    }
    if (emit_svg) {
      fs::create_directories(common.out);
      std::ofstream svg(fs::path(common.out) / "cell.svg", std::ios::binary);
      pcity::routes::write_cell_svg(svg, cell, rp, apex, {scale, 900.0, cell.lines});
    }
    r.params = {{"n", cell_n}, {"emit_svg", emit_svg}, {"y_scale", scale}};
    r.metrics.push_back(acc::info("vertices", static_cast<double>(cell.polygon.size())));
    r.metrics.push_back(acc::info("upper excess", rp.upper.excess));
    r.metrics.push_back(acc::info("lower excess", rp.lower.excess));
    r.metrics.push_back(acc::info("apex u", apex.u));
    r.metrics.push_back(acc::info("apex v", apex.v));
    return r;
  });

  // excess
  std::vector<double> excess_n = {128, 256, 512, 1024, 2048, 4096};
  std::size_t excess_reps = 1000;
  auto* s_excess = app.add_subcommand("excess", "Mean semi-perimeter excess against log n");
  s_excess->footer("CSV excess.csv: n,replicate,excess (excess averaged over the two routes of each cell)");
  s_excess->add_option("--n", excess_n, "Separations")->check(CLI::PositiveNumber);
  s_excess->add_option("--replicates", excess_reps, "Cells per n")->check(CLI::PositiveNumber);
  bind(s_excess, [&] {
    Report r{"excess"};
    pcity::io::Csv csv("n,replicate,excess");
    std::vector<double> means;
    for (double n : excess_n) {
      const auto ex = pcity::experiments::excess_samples(n, excess_reps, common.seed, common.threads);
      const auto st = pcity::numerics::mean_stats(ex);
      means.push_back(st.mean);
      r.metrics.push_back(acc::info("mean excess n=" + pcity::io::num(n), st.mean, 0.0, st.std_error));
      for (std::size_t i = 0; i < ex.size(); ++i) csv.row(n, i, ex[i]);
    }
    if (excess_n.size() >= 2) {
      const auto fit = pcity::numerics::least_squares(log_of(excess_n), means);
      r.metrics.insert(r.metrics.begin(), acc::within("slope vs log n", fit.slope, 4.0 / 3.0, 0.4 / 3.0));
    }
    r.params = {{"n", excess_n}, {"replicates", excess_reps}};
    r.csv = csv.str();
    return r;
  });

  // lateral
  double lateral_n = 1000.0;
  std::size_t lateral_reps = 2000;
  auto* s_lateral = app.add_subcommand("lateral", "Maximal lateral displacement (U, V) of the upper route");
  s_lateral->footer("CSV lateral.csv: replicate,u,v (u = x/n, v = y/sqrt(n) of the highest upper-route vertex)");
  s_lateral->add_option("--n", lateral_n, "Separation")->check(CLI::PositiveNumber);
  s_lateral->add_option("--replicates", lateral_reps, "Cells")->check(CLI::Range(20ul, 100000000ul));
  bind(s_lateral, [&] {
    Report r{"lateral"};
    const auto s = pcity::experiments::lateral_samples(lateral_n, lateral_reps, common.seed, common.threads);
    pcity::io::Csv csv("replicate,u,v");
    std::vector<double> us;
    std::vector<double> v2;
    for (std::size_t i = 0; i < s.size(); ++i) {
      csv.row(i, s[i].u, s[i].v);
      us.push_back(s[i].u);
      if (s[i].u > 0.45 && s[i].u < 0.55) v2.push_back(s[i].v * s[i].v);
    }
    const auto ks = pcity::numerics::ks_test(us, [](double u) { return std::clamp(u, 0.0, 1.0); });
    r.metrics.push_back(acc::info("KS statistic", ks.statistic));
    r.metrics.push_back(acc::above("KS p-value", ks.p_value, 0.01));
    if (v2.size() >= 2) {
      r.metrics.push_back(acc::within("E[V^2 | U in (0.45,0.55)]", pcity::numerics::mean_stats(v2).mean, 2.0, 0.2));
    }
    r.params = {{"n", lateral_n}, {"replicates", lateral_reps}};
    r.csv = csv.str();
    return r;
  });

  // growth
  std::vector<double> growth_n = {128, 256, 512, 1024, 2048, 4096, 8192};
  std::size_t growth_reps = 10000;
  std::string start = "cosine";
  auto* s_growth = app.add_subcommand("growth", "First-passage excess time sigma(n) of the growth process");
  s_growth->footer("CSV growth.csv: replicate,level,sigma; growth_path.csv: t,theta,x,h for one path to the largest level");
  s_growth->add_option("--n", growth_n, "Levels")->check(CLI::PositiveNumber);
  s_growth->add_option("--replicates", growth_reps, "Paths")->check(CLI::Range(2ul, 100000000ul));
  s_growth->add_option("--start", start, "Initial angle: cosine (reduced start) or pi (full construction)")
      ->check(CLI::IsMember({"cosine", "pi"}));
  bind(s_growth, [&] {
    Report r{"growth"};
    std::sort(growth_n.begin(), growth_n.end());
    const auto init = start == "pi" ? pcity::growth::Initial::theta0_pi : pcity::growth::Initial::theta0_cosine;
    const auto sig = pcity::experiments::growth_sigma(growth_n, growth_reps, init, common.seed, common.threads);
    pcity::io::Csv csv("replicate,level,sigma");
    for (std::size_t i = 0; i < sig.size(); ++i) {
      for (std::size_t k = 0; k < growth_n.size(); ++k) csv.row(i, growth_n[k], sig[i][k]);
    }
    std::vector<double> means, vars;
    for (std::size_t k = 0; k < growth_n.size(); ++k) {
      std::vector<double> col;
      for (const auto& row : sig) col.push_back(row[k]);
      const auto st = pcity::numerics::mean_stats(col);
      means.push_back(st.mean);
      vars.push_back(st.variance);
    }
    if (growth_n.size() >= 2) {
      const double ms = pcity::numerics::least_squares(log_of(growth_n), means).slope;
      const double vs = pcity::numerics::least_squares(log_of(growth_n), vars).slope;
      r.metrics.push_back(acc::within("slope of E[sigma]", ms, 2.0 / 3.0, 0.2 / 3.0));
      r.metrics.push_back(acc::info("slope of Var[sigma]", vs, 56.0 / 27.0, 0.2 * 56.0 / 27.0));
    }
    pcity::RngStream rng(common.seed, pcity::stream_id(22, 0, 0));
    const auto path = pcity::growth::simulate_growth(growth_n.back(), init, rng);
    fs::create_directories(common.out);
    std::ofstream trace(fs::path(common.out) / "growth_path.csv", std::ios::binary);
    pcity::growth::write_growth_csv(trace, path);
    r.params = {{"n", growth_n}, {"replicates", growth_reps}, {"start", start}};
    r.csv = csv.str();
    return r;
  });

  // subordinator
  double sub_t = 4.0;
  std::size_t sub_reps = 100000;
  std::vector<double> lamperti_n = {1, 2, 5};
  double moment_p = 2.0;
  auto* s_sub = app.add_subcommand("subordinator", "Subordinator xi: Laplace exponent, Lamperti moments, perpetuity");
  s_sub->footer("CSV subordinator.csv: replicate,xi_t; subordinator_path.csv: t,J,xi,eta for one path");
  s_sub->add_option("--t", sub_t, "Time horizon")->check(CLI::PositiveNumber);
  s_sub->add_option("--replicates", sub_reps, "Paths")->check(CLI::Range(2ul, 100000000ul));
  s_sub->add_option("--lamperti-n", lamperti_n, "Starting levels for the inverse moment")->check(CLI::PositiveNumber);
  s_sub->add_option("--moment-p", moment_p, "Order of the higher-moment diagnostic")->check(CLI::PositiveNumber);
  bind(s_sub, [&] {
    Report r{"subordinator"};
    const auto xi = pcity::experiments::xi_endpoints(sub_t, sub_reps, common.seed, common.threads);
    pcity::io::Csv csv("replicate,xi_t");
    for (std::size_t i = 0; i < xi.size(); ++i) csv.row(i, xi[i]);
    for (double q : {0.5, 1.0, 2.0}) {
      std::vector<double> e;
      for (double x : xi) e.push_back(std::exp(-q * x));
      const auto st = pcity::numerics::mean_stats(e);
      r.metrics.push_back(acc::within("Phi(" + pcity::io::num(q) + ")", -std::log(st.mean) / sub_t,
                                      pcity::growth::laplace_exponent(q), kSigmas * st.std_error / (sub_t * st.mean)));
    }
    std::uint64_t k = 0;
    for (double n : lamperti_n) {
      pcity::RngStream rng(common.seed, pcity::stream_id(23, k++, 0));
      const auto im = pcity::growth::lamperti_inverse_moment(n, sub_reps, rng);
      r.metrics.push_back(acc::within("n E[exp(-2 xi_tau)] n=" + pcity::io::num(n), im.mc_estimate, im.formula,
                                      kSigmas * im.std_error));
      pcity::RngStream rng2(common.seed, pcity::stream_id(24, k, 0));
      const auto mc = pcity::growth::lamperti_moment_mc(n, moment_p, sub_reps, rng2);
      r.metrics.push_back(acc::info("p-moment MC n=" + pcity::io::num(n), mc.value, 0.0, kSigmas * mc.std_error));
      r.metrics.push_back(acc::info("p-moment printed formula n=" + pcity::io::num(n),
                                    pcity::growth::higher_moment_printed(n, moment_p)));
    }
    pcity::RngStream prng(common.seed, pcity::stream_id(25, 0, 0));
    const auto perp = pcity::growth::perpetuity(sub_reps, prng);
    r.metrics.push_back(acc::within("perpetuity mean", perp.value, pcity::growth::perpetuity_analytic().value,
                                    kSigmas * perp.std_error));
    pcity::RngStream trng(common.seed, pcity::stream_id(26, 0, 0));
    fs::create_directories(common.out);
    std::ofstream trace(fs::path(common.out) / "subordinator_path.csv", std::ios::binary);
    pcity::growth::write_subordinator_csv(trace, pcity::growth::simulate_subordinators(sub_t, trng));
    r.params = {{"t", sub_t}, {"replicates", sub_reps}, {"lamperti_n", lamperti_n}, {"moment_p", moment_p}};
    r.csv = csv.str();
    return r;
  });

  // flow-center
  double flow_n = 1000.0;
  std::size_t outer = 200, inner = 5000;
  bool skip_quad = false;
  auto* s_fc = app.add_subcommand("flow-center", "Nested MC of E[T_n]/n^3 against the triple quadrature");
  s_fc->footer("CSV flow-center.csv: n,estimate,std_error,outer,inner,seed (one row per replicate, then the mean row with outer=0)");
  s_fc->add_option("--n", flow_n, "Disk radius")->check(CLI::PositiveNumber);
  s_fc->add_option("--outer", outer, "Patterns")->check(CLI::Range(2ul, 100000000ul));
  s_fc->add_option("--inner", inner, "Point pairs per pattern")->check(CLI::Range(2ul, 100000000ul));
  s_fc->add_flag("--skip-quadrature", skip_quad, "Do not run the quadrature");
  bind(s_fc, [&] {
    Report r{"flow-center"};
    const auto est = pcity::flow::simulate_center_flow(flow_n, outer, inner, common.seed, common.threads);
    pcity::io::Csv csv("n,estimate,std_error,outer,inner,seed");
    for (std::size_t i = 0; i < est.replicate_values.size(); ++i) {
      csv.row(flow_n, est.replicate_values[i], std::sqrt(est.replicate_sampling_variance[i]), i + 1, inner, common.seed);
    }
    csv.row(flow_n, est.value, est.std_error, 0, inner, common.seed);
    r.metrics.push_back(acc::info("MC E[T_n]/n^3", est.value, 0.0, est.std_error));
    if (!skip_quad) {
      const double q = pcity::flow::mean_flow_quadrature(flow_n) / (flow_n * flow_n * flow_n);
      r.metrics.push_back(acc::info("quadrature E[T_n]/n^3", q, 2.0));
      r.metrics.push_back(acc::within("MC vs quadrature", est.value, q, kSigmas * est.std_error));
    }
    r.params = {{"n", flow_n}, {"outer", outer}, {"inner", inner}};
    r.csv = csv.str();
    return r;
  });

  // flow-limit
  double h_max = 6.0, y_bound = 48.0;
  std::size_t pairs = 2000, realizations = 400;
  auto* s_fl = app.add_subcommand("flow-limit", "Flow at the centre for the improper limit process (mean 2)");
  s_fl->footer("CSV flow-limit.csv: realization,value,sampling_variance");
  s_fl->add_option("--h-max", h_max, "Height cap")->check(CLI::PositiveNumber);
  s_fl->add_option("--y-bound", y_bound, "Intercept window (must exceed h-max)")->check(CLI::PositiveNumber);
  s_fl->add_option("--pairs", pairs, "Pairs per realization")->check(CLI::Range(2ul, 100000000ul));
  s_fl->add_option("--realizations", realizations, "Realizations")->check(CLI::Range(2ul, 100000000ul));
  bind(s_fl, [&] {
    Report r{"flow-limit"};
    const auto est = pcity::flow::simulate_limit_flow(h_max, y_bound, pairs, realizations, common.seed, common.threads);
    pcity::io::Csv csv("realization,value,sampling_variance");
    for (std::size_t i = 0; i < est.replicate_values.size(); ++i) {
      csv.row(i, est.replicate_values[i], est.replicate_sampling_variance[i]);
    }
    r.metrics.push_back(acc::within("limit flow mean", est.value, 2.0, kSigmas * est.std_error + est.bias_bound));
    r.metrics.push_back(acc::info("bias bound", est.bias_bound));
    r.metrics.push_back(acc::info("across-realization variance", pcity::numerics::mean_stats(est.replicate_values).variance));
    r.params = {{"h_max", h_max}, {"y_bound", y_bound}, {"pairs", pairs}, {"realizations", realizations}};
    r.csv = csv.str();
    return r;
  });

  // manhattan
  std::vector<std::int64_t> grid_n = {40, 80, 150};
  bool exact_rational = false;
  auto* s_grid = app.add_subcommand("manhattan", "Grid-city flow through the origin under both routing protocols");
  s_grid->footer("CSV manhattan.csv: n,protocol,total_flow,scaled (scaled = total_flow / n^3)");
  s_grid->add_option("--n", grid_n, "Disk radii in lattice units")->check(CLI::PositiveNumber);
  s_grid->add_flag("--exact-rational", exact_rational, "Also evaluate the uniform sum in exact rationals (n <= 12)");
  bind(s_grid, [&] {
    Report r{"manhattan"};
    std::ostringstream csv;
    pcity::grid::write_grid_csv_header(csv);
    for (auto n : grid_n) {
      const auto uni = pcity::grid::uniform_protocol_flow(n, common.threads);
      const auto ext = pcity::grid::extreme_protocol_flow(n);
      pcity::grid::write_grid_csv_row(csv, uni);
      pcity::grid::write_grid_csv_row(csv, ext);
      const std::string tag = " n=" + std::to_string(n);
      r.metrics.push_back(acc::info("uniform quadrant sum / n^3" + tag, uni.quadrant_sum / std::pow(double(n), 3), 2.0));
      r.metrics.push_back(acc::info("extreme total / n^3" + tag, ext.scaled, pi));
      if (exact_rational) {
        if (n > 12) throw pcity::TooLarge("--exact-rational is limited to n <= 12");
        const double exact = pcity::grid::uniform_quadrant_sum_exact(n).convert_to<double>();
        r.metrics.push_back(acc::within("exact rational vs log-space" + tag, uni.quadrant_sum, exact, 1e-9 * exact));
      }
    }
    const auto c = pcity::grid::comparison_report();
    r.metrics.push_back(acc::info("grid segment length", c.segment_length, 4.0 / pi));
    r.metrics.push_back(acc::info("extreme comparable coefficient", c.extreme_comparable, 2.0));
    r.metrics.push_back(acc::info("uniform comparable coefficient", c.uniform_comparable, 2.54648));
    r.metrics.push_back(acc::info("uniform / Poisson centre", c.uniform_over_poisson, 1.2732));
    r.metrics.push_back(acc::info("mean distance factor", c.distance_factor, 4.0 / pi));
    json ns = json::array();
    for (auto n : grid_n) ns.push_back(n);
    r.params = {{"n", ns}, {"exact_rational", exact_rational}};
    r.csv = csv.str();
    return r;
  });

  // checks
  auto* s_checks = app.add_subcommand("checks", "Quadrature identities and closed forms");
  s_checks->footer("CSV checks.csv: name,value,target,tolerance,pass");
  bind(s_checks, [&] {
    Report r{"checks"};
    auto& m = r.metrics;
    m.push_back(acc::within("lower_bound_constant", pcity::flow::lower_bound_constant(), std::log(4.0) - 1.25, 1e-6));
    m.push_back(acc::info("exact-Mills lower bound slope", pcity::flow::lower_bound_exact_slope()));
    m.push_back(acc::within("limit_mean_quadrature", pcity::flow::limit_mean_quadrature(), 2.0, 1e-4));
    m.push_back(acc::within("limit_mean_closed_form", pcity::flow::limit_mean_closed_form(), 2.0, 1e-10));
    m.push_back(acc::within("mean_flow_quadrature(1000)/n^3", pcity::flow::mean_flow_quadrature(1000.0) / 1e9, 2.0, 0.1));
    m.push_back(acc::info("height-cap mass h=6", pcity::flow::limit_height_cap_mass(6.0)));
    const double em = pcity::growth::perpetuity_multiplier_mean();
    m.push_back(acc::within("E[m] quadrature vs closed form", em, 1.0 - 2.0 / (1.0 + 2.0 / pi) + 1.0 / (1.0 + 4.0 / pi), 1e-9));
    const auto seg = pcity::growth::initial_segment_moments();
    m.push_back(acc::info("initial segment mean", seg.mean, 8.0 + 8.0 * pi / (3.0 * std::sqrt(3.0))));
    m.push_back(acc::info("initial segment second moment", seg.second));
    const auto mb = pcity::numerics::mills_bounds(0.0);
    m.push_back(acc::within("Mills ratio at 0", mb.exact, std::sqrt(pi / 2.0), 1e-12));
    m.push_back(acc::within("Sampford bound at 0", mb.upper, std::sqrt(2.0), 1e-15));
    m.push_back(acc::within("grid distance factor", pcity::grid::comparison_report().distance_factor, 4.0 / pi, 1e-10));
    m.push_back(acc::within("disk mean distance", pcity::flow::disk_average_report(1.0).mean_distance, 128.0 / (45.0 * pi), 0.0));
    pcity::io::Csv csv("name,value,target,tolerance,pass");
    for (const auto& x : m) csv.row(x.name, x.value, x.target, x.tolerance, x.check == acc::Check::info ? "info" : (x.pass ? "pass" : "fail"));
    r.csv = csv.str();
    return r;
  });

  // accept
  std::vector<int> only;
  auto* s_accept = app.add_subcommand("accept", "Run the acceptance suite; exit 2 if any criterion fails");
  s_accept->footer("CSV accept.csv: criterion,title,pass,seconds");
  s_accept->add_option("--only", only, "Criteria to run (default all)")->check(CLI::Range(1, acc::kCriterionCount));
  bind(s_accept, [&] {
    Report r{"accept"};
    if (only.empty()) {
      for (int id = 1; id <= acc::kCriterionCount; ++id) only.push_back(id);
    }
    pcity::io::Csv csv("criterion,title,pass,seconds");
    for (int id : only) {
      const auto o = acc::run(id, {common.seed, common.threads});
      std::printf("%s\n", acc::summary_line(o).c_str());
      std::fflush(stdout);
      csv.row(id, o.title, o.pass() ? "pass" : "fail", o.seconds);
      for (const auto& x : o.metrics) {
        auto copy = x;
        copy.name = std::to_string(id) + ": " + x.name;
        r.metrics.push_back(copy);
      }
      if (!o.error.empty()) r.metrics.push_back(acc::within(std::to_string(id) + ": error", 1.0, 0.0, 0.0));
    }
    r.params = {{"only", only}};
    r.csv = csv.str();
    return r;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    Report r = job();
    return finish(common, r);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
