#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>
#include <utility>
#include <vector>

#include "pcity/acceptance.hpp"
#include "pcity/central_flow.hpp"
#include "pcity/city_routes.hpp"
#include "pcity/errors.hpp"
#include "pcity/growth_levy.hpp"
#include "pcity/line_process.hpp"
#include "pcity/manhattan.hpp"
#include "pcity/numerics.hpp"
#include "pcity/rng.hpp"

namespace py = pybind11;
using namespace pcity;

namespace {

using XY = std::pair<double, double>;

geom::Point pt(const XY& p) { return {p.first, p.second}; }
XY xy(geom::Point p) { return {p.x, p.y}; }

std::vector<XY> polyline(const std::vector<geom::Point>& ps) {
  std::vector<XY> out;
  for (const auto& p : ps) out.push_back(xy(p));
  return out;
}

grid::QuadrantPair quad(std::int64_t u, std::int64_t v, std::int64_t x, std::int64_t y) { return {u, v, x, y}; }

py::dict grid_result(const grid::GridFlowResult& r) {
  py::dict d;
  d["n"] = r.n;
  d["protocol"] = grid::protocol_name(r.protocol);
  d["quadrant_sum"] = r.quadrant_sum;
  d["total_flow"] = r.total_flow;
  d["bond_flow"] = r.bond_flow;
  d["scaled"] = r.scaled;
  return d;
}

py::dict flow_estimate(const flow::FlowEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["bias_bound"] = e.bias_bound;
  d["replicate_values"] = e.replicate_values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pcity, m) {
  m.doc() = "Poisson line process city: routes, growth process, flows and the grid comparison";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<EmptyIntersection>(m, "EmptyIntersection", base.ptr());
  py::register_exception<UnsupportedBody>(m, "UnsupportedBody", base.ptr());
  py::register_exception<UnboundedAtMaxWindow>(m, "UnboundedAtMaxWindow", base.ptr());
  py::register_exception<DegenerateCell>(m, "DegenerateCell", base.ptr());
  py::register_exception<HorizonExceeded>(m, "HorizonExceeded", base.ptr());
  py::register_exception<QuadratureFailure>(m, "QuadratureFailure", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());

  // line process
  m.def("hitting_measure_segment", [](XY a, XY b) {
    return lines::hitting_measure(lines::ConvexBody::segment(pt(a), pt(b)));
  });
  m.def("hitting_measure_disk", [](XY c, double r) { return lines::hitting_measure(lines::ConvexBody::disk(pt(c), r)); });
  m.def(
      "sample_pattern",
      [](XY center, double radius, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto p = lines::sample_pattern(lines::DiskWindow(pt(center), radius), rng);
        std::vector<XY> out;
        for (const auto& l : p.lines) out.emplace_back(l.r(), l.theta());
        return out;
      },
      py::arg("center"), py::arg("radius"), py::arg("seed"), py::arg("stream") = 0,
      "Lines (r, theta) of the unit process hitting the disk.");
  m.def("retention_probability", &lines::retention_probability, py::arg("tan_phi"), py::arg("n"));

  // routes
  m.def(
      "sample_cell",
      [](double n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto cell = routes::build_cell({0.0, 0.0}, {n, 0.0}, rng);
        const auto rp = routes::semi_perimeter_routes(cell);
        const auto apex = routes::max_lateral_displacement(cell);
        py::dict d;
        d["polygon"] = polyline(cell.polygon.vertices());
        d["upper"] = polyline(rp.upper.polyline);
        d["lower"] = polyline(rp.lower.polyline);
        d["upper_excess"] = rp.upper.excess;
        d["lower_excess"] = rp.lower.excess;
        d["apex"] = std::make_tuple(apex.u, apex.v);
        return d;
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
      "Cell of (0,0) and (n,0) with both semi-perimeter routes and the scaled apex (u, v).");
  m.def("lateral_limit_density", &routes::lateral_limit_density, py::arg("u"), py::arg("v"));
  m.def("separation_probability", [](XY a, XY b, XY o) { return routes::separation_probability(pt(a), pt(b), pt(o)); },
        py::arg("p_minus"), py::arg("p_plus"), py::arg("viewpoint"));

  // growth process and subordinators
  m.def("theta_after_jump", &growth::theta_after_jump, py::arg("theta"), py::arg("v"));
  m.def("laplace_exponent", &growth::laplace_exponent, py::arg("q"));
  m.def("initial_segment_moments", [] {
    const auto mm = growth::initial_segment_moments();
    return std::make_tuple(mm.mean, mm.second);
  });
  m.def(
      "sigma",
      [](double n, bool pi_start, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto init = pi_start ? growth::Initial::theta0_pi : growth::Initial::theta0_cosine;
        return *growth::simulate_growth(n, init, rng).sigma;
      },
      py::arg("n"), py::arg("pi_start") = false, py::arg("seed") = 1, py::arg("stream") = 0,
      "First passage excess time of the growth process to progress n.");
  m.def("perpetuity_mean", [] { return growth::perpetuity_analytic().value; });
  m.def("lamperti_inverse_moment_formula", [](double n) {
    RngStream rng(0, 0);
    return growth::lamperti_inverse_moment(n, 0, rng).formula;
  });

  // flows
  m.def("mean_flow_quadrature", &flow::mean_flow_quadrature, py::arg("n"));
  m.def("limit_pair_probability",
        [](double a, double b, double u, double v) { return flow::limit_pair_probability({a, b, u, v}); },
        py::arg("a"), py::arg("b"), py::arg("u"), py::arg("v"));
  m.def("limit_mean_quadrature", &flow::limit_mean_quadrature);
  m.def("simulate_center_flow",
        [](double n, std::size_t outer, std::size_t inner, std::uint64_t seed, unsigned threads) {
          return flow_estimate(flow::simulate_center_flow(n, outer, inner, seed, threads));
        },
        py::arg("n"), py::arg("outer"), py::arg("inner"), py::arg("seed"), py::arg("threads") = 1);
  m.def("lower_bound_constant", &flow::lower_bound_constant);
  m.def("excess_lower_bound", &flow::excess_lower_bound, py::arg("n"));
  m.def("disk_average_report", [](double n) {
    const auto d = flow::disk_average_report(n);
    py::dict out;
    out["network_length"] = d.network_length;
    out["mean_distance"] = d.mean_distance;
    out["flow_per_unit_length"] = d.flow_per_unit_length;
    return out;
  });
  m.def("mills_ratio", &numerics::mills_ratio, py::arg("p"));

  // grid
  m.def("through_origin_prob", [](std::int64_t u, std::int64_t v, std::int64_t x, std::int64_t y) {
    return grid::through_origin_prob(quad(u, v, x, y));
  });
  m.def(
      "through_origin_fraction",
      [](std::int64_t u, std::int64_t v, std::int64_t x, std::int64_t y) {
        const auto r = grid::through_origin_rational(quad(u, v, x, y));
        const auto num = py::int_(py::str(numerator(r).str()));
        const auto den = py::int_(py::str(denominator(r).str()));
        return py::module_::import("fractions").attr("Fraction")(num, den);
      },
      "Exact probability as fractions.Fraction.");
  m.def("brute_force_prob", [](std::int64_t u, std::int64_t v, std::int64_t x, std::int64_t y) {
    return grid::brute_force_prob(quad(u, v, x, y));
  });
  m.def("stirling_prob", [](std::int64_t u, std::int64_t v, std::int64_t x, std::int64_t y) {
    return grid::stirling_prob(quad(u, v, x, y));
  });
  m.def("uniform_protocol_flow", [](std::int64_t n, unsigned threads) { return grid_result(grid::uniform_protocol_flow(n, threads)); },
        py::arg("n"), py::arg("threads") = 1);
  m.def("extreme_protocol_flow", [](std::int64_t n) { return grid_result(grid::extreme_protocol_flow(n)); }, py::arg("n"));

  // acceptance
  m.attr("CRITERION_COUNT") = acceptance::kCriterionCount;
  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed, unsigned threads) {
        acceptance::Outcome o;
        {
          py::gil_scoped_release release;
          o = acceptance::run(id, {seed, threads});
        }
        py::list metrics;
        for (const auto& mt : o.metrics) {
          py::dict d;
          d["name"] = mt.name;
          d["value"] = mt.value;
          d["target"] = mt.target;
          d["tolerance"] = mt.tolerance;
          d["pass"] = mt.check == acceptance::Check::info ? py::object(py::none()) : py::object(py::bool_(mt.pass));
          metrics.append(d);
        }
        py::dict d;
        d["id"] = o.id;
        d["title"] = o.title;
        d["pass"] = o.pass();
        d["error"] = o.error;
        d["metrics"] = metrics;
        d["summary"] = acceptance::summary_line(o);
        return d;
      },
      py::arg("id"), py::arg("seed") = acceptance::kDefaultSeed, py::arg("threads") = 1);
}
