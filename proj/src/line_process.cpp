#include "pcity/line_process.hpp"

#include <cmath>
#include <numbers>

#include "pcity/errors.hpp"
#include "pcity/io.hpp"

namespace pcity::lines {

using std::numbers::pi;

DiskWindow::DiskWindow(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("window radius must be positive");
}

ConvexBody ConvexBody::segment(Point a, Point b) {
  ConvexBody body;
  body.kind = Kind::segment;
  body.a = a;
  body.b = b;
  return body;
}

ConvexBody ConvexBody::disk(Point center, double radius) {
  ConvexBody body;
  body.kind = Kind::disk;
  body.center = center;
  body.radius = radius;
  return body;
}

ConvexBody ConvexBody::polygon() {
  ConvexBody body;
  body.kind = Kind::polygon;
  return body;
}

Line StripLine::line() const { return Line::through_points({-1.0, y_minus}, {1.0, y_plus}); }

double hitting_measure(const ConvexBody& body) {
  switch (body.kind) {
    case ConvexBody::Kind::segment:
      return geom::distance(body.a, body.b);
    case ConvexBody::Kind::disk:
      if (body.radius < 0.0) throw DomainError("negative radius");
      return pi * body.radius;
    default:
      throw UnsupportedBody("hitting_measure supports segments and disks");
  }
}

LinePattern sample_pattern(const DiskWindow& window, RngStream& rng) {
  LinePattern pattern;
  pattern.window = window;
  pattern.model = Model::isotropic_unit;
  pattern.seed = rng.master_seed();
  pattern.stream = rng.stream_index();
  const std::uint64_t count = rng.poisson(pi * window.radius);
  pattern.lines.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double theta = rng.uniform(0.0, pi);
    const double d = rng.uniform(-window.radius, window.radius);
    const Line about_center(0.0, theta);
    pattern.lines.emplace_back(geom::dot(about_center.normal(), window.center) + d, theta);
  }
  return pattern;
}

LinePattern add_line_through(LinePattern pattern, Point anchor, std::optional<double> theta,
                             RngStream& rng) {
  const double th = theta ? *theta : rng.uniform(0.0, pi);
  pattern.conditioned.push_back(Line::through(anchor, th));
  pattern.anchors.push_back(anchor);
  return pattern;
}

LinePattern add_line_pair_through(LinePattern pattern, Point anchor, RngStream& rng) {
  const double first = rng.uniform(0.0, pi);
  // Inverse of the cdf (1 - cos alpha)/2.
  const double alpha = std::acos(1.0 - 2.0 * rng.uniform());
  pattern.conditioned.push_back(Line::through(anchor, first));
  pattern.anchors.push_back(anchor);
  pattern.conditioned.push_back(Line::through(anchor, first + alpha));
  pattern.anchors.push_back(anchor);
  return pattern;
}

std::vector<StripLine> sample_improper_strip(double y_min, double y_max, RngStream& rng) {
  if (y_max < y_min) throw DomainError("sample_improper_strip requires y_min <= y_max");
  std::vector<StripLine> out;
  const double side = y_max - y_min;
  if (side == 0.0) return out;
  const std::uint64_t count = rng.poisson(0.25 * side * side);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    StripLine s;
    s.y_minus = rng.uniform(y_min, y_max);
    s.y_plus = rng.uniform(y_min, y_max);
    out.push_back(s);
  }
  return out;
}

double retention_probability(double tan_phi, double n) {
  if (!(n >= 1.0)) throw DomainError("thinning requires n >= 1");
  return std::pow(1.0 + tan_phi * tan_phi / n, -1.5);
}

std::vector<StripLine> thin_to_isotropic(const std::vector<StripLine>& strip, double n, RngStream& rng) {
  std::vector<StripLine> kept;
  for (const auto& s : strip) {
    if (rng.uniform() < retention_probability(s.slope(), n)) kept.push_back(s);
  }
  return kept;
}

void write_pattern_csv(std::ostream& out, const LinePattern& pattern) {
  out << "kind,r,theta,y_minus,y_plus\n";
  for (const auto& l : pattern.lines) out << "poisson," << io::num(l.r()) << ',' << io::num(l.theta()) << ",,\n";
  for (const auto& l : pattern.conditioned) {
    out << "conditioned," << io::num(l.r()) << ',' << io::num(l.theta()) << ",,\n";
  }
}

void write_strip_csv(std::ostream& out, const std::vector<StripLine>& strip) {
  out << "kind,r,theta,y_minus,y_plus\n";
  for (const auto& s : strip) out << "strip,,," << io::num(s.y_minus) << ',' << io::num(s.y_plus) << '\n';
}

}  // namespace pcity::lines
