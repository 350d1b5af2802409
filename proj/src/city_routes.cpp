#include "pcity/city_routes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcity/errors.hpp"
#include "pcity/io.hpp"

namespace pcity::routes {

using geom::LabeledPolygon;
using std::numbers::pi;

namespace {

LabeledPolygon box_about(Point c, double half) {
  LabeledPolygon p;
  p.vertices = {{c.x - half, c.y - half}, {c.x + half, c.y - half}, {c.x + half, c.y + half}, {c.x - half, c.y + half}};
  p.labels.assign(4, kBoxEdge);
  return p;
}

bool has_box_edge(const LabeledPolygon& p) {
  return std::find(p.labels.begin(), p.labels.end(), kBoxEdge) != p.labels.end();
}

double farthest_vertex(const LabeledPolygon& p, Point c) {
  double m = 0.0;
  for (const auto& v : p.vertices) m = std::max(m, geom::distance(v, c));
  return m;
}

// Clips by line unless it meets the closed segment; returns false if skipped.
bool apply(LabeledPolygon& poly, const Line& line, int label, Point a, Point b) {
  const int sa = geom::side_of(line, a);
  const int sb = geom::side_of(line, b);
  if (sa * sb <= 0) return false;
  if (!geom::clip_labeled(poly, line, sa, label)) throw DegenerateCell("clipping emptied the cell");
  return true;
}

Cell finish(const LabeledPolygon& poly, Point a, Point b, double radius, std::vector<Line> used) {
  Cell cell{[&] {
              try {
                return ConvexPolygon(poly.vertices);
              } catch (const std::invalid_argument& e) {
                throw DegenerateCell(e.what());
              }
            }(),
            a, b, radius, !has_box_edge(poly), poly.labels, std::move(used)};
  if (cell.polygon.size() != poly.labels.size()) throw DegenerateCell("vertex merge changed the cell");
  return cell;
}

}  // namespace

double default_window_radius(double d) {
  return std::max(1.5 * d, 0.5 * d + 6.0 * std::sqrt(d * std::log(d + std::numbers::e)));
}

Cell build_cell_from_lines(Point a, Point b, std::span<const Line> lines, double radius) {
  if (a == b) throw DomainError("p_minus and p_plus coincide");
  const Point c = geom::midpoint(a, b);
  LabeledPolygon poly = box_about(c, radius);
  std::vector<Line> used;
  for (const auto& l : lines) {
    if (apply(poly, l, static_cast<int>(used.size()), a, b)) used.push_back(l);
  }
  if (has_box_edge(poly)) throw UnboundedAtMaxWindow("cell still touches the bounding square");
  return finish(poly, a, b, radius, std::move(used));
}

Cell build_cell(Point a, Point b, RngStream& rng, const CellPolicy& policy) {
  if (a == b) throw DomainError("p_minus and p_plus coincide");
  const Point c = geom::midpoint(a, b);
  double radius = policy.initial_radius > 0.0 ? policy.initial_radius : default_window_radius(geom::distance(a, b));
  int doublings = 0;

  LabeledPolygon poly = box_about(c, radius);
  std::vector<Line> used;
  double d = 0.0;
  for (;;) {
    // Lines at distance d from c form a Poisson process of rate pi in d.
    d += rng.exponential(pi);
    const double phi = rng.uniform(0.0, 2.0 * pi);
    while (d >= radius && has_box_edge(poly)) {
      if (++doublings > policy.max_doublings) {
        throw UnboundedAtMaxWindow("cell open after " + std::to_string(policy.max_doublings) + " doublings");
      }
      radius *= 2.0;
      poly = box_about(c, radius);
      for (std::size_t i = 0; i < used.size(); ++i) apply(poly, used[i], static_cast<int>(i), a, b);
    }
    if (!has_box_edge(poly) && d > farthest_vertex(poly, c)) break;
    const Line l = Line::from_normal(phi, geom::dot({std::cos(phi), std::sin(phi)}, c) + d);
    if (apply(poly, l, static_cast<int>(used.size()), a, b)) used.push_back(l);
  }
  return finish(poly, a, b, radius, std::move(used));
}

namespace {

Route make_route(std::vector<Point> pts, Side side, double dist) {
  Route r;
  r.side = side;
  for (const auto& p : pts) {
    if (!r.polyline.empty() && r.polyline.back() == p) continue;
    if (!r.polyline.empty()) r.length += geom::distance(r.polyline.back(), p);
    r.polyline.push_back(p);
  }
  r.excess = std::max(0.0, r.length - dist);
  return r;
}

}  // namespace

RoutePair semi_perimeter_routes(const Cell& cell) {
  if (!cell.bounded) throw DomainError("routes need a bounded cell");
  const auto& v = cell.polygon.vertices();
  const std::size_t n = v.size();
  const Point a = cell.p_minus;
  const Point b = cell.p_plus;
  const double dist = geom::distance(a, b);
  const Point e = (1.0 / dist) * (b - a);
  geom::RayHit back, fwd;
  if (!geom::ray_exit(v, a, -1.0 * e, back) || !geom::ray_exit(v, a, e, fwd)) {
    throw DegenerateCell("axis ray does not leave the cell");
  }
  if (fwd.t <= dist) throw DegenerateCell("p_plus not inside the cell");

  // CCW order from the back edge runs below the axis; clockwise runs above.
  std::vector<Point> up{a, back.point};
  for (std::size_t i = back.edge, k = 0; k < n; ++k) {
    up.push_back(v[i]);
    if (i == (fwd.edge + 1) % n) break;
    i = (i + n - 1) % n;
  }
  up.push_back(fwd.point);
  up.push_back(b);

  std::vector<Point> low{a, back.point};
  for (std::size_t i = (back.edge + 1) % n, k = 0; k < n; ++k) {
    low.push_back(v[i]);
    if (i == fwd.edge) break;
    i = (i + 1) % n;
  }
  low.push_back(fwd.point);
  low.push_back(b);

  // The clockwise arc from B to F is the one left of the axis direction.
  RoutePair rp{make_route(std::move(up), Side::upper, dist), make_route(std::move(low), Side::lower, dist),
               back.point, fwd.point};
  return rp;
}

LateralDisplacement max_lateral_displacement(const Cell& cell) {
  const RoutePair rp = semi_perimeter_routes(cell);
  const Point a = cell.p_minus;
  const double dist = geom::distance(a, cell.p_plus);
  const Point e = (1.0 / dist) * (cell.p_plus - a);
  LateralDisplacement best{0.0, -1.0, dist, a};
  const auto& pl = rp.upper.polyline;
  // Interior boundary vertices sit between B and F.
  for (std::size_t i = 2; i + 2 < pl.size(); ++i) {
    const Point w = pl[i] - a;
    const double y = geom::cross(e, w);
    const double x = geom::dot(e, w);
    if (y > best.v || (y == best.v && x < best.u)) best = {x, y, dist, pl[i]};
  }
  if (best.v < 0.0) throw DegenerateCell("upper arc has no vertex");
  best.u /= dist;
  best.v /= std::sqrt(dist);
  return best;
}

double lateral_limit_density(double u, double v) {
  if (!(u > 0.0 && u < 1.0) || !(v >= 0.0)) throw DomainError("density defined for 0<u<1, v>=0");
  const double w = u * (1.0 - u);
  return v * v * v / (8.0 * w * w) * std::exp(-v * v / (4.0 * w));
}

double separation_probability(Point a, Point b, Point o) {
  const double r = geom::distance(o, a);
  const double s = geom::distance(o, b);
  const double rho = geom::distance(a, b);
  return std::exp(-0.5 * std::max(0.0, r + s - rho));
}

void write_cell_csv(std::ostream& out, const Cell& cell, const RoutePair& rp) {
  out << "x,y,role\n";
  auto row = [&](Point p, const char* role) { out << io::num(p.x) << ',' << io::num(p.y) << ',' << role << '\n'; };
  for (const auto& p : cell.polygon.vertices()) row(p, "vertex");
  row(cell.p_minus, "p_minus");
  row(cell.p_plus, "p_plus");
  row(rp.ray_back, "ray_back");
  row(rp.ray_forward, "ray_forward");
}

void write_cell_svg(std::ostream& out, const Cell& cell, const RoutePair& rp, const LateralDisplacement& apex,
                    const SvgOptions& opt) {
  // Axis frame: p_minus at the origin, p_plus on the positive x-axis.
  const Point a = cell.p_minus;
  const double dist = geom::distance(a, cell.p_plus);
  const Point e = (1.0 / dist) * (cell.p_plus - a);
  auto frame = [&](Point p) {
    const Point w = p - a;
    return Point{geom::dot(e, w), opt.y_scale * geom::cross(e, w)};
  };
  double x0 = 0, x1 = dist, y0 = 0, y1 = 0;
  for (const auto& p : cell.polygon.vertices()) {
    const Point q = frame(p);
    x0 = std::min(x0, q.x), x1 = std::max(x1, q.x), y0 = std::min(y0, q.y), y1 = std::max(y1, q.y);
  }
  const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
  const double k = opt.width_px / (x1 - x0);
  const double height = (y1 - y0) * k;
  auto px = [&](Point p) {
    const Point q = frame(p);
    return io::num((q.x - x0) * k) + "," + io::num((y1 - q.y) * k);
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << io::num(opt.width_px) << "\" height=\""
      << io::num(height) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double span = 2.0 * (std::fabs(x1 - x0) + std::fabs(y1 - y0) / std::max(opt.y_scale, 1e-12));
  for (const auto& l : opt.pattern) {
    const Point f = l.foot();
    const Point dir = l.direction();
    out << "<polyline fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.5\" points=\"" << px(f - span * dir) << ' '
        << px(f + span * dir) << "\"/>\n";
  }
  out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : cell.polygon.vertices()) out << px(p) << ' ';
  out << "\"/>\n";
  auto route = [&](const Route& r, const char* colour) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
    for (const auto& p : r.polyline) out << px(p) << ' ';
    out << "\"/>\n";
  };
  route(rp.upper, "#c0392b");
  route(rp.lower, "#2471a3");
  const std::string ap = px(apex.vertex);
  out << "<circle cx=\"" << ap.substr(0, ap.find(',')) << "\" cy=\"" << ap.substr(ap.find(',') + 1)
      << "\" r=\"4\" fill=\"#27ae60\"/>\n</svg>\n";
}

}  // namespace pcity::routes
