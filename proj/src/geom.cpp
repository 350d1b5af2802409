#include "pcity/geom.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "pcity/errors.hpp"

namespace pcity::geom {

Line::Line(double r, double theta) {
  constexpr double pi = std::numbers::pi;
  double t = std::fmod(theta, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  if (t >= pi) {
    // Reversing the direction flips the normal, hence the sign of r.
    t -= pi;
    r = -r;
  }
  if (t >= pi) t = 0.0;  // round-off at exactly 2*pi
  r_ = r;
  theta_ = t;
  nx_ = -std::sin(t);
  ny_ = std::cos(t);
}

Line Line::through(Point p, double theta) {
  const Line l(0.0, theta);
  return Line(dot(l.normal(), p), l.theta());
}

Line Line::through_points(Point a, Point b) {
  const Point d = b - a;
  return through(a, std::atan2(d.y, d.x));
}

Line Line::from_normal(double phi, double d) {
  // n(theta) = (-sin theta, cos theta) = (cos phi, sin phi) for theta = phi - pi/2.
  return Line(d, phi - 0.5 * std::numbers::pi);
}

Segment::Segment(Point a_, Point b_) : a(a_), b(b_) {
  if (a == b) throw std::invalid_argument("Segment: endpoints coincide");
}

int side_of(const Line& line, Point p) {
  const double d = line.signed_distance(p);
  if (std::fabs(d) <= kCollinearTol) return 0;
  return d > 0.0 ? 1 : -1;
}

bool crosses(const Line& line, const Segment& s) {
  return side_of(line, s.a) * side_of(line, s.b) <= 0;
}

bool separates(const Line& line, Point p, const Segment& s) {
  const int sp = side_of(line, p);
  if (sp == 0) return false;
  return side_of(line, s.a) * sp <= 0 && side_of(line, s.b) * sp <= 0;
}

std::optional<Point> intersect(const Line& a, const Line& b) {
  const Point na = a.normal(), nb = b.normal();
  const double det = cross(na, nb);
  if (std::fabs(det) < 1e-15) return std::nullopt;
  return Point{(a.r() * nb.y - b.r() * na.y) / det, (na.x * b.r() - nb.x * a.r()) / det};
}

namespace {

double signed_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

bool near(Point a, Point b, double scale) {
  return distance(a, b) <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
  double scale = 0.0;
  for (const auto& p : vertices) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  std::vector<Point> v;
  v.reserve(vertices.size());
  for (const auto& p : vertices) {
    if (v.empty() || !near(v.back(), p, scale)) v.push_back(p);
  }
  while (v.size() > 1 && near(v.front(), v.back(), scale)) v.pop_back();
  if (v.size() < 3) throw std::invalid_argument("ConvexPolygon: fewer than 3 vertices");
  if (signed_area(v) < 0.0) std::reverse(v.begin(), v.end());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = v[(i + 1) % n] - v[i];
    const Point e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross(e0, e1) < -1e-9 * norm(e0) * norm(e1)) {
      throw std::invalid_argument("ConvexPolygon: not convex");
    }
  }
  if (!(signed_area(v) > 0.0)) throw std::invalid_argument("ConvexPolygon: zero area");
  vertices_ = std::move(v);
}

ConvexPolygon ConvexPolygon::rectangle(double x0, double y0, double x1, double y1) {
  return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

ConvexPolygon ConvexPolygon::regular(Point center, double radius, int sides) {
  std::vector<Point> v;
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * std::numbers::pi * k / sides;
    v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return ConvexPolygon(std::move(v));
}

PolygonStats polygon_stats(const ConvexPolygon& poly) {
  PolygonStats st;
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  double scale = 0.0;
  for (const auto& p : v) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double tie = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < n; ++i) {
    st.perimeter += distance(v[i], v[(i + 1) % n]);
    st.area += cross(v[i], v[(i + 1) % n]);
    const Point& best = v[st.max_y_index];
    if (v[i].y > best.y + tie || (std::fabs(v[i].y - best.y) <= tie && v[i].x < best.x)) {
      st.max_y_index = i;
    }
  }
  st.area *= 0.5;
  st.max_y_vertex = v[st.max_y_index];
  return st;
}

bool clip_labeled(LabeledPolygon& poly, const Line& line, int keep_sign, int label) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  double scale = 0.0;
  for (const auto& p : v) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double eps = 1e-12 * std::max(1.0, scale);

  std::vector<double> d(n);
  bool any_out = false;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = keep_sign * line.signed_distance(v[i]);
    if (d[i] < -eps) any_out = true;
  }
  if (!any_out) return true;

  LabeledPolygon out;
  out.vertices.reserve(n + 1);
  out.labels.reserve(n + 1);
  auto emit = [&](Point p, int lab) {
    if (!out.vertices.empty() && near(out.vertices.back(), p, scale)) {
      out.labels.back() = lab;
      return;
    }
    out.vertices.push_back(p);
    out.labels.push_back(lab);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = d[i] >= -eps;
    const bool in_j = d[j] >= -eps;
    if (in_i) emit(v[i], poly.labels[i]);
    if (in_i != in_j) {
      const double t = d[i] / (d[i] - d[j]);
      const Point x = v[i] + t * (v[j] - v[i]);
      emit(x, in_i ? label : poly.labels[i]);
    }
  }
  while (out.vertices.size() > 1 && near(out.vertices.front(), out.vertices.back(), scale)) {
    out.vertices.pop_back();
    out.labels.pop_back();
  }
  if (out.vertices.size() < 3 || signed_area(out.vertices) <= eps * eps) return false;
  poly = std::move(out);
  return true;
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const Line& line, Point keep) {
  const int s = side_of(line, keep);
  if (s == 0) throw DomainError("clip_halfplane: keep point lies on the clipping line");
  LabeledPolygon lp{poly.vertices(), std::vector<int>(poly.size(), 0)};
  if (!clip_labeled(lp, line, s, 1)) {
    throw EmptyIntersection("kept half-plane does not meet the polygon");
  }
  return ConvexPolygon(std::move(lp.vertices));
}

bool ray_exit(std::span<const Point> v, Point origin, Point dir, RayHit& hit) {
  const std::size_t n = v.size();
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point e = v[(i + 1) % n] - a;
    const double denom = cross(dir, e);
    if (std::fabs(denom) <= 1e-300) continue;
    const Point w = a - origin;
    const double t = cross(w, e) / denom;
    const double s = cross(w, dir) / denom;
    if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) {
      // Exit point of a convex polygon from an interior origin: the edge that
      // the ray leaves through has dir pointing outward (cross(e, dir) < 0 for CCW).
      if (cross(e, dir) < 0.0 && (!found || t < hit.t)) {
        hit = {i, origin + t * dir, t};
        found = true;
      }
    }
  }
  return found;
}

}  // namespace pcity::geom
