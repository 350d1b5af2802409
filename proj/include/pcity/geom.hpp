#ifndef PCITY_GEOM_HPP
#define PCITY_GEOM_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pcity::geom {

// Absolute collinearity tolerance in length units (adequate up to scale 1e4).
// Used by side_of only.
inline constexpr double kCollinearTol = 1e-12;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

// Undirected line {p : n(theta) . p = r} with direction angle theta in [0,pi)
// and unit normal n(theta) = (-sin theta, cos theta). The x-axis is {r=0,
// theta=0}; points with positive y lie on its positive side.
class Line {
 public:
  Line() = default;
  // Normalizes any (r, theta) into theta in [0,pi).
  Line(double r, double theta);

  static Line through(Point p, double theta);
  static Line through_points(Point a, Point b);
  // Line with unit normal at angle phi (any real) at signed offset d.
  static Line from_normal(double phi, double d);

  double r() const { return r_; }
  double theta() const { return theta_; }
  Point normal() const { return {nx_, ny_}; }
  Point direction() const { return {ny_, -nx_}; }
  // Foot of the perpendicular from the origin.
  Point foot() const { return {r_ * nx_, r_ * ny_}; }
  double signed_distance(Point p) const { return nx_ * p.x + ny_ * p.y - r_; }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
  double nx_ = 0.0;
  double ny_ = 1.0;
};

struct Segment {
  Point a;
  Point b;

  Segment() = default;
  // Throws std::invalid_argument if a == b.
  Segment(Point a_, Point b_);
  double length() const { return distance(a, b); }
};

int side_of(const Line& line, Point p);
bool crosses(const Line& line, const Segment& s);
// True iff the line crosses both Segment(p, s.a) and Segment(p, s.b), i.e.
// strictly separates p from s. False when p lies on the line.
bool separates(const Line& line, Point p, const Segment& s);
// Crossing point of two lines; empty when they are parallel.
std::optional<Point> intersect(const Line& a, const Line& b);

// Counter-clockwise, strictly convex up to tolerance, at least 3 vertices.
class ConvexPolygon {
 public:
  // Accepts either orientation; drops repeated consecutive vertices.
  // Throws std::invalid_argument when the result is not a valid convex polygon.
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  static ConvexPolygon rectangle(double x0, double y0, double x1, double y1);
  static ConvexPolygon regular(Point center, double radius, int sides);

 private:
  std::vector<Point> vertices_;
};

struct PolygonStats {
  double perimeter = 0.0;
  double area = 0.0;
  Point max_y_vertex;
  std::size_t max_y_index = 0;
};

PolygonStats polygon_stats(const ConvexPolygon& poly);

// Intersection of poly with the closed half-plane bounded by line that
// contains keep. Throws EmptyIntersection if nothing of positive area is left,
// DomainError if keep lies on the line.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const Line& line, Point keep);

// Polygon whose edges carry an integer label (edge i runs from vertex i to
// vertex i+1). Used to track which line supports each edge of a cell.
struct LabeledPolygon {
  std::vector<Point> vertices;
  std::vector<int> labels;
};

// Clips in place; edges created along the clipping line get `label`. Returns
// false if the kept part degenerates (fewer than 3 distinct vertices).
bool clip_labeled(LabeledPolygon& poly, const Line& line, int keep_sign, int label);

// Intersection parameter of the ray origin + t*dir (t > 0) with the polygon
// boundary, for an origin strictly inside. Returns the edge index and point.
struct RayHit {
  std::size_t edge = 0;
  Point point;
  double t = 0.0;
};
bool ray_exit(std::span<const Point> vertices, Point origin, Point dir, RayHit& hit);

}  // namespace pcity::geom

#endif
