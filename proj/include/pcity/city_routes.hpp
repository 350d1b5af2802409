#ifndef PCITY_CITY_ROUTES_HPP
#define PCITY_CITY_ROUTES_HPP

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "pcity/geom.hpp"
#include "pcity/rng.hpp"

namespace pcity::routes {

using geom::ConvexPolygon;
using geom::Line;
using geom::Point;

struct Cell {
  ConvexPolygon polygon;
  Point p_minus;
  Point p_plus;
  double generating_window_radius = 0.0;
  bool bounded = false;
  // Supporting line of edge i (vertex i to i+1); kBoxEdge for the initial box.
  std::vector<int> edge_line;
  std::vector<Line> lines;  // non-separating lines that were used, indexed by edge_line
};

inline constexpr int kBoxEdge = -1;

struct CellPolicy {
  double initial_radius = 0.0;  // 0: max(1.5 d, d/2 + 6 sqrt(d log(d + e)))
  int max_doublings = 6;
};

double default_window_radius(double separation);

// Cell of p_minus, p_plus among the given lines inside the bounding square of
// the disk of the given radius about the midpoint. Throws
// UnboundedAtMaxWindow if some edge still lies on the square.
Cell build_cell_from_lines(Point p_minus, Point p_plus, std::span<const Line> lines, double window_radius);

// Cell of the whole-plane unit Poisson line process. Lines are drawn in order
// of distance from the midpoint; drawing stops once they can no longer reach
// the cell, so the returned cell is exact.
Cell build_cell(Point p_minus, Point p_plus, RngStream& rng, const CellPolicy& policy = {});

enum class Side { upper, lower };

struct Route {
  std::vector<Point> polyline;
  Side side = Side::upper;
  double length = 0.0;
  double excess = 0.0;
};

struct RoutePair {
  Route upper;
  Route lower;
  Point ray_back;     // B
  Point ray_forward;  // F
};

// Upper route lies to the left of the direction p_minus -> p_plus.
RoutePair semi_perimeter_routes(const Cell& cell);

struct LateralDisplacement {
  double u = 0.0;
  double v = 0.0;
  double n = 0.0;
  Point vertex;
};

LateralDisplacement max_lateral_displacement(const Cell& cell);

// Limit joint density of (U, V); zero at v = 0.
double lateral_limit_density(double u, double v);

// Probability that no line separates viewpoint from segment p_minus p_plus.
double separation_probability(Point p_minus, Point p_plus, Point viewpoint);

// CSV `x,y,role`.
void write_cell_csv(std::ostream& out, const Cell& cell, const RoutePair& routes);

struct SvgOptions {
  double y_scale = 1.0;
  double width_px = 900.0;
  std::vector<Line> pattern;  // optional backdrop lines
};

void write_cell_svg(std::ostream& out, const Cell& cell, const RoutePair& routes,
                    const LateralDisplacement& apex, const SvgOptions& options);

}  // namespace pcity::routes

#endif
