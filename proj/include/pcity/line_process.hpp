#ifndef PCITY_LINE_PROCESS_HPP
#define PCITY_LINE_PROCESS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "pcity/geom.hpp"
#include "pcity/rng.hpp"

namespace pcity::lines {

using geom::Line;
using geom::Point;

struct DiskWindow {
  Point center;
  double radius = 1.0;

  DiskWindow() = default;
  // Throws DomainError unless radius > 0.
  DiskWindow(Point c, double r);
};

// Shape argument for hitting_measure. Only segments and disks have a
// closed-form hitting measure here.
struct ConvexBody {
  enum class Kind { segment, disk, polygon };
  Kind kind = Kind::segment;
  Point a, b;          // segment ends
  Point center;        // disk center
  double radius = 0.0;

  static ConvexBody segment(Point a, Point b);
  static ConvexBody disk(Point center, double radius);
  static ConvexBody polygon();
};

enum class Model { isotropic_unit, improper_strip };

struct LinePattern {
  std::vector<Line> lines;
  std::vector<Line> conditioned;
  std::vector<Point> anchors;  // anchors[i] lies on conditioned[i]
  DiskWindow window;
  Model model = Model::isotropic_unit;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Line through (-1, y_minus) and (1, y_plus).
struct StripLine {
  double y_minus = 0.0;
  double y_plus = 0.0;

  double height() const { return 0.5 * (y_minus + y_plus); }  // value at x = 0
  double slope() const { return 0.5 * (y_plus - y_minus); }
  double at(double x) const { return height() + slope() * x; }
  Line line() const;
};

// Measure of lines hitting the body under (1/2) dr dtheta: the length of a
// segment, pi R for a disk. UnsupportedBody for anything else.
double hitting_measure(const ConvexBody& body);

LinePattern sample_pattern(const DiskWindow& window, RngStream& rng);

// Appends a flagged line through the anchor; uniform direction if theta is empty.
LinePattern add_line_through(LinePattern pattern, Point anchor, std::optional<double> theta,
                             RngStream& rng);
// Appends two flagged lines through the anchor: the first with uniform
// direction, the second at relative angle alpha with density (1/2) sin alpha.
LinePattern add_line_pair_through(LinePattern pattern, Point anchor, RngStream& rng);

// Improper limit process restricted to intercepts in [y_min, y_max]^2.
std::vector<StripLine> sample_improper_strip(double y_min, double y_max, RngStream& rng);

// Retention probability (1 + tan^2(phi)/n)^{-3/2}.
double retention_probability(double tan_phi, double n);
std::vector<StripLine> thin_to_isotropic(const std::vector<StripLine>& strip, double n, RngStream& rng);

// CSV `kind,r,theta,y_minus,y_plus`.
void write_pattern_csv(std::ostream& out, const LinePattern& pattern);
void write_strip_csv(std::ostream& out, const std::vector<StripLine>& strip);

}  // namespace pcity::lines

#endif
