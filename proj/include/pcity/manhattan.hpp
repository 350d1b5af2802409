#ifndef PCITY_MANHATTAN_HPP
#define PCITY_MANHATTAN_HPP

#include <cstdint>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcity::grid {

using Rational = boost::multiprecision::cpp_rational;

// Source at -(u, v), destination at (x, y), lattice units.
struct QuadrantPair {
  std::int64_t u = 0, v = 0, x = 0, y = 0;

  std::int64_t total() const { return u + v + x + y; }
};

// C(u+v,u) C(x+y,x) / C(u+v+x+y, u+x), from log binomials.
double through_origin_prob(const QuadrantPair& pair);
Rational through_origin_rational(const QuadrantPair& pair);
// Same quantity as a ratio of Binomial(., p) point probabilities.
double through_origin_prob_binomial(const QuadrantPair& pair, double p);

struct PathCount {
  std::uint64_t through_origin = 0;
  std::uint64_t total = 0;
};

inline constexpr std::int64_t kBruteForceLimit = 24;

// Enumerates every monotone lattice path; TooLarge beyond kBruteForceLimit.
PathCount brute_force_count(const QuadrantPair& pair);
double brute_force_prob(const QuadrantPair& pair);

// Local Gaussian approximation; DomainError when a marginal is 0.
double stirling_prob(const QuadrantPair& pair);

enum class Protocol { uniform_geodesic, extreme_geodesic };

struct GridFlowResult {
  std::int64_t n = 0;
  Protocol protocol = Protocol::uniform_geodesic;
  double quadrant_sum = 0.0;  // one opposing-quadrant pair (uniform protocol)
  double total_flow = 0.0;    // through the origin
  double bond_flow = 0.0;     // through one bond at the origin: half the total
  double scaled = 0.0;        // total_flow / n^3
};

GridFlowResult uniform_protocol_flow(std::int64_t n, unsigned threads = 1);
// Exact quadrant sum in rational arithmetic (small n only).
Rational uniform_quadrant_sum_exact(std::int64_t n);
// Same sum with brute-force path counts.
double uniform_quadrant_sum_brute(std::int64_t n);

// Number of lattice points with x, y >= 1 and x^2 + y^2 <= n^2.
std::int64_t positive_quarter_disk_count(std::int64_t n);
// Each of the four axis-anchored cases gives 2 * sum n/2 over that set.
GridFlowResult extreme_protocol_flow(std::int64_t n);

struct ComparisonReport {
  double segment_length = 0.0;             // 4/pi
  double extreme_comparable = 0.0;         // coefficient of n^3 (bond flow, rescaled grid)
  double uniform_comparable = 0.0;         // (4/pi) * 2
  double uniform_over_poisson = 0.0;       // uniform_comparable / 2
  double distance_factor = 0.0;            // mean of |sin| + |cos| by quadrature
  double poisson_centre = 2.0;
};

ComparisonReport comparison_report();

// CSV `n,protocol,total_flow,scaled`.
void write_grid_csv_header(std::ostream& out);
void write_grid_csv_row(std::ostream& out, const GridFlowResult& r);
const char* protocol_name(Protocol p);

}  // namespace pcity::grid

#endif
