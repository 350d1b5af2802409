#ifndef PCITY_EXPERIMENTS_HPP
#define PCITY_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcity/city_routes.hpp"
#include "pcity/geom.hpp"
#include "pcity/growth_levy.hpp"

// Replicated experiments shared by the CLI and the acceptance suite. Every
// replicate draws from its own stream, so results do not depend on the
// thread count.
namespace pcity::experiments {

// Lines of the unit process crossing a centred horizontal segment.
std::vector<double> hitting_counts(double length, std::size_t patterns, std::uint64_t seed, unsigned threads = 1);

// Intersection points inside the unit square, per pattern.
std::vector<double> intersection_counts(std::size_t patterns, std::uint64_t seed, unsigned threads = 1);

struct SeparationTrial {
  geom::Point p_minus, p_plus, viewpoint;
  std::size_t replicates = 0;
  std::size_t unseparated = 0;
  double formula = 0.0;

  double frequency() const { return static_cast<double>(unseparated) / static_cast<double>(replicates); }
};

// No line of the process separates the viewpoint from the segment; the
// pattern is sampled on a disk covering the triangle of the three points.
SeparationTrial separation_trial(geom::Point p_minus, geom::Point p_plus, geom::Point viewpoint,
                                 std::size_t replicates, std::uint64_t seed, std::uint64_t group);

// Cells of (0,0), (n,0); one entry per replicate.
std::vector<routes::LateralDisplacement> lateral_samples(double n, std::size_t replicates, std::uint64_t seed,
                                                         unsigned threads = 1);
// Semi-perimeter excess per cell, averaged over its two routes.
std::vector<double> excess_samples(double n, std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

// sigma(level) per replicate path (rows) and level (columns); one path per
// replicate serves every level.
std::vector<std::vector<double>> growth_sigma(std::span<const double> levels, std::size_t replicates,
                                              growth::Initial initial, std::uint64_t seed, unsigned threads = 1);

// xi jumps drawn through the mark construction.
std::vector<double> xi_jump_samples(std::size_t count, std::uint64_t seed);
// xi_t per replicate path.
std::vector<double> xi_endpoints(double t, std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

struct TauCheck {
  double level = 0.0;
  std::size_t paths = 0;
  double max_abs_error = 0.0;
  double mean_tau = 0.0;
};

// tau(n) against the representation identity on every sampled path.
std::vector<TauCheck> tau_identity(std::span<const double> levels, std::size_t paths, std::uint64_t seed);

// Distances between independent uniform points of the unit disk.
std::vector<double> disk_distances(std::size_t pairs, std::uint64_t seed, unsigned threads = 1);
// Total chord length of the unit process inside the unit disk, per pattern.
std::vector<double> disk_network_lengths(std::size_t patterns, std::uint64_t seed);

}  // namespace pcity::experiments

#endif
