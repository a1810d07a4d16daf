#pragma once

// Replica sweeps over a p-grid and a ladder of window sizes, plus the
// estimators built on them (p_c and p_u crossings, connectivity decay).
//
// One replica fixes a uniform U per edge (graphs) or per cell (Voronoi); the
// configuration at p opens exactly the elements with U < p. The fast kernels
// add elements in U order and read off every grid point in a single
// union-find pass; the reference kernels relabel from scratch at each grid
// point and are kept to test the fast ones.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperperc/parallel.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

struct GraphModel {
  int p_gon = 3;
  int q_deg = 7;
  /// 0 picks the smallest ball whose complete part covers the largest radius.
  int layers = 0;
  int core_radius = kDefaultGraphCore;
  std::int64_t max_vertices = kDefaultMaxVertices;
};

struct VoronoiModel {
  double lambda = 1.0;
  double core_radius = kDefaultVoronoiCore;
  double margin = Window::kDefaultMargin;
  double radius_cap = geo::kDefaultRadiusCap;
};

/// Smallest ball (at least `layers` layers if given) whose complete radius
/// from vertex 0 reaches `radius`.
TilingBall ball_for_radius(int p_gon, int q_deg, int radius, int layers = 0,
                           std::int64_t max_vertices = kDefaultMaxVertices);

/// Raw per-replica observables. "Primary" is the primal (graphs) or white
/// (Voronoi) family, "secondary" the dual or black one. Entries are indexed
/// [replica][radius][grid point].
struct LadderData {
  std::string model;  // "graph" or "voronoi"
  double lambda = 0.0;
  int p_gon = 0;
  int q_deg = 0;
  int layers = 0;
  std::uint64_t seed = 0;
  std::vector<double> radii;
  std::vector<double> grid;
  int replicas = 0;
  std::vector<int> k_primary;
  std::vector<int> k_secondary;
  /// Shell elements in clusters meeting the core.
  std::vector<double> hits_primary;
  std::vector<double> hits_secondary;

  std::size_t at(int replica, int r, int j) const {
    return (static_cast<std::size_t>(replica) * radii.size() + r) * grid.size() + j;
  }
};

LadderData sweep_graph(const GraphModel& model, const std::vector<int>& radii, const std::vector<double>& grid,
                       int replicas, std::uint64_t seed, Execution execution = Execution::Parallel);
LadderData sweep_graph_reference(const GraphModel& model, const std::vector<int>& radii,
                                 const std::vector<double>& grid, int replicas, std::uint64_t seed);

LadderData sweep_voronoi(const VoronoiModel& model, const std::vector<double>& radii, const std::vector<double>& grid,
                         int replicas, std::uint64_t seed, Execution execution = Execution::Parallel);
LadderData sweep_voronoi_reference(const VoronoiModel& model, const std::vector<double>& radii,
                                   const std::vector<double>& grid, int replicas, std::uint64_t seed);

/// Per-replica key used by the sweeps, exposed so tests can rebuild a replica.
std::uint64_t graph_replica_key(std::uint64_t seed, int replica);
std::uint64_t voronoi_replica_key(std::uint64_t seed, int replica);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
Interval wilson_interval(long successes, long trials, double z = 1.96);

struct SweepRow {
  std::string model;
  double p = 0.0;
  double lambda = 0.0;
  int pgon = 0;
  int qdeg = 0;
  double R = 0.0;
  int replicas = 0;
  double theta = 0.0;  // frequency of k_primary >= 1
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double kw = 0.0;  // mean k_primary
  double kb = 0.0;  // mean k_secondary
  double unique_freq = 0.0;  // frequency of (k_primary, k_secondary) == (1, 0)
  std::uint64_t seed = 0;
  double hits_primary = 0.0;  // mean, not part of the CSV
  double hits_secondary = 0.0;
  double reach_secondary = 0.0;  // frequency of k_secondary >= 1
  double unique_secondary = 0.0;  // frequency of (0, 1)
  double many_freq = 0.0;  // frequency of k_primary >= 2 and k_secondary >= 2
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid-major, radii inner
};

SweepResult summarize(const LadderData& data);

inline constexpr const char* kSweepCsvHeader =
    "model,p,lambda,pgon,qdeg,R,replicas,theta,theta_lo,theta_hi,kw,kb,unique_freq,seed";
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct ReachEstimate {
  double frequency = 0.0;
  Interval ci;
  int replicas = 0;
};

/// Frequency that the primary cluster of the core reaches the shell of the
/// window, with a Wilson interval. Throws Error{Config} unless core < radius.
ReachEstimate reach_probability(const GraphModel& model, double p, int radius, int replicas, std::uint64_t seed,
                                Execution execution = Execution::Parallel);
ReachEstimate reach_probability(const VoronoiModel& model, double p, double radius, int replicas,
                                std::uint64_t seed, Execution execution = Execution::Parallel);

struct CriticalEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Crossing of each successive pair of window sizes that crossed.
  std::vector<double> crossings;
  int bootstrap_samples = 0;
  int bootstrap_failures = 0;
};

inline constexpr int kDefaultBootstrap = 200;

/// Crossing of the mean shell-hit curves of the primary family: below p_c
/// larger windows see fewer hits, above p_c more. Throws Error{NoCrossing}.
CriticalEstimate estimate_pc(const LadderData& data, int bootstrap = kDefaultBootstrap);

/// Same on the secondary family, which is supercritical at small p: for
/// graphs this is 1 - p_c of the dual, for Voronoi the black threshold
/// 1 - p_c(lambda).
CriticalEstimate estimate_pu(const LadderData& data, int bootstrap = kDefaultBootstrap);

/// First p at which the largest window reports (1, 0) in at least `level` of
/// the replicas, linearly interpolated. Throws Error{NoCrossing}.
double uniqueness_onset(const LadderData& data, double level = 0.5);

/// Crossing of successive mean curves on one grid; exposed for tests.
/// `increasing`: curves cross from (larger below smaller) to (larger above).
bool curve_crossing(const std::vector<double>& smaller_window, const std::vector<double>& larger_window,
                    const std::vector<double>& grid, bool increasing, double& where);

struct DecayResult {
  double p = 0.0;
  int replicas = 0;
  std::vector<int> distance;
  std::vector<double> tau;
  std::vector<double> tau_se;
  double slope = 0.0;  // log a
  double intercept = 0.0;
  double rate = 0.0;  // a
  double r_squared = 0.0;
  int points_used = 0;
};

/// Least squares of log tau against d over the entries with tau > 0, d >= 1.
/// Throws Error{InsufficientData} with fewer than two such points.
void fit_decay(DecayResult& result);

/// tau(d): mean fraction of the sphere of radius d (around vertex 0) in the
/// open cluster of vertex 0, d = 0..max_distance. No fit.
DecayResult decay_profile(const GraphModel& model, double p, int max_distance, int replicas, std::uint64_t seed,
                          Execution execution = Execution::Parallel);

/// decay_profile followed by fit_decay.
DecayResult connectivity_decay(const GraphModel& model, double p, int max_distance, int replicas, std::uint64_t seed,
                               Execution execution = Execution::Parallel);

inline constexpr const char* kDecayCsvHeader = "pgon,qdeg,p,d,tau,tau_se,replicas,seed";

}  // namespace hyperperc
