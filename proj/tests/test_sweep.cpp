#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hyperperc/error.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/sweep.hpp"
#include "hyperperc/tiling.hpp"

using namespace hyperperc;

namespace {

const std::vector<double> kGrid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

void check_same(const LadderData& a, const LadderData& b) {
  CHECK(a.radii == b.radii);
  CHECK(a.grid == b.grid);
  CHECK(a.replicas == b.replicas);
  CHECK(a.k_primary == b.k_primary);
  CHECK(a.k_secondary == b.k_secondary);
  CHECK(a.hits_primary == b.hits_primary);
  CHECK(a.hits_secondary == b.hits_secondary);
}

// Every replica has N_r(p) = (r + 1) (p - cross) + 10: successive window
// curves differ by p - cross, so they cross exactly at `cross`. The
// secondary family mirrors it in p.
LadderData synthetic(double cross) {
  LadderData d;
  d.model = "graph";
  d.radii = {3, 4, 5};
  for (int j = 0; j <= 20; ++j) d.grid.push_back(j * 0.05);
  d.replicas = 4;
  const std::size_t n = d.radii.size() * d.grid.size() * d.replicas;
  d.k_primary.assign(n, 0);
  d.k_secondary.assign(n, 0);
  d.hits_primary.assign(n, 0);
  d.hits_secondary.assign(n, 0);
  for (int rep = 0; rep < d.replicas; ++rep)
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < static_cast<int>(d.grid.size()); ++j) {
        const double p = d.grid[j];
        d.hits_primary[d.at(rep, r, j)] = (r + 1) * (p - cross) + 10;
        d.hits_secondary[d.at(rep, r, j)] = (r + 1) * ((1 - p) - cross) + 10;
        // Uniqueness (1, 0) from p = 0.6 on in half the replicas, from 0.7 in all.
        const bool unique = p >= 0.7 - 1e-12 || (p >= 0.6 - 1e-12 && rep % 2 == 0);
        d.k_primary[d.at(rep, r, j)] = unique ? 1 : 2;
        d.k_secondary[d.at(rep, r, j)] = unique ? 0 : 2;
      }
  return d;
}

}  // namespace

TEST_CASE("fast and reference graph sweeps agree exactly") {
  GraphModel m;
  m.layers = 5;
  check_same(sweep_graph(m, {3, 4}, kGrid, 12, 5), sweep_graph_reference(m, {3, 4}, kGrid, 12, 5));
  check_same(sweep_graph(m, {3, 4}, kGrid, 12, 5, Execution::Serial), sweep_graph(m, {3, 4}, kGrid, 12, 5));
  GraphModel dual;
  dual.p_gon = 7;
  dual.q_deg = 3;
  check_same(sweep_graph(dual, {4, 6}, kGrid, 6, 2), sweep_graph_reference(dual, {4, 6}, kGrid, 6, 2));
}

TEST_CASE("fast and reference Voronoi sweeps agree exactly") {
  VoronoiModel m;
  m.lambda = 0.7;
  check_same(sweep_voronoi(m, {3, 4}, kGrid, 4, 9), sweep_voronoi_reference(m, {3, 4}, kGrid, 4, 9));
  check_same(sweep_voronoi(m, {3, 4}, kGrid, 4, 9, Execution::Serial), sweep_voronoi(m, {3, 4}, kGrid, 4, 9));
}

TEST_CASE("sweep rows against direct phase signatures") {
  // Rebuild a few replicas by hand and compare k with phase_signature.
  GraphModel m;
  m.layers = 5;
  const LadderData d = sweep_graph(m, {3, 4}, kGrid, 5, 11);
  const TilingBall ball = build_ball(3, 7, 5);
  const TilingFrame frame = make_frame(ball);
  for (int rep = 0; rep < 5; ++rep)
    for (int r = 0; r < 2; ++r)
      for (int j = 0; j < static_cast<int>(kGrid.size()); ++j) {
        const PhaseSignature s =
            phase_signature(bernoulli_bond(ball.graph, kGrid[j], graph_replica_key(11, rep)), frame, 3 + r);
        CHECK(d.k_primary[d.at(rep, r, j)] == s.primary);
        CHECK(d.k_secondary[d.at(rep, r, j)] == s.secondary);
      }
}

TEST_CASE("summaries") {
  GraphModel m;
  m.layers = 5;
  const SweepResult s = summarize(sweep_graph(m, {3, 4}, kGrid, 30, 1));
  REQUIRE(s.rows.size() == kGrid.size() * 2);
  CHECK(s.rows.front().theta == 0.0);
  CHECK(s.rows.back().theta == 1.0);
  CHECK(s.rows.back().unique_freq == 1.0);
  for (std::size_t i = 2; i < s.rows.size(); ++i) CHECK(s.rows[i].theta >= s.rows[i - 2].theta);
  std::ostringstream out;
  write_sweep_csv(out, s);
  CHECK(out.str().rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("Wilson interval") {
  const Interval zero = wilson_interval(0, 10);
  CHECK(zero.lo == doctest::Approx(0.0));
  CHECK(zero.hi == doctest::Approx(1.96 * 1.96 / (10 + 1.96 * 1.96)));
  const Interval half = wilson_interval(5, 10);
  CHECK(half.lo == doctest::Approx(0.2366).epsilon(1e-3));
  CHECK(half.hi == doctest::Approx(0.7634).epsilon(1e-3));
}

TEST_CASE("crossing estimators on synthetic ladders") {
  const LadderData d = synthetic(0.33);
  const CriticalEstimate pc = estimate_pc(d);
  CHECK(pc.value == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(pc.lo == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(pc.hi == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(pc.crossings.size() == 2);
  // Secondary curves (1 - p) cross where 1 - p = 0.33.
  CHECK(estimate_pu(d).value == doctest::Approx(0.67).epsilon(1e-12));
  CHECK(uniqueness_onset(d) == doctest::Approx(0.6));
  CHECK(uniqueness_onset(d, 1.0) == doctest::Approx(0.7));

  CHECK_THROWS_AS(estimate_pc(synthetic(2.0)), Error);
  LadderData short_ladder = d;
  short_ladder.radii = {3, 4};
  CHECK_THROWS_AS(estimate_pc(short_ladder), Error);

  double where = 0.0;
  CHECK(curve_crossing({1, 2, 3}, {0, 2.5, 4}, {0.1, 0.2, 0.3}, true, where));
  CHECK(where == doctest::Approx(0.1 + 0.1 * (1.0 / 1.5)));
  CHECK_FALSE(curve_crossing({1, 2, 3}, {2, 3, 4}, {0.1, 0.2, 0.3}, true, where));
}

TEST_CASE("graph estimates on {3,7}") {
  GraphModel m;
  m.layers = 6;
  std::vector<double> grid;
  for (int j = 5; j <= 95; j += 2) grid.push_back(j / 100.0);
  const LadderData d = sweep_graph(m, {3, 4, 5}, grid, 100, 3);
  const CriticalEstimate pc = estimate_pc(d), pu = estimate_pu(d);
  CHECK(pc.value > 1.0 / 6.0 - 0.02);
  CHECK(pc.hi < pu.lo);
  CHECK(pu.value < 0.5 + 0.02);
}

TEST_CASE("connectivity decay") {
  GraphModel m;
  const DecayResult zero = decay_profile(m, 0.0, 4, 10, 1);
  CHECK(zero.tau[0] == 1.0);
  for (int d = 1; d <= 4; ++d) CHECK(zero.tau[d] == 0.0);
  CHECK_THROWS_AS(connectivity_decay(m, 0.0, 4, 10, 1), Error);

  // tau recomputed by labeling each replica's configuration from scratch.
  const int D = 5, reps = 40;
  const DecayResult r = decay_profile(m, 0.3, D, reps, 8);
  CHECK(r.tau[0] == 1.0);
  const TilingBall ball = ball_for_radius(3, 7, D + 2);
  const std::vector<int> depth = bfs_distances(ball.graph, 0);
  std::vector<double> sphere(D + 1, 0.0), tau(D + 1, 0.0);
  for (int v : depth)
    if (v >= 0 && v <= D) ++sphere[v];
  for (int rep = 0; rep < reps; ++rep) {
    const BondConfig c = bernoulli_bond(ball.graph, 0.3, rng::derive_key(8, rng::experiment_id("decay"), rep));
    const ClusterLabeling l = label_clusters(ball.graph, c.open);
    for (int v = 0; v < ball.num_vertices(); ++v)
      if (depth[v] <= D && l.label[v] == l.label[0]) tau[depth[v]] += 1.0 / sphere[depth[v]] / reps;
  }
  for (int d = 0; d <= D; ++d) CHECK(r.tau[d] == doctest::Approx(tau[d]).epsilon(1e-12));
  CHECK(decay_profile(m, 0.3, D, reps, 8, Execution::Serial).tau == r.tau);

  DecayResult exact;
  for (int d = 0; d <= 5; ++d) {
    exact.distance.push_back(d);
    exact.tau.push_back(2.0 * std::pow(0.25, d));
  }
  fit_decay(exact);
  CHECK(exact.slope == doctest::Approx(std::log(0.25)));
  CHECK(exact.rate == doctest::Approx(0.25));
  CHECK(exact.r_squared == doctest::Approx(1.0));
  CHECK(exact.points_used == 5);
}
