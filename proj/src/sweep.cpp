#include "hyperperc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <ostream>

#include "hyperperc/error.hpp"
#include "hyperperc/pointprocess.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc {

namespace {

constexpr std::uint64_t kGraphExperiment = rng::experiment_id("graph-sweep");
constexpr std::uint64_t kVoronoiExperiment = rng::experiment_id("voronoi-sweep");
constexpr std::uint64_t kBootstrapExperiment = rng::experiment_id("bootstrap");
constexpr std::uint64_t kDecayExperiment = rng::experiment_id("decay");

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::Config, "empty p-grid");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid[j] >= 0.0 && grid[j] <= 1.0)) throw Error(ErrorKind::Config, "p-grid values must lie in [0, 1]");
    if (j > 0 && !(grid[j] > grid[j - 1])) throw Error(ErrorKind::Config, "p-grid must be strictly increasing");
  }
}

template <class T>
void validate_radii(const std::vector<T>& radii, double core) {
  if (radii.empty()) throw Error(ErrorKind::Config, "empty radius ladder");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(static_cast<double>(radii[i]) > core))
      throw Error(ErrorKind::Config, "window radii must exceed the core radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(ErrorKind::Config, "radius ladder must be increasing");
  }
}

void validate_replicas(int replicas) {
  if (replicas < 1) throw Error(ErrorKind::Config, "need at least one replica");
}

// Incremental cluster bookkeeping for one region: how many clusters meet both
// core and shell (k), and how many shell elements those core clusters hold.
class Tracker {
 public:
  void reset(const Region& region) {
    region_ = &region;
    const int n = static_cast<int>(region.member.size());
    uf_.reset(n);
    active_.assign(n, 0);
    core_.assign(n, 0);
    shell_.assign(n, 0);
    k_ = 0;
    hits_ = 0;
  }

  bool active(int v) const { return active_[v] != 0; }

  void activate(int v) {
    if (active_[v]) return;
    active_[v] = 1;
    core_[v] = region_->core[v];
    shell_[v] = region_->shell[v];
    add(v);
  }

  void activate_members() {
    for (int v = 0; v < static_cast<int>(active_.size()); ++v)
      if (region_->member[v]) activate(v);
  }

  void join(int a, int b) {
    const int ra = uf_.find(a);
    const int rb = uf_.find(b);
    if (ra == rb) return;
    remove(ra);
    remove(rb);
    const int r = uf_.unite(ra, rb);
    const int other = r == ra ? rb : ra;
    core_[r] = core_[r] | core_[other];
    shell_[r] += shell_[other];
    add(r);
  }

  int k() const { return k_; }
  long hits() const { return hits_; }

 private:
  void add(int r) {
    if (!core_[r]) return;
    hits_ += shell_[r];
    if (shell_[r] > 0) ++k_;
  }
  void remove(int r) {
    if (!core_[r]) return;
    hits_ -= shell_[r];
    if (shell_[r] > 0) --k_;
  }

  const Region* region_ = nullptr;
  UnionFind uf_;
  std::vector<std::uint8_t> active_;
  std::vector<std::uint8_t> core_;
  std::vector<long> shell_;
  int k_ = 0;
  long hits_ = 0;
};

struct Observables {
  int k = 0;
  long hits = 0;
};

// Reference evaluation by full relabeling.
Observables observe(const Graph& graph, std::span<const std::uint8_t> open, const Region& region) {
  std::vector<std::uint8_t> restricted(graph.num_edges(), 0);
  for (int e = 0; e < graph.num_edges(); ++e) {
    const auto [u, v] = graph.edge(e);
    restricted[e] = open[e] && region.member[u] && region.member[v];
  }
  ClusterLabeling l = label_clusters(graph, restricted, region.member);
  mark_boundary(l, region.core, region.shell);
  return {l.k_proxy, shell_hits(l, region.core, region.shell)};
}

struct ReplicaCurves {
  std::vector<int> k_primary, k_secondary;
  std::vector<double> hits_primary, hits_secondary;

  void resize(std::size_t n) {
    k_primary.assign(n, 0);
    k_secondary.assign(n, 0);
    hits_primary.assign(n, 0.0);
    hits_secondary.assign(n, 0.0);
  }
};

void gather(LadderData& data, const std::vector<ReplicaCurves>& curves) {
  const std::size_t block = data.radii.size() * data.grid.size();
  const std::size_t total = block * curves.size();
  data.k_primary.resize(total);
  data.k_secondary.resize(total);
  data.hits_primary.resize(total);
  data.hits_secondary.resize(total);
  for (std::size_t r = 0; r < curves.size(); ++r) {
    std::copy(curves[r].k_primary.begin(), curves[r].k_primary.end(), data.k_primary.begin() + r * block);
    std::copy(curves[r].k_secondary.begin(), curves[r].k_secondary.end(), data.k_secondary.begin() + r * block);
    std::copy(curves[r].hits_primary.begin(), curves[r].hits_primary.end(), data.hits_primary.begin() + r * block);
    std::copy(curves[r].hits_secondary.begin(), curves[r].hits_secondary.end(),
              data.hits_secondary.begin() + r * block);
  }
}

// Ball, frame and regions shared read-only by all replicas of a graph sweep.
struct GraphSetup {
  TilingBall ball;
  TilingFrame frame;
  std::vector<Region> primal;
  std::vector<Region> dual;

  GraphSetup(const GraphModel& model, const std::vector<int>& radii)
      : ball(ball_for_radius(model.p_gon, model.q_deg, radii.back(), model.layers, model.max_vertices)),
        frame(make_frame(ball, 0)) {
    for (int R : radii) {
      primal.push_back(frame.primal_region(R, model.core_radius));
      dual.push_back(frame.dual_region(R, model.core_radius));
    }
  }
  GraphSetup(const GraphSetup&) = delete;
  GraphSetup& operator=(const GraphSetup&) = delete;
};

LadderData graph_header(const GraphModel& model, const GraphSetup& setup, const std::vector<int>& radii,
                        const std::vector<double>& grid, int replicas, std::uint64_t seed) {
  LadderData data;
  data.model = "graph";
  data.p_gon = model.p_gon;
  data.q_deg = model.q_deg;
  data.layers = setup.ball.layers;
  data.seed = seed;
  data.radii.assign(radii.begin(), radii.end());
  data.grid = grid;
  data.replicas = replicas;
  return data;
}

// Everything a Voronoi replica needs: its complex and the cell uniforms.
struct VoronoiReplica {
  VoronoiComplex complex;
  std::vector<double> uniform;
};

VoronoiReplica voronoi_replica(const VoronoiModel& model, double sample_radius, std::uint64_t key) {
  VoronoiReplica rep{delaunay(sample_colored(model.lambda, 0.5, sample_radius, key, model.radius_cap)), {}};
  const rng::Stream colors = rng::Stream(key).lane(2);
  rep.uniform.resize(rep.complex.size());
  for (std::size_t i = 0; i < rep.uniform.size(); ++i) rep.uniform[i] = colors.uniform_at(i);
  return rep;
}

LadderData voronoi_header(const VoronoiModel& model, const std::vector<double>& radii, const std::vector<double>& grid,
                          int replicas, std::uint64_t seed) {
  LadderData data;
  data.model = "voronoi";
  data.lambda = model.lambda;
  data.seed = seed;
  data.radii = radii;
  data.grid = grid;
  data.replicas = replicas;
  return data;
}

void validate_voronoi(const VoronoiModel& model) {
  if (!(model.lambda > 0.0)) throw Error(ErrorKind::Config, "lambda must be positive");
  if (!(model.margin > 0.0)) throw Error(ErrorKind::Config, "margin must be positive");
}

std::vector<int> sorted_by_uniform(const std::vector<double>& u) {
  std::vector<int> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return u[a] < u[b] || (u[a] == u[b] && a < b); });
  return order;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

// Mean hit curves per radius over the given replica multiset.
std::vector<std::vector<double>> mean_curves(const LadderData& data, const std::vector<double>& hits,
                                             const std::vector<int>& replicas) {
  const int nr = static_cast<int>(data.radii.size());
  const int np = static_cast<int>(data.grid.size());
  std::vector<std::vector<double>> out(nr, std::vector<double>(np, 0.0));
  for (int rep : replicas)
    for (int r = 0; r < nr; ++r)
      for (int j = 0; j < np; ++j) out[r][j] += hits[data.at(rep, r, j)];
  for (auto& c : out)
    for (double& x : c) x /= static_cast<double>(replicas.size());
  return out;
}

bool ladder_crossing(const LadderData& data, const std::vector<double>& hits, const std::vector<int>& replicas,
                     bool increasing, double& value, std::vector<double>* crossings) {
  const auto curves = mean_curves(data, hits, replicas);
  std::vector<double> found;
  for (std::size_t r = 0; r + 1 < curves.size(); ++r) {
    double x;
    if (curve_crossing(curves[r], curves[r + 1], data.grid, increasing, x)) found.push_back(x);
  }
  if (found.empty()) return false;
  value = median(found);
  if (crossings) *crossings = found;
  return true;
}

CriticalEstimate estimate_crossing(const LadderData& data, const std::vector<double>& hits, bool increasing,
                                   int bootstrap, const char* what) {
  if (data.radii.size() < 3) throw Error(ErrorKind::Config, "crossing estimates need a ladder of at least 3 sizes");
  if (data.replicas < 1) throw Error(ErrorKind::InsufficientData, "no replicas");
  std::vector<int> all(data.replicas);
  std::iota(all.begin(), all.end(), 0);
  CriticalEstimate est;
  if (!ladder_crossing(data, hits, all, increasing, est.value, &est.crossings))
    throw Error(ErrorKind::NoCrossing, std::string(what) + ": window curves do not cross inside the p-grid [" +
                                           format_double(data.grid.front()) + ", " +
                                           format_double(data.grid.back()) + "]");
  std::vector<double> samples;
  std::vector<int> pick(data.replicas);
  for (int b = 0; b < bootstrap; ++b) {
    const rng::Stream s(rng::derive_key(data.seed, kBootstrapExperiment, b));
    for (int i = 0; i < data.replicas; ++i)
      pick[i] = std::min(data.replicas - 1, static_cast<int>(s.uniform_at(i) * data.replicas));
    double x;
    if (ladder_crossing(data, hits, pick, increasing, x, nullptr)) {
      samples.push_back(x);
    } else {
      ++est.bootstrap_failures;
    }
  }
  est.bootstrap_samples = bootstrap;
  if (samples.empty()) {
    est.lo = est.hi = est.value;
  } else {
    est.lo = std::min(est.value, quantile(samples, 0.025));
    est.hi = std::max(est.value, quantile(samples, 0.975));
  }
  return est;
}

}  // namespace

std::uint64_t graph_replica_key(std::uint64_t seed, int replica) {
  return rng::derive_key(seed, kGraphExperiment, static_cast<std::uint64_t>(replica));
}

std::uint64_t voronoi_replica_key(std::uint64_t seed, int replica) {
  return rng::derive_key(seed, kVoronoiExperiment, static_cast<std::uint64_t>(replica));
}

TilingBall ball_for_radius(int p_gon, int q_deg, int radius, int layers, std::int64_t max_vertices) {
  if (radius < 0) throw Error(ErrorKind::Config, "radius must be nonnegative");
  for (int L = std::max(1, layers);; ++L) {
    TilingBall ball = build_ball(p_gon, q_deg, L, max_vertices);
    const std::vector<int> depth = bfs_distances(ball.graph, 0);
    int complete = radius + 1;
    for (int v = 0; v < ball.num_vertices(); ++v)
      if (!ball.interior_vertex_mask[v]) complete = std::min(complete, depth[v]);
    if (complete >= radius) return ball;
    if (layers > 0 && L == layers)
      throw Error(ErrorKind::Config, "the requested number of layers does not cover radius " + std::to_string(radius));
  }
}

LadderData sweep_graph(const GraphModel& model, const std::vector<int>& radii, const std::vector<double>& grid,
                       int replicas, std::uint64_t seed, Execution execution) {
  validate_grid(grid);
  validate_radii(radii, model.core_radius);
  validate_replicas(replicas);
  const GraphSetup setup(model, radii);
  LadderData data = graph_header(model, setup, radii, grid, replicas, seed);
  const Graph& g = setup.ball.graph;
  const Graph& dg = setup.frame.dual.graph;
  const int ne = g.num_edges();
  const int nr = static_cast<int>(radii.size());
  const int np = static_cast<int>(grid.size());

  auto curves = map_replicas(replicas, execution, [&](int rep) {
    const rng::Stream stream(graph_replica_key(seed, rep));
    std::vector<double> u(ne);
    for (int e = 0; e < ne; ++e) u[e] = stream.uniform_at(e);
    const std::vector<int> order = sorted_by_uniform(u);
    ReplicaCurves out;
    out.resize(static_cast<std::size_t>(nr) * np);
    Tracker t;
    for (int r = 0; r < nr; ++r) {
      const Region& pr = setup.primal[r];
      t.reset(pr);
      t.activate_members();
      int next = 0;
      for (int j = 0; j < np; ++j) {
        for (; next < ne && u[order[next]] < grid[j]; ++next) {
          const auto [a, b] = g.edge(order[next]);
          if (pr.member[a] && pr.member[b]) t.join(a, b);
        }
        out.k_primary[r * np + j] = t.k();
        out.hits_primary[r * np + j] = static_cast<double>(t.hits());
      }
      // Dual edges open when the primal edge is closed (U >= p), so they are
      // added from the top of the order while p decreases.
      const Region& dr = setup.dual[r];
      t.reset(dr);
      t.activate_members();
      int top = ne - 1;
      for (int j = np - 1; j >= 0; --j) {
        for (; top >= 0 && u[order[top]] >= grid[j]; --top) {
          const int d = setup.frame.dual.dual_edge[order[top]];
          if (d < 0) continue;
          const auto [f, h] = dg.edge(d);
          if (dr.member[f] && dr.member[h]) t.join(f, h);
        }
        out.k_secondary[r * np + j] = t.k();
        out.hits_secondary[r * np + j] = static_cast<double>(t.hits());
      }
    }
    return out;
  });
  gather(data, curves);
  return data;
}

LadderData sweep_graph_reference(const GraphModel& model, const std::vector<int>& radii,
                                 const std::vector<double>& grid, int replicas, std::uint64_t seed) {
  validate_grid(grid);
  validate_radii(radii, model.core_radius);
  validate_replicas(replicas);
  const GraphSetup setup(model, radii);
  LadderData data = graph_header(model, setup, radii, grid, replicas, seed);
  const int nr = static_cast<int>(radii.size());
  const int np = static_cast<int>(grid.size());
  std::vector<ReplicaCurves> curves(replicas);
  for (int rep = 0; rep < replicas; ++rep) {
    curves[rep].resize(static_cast<std::size_t>(nr) * np);
    for (int j = 0; j < np; ++j) {
      const BondConfig primal = bernoulli_bond(setup.ball.graph, grid[j], graph_replica_key(seed, rep));
      const BondConfig dual = dual_config(primal, setup.frame.dual);
      for (int r = 0; r < nr; ++r) {
        const Observables a = observe(setup.ball.graph, primal.open, setup.primal[r]);
        const Observables b = observe(setup.frame.dual.graph, dual.open, setup.dual[r]);
        curves[rep].k_primary[r * np + j] = a.k;
        curves[rep].hits_primary[r * np + j] = static_cast<double>(a.hits);
        curves[rep].k_secondary[r * np + j] = b.k;
        curves[rep].hits_secondary[r * np + j] = static_cast<double>(b.hits);
      }
    }
  }
  gather(data, curves);
  return data;
}

LadderData sweep_voronoi(const VoronoiModel& model, const std::vector<double>& radii, const std::vector<double>& grid,
                         int replicas, std::uint64_t seed, Execution execution) {
  validate_voronoi(model);
  validate_grid(grid);
  validate_radii(radii, model.core_radius);
  validate_replicas(replicas);
  LadderData data = voronoi_header(model, radii, grid, replicas, seed);
  const double sample_radius = radii.back() + model.margin;
  const int nr = static_cast<int>(radii.size());
  const int np = static_cast<int>(grid.size());

  auto curves = map_replicas(replicas, execution, [&](int rep) {
    const VoronoiReplica vr = voronoi_replica(model, sample_radius, voronoi_replica_key(seed, rep));
    const VoronoiComplex& cx = vr.complex;
    const int n = static_cast<int>(cx.size());
    const std::vector<int> order = sorted_by_uniform(vr.uniform);
    ReplicaCurves out;
    out.resize(static_cast<std::size_t>(nr) * np);
    Tracker t;
    auto add_cell = [&](const Region& region, int v) {
      if (!region.member[v]) return;
      t.activate(v);
      for (int w : cx.graph.neighbors(v))
        if (t.active(w)) t.join(v, w);
    };
    for (int r = 0; r < nr; ++r) {
      const Region region = voronoi_region(cx, radii[r], model.core_radius);
      t.reset(region);
      int next = 0;
      for (int j = 0; j < np; ++j) {
        for (; next < n && vr.uniform[order[next]] < grid[j]; ++next) add_cell(region, order[next]);
        out.k_primary[r * np + j] = t.k();
        out.hits_primary[r * np + j] = static_cast<double>(t.hits());
      }
      t.reset(region);
      int top = n - 1;
      for (int j = np - 1; j >= 0; --j) {
        for (; top >= 0 && vr.uniform[order[top]] >= grid[j]; --top) add_cell(region, order[top]);
        out.k_secondary[r * np + j] = t.k();
        out.hits_secondary[r * np + j] = static_cast<double>(t.hits());
      }
    }
    return out;
  });
  gather(data, curves);
  return data;
}

LadderData sweep_voronoi_reference(const VoronoiModel& model, const std::vector<double>& radii,
                                   const std::vector<double>& grid, int replicas, std::uint64_t seed) {
  validate_voronoi(model);
  validate_grid(grid);
  validate_radii(radii, model.core_radius);
  validate_replicas(replicas);
  LadderData data = voronoi_header(model, radii, grid, replicas, seed);
  const double sample_radius = radii.back() + model.margin;
  const int nr = static_cast<int>(radii.size());
  const int np = static_cast<int>(grid.size());
  std::vector<ReplicaCurves> curves(replicas);
  for (int rep = 0; rep < replicas; ++rep) {
    const std::uint64_t key = voronoi_replica_key(seed, rep);
    VoronoiComplex cx = delaunay(sample_colored(model.lambda, 0.5, sample_radius, key, model.radius_cap));
    const std::vector<std::uint8_t> all_open(cx.graph.num_edges(), 1);
    curves[rep].resize(static_cast<std::size_t>(nr) * np);
    for (int j = 0; j < np; ++j) {
      cx.points = color(std::move(cx.points.nuclei), grid[j], rng::Stream(key).lane(2));
      for (int r = 0; r < nr; ++r) {
        const Region region = voronoi_region(cx, radii[r], model.core_radius);
        for (Color c : {Color::White, Color::Black}) {
          Region colored = region;
          for (std::size_t i = 0; i < cx.size(); ++i) colored.member[i] = region.member[i] && cx.points.colors[i] == c;
          const Observables o = observe(cx.graph, all_open, colored);
          if (c == Color::White) {
            curves[rep].k_primary[r * np + j] = o.k;
            curves[rep].hits_primary[r * np + j] = static_cast<double>(o.hits);
          } else {
            curves[rep].k_secondary[r * np + j] = o.k;
            curves[rep].hits_secondary[r * np + j] = static_cast<double>(o.hits);
          }
        }
      }
    }
  }
  gather(data, curves);
  return data;
}

Interval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SweepResult summarize(const LadderData& data) {
  SweepResult out;
  const int nr = static_cast<int>(data.radii.size());
  const int np = static_cast<int>(data.grid.size());
  for (int j = 0; j < np; ++j) {
    for (int r = 0; r < nr; ++r) {
      long reach = 0, reach2 = 0, unique = 0, unique2 = 0, many = 0;
      double kw = 0.0, kb = 0.0, hp = 0.0, hs = 0.0;
      for (int rep = 0; rep < data.replicas; ++rep) {
        const std::size_t i = data.at(rep, r, j);
        const int a = data.k_primary[i];
        const int b = data.k_secondary[i];
        reach += a >= 1;
        reach2 += b >= 1;
        unique += a == 1 && b == 0;
        unique2 += a == 0 && b == 1;
        many += a >= 2 && b >= 2;
        kw += a;
        kb += b;
        hp += data.hits_primary[i];
        hs += data.hits_secondary[i];
      }
      const double n = static_cast<double>(data.replicas);
      SweepRow row;
      row.model = data.model;
      row.p = data.grid[j];
      row.lambda = data.lambda;
      row.pgon = data.p_gon;
      row.qdeg = data.q_deg;
      row.R = data.radii[r];
      row.replicas = data.replicas;
      row.theta = static_cast<double>(reach) / n;
      const Interval ci = wilson_interval(reach, data.replicas);
      row.theta_lo = ci.lo;
      row.theta_hi = ci.hi;
      row.kw = kw / n;
      row.kb = kb / n;
      row.unique_freq = static_cast<double>(unique) / n;
      row.seed = data.seed;
      row.hits_primary = hp / n;
      row.hits_secondary = hs / n;
      row.reach_secondary = static_cast<double>(reach2) / n;
      row.unique_secondary = static_cast<double>(unique2) / n;
      row.many_freq = static_cast<double>(many) / n;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    out << r.model << ',' << format_double(r.p) << ',' << format_double(r.lambda) << ',' << r.pgon << ',' << r.qdeg
        << ',' << format_double(r.R) << ',' << r.replicas << ',' << format_double(r.theta) << ','
        << format_double(r.theta_lo) << ',' << format_double(r.theta_hi) << ',' << format_double(r.kw) << ','
        << format_double(r.kb) << ',' << format_double(r.unique_freq) << ',' << r.seed << '\n';
  }
}

bool curve_crossing(const std::vector<double>& smaller_window, const std::vector<double>& larger_window,
                    const std::vector<double>& grid, bool increasing, double& where) {
  const int np = static_cast<int>(grid.size());
  std::vector<double> d(np);
  for (int j = 0; j < np; ++j) d[j] = larger_window[j] - smaller_window[j];
  int lo, hi;  // bracket with d[lo] <= 0 < d[hi] (increasing) or d[lo] > 0 >= d[hi]
  if (increasing) {
    int last = -1;
    for (int j = 0; j < np; ++j)
      if (d[j] <= 0.0) last = j;
    if (last < 0 || last == np - 1) return false;
    lo = last;
    hi = last + 1;
  } else {
    int first = -1;
    for (int j = 0; j < np; ++j)
      if (d[j] <= 0.0) {
        first = j;
        break;
      }
    if (first <= 0) return false;
    lo = first - 1;
    hi = first;
  }
  const double t = d[lo] / (d[lo] - d[hi]);
  where = grid[lo] + t * (grid[hi] - grid[lo]);
  return true;
}

CriticalEstimate estimate_pc(const LadderData& data, int bootstrap) {
  return estimate_crossing(data, data.hits_primary, true, bootstrap, "p_c");
}

CriticalEstimate estimate_pu(const LadderData& data, int bootstrap) {
  return estimate_crossing(data, data.hits_secondary, false, bootstrap, "p_u");
}

double uniqueness_onset(const LadderData& data, double level) {
  const SweepResult s = summarize(data);
  const double R = data.radii.back();
  double prev_p = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (const SweepRow& row : s.rows) {
    if (row.R != R) continue;
    if (row.unique_freq >= level) {
      if (!have_prev) return row.p;
      return prev_p + (level - prev_f) / (row.unique_freq - prev_f) * (row.p - prev_p);
    }
    prev_p = row.p;
    prev_f = row.unique_freq;
    have_prev = true;
  }
  throw Error(ErrorKind::NoCrossing, "uniqueness frequency never reaches the requested level on the grid");
}

void fit_decay(DecayResult& result) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < result.distance.size(); ++i) {
    if (result.distance[i] >= 1 && result.tau[i] > 0.0) {
      xs.push_back(result.distance[i]);
      ys.push_back(std::log(result.tau[i]));
    }
  }
  result.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) throw Error(ErrorKind::InsufficientData, "tau is zero at all but at most one distance");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  result.slope = sxy / sxx;
  result.intercept = my - result.slope * mx;
  result.rate = std::exp(result.slope);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (result.intercept + result.slope * xs[i]);
    ss_res += e * e;
  }
  result.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
}

DecayResult decay_profile(const GraphModel& model, double p, int max_distance, int replicas, std::uint64_t seed,
                          Execution execution) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "p must lie in [0, 1]");
  if (max_distance < 1) throw Error(ErrorKind::Config, "distance ladder must reach at least 1");
  validate_replicas(replicas);
  // Two spare layers so that clusters can wander past the last sphere.
  const TilingBall ball = ball_for_radius(model.p_gon, model.q_deg, max_distance + 2, model.layers, model.max_vertices);
  const Graph& g = ball.graph;
  const std::vector<int> depth = bfs_distances(g, 0);
  std::vector<double> sphere(max_distance + 1, 0.0);
  for (int d : depth)
    if (d >= 0 && d <= max_distance) sphere[d] += 1.0;

  auto fractions = map_replicas(replicas, execution, [&](int rep) {
    const rng::Stream stream(rng::derive_key(seed, kDecayExperiment, static_cast<std::uint64_t>(rep)));
    thread_local std::vector<std::uint32_t> stamp;
    thread_local std::uint32_t epoch = 0;
    if (stamp.size() != static_cast<std::size_t>(g.num_vertices())) {
      stamp.assign(g.num_vertices(), 0);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    std::vector<double> frac(max_distance + 1, 0.0);
    std::vector<int> queue{0};
    stamp[0] = epoch;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      if (depth[v] <= max_distance) frac[depth[v]] += 1.0;
      const auto nb = g.neighbors(v);
      const auto inc = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (stamp[nb[i]] == epoch || !(stream.uniform_at(inc[i]) < p)) continue;
        stamp[nb[i]] = epoch;
        queue.push_back(nb[i]);
      }
    }
    for (int d = 0; d <= max_distance; ++d) frac[d] /= sphere[d];
    return frac;
  });

  DecayResult out;
  out.p = p;
  out.replicas = replicas;
  for (int d = 0; d <= max_distance; ++d) {
    double sum = 0.0, sum2 = 0.0;
    for (const auto& f : fractions) {
      sum += f[d];
      sum2 += f[d] * f[d];
    }
    const double n = static_cast<double>(replicas);
    const double mean = sum / n;
    const double var = replicas > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0)) : 0.0;
    out.distance.push_back(d);
    out.tau.push_back(mean);
    out.tau_se.push_back(std::sqrt(var / n));
  }
  return out;
}

DecayResult connectivity_decay(const GraphModel& model, double p, int max_distance, int replicas, std::uint64_t seed,
                               Execution execution) {
  DecayResult out = decay_profile(model, p, max_distance, replicas, seed, execution);
  fit_decay(out);
  return out;
}

namespace {

ReachEstimate reach_from(const LadderData& data) {
  const SweepRow& row = summarize(data).rows.front();
  const long hits = std::lround(row.theta * row.replicas);
  return {row.theta, wilson_interval(hits, row.replicas), row.replicas};
}

}  // namespace

ReachEstimate reach_probability(const GraphModel& model, double p, int radius, int replicas, std::uint64_t seed,
                                Execution execution) {
  if (model.core_radius >= radius) throw Error(ErrorKind::Config, "core radius must be below the window radius");
  return reach_from(sweep_graph(model, {radius}, {p}, replicas, seed, execution));
}

ReachEstimate reach_probability(const VoronoiModel& model, double p, double radius, int replicas,
                                std::uint64_t seed, Execution execution) {
  if (model.core_radius >= radius) throw Error(ErrorKind::Config, "core radius must be below the window radius");
  return reach_from(sweep_voronoi(model, {radius}, {p}, replicas, seed, execution));
}

}  // namespace hyperperc
