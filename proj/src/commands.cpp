#include "hyperperc/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "hyperperc/densities.hpp"
#include "hyperperc/output.hpp"
#include "hyperperc/parallel.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/phase.hpp"
#include "hyperperc/pointprocess.hpp"
#include "hyperperc/render.hpp"
#include "hyperperc/sweep.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

namespace {

using Json = nlohmann::ordered_json;

std::vector<KeySpec> with_common(std::string command, std::vector<KeySpec> keys) {
  keys.push_back({"seed", "1", "master seed (64-bit)"});
  keys.push_back({"threads", "0", "worker threads, 0 = OpenMP default; HYPERPERC_THREADS overrides"});
  keys.push_back({"summary", command + ".json", "JSON run summary path, empty to skip"});
  return keys;
}

const std::map<std::string, std::vector<KeySpec>>& registry() {
  static const std::map<std::string, std::vector<KeySpec>> table = [] {
    std::map<std::string, std::vector<KeySpec>> t;
    t["gen-tiling"] = with_common("gen-tiling", {
        {"pq", "3,7", "tiling symbol p,q"},
        {"L", "5", "layers around the root face"},
        {"max_vertices", "10000000", "vertex cap"},
        {"out", "tiling.txt", "tiling file"},
        {"svg", "", "optional SVG picture"},
    });
    t["voronoi-sample"] = with_common("voronoi-sample", {
        {"lambda", "1", "intensity"},
        {"p", "0.5", "white probability"},
        {"R", "7", "sample radius"},
        {"out", "points.txt", "point file"},
        {"complex", "", "optional Voronoi/Delaunay complex file"},
    });
    t["densities"] = with_common("densities", {
        {"lambda", "1", "intensity grid"},
        {"R", "7", "sample radius"},
        {"Rw", "5", "window radius"},
        {"replicas", "50", "replicas per intensity"},
        {"out", "densities.csv", "CSV output"},
    });
    t["phase-sweep"] = with_common("phase-sweep", {
        {"lambda", "1", "intensity grid"},
        {"p", "0.30:0.70:0.02", "p grid"},
        {"R", "5,6,7", "window radius ladder"},
        {"replicas", "200", "replicas per intensity"},
        {"core", "1", "core radius"},
        {"margin", "2", "sample margin beyond the largest window"},
        {"unique_threshold", "0.9", "uniqueness frequency for a unique label"},
        {"reach_threshold", "0.9", "reach frequency for a unique label"},
        {"many_reach", "0.5", "reach frequency of both colors for both-many"},
        {"many_k", "2", "mean k of both colors for both-many"},
        {"out", "phase.csv", "phase table CSV"},
        {"curves", "phase-curves.csv", "per-window sweep CSV, empty to skip"},
    });
    t["pc-estimate"] = with_common("pc-estimate", {
        {"model", "voronoi", "voronoi or graph"},
        {"lambda", "0.25,0.5,1,2", "intensity grid (voronoi)"},
        {"pq", "3,7", "tiling symbol (graph)"},
        {"L", "0", "layers (graph), 0 = smallest ball covering the ladder"},
        {"p", "0.02:0.70:0.01", "p grid"},
        {"R", "4,5,6", "window ladder (at least 3 sizes)"},
        {"replicas", "100", "replicas"},
        {"bootstrap", "200", "bootstrap resamples"},
        {"core", "auto", "core radius, auto = 1 (voronoi) or 2 (graph)"},
        {"margin", "2", "sample margin (voronoi)"},
        {"slack", "0.02", "tolerance of the bound and positivity flags"},
        {"out", "pc.csv", "CSV output"},
    });
    t["pu-estimate"] = with_common("pu-estimate", {
        {"model", "graph", "graph or voronoi"},
        {"lambda", "1", "intensity (voronoi)"},
        {"pq", "3,7", "tiling symbol (graph)"},
        {"L", "0", "layers (graph), 0 = smallest ball covering the ladder"},
        {"p", "0.02:0.98:0.01", "p grid"},
        {"R", "4,5,6", "window ladder"},
        {"dual_check", "1", "graphs: also estimate p_c on the {q,p} ball"},
        {"dual_R", "9,10,11", "window ladder of the {q,p} ball"},
        {"replicas", "200", "replicas"},
        {"bootstrap", "200", "bootstrap resamples"},
        {"core", "auto", "core radius, auto = 1 (voronoi) or 2 (graph)"},
        {"margin", "2", "sample margin (voronoi)"},
        {"out", "pu.csv", "CSV output"},
    });
    t["graph-perc"] = with_common("graph-perc", {
        {"pq", "3,7", "tiling symbol"},
        {"L", "6", "layers, 0 = smallest ball covering R"},
        {"R", "", "window ladder; empty = the three largest complete radii"},
        {"p", "0.10:0.60:0.01", "p grid"},
        {"replicas", "100", "replicas"},
        {"core", "2", "core radius"},
        {"bootstrap", "200", "bootstrap resamples"},
        {"out", "graph-perc.csv", "sweep CSV"},
    });
    t["decay"] = with_common("decay", {
        {"pq", "3,7", "tiling symbol"},
        {"p", "0.15", "bond probability"},
        {"D", "8", "largest distance"},
        {"replicas", "10000", "replicas"},
        {"out", "decay.csv", "CSV output"},
    });
    t["render"] = with_common("render", {
        {"kind", "voronoi", "voronoi, tiling or phase"},
        {"lambda", "1", "intensity (voronoi)"},
        {"p", "0.5", "white probability (voronoi)"},
        {"R", "8", "sample radius (voronoi)"},
        {"Rw", "6", "window radius (voronoi)"},
        {"pq", "3,7", "tiling symbol (tiling)"},
        {"L", "4", "layers (tiling)"},
        {"bond_p", "", "bond probability for a configuration overlay (tiling)"},
        {"input", "", "phase table CSV (phase)"},
        {"size", "800", "picture size in px"},
        {"out", "render.svg", "SVG output"},
    });
    return t;
  }();
  return table;
}

std::pair<int, int> get_pq(const ExperimentConfig& c) {
  const std::vector<int> pq = c.get_int_list("pq");
  if (pq.size() != 2) throw Error(ErrorKind::Config, "pq must be two integers p,q");
  return {pq[0], pq[1]};
}

std::vector<double> get_radii(const ExperimentConfig& c) { return c.get_grid("R"); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Config, what);
}

int get_replicas(const ExperimentConfig& c) {
  const int n = c.get_int("replicas");
  require(n >= 1, "replicas must be at least 1");
  return n;
}

double get_probability(const ExperimentConfig& c, const std::string& key) {
  const double p = c.get_double(key);
  require(p >= 0.0 && p <= 1.0, key + " must lie in [0, 1]");
  return p;
}

Json estimate_json(const CriticalEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["lo"] = e.lo;
  j["hi"] = e.hi;
  j["crossings"] = e.crossings;
  j["bootstrap_samples"] = e.bootstrap_samples;
  j["bootstrap_failures"] = e.bootstrap_failures;
  return j;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + '\n';
}

// Each command fills `results` and returns its exit code (0 unless a check
// defined as fatal failed); errors are thrown.
using Command = int (*)(const ExperimentConfig&, Json&, std::ostream&);

int cmd_gen_tiling(const ExperimentConfig& c, Json& results, std::ostream&) {
  const auto [p, q] = get_pq(c);
  const TilingBall ball = build_ball(p, q, c.get_int("L"), static_cast<std::int64_t>(c.get_u64("max_vertices")));
  const DualBall dual = dual_ball(ball);
  atomic_write(c.get("out"), [&](std::ostream& out) { write_tiling(out, ball, dual); });
  if (!c.get("svg").empty()) atomic_write(c.get("svg"), render_tiling_svg(ball, embed(ball)));
  const TilingFrame frame = make_frame(ball, 0);
  int interior = 0;
  for (auto m : ball.interior_vertex_mask) interior += m;
  results["vertices"] = ball.num_vertices();
  results["edges"] = ball.num_edges();
  results["faces"] = ball.num_faces();
  results["euler_characteristic"] = ball.num_vertices() - ball.num_edges() + ball.num_faces();
  results["interior_vertices"] = interior;
  results["complete_radius"] = frame.complete_radius;
  results["dual_edges"] = dual.graph.num_edges();
  return kExitOk;
}

int cmd_voronoi_sample(const ExperimentConfig& c, Json& results, std::ostream&) {
  const ColoredPointSet pts =
      sample_colored(c.get_double("lambda"), get_probability(c, "p"), c.get_double("R"), c.get_u64("seed"));
  atomic_write(c.get("out"), [&](std::ostream& out) { write_points(out, pts); });
  results["points"] = pts.size();
  results["white"] = pts.count(Color::White);
  results["black"] = pts.count(Color::Black);
  if (!c.get("complex").empty()) {
    const VoronoiComplex cx = delaunay(pts);
    atomic_write(c.get("complex"), [&](std::ostream& out) { write_complex(out, cx); });
    int interior = 0;
    for (auto m : cx.interior_mask) interior += m;
    results["voronoi_vertices"] = cx.voronoi_vertices.size();
    results["delaunay_edges"] = cx.delaunay_edges.size();
    results["interior_cells"] = interior;
  }
  return kExitOk;
}

int cmd_densities(const ExperimentConfig& c, Json& results, std::ostream& err) {
  const Window window{c.get_double("R"), c.get_double("Rw")};
  window.validate();
  const int replicas = get_replicas(c);
  std::vector<DensityEstimate> rows;
  for (double lambda : c.get_grid("lambda"))
    rows.push_back(estimate_densities(lambda, window, replicas, c.get_u64("seed")));
  atomic_write(c.get("out"), [&](std::ostream& out) { write_density_csv(out, rows); });
  int code = kExitOk;
  results = Json::array();
  for (const DensityEstimate& d : rows) {
    const EulerCheck e = euler_check(d);
    Json j;
    j["lambda"] = d.lambda;
    j["DV"] = d.D_V_hat;
    j["DV_se"] = d.D_V_se;
    j["DV_target"] = 2.0 * d.lambda + 1.0 / geo::kPi;
    j["DE"] = d.D_E_hat;
    j["DF_count"] = d.D_F_hat_count;
    j["DF_count_se"] = d.D_F_count_se;
    j["DF_inv"] = d.D_F_hat_inverse_area;
    j["DF_inv_se"] = d.D_F_inverse_area_se;
    j["DF_target"] = d.lambda;
    j["euler"] = e.value;
    j["euler_se"] = e.se;
    j["euler_target"] = -1.0;
    j["origin_cells_discarded"] = d.discarded;
    const bool agree = face_estimators_agree(d);
    j["face_estimators_agree"] = agree;
    if (!agree) {
      err << "densities: face density estimators disagree beyond 4 sigma at lambda=" << format_double(d.lambda)
          << '\n';
      code = kExitNumeric;
    }
    results.push_back(j);
  }
  return code;
}

VoronoiModel voronoi_model(const ExperimentConfig& c, double lambda) {
  VoronoiModel m;
  m.lambda = lambda;
  if (c.has("core") && c.get("core") != "auto") m.core_radius = c.get_double("core");
  m.margin = c.get_double("margin");
  return m;
}

GraphModel graph_model(const ExperimentConfig& c) {
  GraphModel m;
  std::tie(m.p_gon, m.q_deg) = get_pq(c);
  m.layers = c.get_int("L");
  require(m.layers >= 0, "L must be nonnegative");
  if (c.has("core") && c.get("core") != "auto") m.core_radius = c.get_int("core");
  return m;
}

int cmd_phase_sweep(const ExperimentConfig& c, Json& results, std::ostream&) {
  PhaseThresholds th;
  th.unique = c.get_double("unique_threshold");
  th.reach = c.get_double("reach_threshold");
  th.many_reach = c.get_double("many_reach");
  th.many_k = c.get_double("many_k");
  const std::vector<double> grid = c.get_grid("p");
  const std::vector<double> radii = get_radii(c);
  const int replicas = get_replicas(c);
  PhaseTable table;
  SweepResult curves;
  for (double lambda : c.get_grid("lambda")) {
    const LadderData data = sweep_voronoi(voronoi_model(c, lambda), radii, grid, replicas, c.get_u64("seed"));
    const SweepResult s = summarize(data);
    append_phase_rows(table, s, th);
    curves.rows.insert(curves.rows.end(), s.rows.begin(), s.rows.end());
  }
  atomic_write(c.get("out"), [&](std::ostream& out) { write_phase_csv(out, table); });
  if (!c.get("curves").empty())
    atomic_write(c.get("curves"), [&](std::ostream& out) { write_sweep_csv(out, curves); });
  std::map<std::string, int> counts;
  for (Phase p : {Phase::WUnique, Phase::BUnique, Phase::BothMany, Phase::SubcriticalAmbiguous})
    counts[to_string(p)] = 0;
  for (const PhaseRow& r : table.rows) ++counts[to_string(r.phase)];
  results["grid_points"] = table.rows.size();
  results["phase_counts"] = counts;
  return kExitOk;
}

int cmd_pc_estimate(const ExperimentConfig& c, Json& results, std::ostream&) {
  const std::string model = c.get("model");
  const std::vector<double> grid = c.get_grid("p");
  const int replicas = get_replicas(c);
  const int bootstrap = c.get_int("bootstrap");
  if (model == "voronoi") {
    const PcCurve curve = estimate_pc_curve(c.get_grid("lambda"), voronoi_model(c, 1.0), get_radii(c), grid,
                                            replicas, c.get_u64("seed"), bootstrap, c.get_double("slack"));
    atomic_write(c.get("out"), [&](std::ostream& out) { write_pc_csv(out, curve); });
    Json rows = Json::array();
    for (const PcCurveRow& r : curve.rows) {
      Json j;
      j["lambda"] = r.lambda;
      j["pc"] = estimate_json(r.pc);
      j["bound"] = r.bound;
      j["below_bound"] = r.below_bound;
      j["positive"] = r.positive;
      j["asymptotic_guess"] = r.guess;
      rows.push_back(j);
    }
    Json sandwich = Json::array();
    for (const SandwichCheck& s : curve.sandwich) {
      Json j;
      j["lambda"] = s.lambda;
      j["lambda_next"] = s.lambda_next;
      j["lower"] = s.lower;
      j["upper"] = s.upper;
      j["holds"] = s.holds;
      sandwich.push_back(j);
    }
    results["rows"] = rows;
    results["sandwich"] = sandwich;
    results["monotone"] = curve.monotone;
    results["all_checks_pass"] = curve.all_checks_pass();
    return kExitOk;
  }
  require(model == "graph", "model must be voronoi or graph");
  const GraphModel gm = graph_model(c);
  const LadderData data = sweep_graph(gm, c.get_int_list("R"), grid, replicas, c.get_u64("seed"));
  const CriticalEstimate pc = estimate_pc(data, bootstrap);
  const double easy_bound = 1.0 / (gm.q_deg - 1.0);
  atomic_write(c.get("out"), csv_line({"model", "pgon", "qdeg", "pc", "pc_lo", "pc_hi", "lower_bound", "replicas",
                                       "seed"}) +
                                 csv_line({"graph", std::to_string(gm.p_gon), std::to_string(gm.q_deg),
                                           format_double(pc.value), format_double(pc.lo), format_double(pc.hi),
                                           format_double(easy_bound), std::to_string(replicas),
                                           std::to_string(data.seed)}));
  results["pc"] = estimate_json(pc);
  results["lower_bound_1_over_d_minus_1"] = easy_bound;
  results["layers"] = data.layers;
  return kExitOk;
}

int cmd_pu_estimate(const ExperimentConfig& c, Json& results, std::ostream& err) {
  const std::string model = c.get("model");
  const std::vector<double> grid = c.get_grid("p");
  const int replicas = get_replicas(c);
  const int bootstrap = c.get_int("bootstrap");
  const std::uint64_t seed = c.get_u64("seed");
  std::string csv = csv_line({"model", "lambda", "pgon", "qdeg", "route", "value", "lo", "hi", "replicas", "seed"});
  Json routes;
  auto add = [&](const LadderData& d, const std::string& route, double value, double lo, double hi) {
    csv += csv_line({d.model, format_double(d.lambda), std::to_string(d.p_gon), std::to_string(d.q_deg), route,
                     format_double(value), format_double(lo), format_double(hi), std::to_string(replicas),
                     std::to_string(seed)});
    Json j;
    j["value"] = value;
    j["lo"] = lo;
    j["hi"] = hi;
    routes[route] = j;
  };
  // Cross-checks are reported when available; only the main route is fatal.
  auto optional = [&](const std::string& route, const auto& fn) {
    try {
      fn();
    } catch (const Error& e) {
      err << "pu-estimate: " << route << " unavailable: " << e.what() << '\n';
      routes[route] = nullptr;
    }
  };
  if (model == "graph") {
    const GraphModel gm = graph_model(c);
    const LadderData data = sweep_graph(gm, c.get_int_list("R"), grid, replicas, seed);
    const CriticalEstimate pu = estimate_pu(data, bootstrap);
    add(data, "dual", pu.value, pu.lo, pu.hi);
    optional("pc", [&] {
      const CriticalEstimate pc = estimate_pc(data, bootstrap);
      add(data, "pc", pc.value, pc.lo, pc.hi);
    });
    optional("uniqueness-onset", [&] {
      const double u = uniqueness_onset(data);
      add(data, "uniqueness-onset", u, u, u);
    });
    if (c.get_int("dual_check") != 0) {
      GraphModel dm = gm;
      std::swap(dm.p_gon, dm.q_deg);
      dm.layers = 0;
      optional("dual-ball-pc", [&] {
        const LadderData d2 = sweep_graph(dm, c.get_int_list("dual_R"), grid, replicas, seed);
        const CriticalEstimate pc2 = estimate_pc(d2, bootstrap);
        add(d2, "dual-ball-pc", pc2.value, pc2.lo, pc2.hi);
        results["pc_dual_plus_pu_minus_1"] = pc2.value + pu.value - 1.0;
      });
    }
  } else {
    require(model == "voronoi", "model must be graph or voronoi");
    const LadderData data = sweep_voronoi(voronoi_model(c, c.get_double("lambda")), get_radii(c), grid, replicas, seed);
    const CriticalEstimate pc = estimate_pc(data, bootstrap);
    add(data, "complement", 1.0 - pc.value, 1.0 - pc.hi, 1.0 - pc.lo);
    optional("black-crossing", [&] {
      const CriticalEstimate pu = estimate_pu(data, bootstrap);
      add(data, "black-crossing", pu.value, pu.lo, pu.hi);
    });
    optional("uniqueness-onset", [&] {
      const double u = uniqueness_onset(data);
      add(data, "uniqueness-onset", u, u, u);
    });
  }
  atomic_write(c.get("out"), csv);
  results["routes"] = routes;
  return kExitOk;
}

int cmd_graph_perc(const ExperimentConfig& c, Json& results, std::ostream& err) {
  GraphModel gm = graph_model(c);
  std::vector<int> radii;
  if (c.get("R").empty()) {
    require(gm.layers > 0, "graph-perc needs L or R");
    const TilingBall ball = build_ball(gm.p_gon, gm.q_deg, gm.layers);
    const int top = make_frame(ball, 0).complete_radius;
    for (int R = top - 2; R <= top; ++R)
      if (R > gm.core_radius) radii.push_back(R);
    require(!radii.empty(), "ball too small for a window beyond the core; raise L");
  } else {
    radii = c.get_int_list("R");
  }
  const LadderData data = sweep_graph(gm, radii, c.get_grid("p"), get_replicas(c), c.get_u64("seed"));
  atomic_write(c.get("out"), [&](std::ostream& out) { write_sweep_csv(out, summarize(data)); });
  results["layers"] = data.layers;
  results["radii"] = data.radii;
  const int bootstrap = c.get_int("bootstrap");
  for (const char* which : {"pc", "pu"}) {
    try {
      if (data.radii.size() < 3) throw Error(ErrorKind::InsufficientData, "ladder shorter than 3 sizes");
      results[which] = estimate_json(std::string(which) == "pc" ? estimate_pc(data, bootstrap)
                                                                  : estimate_pu(data, bootstrap));
    } catch (const Error& e) {
      err << "graph-perc: no " << which << " estimate: " << e.what() << '\n';
      results[which] = nullptr;
    }
  }
  return kExitOk;
}

int cmd_decay(const ExperimentConfig& c, Json& results, std::ostream&) {
  GraphModel gm;
  std::tie(gm.p_gon, gm.q_deg) = get_pq(c);
  const int D = c.get_int("D");
  const int replicas = get_replicas(c);
  const double p = get_probability(c, "p");
  const std::uint64_t seed = c.get_u64("seed");
  DecayResult r = decay_profile(gm, p, D, replicas, seed);
  std::string csv = std::string(kDecayCsvHeader) + '\n';
  for (std::size_t i = 0; i < r.distance.size(); ++i)
    csv += csv_line({std::to_string(gm.p_gon), std::to_string(gm.q_deg), format_double(p),
                     std::to_string(r.distance[i]), format_double(r.tau[i]), format_double(r.tau_se[i]),
                     std::to_string(replicas), std::to_string(seed)});
  atomic_write(c.get("out"), csv);
  fit_decay(r);
  results["slope"] = r.slope;
  results["intercept"] = r.intercept;
  results["rate"] = r.rate;
  results["r_squared"] = r.r_squared;
  results["points_used"] = r.points_used;
  return kExitOk;
}

int cmd_render(const ExperimentConfig& c, Json& results, std::ostream&) {
  SvgStyle style;
  style.size = c.get_double("size");
  require(style.size >= 50.0, "size must be at least 50");
  const std::string kind = c.get("kind");
  std::string svg;
  if (kind == "voronoi") {
    const VoronoiComplex cx = delaunay(
        sample_colored(c.get_double("lambda"), get_probability(c, "p"), c.get_double("R"), c.get_u64("seed")));
    style.window_radius = c.get_double("Rw");
    svg = render_voronoi_svg(cx, style);
    results["cells"] = cx.size();
  } else if (kind == "tiling") {
    const auto [p, q] = get_pq(c);
    const TilingBall ball = build_ball(p, q, c.get_int("L"));
    std::vector<std::uint8_t> open;
    if (!c.get("bond_p").empty())
      open = bernoulli_bond(ball.graph, get_probability(c, "bond_p"), c.get_u64("seed")).open;
    svg = render_tiling_svg(ball, embed(ball), open, style);
    results["vertices"] = ball.num_vertices();
  } else if (kind == "phase") {
    std::ifstream in(c.get("input"));
    require(static_cast<bool>(in), "cannot read phase table '" + c.get("input") + "'");
    const PhaseTable table = read_phase_csv(in);
    svg = render_phase_svg(table, style);
    results["grid_points"] = table.rows.size();
  } else {
    throw Error(ErrorKind::Config, "kind must be voronoi, tiling or phase");
  }
  atomic_write(c.get("out"), svg);
  results["bytes"] = svg.size();
  return kExitOk;
}

const std::map<std::string, Command>& dispatch() {
  static const std::map<std::string, Command> table = {
      {"gen-tiling", cmd_gen_tiling}, {"voronoi-sample", cmd_voronoi_sample}, {"densities", cmd_densities},
      {"phase-sweep", cmd_phase_sweep}, {"pc-estimate", cmd_pc_estimate},   {"pu-estimate", cmd_pu_estimate},
      {"graph-perc", cmd_graph_perc},   {"decay", cmd_decay},                 {"render", cmd_render},
  };
  return table;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Parse:
    case ErrorKind::CapExceeded:
    case ErrorKind::TooLarge:
    case ErrorKind::NotHyperbolic:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"gen-tiling", "voronoi-sample", "densities",
                                                 "phase-sweep", "pc-estimate",    "pu-estimate",
                                                 "graph-perc",  "decay",          "render"};
  return names;
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto it = registry().find(command);
  if (it == registry().end()) throw Error(ErrorKind::Config, "unknown command '" + command + "'");
  return it->second;
}

ExperimentConfig default_config(const std::string& command) {
  ExperimentConfig c;
  c.command = command;
  for (const KeySpec& k : command_keys(command)) c.set(k.key, k.default_value);
  return c;
}

void merge_config(ExperimentConfig& into, const ExperimentConfig& from) {
  if (!from.command.empty() && from.command != into.command)
    throw Error(ErrorKind::Config, "config file is for '" + from.command + "', not '" + into.command + "'");
  for (const auto& [k, v] : from.values) {
    if (!into.has(k)) throw Error(ErrorKind::Config, "unknown key '" + k + "' for " + into.command);
    into.set(k, v);
  }
}

int run_command(const ExperimentConfig& config, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto it = dispatch().find(config.command);
    if (it == dispatch().end()) throw Error(ErrorKind::Config, "unknown command '" + config.command + "'");
    const int threads = config.get_int("threads");
    require(threads >= 0, "threads must be nonnegative");
    set_default_threads(resolve_threads(std::getenv("HYPERPERC_THREADS") ? 0 : threads));
    Json results = Json::object();
    const int code = it->second(config, results, err);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!config.get("summary").empty())
      atomic_write(config.get("summary"), run_summary(config, wall, std::move(results)).dump(2) + "\n");
    return code;
  } catch (const Error& e) {
    err << "hyperperc " << config.command << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "hyperperc " << config.command << ": " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace hyperperc
