#include "hyperperc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyperperc/config.hpp"
#include "hyperperc/error.hpp"
#include "hyperperc/hypgeo.hpp"
#include "hyperperc/pointprocess.hpp"

namespace hyperperc {

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::WUnique:
      return "W-unique";
    case Phase::BUnique:
      return "B-unique";
    case Phase::BothMany:
      return "both-many";
    case Phase::SubcriticalAmbiguous:
      return "subcritical-ambiguous";
  }
  return "?";
}

Phase phase_from_string(const std::string& name) {
  for (Phase p : {Phase::WUnique, Phase::BUnique, Phase::BothMany, Phase::SubcriticalAmbiguous})
    if (name == to_string(p)) return p;
  throw Error(ErrorKind::Parse, "unknown phase label '" + name + "'");
}

Phase classify(const SweepRow& row, const PhaseThresholds& t) {
  if (row.unique_freq >= t.unique && row.theta >= t.reach) return Phase::WUnique;
  if (row.unique_secondary >= t.unique && row.reach_secondary >= t.reach) return Phase::BUnique;
  if (row.theta >= t.many_reach && row.reach_secondary >= t.many_reach && row.kw >= t.many_k && row.kb >= t.many_k)
    return Phase::BothMany;
  return Phase::SubcriticalAmbiguous;
}

void append_phase_rows(PhaseTable& table, const SweepResult& sweep, const PhaseThresholds& thresholds) {
  double largest = -1.0;
  for (const SweepRow& r : sweep.rows) largest = std::max(largest, r.R);
  for (const SweepRow& r : sweep.rows) {
    if (r.R != largest) continue;
    PhaseRow row;
    row.p = r.p;
    row.lambda = r.lambda;
    row.R = r.R;
    row.replicas = r.replicas;
    row.reach_w = r.theta;
    row.reach_b = r.reach_secondary;
    row.kw = r.kw;
    row.kb = r.kb;
    row.unique_w = r.unique_freq;
    row.unique_b = r.unique_secondary;
    row.phase = classify(r, thresholds);
    row.seed = r.seed;
    table.rows.push_back(row);
  }
}

void write_phase_csv(std::ostream& out, const PhaseTable& table) {
  out << kPhaseCsvHeader << '\n';
  for (const PhaseRow& r : table.rows) {
    out << format_double(r.p) << ',' << format_double(r.lambda) << ',' << format_double(r.R) << ',' << r.replicas
        << ',' << format_double(r.reach_w) << ',' << format_double(r.reach_b) << ',' << format_double(r.kw) << ','
        << format_double(r.kb) << ',' << format_double(r.unique_w) << ',' << format_double(r.unique_b) << ','
        << to_string(r.phase) << ',' << r.seed << '\n';
  }
}

PhaseTable read_phase_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kPhaseCsvHeader)
    throw Error(ErrorKind::Parse, "not a phase table (header mismatch)");
  PhaseTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 12) throw Error(ErrorKind::Parse, "phase table row with " + std::to_string(f.size()) + " fields");
    ExperimentConfig c;  // reuse the typed number parsing
    const char* keys[] = {"p", "lambda", "r", "replicas", "reach_w", "reach_b", "kw", "kb", "unique_w", "unique_b"};
    for (int i = 0; i < 10; ++i) c.set(keys[i], f[i]);
    c.set("seed", f[11]);
    PhaseRow r;
    try {
      r.p = c.get_double("p");
      r.lambda = c.get_double("lambda");
      r.R = c.get_double("r");
      r.replicas = c.get_int("replicas");
      r.reach_w = c.get_double("reach_w");
      r.reach_b = c.get_double("reach_b");
      r.kw = c.get_double("kw");
      r.kb = c.get_double("kb");
      r.unique_w = c.get_double("unique_w");
      r.unique_b = c.get_double("unique_b");
      r.seed = c.get_u64("seed");
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, std::string("phase table: ") + e.what());
    }
    r.phase = phase_from_string(f[10]);
    table.rows.push_back(r);
  }
  return table;
}

double pc_upper_bound(double lambda) { return 0.5 - 1.0 / (4.0 * lambda * geo::kPi + 2.0); }

double pc_asymptotic_guess(double lambda) { return 0.5 - std::pow(lambda, -2.0 / 3.0); }

bool PcCurve::all_checks_pass() const {
  for (const PcCurveRow& r : rows)
    if (!r.below_bound || !r.positive) return false;
  for (const SandwichCheck& s : sandwich)
    if (!s.holds) return false;
  return true;
}

void check_pc_curve(PcCurve& curve, double slack) {
  std::sort(curve.rows.begin(), curve.rows.end(),
            [](const PcCurveRow& a, const PcCurveRow& b) { return a.lambda < b.lambda; });
  curve.sandwich.clear();
  curve.monotone = true;
  for (PcCurveRow& r : curve.rows) {
    r.bound = pc_upper_bound(r.lambda);
    r.guess = pc_asymptotic_guess(r.lambda);
    r.below_bound = r.pc.hi <= r.bound + slack;
    r.positive = r.pc.lo >= slack;
  }
  for (std::size_t i = 0; i + 1 < curve.rows.size(); ++i) {
    const PcCurveRow& a = curve.rows[i];
    const PcCurveRow& b = curve.rows[i + 1];
    const double ratio = a.lambda / b.lambda;
    SandwichCheck s;
    s.lambda = a.lambda;
    s.lambda_next = b.lambda;
    s.lower = a.pc.lo * ratio;
    s.upper = 1.0 - (1.0 - a.pc.hi) * ratio;
    s.holds = b.pc.hi >= s.lower && b.pc.lo <= s.upper;
    curve.sandwich.push_back(s);
    if (a.pc.lo > b.pc.hi) curve.monotone = false;
  }
}

PcCurve estimate_pc_curve(std::vector<double> lambdas, const VoronoiModel& base, const std::vector<double>& radii,
                          const std::vector<double>& grid, int replicas, std::uint64_t seed, int bootstrap,
                          double slack, Execution execution) {
  if (lambdas.empty()) throw Error(ErrorKind::Config, "empty lambda grid");
  std::sort(lambdas.begin(), lambdas.end());
  PcCurve curve;
  curve.replicas = replicas;
  curve.seed = seed;
  for (double lambda : lambdas) {
    VoronoiModel model = base;
    model.lambda = lambda;
    const LadderData data = sweep_voronoi(model, radii, grid, replicas, seed, execution);
    PcCurveRow row;
    row.lambda = lambda;
    row.pc = estimate_pc(data, bootstrap);
    curve.rows.push_back(row);
  }
  check_pc_curve(curve, slack);
  return curve;
}

void write_pc_csv(std::ostream& out, const PcCurve& curve) {
  out << kPcCsvHeader << '\n';
  for (const PcCurveRow& r : curve.rows) {
    out << format_double(r.lambda) << ',' << format_double(r.pc.value) << ',' << format_double(r.pc.lo) << ','
        << format_double(r.pc.hi) << ',' << format_double(r.bound) << ',' << (r.below_bound ? 1 : 0) << ','
        << (r.positive ? 1 : 0) << ',' << format_double(r.guess) << ',' << curve.replicas << ',' << curve.seed
        << '\n';
  }
}

}  // namespace hyperperc
