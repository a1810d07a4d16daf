#include <doctest.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "hyperperc/commands.hpp"
#include "hyperperc/config.hpp"
#include "hyperperc/error.hpp"
#include "hyperperc/output.hpp"
#include "hyperperc/phase.hpp"
#include "hyperperc/render.hpp"
#include "hyperperc/tiling.hpp"

using namespace hyperperc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    char tmpl[] = "/tmp/hyperperc-test-XXXXXX";
    path = mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool xml_well_formed(const fs::path& file) {
  const std::string cmd = "python3 -c \"import sys, xml.etree.ElementTree as E; r = E.parse(sys.argv[1]).getroot(); "
                          "sys.exit(0 if r.tag.endswith('svg') and r.get('version') == '1.1' else 1)\" " +
                          file.string();
  return std::system(cmd.c_str()) == 0;
}

std::vector<fs::path> listing(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path().filename());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("grids") {
  CHECK(parse_grid("0.1:0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(parse_grid("0.30:0.70:0.02").size() == 21);
  CHECK(parse_grid("0.25, 0.5,1,2") == std::vector<double>{0.25, 0.5, 1, 2});
  CHECK(parse_int_list("5,6,7") == std::vector<int>{5, 6, 7});
  CHECK_THROWS_AS(parse_grid("0.1:0.3"), Error);
  CHECK_THROWS_AS(parse_grid("0.3:0.1:0.1"), Error);
  CHECK_THROWS_AS(parse_grid("0.1:0.3:0"), Error);
  CHECK_THROWS_AS(parse_grid("a,b"), Error);
  CHECK_THROWS_AS(parse_int_list("1.5"), Error);
}

TEST_CASE("config round trip") {
  for (const std::string& name : command_names()) {
    ExperimentConfig c = default_config(name);
    c.set("seed", "18446744073709551615");
    CHECK(ExperimentConfig::parse(c.serialize()) == c);
    CHECK(c.get_u64("seed") == 18446744073709551615ull);
  }
  const ExperimentConfig c = ExperimentConfig::parse("# comment\n\ncommand = decay\n  p = 0.2 \nD=9\n");
  CHECK(c.command == "decay");
  CHECK(c.get_double("p") == 0.2);
  CHECK(c.get_int("D") == 9);
  CHECK_THROWS_AS(ExperimentConfig::parse("no equals sign"), Error);
  CHECK_THROWS_AS(ExperimentConfig::parse("bad key! = 1"), Error);
  ExperimentConfig e;
  CHECK_THROWS_AS(e.set("x", "a\nb"), Error);
  CHECK_THROWS_AS(e.get("missing"), Error);
}

TEST_CASE("command registry and merging") {
  CHECK(command_names().size() == 9);
  CHECK_THROWS_AS(command_keys("nope"), Error);
  ExperimentConfig c = default_config("densities");
  CHECK(c.get("out") == "densities.csv");
  merge_config(c, ExperimentConfig::parse("lambda = 0.5\nreplicas = 7\n"));
  CHECK(c.get("lambda") == "0.5");
  CHECK(c.get_int("replicas") == 7);
  CHECK_THROWS_AS(merge_config(c, ExperimentConfig::parse("bogus = 1\n")), Error);
  CHECK_THROWS_AS(merge_config(c, ExperimentConfig::parse("command = decay\n")), Error);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::Config) == 2);
  CHECK(exit_code_for(ErrorKind::Parse) == 2);
  CHECK(exit_code_for(ErrorKind::CapExceeded) == 2);
  CHECK(exit_code_for(ErrorKind::TooLarge) == 2);
  CHECK(exit_code_for(ErrorKind::NotHyperbolic) == 2);
  CHECK(exit_code_for(ErrorKind::NoCrossing) == 3);
  CHECK(exit_code_for(ErrorKind::Degenerate) == 3);
  CHECK(exit_code_for(ErrorKind::Io) == 3);
}

TEST_CASE("atomic writes") {
  TempDir dir;
  const fs::path target = dir.path / "out.csv";
  atomic_write(target, "old\n");
  CHECK(slurp(target) == "old\n");

  SUBCASE("a throwing writer leaves the old file and no temporary") {
    CHECK_THROWS_AS(atomic_write(target,
                                 [](std::ostream& out) {
                                   out << "partial";
                                   throw Error(ErrorKind::Degenerate, "injected");
                                 }),
                    Error);
    CHECK(slurp(target) == "old\n");
    CHECK(listing(dir.path) == std::vector<fs::path>{"out.csv"});
  }
  SUBCASE("a process killed mid-write leaves the old file") {
    const pid_t child = fork();
    REQUIRE(child >= 0);
    if (child == 0) {
      atomic_write(target, [](std::ostream& out) {
        out << std::string(1 << 16, 'x') << std::flush;
        raise(SIGKILL);
      });
      _exit(0);
    }
    int status = 0;
    waitpid(child, &status, 0);
    CHECK(WIFSIGNALED(status));
    CHECK(slurp(target) == "old\n");
  }
  SUBCASE("unwritable directories report an error") {
    CHECK_THROWS_AS(atomic_write(dir.path / "missing" / "x.csv", "x"), Error);
  }
}

TEST_CASE("run summary layout") {
  const ExperimentConfig c = default_config("decay");
  const auto j = run_summary(c, 1.5, {{"slope", -1.0}});
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"config", "git_describe", "wall_time", "results"});
  CHECK(j["config"]["command"] == "decay");
  CHECK(j["config"]["D"] == "8");
  CHECK(j["wall_time"] == 1.5);
  CHECK(!git_describe().empty());
}

TEST_CASE("phase classification") {
  SweepRow r;
  r.theta = 0.95;
  r.unique_freq = 0.92;
  CHECK(classify(r) == Phase::WUnique);
  r = {};
  r.reach_secondary = 0.99;
  r.unique_secondary = 0.95;
  CHECK(classify(r) == Phase::BUnique);
  r = {};
  r.theta = r.reach_secondary = 0.6;
  r.kw = r.kb = 2.5;
  CHECK(classify(r) == Phase::BothMany);
  r.kb = 1.5;
  CHECK(classify(r) == Phase::SubcriticalAmbiguous);
  PhaseThresholds loose;
  loose.many_k = 1.5;
  CHECK(classify(r, loose) == Phase::BothMany);
  for (Phase p : {Phase::WUnique, Phase::BUnique, Phase::BothMany, Phase::SubcriticalAmbiguous})
    CHECK(phase_from_string(to_string(p)) == p);

  PhaseTable t;
  t.rows.push_back({0.3, 1.0, 7.0, 200, 0.5, 0.25, 1.0, 2.0, 0.125, 0.0625, Phase::BothMany, 9});
  std::ostringstream out;
  write_phase_csv(out, t);
  CHECK(out.str().rfind("p,lambda,R,replicas,reach_w,reach_b,kw,kb,unique_w,unique_b,phase,seed\n", 0) == 0);
  std::istringstream in(out.str());
  const PhaseTable back = read_phase_csv(in);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].kb == 2.0);
  CHECK(back.rows[0].phase == Phase::BothMany);
  CHECK(back.rows[0].seed == 9);
}

TEST_CASE("p_c curve checks") {
  CHECK(pc_upper_bound(1.0) == doctest::Approx(0.4313489).epsilon(1e-6));
  CHECK(pc_upper_bound(0.25) == doctest::Approx(0.5 - 1.0 / (geo::kPi + 2.0)));
  CHECK(pc_asymptotic_guess(8.0) == doctest::Approx(0.25));
  auto row = [](double lambda, double lo, double hi) {
    PcCurveRow r;
    r.lambda = lambda;
    r.pc.value = 0.5 * (lo + hi);
    r.pc.lo = lo;
    r.pc.hi = hi;
    return r;
  };
  PcCurve good;
  good.rows = {row(2, 0.29, 0.32), row(1, 0.2, 0.25)};
  check_pc_curve(good);
  CHECK(good.rows.front().lambda == 1);
  CHECK(good.all_checks_pass());
  CHECK(good.monotone);
  // 0.2 * 1/2 = 0.1 <= hi(2) and lo(2) <= 1 - 0.75 / 2.
  CHECK(good.sandwich[0].lower == doctest::Approx(0.1));
  CHECK(good.sandwich[0].upper == doctest::Approx(0.625));

  PcCurve bad;
  bad.rows = {row(1, 0.2, 0.25), row(1.05, 0.01, 0.015)};
  check_pc_curve(bad);
  CHECK_FALSE(bad.sandwich[0].holds);
  CHECK_FALSE(bad.rows[1].positive);
  CHECK_FALSE(bad.monotone);
  CHECK_FALSE(bad.all_checks_pass());
}

TEST_CASE("SVG rendering") {
  TempDir dir;
  SUBCASE("empty complex draws the disk only") {
    const std::string svg = render_voronoi_svg(VoronoiComplex{});
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<path") == std::string::npos);
    atomic_write(dir.path / "e.svg", svg);
    CHECK(xml_well_formed(dir.path / "e.svg"));
  }
  SUBCASE("three symmetric cells meet at the center in three rays") {
    ColoredPointSet s;
    for (int k = 0; k < 3; ++k) s.nuclei.emplace_back(1.0, 2 * geo::kPi * k / 3);
    s.colors = {Color::White, Color::Black, Color::White};
    s.radius = 2.0;
    SvgStyle style;
    const std::string svg = render_voronoi_svg(delaunay(s), style);
    const std::string edges = svg.substr(svg.find("<g id=\"edges\""));
    const std::regex path(R"re(<path d="M ([-\d.]+) ([-\d.]+) L ([-\d.]+) ([-\d.]+)"/>)re");
    std::vector<double> angles;
    for (auto it = std::sregex_iterator(edges.begin(), edges.end(), path); it != std::sregex_iterator(); ++it) {
      CHECK(std::stod((*it)[1]) == doctest::Approx(400.0));
      CHECK(std::stod((*it)[2]) == doctest::Approx(400.0));
      const double x = std::stod((*it)[3]) - 400.0, y = 400.0 - std::stod((*it)[4]);
      CHECK(std::hypot(x, y) == doctest::Approx(390.0).epsilon(1e-3));
      double a = std::atan2(y, x);
      if (a < 0) a += 2 * geo::kPi;
      angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    REQUIRE(angles.size() == 3);
    // Rays bisect the nuclei: at pi/3, pi and 5pi/3.
    CHECK(angles[0] == doctest::Approx(geo::kPi / 3).epsilon(1e-4));
    CHECK(angles[1] == doctest::Approx(geo::kPi).epsilon(1e-4));
    CHECK(angles[2] == doctest::Approx(5 * geo::kPi / 3).epsilon(1e-4));
  }
  SUBCASE("a p = 1/2 sample partitions the disk and parses as XML") {
    SvgStyle style;
    style.window_radius = 6.0;
    const VoronoiComplex cx = delaunay(sample_colored(1.0, 0.5, 6.0, 3));
    const std::string svg = render_voronoi_svg(cx, style);
    atomic_write(dir.path / "v.svg", svg);
    CHECK(xml_well_formed(dir.path / "v.svg"));
    CHECK(svg.find("#f7f7f7") != std::string::npos);
    CHECK(svg.find("#1f1f1f") != std::string::npos);
  }
  SUBCASE("tilings and phase tables") {
    const TilingBall ball = build_ball(3, 7, 4);
    atomic_write(dir.path / "t.svg", render_tiling_svg(ball, embed(ball)));
    CHECK(xml_well_formed(dir.path / "t.svg"));
    PhaseTable t;
    t.rows.push_back({0.3, 1.0, 7.0, 10, 1, 1, 2, 2, 0, 0, Phase::BothMany, 1});
    t.rows.push_back({0.9, 1.0, 7.0, 10, 1, 0, 1, 0, 1, 0, Phase::WUnique, 1});
    atomic_write(dir.path / "p.svg", render_phase_svg(t));
    CHECK(xml_well_formed(dir.path / "p.svg"));
  }
  SUBCASE("geodesics") {
    SvgStyle style;
    CHECK(geodesic_path_to({0.5, 0.0}, {-0.5, 0.0}, style).rfind("L ", 0) == 0);
    CHECK(geodesic_path_to({0.5, 0.0}, {0.0, 0.5}, style).rfind("A ", 0) == 0);
  }
}

TEST_CASE("commands: outputs and exit codes") {
  TempDir dir;
  const fs::path cwd = fs::current_path();
  fs::current_path(dir.path);
  std::ostringstream err;

  ExperimentConfig c = default_config("gen-tiling");
  c.set("L", "3");
  c.set("svg", "t.svg");
  CHECK(run_command(c, err) == 0);
  CHECK(fs::exists("tiling.txt"));
  CHECK(fs::exists("gen-tiling.json"));
  CHECK(xml_well_formed("t.svg"));

  c.set("pq", "4,4");
  CHECK(run_command(c, err) == 2);
  c.set("pq", "3,7");
  c.set("L", "abc");
  CHECK(run_command(c, err) == 2);

  ExperimentConfig pc = default_config("pc-estimate");
  pc.set("model", "graph");
  pc.set("p", "0.9:0.95:0.01");
  pc.set("replicas", "5");
  CHECK(run_command(pc, err) == 3);
  CHECK(err.str().find("NoCrossing") != std::string::npos);

  ExperimentConfig d = default_config("decay");
  d.set("replicas", "200");
  d.set("D", "4");
  CHECK(run_command(d, err) == 0);
  CHECK(slurp("decay.csv").rfind("pgon,qdeg,p,d,tau,tau_se,replicas,seed\n", 0) == 0);

  fs::current_path(cwd);
}

TEST_CASE("CLI flags") {
  const std::string cli = HYPERPERC_CLI;
  auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("--help") == 0);
  CHECK(run("densities --help") == 0);
  CHECK(run("densities --nope 1") == 2);
  CHECK(run("") == 2);
  TempDir dir;
  const fs::path cfg = dir.path / "x.cfg";
  atomic_write(cfg, "command = gen-tiling\nL = 2\nbogus = 1\n");
  CHECK(run("gen-tiling --config " + cfg.string()) == 2);
  atomic_write(cfg, "L = 2\n");
  CHECK(run("gen-tiling --config " + cfg.string() + " --out " + (dir.path / "t.txt").string() + " --summary " +
            (dir.path / "s.json").string()) == 0);
  CHECK(slurp(dir.path / "t.txt").rfind("#pq v1 p=3 q=7 L=2", 0) == 0);
}
