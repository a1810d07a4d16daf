#include "hyperperc/pointprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "hyperperc/error.hpp"

namespace hyperperc {

std::size_t ColoredPointSet::count(Color c) const {
  return static_cast<std::size_t>(std::count(colors.begin(), colors.end(), c));
}

double radial_cdf(double rho, double R) {
  if (rho <= 0.0) return 0.0;
  if (rho >= R) return 1.0;
  const double a = std::sinh(0.5 * rho);
  const double b = std::sinh(0.5 * R);
  return (a * a) / (b * b);
}

std::vector<geo::HPoint> sample_poisson_ball(double lambda, double R, rng::Stream stream, double radius_cap) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::Config, "intensity must be positive");
  if (!(R > 0.0)) throw Error(ErrorKind::Config, "sampling radius must be positive");
  if (R > radius_cap) throw Error(ErrorKind::CapExceeded, "sampling radius above working cap");

  rng::Stream count_stream = stream.lane(0);
  const rng::Stream coords = stream.lane(1);
  std::poisson_distribution<long long> poisson(lambda * geo::ball_area(R));
  const auto n = static_cast<std::uint64_t>(poisson(count_stream));

  // arcosh(1 + U (cosh R - 1)) in the form 2 asinh(sqrt(U) sinh(R/2)).
  const double half = std::sinh(0.5 * R);
  std::vector<geo::HPoint> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = coords.uniform_at(2 * i);
    const double t = coords.uniform_at(2 * i + 1);
    points.emplace_back(std::min(R, 2.0 * std::asinh(std::sqrt(u) * half)), geo::kTwoPi * t);
  }
  return points;
}

ColoredPointSet color(std::vector<geo::HPoint> points, double p, rng::Stream stream) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "white probability outside [0,1]");
  ColoredPointSet set;
  set.colors.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    set.colors.push_back(stream.uniform_at(i) < p ? Color::White : Color::Black);
  set.nuclei = std::move(points);
  set.p = p;
  return set;
}

ColoredPointSet sample_colored(double lambda, double p, double R, std::uint64_t seed, double radius_cap) {
  const rng::Stream stream(seed);
  ColoredPointSet set = color(sample_poisson_ball(lambda, R, stream, radius_cap), p, stream.lane(2));
  set.lambda = lambda;
  set.radius = R;
  set.seed = seed;
  return set;
}

std::string format_double(double x) {
  // Shortest representation that reads back to the same double.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_points(std::ostream& out, const ColoredPointSet& set) {
  out << "#hpp v1 lambda=" << format_double(set.lambda) << " p=" << format_double(set.p)
      << " R=" << format_double(set.radius) << " seed=" << set.seed << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << format_double(set.nuclei[i].rho) << ' ' << format_double(set.nuclei[i].theta) << ' '
        << (set.colors[i] == Color::White ? 'W' : 'B') << '\n';
  }
}

namespace {

double header_double(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw Error(ErrorKind::Parse, "expected " + key + "= in point header");
  try {
    return std::stod(token.substr(key.size() + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad value for " + key);
  }
}

}  // namespace

ColoredPointSet read_points(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty point file");
  std::istringstream header(line);
  std::string magic, version, tl, tp, tr, ts;
  header >> magic >> version >> tl >> tp >> tr >> ts;
  if (magic != "#hpp" || version != "v1") throw Error(ErrorKind::Parse, "not an #hpp v1 file");

  ColoredPointSet set;
  set.lambda = header_double(tl, "lambda");
  set.p = header_double(tp, "p");
  set.radius = header_double(tr, "R");
  if (ts.rfind("seed=", 0) != 0) throw Error(ErrorKind::Parse, "expected seed= in point header");
  const std::string seed = ts.substr(5);
  if (std::from_chars(seed.data(), seed.data() + seed.size(), set.seed).ec != std::errc())
    throw Error(ErrorKind::Parse, "bad seed");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double rho = 0.0, theta = 0.0;
    char c = 0;
    if (!(row >> rho >> theta >> c) || (c != 'W' && c != 'B')) throw Error(ErrorKind::Parse, "bad point line: " + line);
    set.nuclei.emplace_back(rho, theta);
    set.colors.push_back(c == 'W' ? Color::White : Color::Black);
  }
  return set;
}

}  // namespace hyperperc
