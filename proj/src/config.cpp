#include "hyperperc/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hyperperc/error.hpp"

namespace hyperperc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s, std::string_view what) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
    throw Error(ErrorKind::Config, "bad number '" + std::string(s) + "' in " + std::string(what));
  return x;
}

template <class Int>
Int to_integer(std::string_view s, std::string_view what) {
  Int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::Config, "bad integer '" + std::string(s) + "' in " + std::string(what));
  return x;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw Error(ErrorKind::Config, "grid ranges are start:stop:step");
    const double start = to_double(parts[0], "grid"), stop = to_double(parts[1], "grid"),
                 step = to_double(parts[2], "grid");
    if (!(step > 0.0)) throw Error(ErrorKind::Config, "grid step must be positive");
    if (stop < start) throw Error(ErrorKind::Config, "grid stop below start");
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6) throw Error(ErrorKind::Config, "grid has too many points");
    for (long i = 0; i <= static_cast<long>(count); ++i) {
      // Snap to 12 decimals so that 0.1:0.3:0.1 yields 0.3, not 0.30000000000000004.
      out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  } else {
    for (std::string_view part : split(text, ',')) out.push_back(to_double(part, "list"));
  }
  if (out.empty()) throw Error(ErrorKind::Config, "empty grid");
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (std::string_view part : split(trim(text), ',')) out.push_back(to_integer<int>(part, "integer list"));
  return out;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig c;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key == "command") {
      c.command = value;
    } else if (!valid_key(key)) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad key '" + key + "'");
    } else {
      c.values[key] = value;
    }
  }
  return c;
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  if (!command.empty()) out << "command = " << command << '\n';
  for (const auto& [k, v] : values) out << k << " = " << v << '\n';
  return out.str();
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (!valid_key(key) || key == "command") throw Error(ErrorKind::Config, "bad key '" + key + "'");
  if (value.find('\n') != std::string::npos) throw Error(ErrorKind::Config, "value of '" + key + "' spans lines");
  values[key] = std::string(trim(value));
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw Error(ErrorKind::Config, "missing key '" + key + "'");
  return it->second;
}

double ExperimentConfig::get_double(const std::string& key) const { return to_double(get(key), key); }

int ExperimentConfig::get_int(const std::string& key) const { return to_integer<int>(get(key), key); }

std::uint64_t ExperimentConfig::get_u64(const std::string& key) const {
  return to_integer<std::uint64_t>(get(key), key);
}

std::vector<double> ExperimentConfig::get_grid(const std::string& key) const {
  try {
    return parse_grid(get(key));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, key + ": " + e.what());
  }
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& key) const {
  try {
    return parse_int_list(get(key));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, key + ": " + e.what());
  }
}

}  // namespace hyperperc
