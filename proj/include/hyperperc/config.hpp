#pragma once

// Experiment configuration: a command name plus `key = value` pairs. The text
// form is one pair per line; blank lines and lines starting with '#' are
// ignored. Typed access validates on read and throws Error{Config}.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hyperperc {

/// `start:stop:step` (inclusive of stop up to rounding) or a comma list.
std::vector<double> parse_grid(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

class ExperimentConfig {
 public:
  std::string command;
  std::map<std::string, std::string> values;

  static ExperimentConfig parse(std::string_view text);
  /// `command = ...` first, then the keys in sorted order.
  std::string serialize() const;

  /// Keys are [A-Za-z0-9_-]+; values are trimmed and must fit on one line.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values.count(key) != 0; }

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::vector<double> get_grid(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

}  // namespace hyperperc
