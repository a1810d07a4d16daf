#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hyperperc/config.hpp"

namespace hyperperc {

/// Writes through a hidden temporary in the target's directory and renames it
/// over the target, so readers see either the old file or the complete new
/// one. If `writer` throws, the temporary is removed and the error rethrown.
void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// `git describe` of the source tree at configure time.
std::string git_describe();

/// {config, git_describe, wall_time, results}. wall_time is the only field
/// that varies between identical runs.
nlohmann::ordered_json run_summary(const ExperimentConfig& config, double wall_time,
                                   nlohmann::ordered_json results);

}  // namespace hyperperc
