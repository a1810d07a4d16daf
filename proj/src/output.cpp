#include "hyperperc/output.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "hyperperc/error.hpp"

#ifndef HYPERPERC_GIT_DESCRIBE
#define HYPERPERC_GIT_DESCRIBE "unknown"
#endif

namespace hyperperc {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
      writer(out);
      out.flush();
      if (!out) throw Error(ErrorKind::Io, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path.string() + ": " + ec.message());
  } catch (...) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw;
  }
}

void atomic_write(const fs::path& path, std::string_view content) {
  atomic_write(path, [&](std::ostream& out) { out.write(content.data(), static_cast<std::streamsize>(content.size())); });
}

std::string git_describe() { return HYPERPERC_GIT_DESCRIBE; }

nlohmann::ordered_json run_summary(const ExperimentConfig& config, double wall_time, nlohmann::ordered_json results) {
  nlohmann::ordered_json cfg;
  cfg["command"] = config.command;
  for (const auto& [k, v] : config.values) cfg[k] = v;
  nlohmann::ordered_json out;
  out["config"] = std::move(cfg);
  out["git_describe"] = git_describe();
  out["wall_time"] = wall_time;
  out["results"] = std::move(results);
  return out;
}

}  // namespace hyperperc
