#pragma once

// Configuration-driven experiment runs. Every run is a pure function of its
// resolved configuration: rows are computed independently (in parallel when
// threads > 1) from streams keyed by (seed, row index) and emitted in grid
// order, so identical configs give byte-identical tables.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "conclab/table.hpp"

namespace conclab::experiments {

inline constexpr std::string_view kToolVersion = "conclab 1.0.0";

/// Bad configuration or arguments (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { tube, free_group, folner, hamming, fibre, report };

std::string to_string(Kind k);
/// "tube", "free-group", "folner", "hamming", "fibre", "report".
Kind parse_kind(std::string_view name);

struct KeySpec {
  std::string name;
  nlohmann::json default_value;
  std::string help;
};

/// Recognised keys with defaults, including the common ones (seed, threads,
/// out, svg, experiment).
const std::vector<KeySpec>& schema(Kind k);

/// Defaults merged with `user`. Throws ConfigError on unknown keys or on an
/// "experiment" entry naming a different kind.
nlohmann::json resolve_config(Kind k, const nlohmann::json& user);

/// FNV-1a of the canonical dump of the resolved config without the keys that
/// cannot change results (threads, out, svg).
std::uint64_t config_hash(const nlohmann::json& resolved);

struct Output {
  std::vector<std::pair<std::string, table::Table>> tables;  ///< file name, table
  std::vector<std::pair<std::string, std::string>> files;    ///< file name, text (SVG)
};

/// Runs a resolved configuration. Throws ConfigError for invalid values;
/// numerical failures propagate as ConvergenceError.
Output run(Kind k, const nlohmann::json& resolved);

/// Writes every table and file into `dir`, creating it if needed.
void write_output(const Output& out, const std::filesystem::path& dir);

}  // namespace conclab::experiments
