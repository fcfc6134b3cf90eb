#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coulomb3/system.hpp"

namespace coulomb3::cli {

enum class Units { hartree, rydberg };

/// On-disk system description:
/// {"label": string, "charges": [int,int,int], "masses": [num,num,num]}.
struct SystemConfig {
  Charges charges{};
  Masses masses{};
  std::string label;
  Units units = Units::hartree;

  ThreeBodySystem to_system() const;
};

SystemConfig parse_config(const std::string& json_text);
std::string config_to_json(const SystemConfig& config);

struct CatalogEntry {
  std::string key;
  ThreeBodySystem system;
  std::string note;
};

/// Built-in systems: "helium", "ps-minus", "e+hydrogen".
const std::vector<CatalogEntry>& catalog();

/// Throws std::invalid_argument listing the available keys when absent.
const CatalogEntry& find_catalog(const std::string& key);

/// Dispatch one subcommand. Returns 0 on success, 1 for invalid input,
/// 2 for an unstable system, 3 when no solution exists. Reports go to
/// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulomb3::cli
