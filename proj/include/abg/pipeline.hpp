#pragma once

#include "abg/lattice.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abg {

inline constexpr std::string_view tool_version = "0.1.0";

/// Check names, in execution order.
const std::vector<std::string>& check_registry();
/// Everything at k = 1; at k = 2 the homology-sized checks are left out.
std::vector<std::string> default_checks(int k);
/// Comma-separated names, or "all" / "default". Unknown names throw
/// InvalidInput.
std::vector<std::string> parse_checks(std::string_view list, int k);

struct RunConfig {
    ConstructionParams params;
    std::vector<std::string> checks;
    /// -1: up to the dimension of X.
    int homology_max_dim = -1;
    std::optional<std::filesystem::path> output_dir;
    /// Use this hypersurface (read with the chart of params) instead of the
    /// one extracted from the construction.
    std::optional<std::filesystem::path> input_x;
    std::optional<int> threads;
};

struct Report {
    nlohmann::json body;
    bool passed = false;
};

/// Builds what the requested checks need, runs them in registry order and,
/// with an output directory, writes the .scx artifacts and report.json.
/// Module errors become failed checks; IoError propagates.
Report run_pipeline(const RunConfig& config);

/// Euler data of the cubical skeleton: orbit-enumeration counts, the closed
/// form they match, the printed formula and whether the two agree.
nlohmann::json euler_oracle(const ConstructionParams& params);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_json(const nlohmann::json& value);
/// The report without its timing fields, for digest comparison.
nlohmann::json without_timings(nlohmann::json report);
std::string sha256_hex(std::string_view data);

} // namespace abg
