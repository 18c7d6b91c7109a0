#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wrinkle/grid.hpp"
#include "wrinkle/params.hpp"

namespace wrinkle {

struct GridSpec {
  std::size_t n = 0;  // 0: default_node_count for the thickness at hand
  Refinement refinement = Refinement::uniform;
};

// Exactly one way of listing thicknesses is active: an explicit list, a
// geometric range (start, stop, points), or halving from `start` within a
// sample budget.
struct SweepSpec {
  std::vector<double> h;
  double start = 1e-2;
  std::optional<double> stop;
  std::optional<int> points;
  std::size_t budget = std::size_t{1} << 22;
};

struct RunConfig {
  SheetParams params;
  GridSpec grid;
  SweepSpec sweep;
  std::string unit = "m";  // label for the common length unit; metadata only
  std::string output = "out";
  int jobs = 0;  // 0: available parallelism
  std::optional<std::uint64_t> seed;
  std::size_t lemma1_cases = 50;
};

// Parses JSON text. Unknown keys and ill-typed values throw ValidationError.
// `overrides` are "key.path=value" strings applied before validation; values
// are read as JSON when they parse as JSON and as strings otherwise.
RunConfig parse_config(const std::string& text, std::span<const std::string> overrides = {});
RunConfig load_config(const std::filesystem::path& path,
                      std::span<const std::string> overrides = {});
std::string config_json(const RunConfig& config);

// The thickness list described by config.sweep.
std::vector<double> sweep_h_list(const RunConfig& config);

}  // namespace wrinkle
