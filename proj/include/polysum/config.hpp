#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polysum/gridfield.hpp"
#include "polysum/limitlaw.hpp"
#include "polysum/measures.hpp"
#include "polysum/stats.hpp"

namespace polysum {

// One experiment, loaded from a JSON config file; CLI flags override file
// values, and the POLYSUM_OUT environment variable overrides the output
// directory.
struct ExperimentConfig {
  std::vector<RootMeasure> measures;
  std::vector<int> n_list;     // "n" may be an integer or a list
  int trials = 1;
  std::uint64_t seed = 0;      // required: no wall-clock default
  std::optional<GridSpec> grid;
  std::vector<BumpFunction> bumps;
  std::filesystem::path output_dir = "out";
  int threads = 0;             // 0 = library default
  std::optional<ProbeRegion> probe_region;
  std::optional<Rect> region_k;
  double grid_h = 0.01;

  std::uint64_t config_hash = 0;  // FNV-1a over the canonical config dump
  nlohmann::ordered_json raw;
};

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<int> n;
  std::optional<int> trials;
  std::optional<double> grid_h;
};

RootMeasure parse_measure(const nlohmann::json& spec);

ExperimentConfig load_config(const std::filesystem::path& path, const CliOverrides& overrides);

// Config assembled from overrides alone (verify can run without a file).
ExperimentConfig config_from_overrides(const CliOverrides& overrides);

}  // namespace polysum
