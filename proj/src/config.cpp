#include "polysum/config.hpp"

#include <cstdlib>
#include <fstream>

#include "polysum/errors.hpp"

namespace polysum {

namespace {

std::complex<double> parse_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError("complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Rect parse_rect(const nlohmann::json& j) {
  return {j.at("x_min").get<double>(), j.at("x_max").get<double>(),
          j.at("y_min").get<double>(), j.at("y_max").get<double>()};
}

}  // namespace

RootMeasure parse_measure(const nlohmann::json& spec) {
  std::string type = spec.at("type").get<std::string>();
  if (type == "uniform_disk") {
    return RootMeasure::uniform_disk(parse_complex(spec.at("center")),
                                     spec.at("radius").get<double>());
  }
  if (type == "uniform_circle") {
    return RootMeasure::uniform_circle(parse_complex(spec.at("center")),
                                       spec.at("radius").get<double>());
  }
  if (type == "atomic") {
    std::vector<Atom> atoms;
    for (const auto& a : spec.at("atoms"))
      atoms.push_back({parse_complex(a.at("point")), a.at("weight").get<double>()});
    return RootMeasure::atomic(std::move(atoms));
  }
  if (type == "mixture") {
    std::vector<RootMeasure> comps;
    std::vector<double> weights;
    for (const auto& c : spec.at("components")) {
      comps.push_back(parse_measure(c.at("measure")));
      weights.push_back(c.at("weight").get<double>());
    }
    return RootMeasure::mixture(std::move(comps), std::move(weights));
  }
  throw ConfigError("unknown measure type: " + type);
}

namespace {

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (o.threads) cfg.threads = *o.threads;
  if (o.n) cfg.n_list = {*o.n};
  if (o.trials) cfg.trials = *o.trials;
  if (o.grid_h) {
    cfg.grid_h = *o.grid_h;
    if (cfg.grid) cfg.grid->h = *o.grid_h;
  }
  if (const char* env = std::getenv("POLYSUM_OUT")) cfg.output_dir = env;
}

void validate(const ExperimentConfig& cfg, bool require_seed) {
  if (require_seed && cfg.seed == 0)
    throw ConfigError("a nonzero seed is required (config \"seed\" or --seed)");
  for (int n : cfg.n_list)
    if (n < 2) throw ConfigError("n must be >= 2");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path, const CliOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  cfg.raw = j;
  try {
    for (const auto& m : j.at("measures")) cfg.measures.push_back(parse_measure(m));
    if (j.contains("n")) {
      if (j["n"].is_array())
        for (const auto& v : j["n"]) cfg.n_list.push_back(v.get<int>());
      else
        cfg.n_list = {j["n"].get<int>()};
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grid")) {
      GridSpec g;
      g.bounds = parse_rect(j["grid"]);
      g.h = j["grid"].at("h").get<double>();
      cfg.grid = g;
      cfg.grid_h = g.h;
    }
    if (j.contains("grid_h")) cfg.grid_h = j["grid_h"].get<double>();
    if (j.contains("bumps")) {
      for (const auto& b : j["bumps"]) {
        BumpFunction phi{parse_complex(b.at("center")), b.at("radius").get<double>(),
                         b.value("amplitude", 1.0)};
        if (!(phi.radius > 0)) throw ConfigError("bump radius must be positive");
        cfg.bumps.push_back(phi);
      }
    }
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("probe_region")) {
      const auto& p = j["probe_region"];
      std::string type = p.value("type", "rect");
      if (type == "rect")
        cfg.probe_region = parse_rect(p);
      else if (type == "disk")
        cfg.probe_region = DiskRegion{parse_complex(p.at("center")), p.at("radius").get<double>()};
      else
        throw ConfigError("unknown probe_region type: " + type);
    }
    if (j.contains("K")) cfg.region_k = parse_rect(j["K"]);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }

  apply_overrides(cfg, overrides);
  validate(cfg, /*require_seed=*/true);

  nlohmann::ordered_json canonical = cfg.raw;
  canonical["seed"] = cfg.seed;  // overrides participate in the hash
  if (!cfg.n_list.empty()) canonical["n"] = cfg.n_list;
  canonical["trials"] = cfg.trials;
  cfg.config_hash = fnv1a(canonical.dump());
  return cfg;
}

ExperimentConfig config_from_overrides(const CliOverrides& overrides) {
  ExperimentConfig cfg;
  apply_overrides(cfg, overrides);
  if (cfg.n_list.empty()) cfg.n_list = {100};
  validate(cfg, /*require_seed=*/true);
  cfg.config_hash = fnv1a(nlohmann::ordered_json({{"seed", cfg.seed}}).dump());
  return cfg;
}

}  // namespace polysum
