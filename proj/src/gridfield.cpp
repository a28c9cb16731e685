#include "polysum/gridfield.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "polysum/errors.hpp"

namespace polysum {

std::size_t GridSpec::nx() const {
  return static_cast<std::size_t>(std::llround(bounds.width() / h));
}

std::size_t GridSpec::ny() const {
  return static_cast<std::size_t>(std::llround(bounds.height() / h));
}

std::complex<double> GridSpec::cell_center(std::size_t i, std::size_t j) const {
  return {bounds.x_min + (static_cast<double>(i) + 0.5) * h,
          bounds.y_min + (static_cast<double>(j) + 0.5) * h};
}

GridField::GridField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (spec_.h <= 0 || spec_.bounds.width() <= 0 || spec_.bounds.height() <= 0)
    throw ConfigError("degenerate grid");
  if (values_.size() != spec_.cell_count()) throw ConfigError("grid value count mismatch");
}

bool GridField::masked(std::size_t i, std::size_t j) const { return std::isnan(at(i, j)); }

double GridField::total() const {
  KahanSum s;
  for (double v : values_)
    if (!std::isnan(v)) s.add(v);
  return s.value();
}

double GridField::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values_)
    if (!std::isnan(v)) m = std::min(m, v);
  return m;
}

std::size_t GridField::masked_count() const {
  std::size_t c = 0;
  for (double v : values_)
    if (std::isnan(v)) ++c;
  return c;
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

}  // namespace

void GridField::save_csv(const std::filesystem::path& csv_path) const {
  std::ofstream out(csv_path);
  if (!out) throw ConfigError("cannot open " + csv_path.string());
  out << "x,y,value\n";
  for (std::size_t j = 0; j < ny(); ++j) {
    for (std::size_t i = 0; i < nx(); ++i) {
      std::complex<double> c = spec_.cell_center(i, j);
      out << fmt::format("{},{},{}\n", c.real(), c.imag(), at(i, j));
    }
  }

  nlohmann::ordered_json header;
  header["x_min"] = spec_.bounds.x_min;
  header["x_max"] = spec_.bounds.x_max;
  header["y_min"] = spec_.bounds.y_min;
  header["y_max"] = spec_.bounds.y_max;
  header["h"] = spec_.h;
  header["nx"] = nx();
  header["ny"] = ny();
  std::ofstream hout(sidecar_path(csv_path));
  hout << header.dump(2) << "\n";
}

GridField GridField::load_csv(const std::filesystem::path& csv_path) {
  std::ifstream hin(sidecar_path(csv_path));
  if (!hin) throw ConfigError("missing grid header " + sidecar_path(csv_path).string());
  nlohmann::json header = nlohmann::json::parse(hin);
  GridSpec spec;
  spec.bounds = {header.at("x_min"), header.at("x_max"), header.at("y_min"), header.at("y_max")};
  spec.h = header.at("h");

  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open " + csv_path.string());
  std::string line;
  std::getline(in, line);  // header row
  std::vector<double> values;
  values.reserve(spec.cell_count());
  while (std::getline(in, line)) {
    auto last_comma = line.rfind(',');
    if (last_comma == std::string::npos) continue;
    values.push_back(std::strtod(line.c_str() + last_comma + 1, nullptr));
  }
  return GridField(spec, std::move(values));
}

}  // namespace polysum
