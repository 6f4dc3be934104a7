#include "cqed/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace cqed {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0))
    throw ConfigError("grid step must be positive");
  if (stop < start)
    throw ConfigError("grid stop must not precede start");
  std::vector<double> out;
  const long n = std::lround((stop - start) / step);
  out.reserve(static_cast<size_t>(n) + 1);
  for (long i = 0;; ++i) {
    const double x = start + static_cast<double>(i) * step;
    if (x > stop + 0.5 * step) break;
    out.push_back(std::min(x, stop));
  }
  return out;
}

void RunConfig::validate() const {
  try {
    line.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("line: ") + e.what());
  }
  try {
    spatial.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("spatial: ") + e.what());
  }
  try {
    mf_distribution.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("mf_distribution: ") + e.what());
  }
  if (atom_numbers.empty())
    throw ConfigError("atom_number: at least one value required");
  for (double n : atom_numbers)
    if (!(n >= 0.0) || !std::isfinite(n))
      throw ConfigError("atom_number: values must be finite and >= 0");
  try {
    (void)cavity_grid.points();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cavity_grid_MHz: ") + e.what());
  }
  try {
    (void)probe_grid.points();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("probe_grid_MHz: ") + e.what());
  }
  if (output_format != "csv" && output_format != "json")
    throw ConfigError("output_format: must be \"csv\" or \"json\"");
  if (!(threshold_floor >= 0.0))
    throw ConfigError("threshold: floor must be >= 0");
}

namespace {

void require_keys(const json& node, const std::string& path,
                  const std::set<std::string>& known) {
  for (const auto& item : node.items()) {
    if (!known.count(item.key()))
      throw ConfigError("unknown key: " +
                        (path.empty() ? item.key() : path + "." + item.key()));
  }
}

double number_at(const json& node, const std::string& path) {
  if (!node.is_number())
    throw ConfigError(path + ": expected a number");
  return node.get<double>();
}

GridSpec parse_grid(const json& node, const std::string& path, GridSpec fallback) {
  if (!node.is_object()) throw ConfigError(path + ": expected an object");
  require_keys(node, path, {"start", "stop", "step"});
  GridSpec grid = fallback;
  if (node.contains("start")) grid.start = number_at(node["start"], path + ".start");
  if (node.contains("stop")) grid.stop = number_at(node["stop"], path + ".stop");
  if (node.contains("step")) grid.step = number_at(node["step"], path + ".step");
  return grid;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  require_keys(root, "",
               {"line", "spatial", "mf_distribution", "atom_number",
                "cavity_grid_MHz", "probe_grid_MHz", "output_format",
                "threshold", "seed"});

  RunConfig config;

  if (root.contains("line")) {
    const json& line = root["line"];
    if (!line.is_object()) throw ConfigError("line: expected an object");
    require_keys(line, "line",
                 {"offset_Fprime1_MHz", "offset_Fprime2_MHz", "g_max_MHz",
                  "kappa_MHz", "gamma_MHz"});
    if (line.contains("offset_Fprime1_MHz"))
      config.line.hyperfine_offsets[0] =
          number_at(line["offset_Fprime1_MHz"], "line.offset_Fprime1_MHz");
    if (line.contains("offset_Fprime2_MHz"))
      config.line.hyperfine_offsets[1] =
          number_at(line["offset_Fprime2_MHz"], "line.offset_Fprime2_MHz");
    if (line.contains("g_max_MHz"))
      config.line.g_max = number_at(line["g_max_MHz"], "line.g_max_MHz");
    if (line.contains("kappa_MHz"))
      config.line.kappa = number_at(line["kappa_MHz"], "line.kappa_MHz");
    if (line.contains("gamma_MHz"))
      config.line.gamma = number_at(line["gamma_MHz"], "line.gamma_MHz");
  }
  config.spatial.g_max = config.line.g_max;

  if (root.contains("spatial")) {
    const json& spatial = root["spatial"];
    if (!spatial.is_object()) throw ConfigError("spatial: expected an object");
    require_keys(spatial, "spatial", {"axial", "transverse"});
    if (spatial.contains("axial")) {
      const json& axial = spatial["axial"];
      if (axial.is_string() && axial.get<std::string>() == "uniform") {
        config.spatial.axial = AxialDistribution::kUniform;
      } else if (axial.is_array()) {
        config.spatial.axial = AxialDistribution::kFixedPositions;
        config.spatial.positions_kz.clear();
        for (size_t i = 0; i < axial.size(); ++i)
          config.spatial.positions_kz.push_back(
              number_at(axial[i], "spatial.axial[" + std::to_string(i) + "]"));
      } else {
        throw ConfigError(
            "spatial.axial: expected \"uniform\" or an array of kz phases");
      }
    }
    if (spatial.contains("transverse") && !spatial["transverse"].is_null()) {
      const json& tv = spatial["transverse"];
      if (!tv.is_object())
        throw ConfigError("spatial.transverse: expected an object or null");
      require_keys(tv, "spatial.transverse",
                   {"waist_um", "trap_depth_uK", "temperature_uK"});
      TransverseModel model;
      if (tv.contains("waist_um"))
        model.waist_um = number_at(tv["waist_um"], "spatial.transverse.waist_um");
      if (tv.contains("trap_depth_uK"))
        model.trap_depth_uK =
            number_at(tv["trap_depth_uK"], "spatial.transverse.trap_depth_uK");
      if (tv.contains("temperature_uK"))
        model.temperature_uK = number_at(tv["temperature_uK"],
                                         "spatial.transverse.temperature_uK");
      config.spatial.transverse = model;
    }
  }

  if (root.contains("mf_distribution")) {
    const json& dist = root["mf_distribution"];
    if (dist.is_string() && dist.get<std::string>() == "equal") {
      config.mf_distribution = MfDistribution::equal_populations();
    } else if (dist.is_array() && dist.size() == 5) {
      for (size_t i = 0; i < 5; ++i)
        config.mf_distribution.p[i] = number_at(
            dist[i], "mf_distribution[" + std::to_string(i) + "]");
    } else {
      throw ConfigError(
          "mf_distribution: expected \"equal\" or an array of five "
          "populations for m_F = -2..+2");
    }
  }

  if (root.contains("atom_number")) {
    const json& n = root["atom_number"];
    config.atom_numbers.clear();
    if (n.is_number()) {
      config.atom_numbers.push_back(n.get<double>());
    } else if (n.is_array() && !n.empty()) {
      for (size_t i = 0; i < n.size(); ++i)
        config.atom_numbers.push_back(
            number_at(n[i], "atom_number[" + std::to_string(i) + "]"));
    } else {
      throw ConfigError("atom_number: expected a number or a non-empty array");
    }
  }

  if (root.contains("cavity_grid_MHz"))
    config.cavity_grid =
        parse_grid(root["cavity_grid_MHz"], "cavity_grid_MHz", config.cavity_grid);
  if (root.contains("probe_grid_MHz"))
    config.probe_grid =
        parse_grid(root["probe_grid_MHz"], "probe_grid_MHz", config.probe_grid);

  if (root.contains("output_format")) {
    if (!root["output_format"].is_string())
      throw ConfigError("output_format: expected a string");
    config.output_format = root["output_format"].get<std::string>();
  }

  if (root.contains("threshold")) {
    const json& threshold = root["threshold"];
    if (threshold.is_boolean()) {
      config.threshold_enabled = threshold.get<bool>();
    } else if (threshold.is_number()) {
      config.threshold_enabled = true;
      config.threshold_floor = threshold.get<double>();
    } else {
      throw ConfigError("threshold: expected a boolean or a number");
    }
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned())
      throw ConfigError("seed: expected a non-negative integer");
    config.seed = root["seed"].get<unsigned long long>();
  }

  config.validate();
  return config;
}

std::string serialize_config(const RunConfig& config) {
  json root;
  root["line"] = {{"offset_Fprime1_MHz", config.line.hyperfine_offsets[0]},
                  {"offset_Fprime2_MHz", config.line.hyperfine_offsets[1]},
                  {"g_max_MHz", config.line.g_max},
                  {"kappa_MHz", config.line.kappa},
                  {"gamma_MHz", config.line.gamma}};

  json spatial;
  if (config.spatial.axial == AxialDistribution::kUniform)
    spatial["axial"] = "uniform";
  else
    spatial["axial"] = config.spatial.positions_kz;
  if (config.spatial.transverse) {
    spatial["transverse"] = {
        {"waist_um", config.spatial.transverse->waist_um},
        {"trap_depth_uK", config.spatial.transverse->trap_depth_uK},
        {"temperature_uK", config.spatial.transverse->temperature_uK}};
  }
  root["spatial"] = spatial;

  root["mf_distribution"] = config.mf_distribution.p;
  if (config.atom_numbers.size() == 1)
    root["atom_number"] = config.atom_numbers.front();
  else
    root["atom_number"] = config.atom_numbers;
  root["cavity_grid_MHz"] = {{"start", config.cavity_grid.start},
                             {"stop", config.cavity_grid.stop},
                             {"step", config.cavity_grid.step}};
  root["probe_grid_MHz"] = {{"start", config.probe_grid.start},
                            {"stop", config.probe_grid.stop},
                            {"step", config.probe_grid.step}};
  root["output_format"] = config.output_format;
  if (config.threshold_enabled)
    root["threshold"] = config.threshold_floor;
  else
    root["threshold"] = false;
  root["seed"] = config.seed;
  return root.dump(2) + "\n";
}

}  // namespace cqed
