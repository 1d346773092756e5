#include "roomqd/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace roomqd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
  return out;
}

}  // namespace

void validate_dimensions(const std::vector<DimensionDescriptor>& dims) {
  if (dims.size() < 2 || dims.size() > kDimensionCount) {
    throw std::invalid_argument("dimension list must have 2..7 entries, got " + std::to_string(dims.size()));
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].granularity < 2) throw std::invalid_argument("granularity must be >= 2");
    for (std::size_t j = 0; j < i; ++j) {
      if (dims[i].kind == dims[j].kind) {
        throw std::invalid_argument("dimension '" + std::string(name(dims[i].kind)) + "' listed twice");
      }
    }
  }
}

void EngineConfig::validate() const {
  auto positive = [](int v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
  };
  positive(pop_size, "pop_size");
  positive(cell_capacity, "cell_capacity");
  positive(publish_gen, "publish_gen");
  positive(parents_per_population, "parents_per_population");
  positive(tournament_size, "tournament_size");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("mutation_rate must lie in [0, 1]");
  }
  if (!(init_mutation_rate >= 0.0 && init_mutation_rate <= 1.0)) {
    throw std::invalid_argument("init_mutation_rate must lie in [0, 1]");
  }
  validate_dimensions(dims);
  leniency.validate();
}

std::vector<DimensionDescriptor> parse_dimension_list(std::string_view text, int granularity) {
  std::vector<DimensionDescriptor> dims;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty dimension name");
    const auto colon = item.find(':');
    const std::string label = trim(item.substr(0, colon));
    const auto kind = parse_dimension(label);
    if (!kind) throw std::invalid_argument("unknown dimension '" + label + "'");
    int g = granularity;
    if (colon != std::string::npos) g = static_cast<int>(to_integer("granularity", trim(item.substr(colon + 1))));
    dims.push_back({*kind, g});
  }
  validate_dimensions(dims);
  return dims;
}

EngineConfig parse_config(std::string_view text, EngineConfig base) {
  std::string dims_text;
  int granularity = base.dims.empty() ? 5 : base.dims.front().granularity;
  bool granularity_set = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "pop_size") base.pop_size = static_cast<int>(to_integer(key, value));
    else if (key == "cell_capacity") base.cell_capacity = static_cast<int>(to_integer(key, value));
    else if (key == "publish_gen") base.publish_gen = static_cast<int>(to_integer(key, value));
    else if (key == "parents_per_population") base.parents_per_population = static_cast<int>(to_integer(key, value));
    else if (key == "tournament_size") base.tournament_size = static_cast<int>(to_integer(key, value));
    else if (key == "mutation_rate") base.mutation_rate = to_real(key, value);
    else if (key == "init_mutation_rate") base.init_mutation_rate = to_real(key, value);
    else if (key == "seed") base.seed = static_cast<std::uint64_t>(to_integer(key, value));
    else if (key == "granularity") {
      granularity = static_cast<int>(to_integer(key, value));
      granularity_set = true;
    } else if (key == "dims") dims_text = value;
    else if (key == "leniency_weights") {
      const auto parts = split(value, ',');
      if (parts.size() != 3) throw std::invalid_argument("leniency_weights needs three values");
      base.leniency = {to_real(key, parts[0]), to_real(key, parts[1]), to_real(key, parts[2])};
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!dims_text.empty()) {
    base.dims = parse_dimension_list(dims_text, granularity);
  } else if (granularity_set) {
    for (auto& d : base.dims) d.granularity = granularity;
  }
  base.validate();
  return base;
}

EngineConfig load_config(const std::filesystem::path& path, EngineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const EngineConfig& c) {
  std::ostringstream out;
  out << "pop_size = " << c.pop_size << "\n"
      << "cell_capacity = " << c.cell_capacity << "\n"
      << "publish_gen = " << c.publish_gen << "\n"
      << "parents_per_population = " << c.parents_per_population << "\n"
      << "tournament_size = " << c.tournament_size << "\n"
      << "mutation_rate = " << c.mutation_rate << "\n"
      << "init_mutation_rate = " << c.init_mutation_rate << "\n"
      << "seed = " << c.seed << "\n"
      << "dims = ";
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    out << (i ? "," : "") << name(c.dims[i].kind) << ":" << c.dims[i].granularity;
  }
  out << "\nleniency_weights = " << c.leniency.enemy_sparsity << "," << c.leniency.enemy_density << ","
      << c.leniency.door_safety << "\n";
  return out.str();
}

nlohmann::json config_to_json(const EngineConfig& c) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& d : c.dims) dims.push_back({{"kind", name(d.kind)}, {"granularity", d.granularity}});
  return {{"pop_size", c.pop_size},
          {"cell_capacity", c.cell_capacity},
          {"publish_gen", c.publish_gen},
          {"parents_per_population", c.parents_per_population},
          {"tournament_size", c.tournament_size},
          {"mutation_rate", c.mutation_rate},
          {"init_mutation_rate", c.init_mutation_rate},
          {"seed", c.seed},
          {"dims", dims},
          {"leniency_weights",
           {c.leniency.enemy_sparsity, c.leniency.enemy_density, c.leniency.door_safety}}};
}

EngineConfig config_from_json(const nlohmann::json& j, EngineConfig base) {
  try {
    if (j.contains("pop_size")) base.pop_size = j.at("pop_size").get<int>();
    if (j.contains("cell_capacity")) base.cell_capacity = j.at("cell_capacity").get<int>();
    if (j.contains("publish_gen")) base.publish_gen = j.at("publish_gen").get<int>();
    if (j.contains("parents_per_population")) base.parents_per_population = j.at("parents_per_population").get<int>();
    if (j.contains("tournament_size")) base.tournament_size = j.at("tournament_size").get<int>();
    if (j.contains("mutation_rate")) base.mutation_rate = j.at("mutation_rate").get<double>();
    if (j.contains("init_mutation_rate")) base.init_mutation_rate = j.at("init_mutation_rate").get<double>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("dims")) {
      base.dims.clear();
      for (const auto& d : j.at("dims")) {
        const auto label = d.at("kind").get<std::string>();
        const auto kind = parse_dimension(label);
        if (!kind) throw std::invalid_argument("unknown dimension '" + label + "'");
        base.dims.push_back({*kind, d.value("granularity", 5)});
      }
    }
    if (j.contains("leniency_weights")) {
      const auto w = j.at("leniency_weights").get<std::vector<double>>();
      if (w.size() != 3) throw std::invalid_argument("leniency_weights needs three values");
      base.leniency = {w[0], w[1], w[2]};
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace roomqd
