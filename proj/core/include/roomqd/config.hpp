#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomqd/dimensions.hpp"

namespace roomqd {

struct EngineConfig {
  int pop_size = 1000;
  int cell_capacity = 25;
  int publish_gen = 100;
  int parents_per_population = 5;
  int tournament_size = 3;
  double mutation_rate = 0.30;
  // Per-tile chance used when seeding the population from the target.
  double init_mutation_rate = 0.25;
  std::uint64_t seed = 1;
  std::vector<DimensionDescriptor> dims = {{Dimension::Nsp, 5}, {Dimension::Symmetry, 5}};
  LeniencyWeights leniency{};

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Checks 2..7 distinct dimensions with granularity >= 2.
void validate_dimensions(const std::vector<DimensionDescriptor>& dims);

/// Parses "nsp,symmetry" or "nsp:5,symmetry:3"; entries without an explicit
/// granularity use `granularity`. Throws std::invalid_argument.
std::vector<DimensionDescriptor> parse_dimension_list(std::string_view text, int granularity);

/// Config file: one `key = value` per line, '#' starts a comment.
/// Keys: pop_size, cell_capacity, publish_gen, parents_per_population,
/// tournament_size, mutation_rate, init_mutation_rate, seed, granularity, dims, leniency_weights.
EngineConfig parse_config(std::string_view text, EngineConfig base = {});
EngineConfig load_config(const std::filesystem::path& path, EngineConfig base = {});
std::string format_config(const EngineConfig& config);

nlohmann::json config_to_json(const EngineConfig& config);
EngineConfig config_from_json(const nlohmann::json& j, EngineConfig base = {});

}  // namespace roomqd
