#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomqd/baseline.hpp"
#include "roomqd/config.hpp"
#include "roomqd/engine.hpp"
#include "roomqd/era.hpp"

namespace roomqd::tools {

enum class RunKind { Pair, AllDimensions, Baseline };

struct RunSpec {
  std::string label;  // e.g. "nsp-symmetry", "all", "baseline"
  RunKind kind = RunKind::Pair;
  EngineConfig config;
  long generations = 0;
};

struct RunResult {
  RunSpec spec;
  EraDataset data;
  std::optional<EliteBroadcast> final_grid;  // MAP-Elites runs only
  CoverageStats coverage;
  std::vector<std::size_t> novel_per_bucket;
  double seconds = 0.0;
};

/// Label for a pair run, "a-b" by dimension names.
std::string pair_label(const std::vector<DimensionDescriptor>& dims);

/// Runs one experiment headless. Pair and all-dimension runs drive the
/// MAP-Elites engine; the baseline drives the objective EA with the same
/// operators. The expressive-range data holds every room alive at a
/// broadcast (every 100 generations), once per layout.
RunResult run_experiment(const RunSpec& spec, const Room& target);

/// The 21 pair runs, the all-dimensions run and the baseline for one seed.
std::vector<RunSpec> sweep_specs(const EngineConfig& base, long generations,
                                 const std::vector<std::pair<Dimension, Dimension>>& pairs);

/// Runs specs on `jobs` worker threads; results keep the order of `specs`.
std::vector<RunResult> run_all(const std::vector<RunSpec>& specs, const Room& target, int jobs);

/// Manifest describing how an output directory was produced.
nlohmann::json make_manifest(const std::string& command, const RunSpec& spec, const Room& target);

/// Writes era.csv, coverage.json, manifest.json and, for MAP-Elites runs,
/// elites.json and elites.svg into `dir`.
void write_run(const RunResult& r, const Room& target, const std::string& command, const std::filesystem::path& dir);

/// Expressive-range exports of one dataset: hexbins for every pair,
/// fitness-by-dimension scatter data and fitness over time, each as CSV
/// plus SVG. The target's scores are marked on every plot.
void write_analysis(const EraDataset& data, const Room& target, const std::filesystem::path& dir);

/// Summary table: one row per run.
struct SummaryRow {
  std::string label;
  std::string dims;
  double avg_fitness = 0.0;
  double all_dim_coverage = 0.0;
  double single_dim_coverage = 0.0;
  std::optional<double> pair_coverage;
  std::size_t feasible_uniques = 0;
  std::size_t uniques = 0;
};

SummaryRow summarize(const RunResult& r);
void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& csv_path,
                   const std::filesystem::path& md_path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Resolves "basic", "complex" or a room file path.
Room load_target(const std::string& preset_or_path);

}  // namespace roomqd::tools
