#include "roomqd_tools/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "roomqd/fitness.hpp"
#include "roomqd/plots.hpp"
#include "roomqd/protocol.hpp"
#include "roomqd/room_io.hpp"
#include "roomqd/targets.hpp"

#ifndef ROOMQD_VERSION
#define ROOMQD_VERSION "unknown"
#endif

namespace roomqd::tools {

using nlohmann::json;

std::string pair_label(const std::vector<DimensionDescriptor>& dims) {
  std::string out;
  for (const auto& d : dims) {
    if (!out.empty()) out += '-';
    out += name(d.kind);
  }
  return out;
}

RunResult run_experiment(const RunSpec& spec, const Room& target) {
  RunResult r;
  r.spec = spec;
  const auto t0 = std::chrono::steady_clock::now();
  EraLogger logger;
  auto observer = [&logger](const Individual& ind, long gen) { logger(ind, gen); };
  if (spec.kind == RunKind::Baseline) {
    auto log = run_objective_baseline(spec.config, target, spec.generations, observer);
    r.novel_per_bucket = log.novel_per_bucket;
  } else {
    r.final_grid = run_map_elites(spec.config, target, spec.generations, observer);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.data = logger.take();
  if (r.novel_per_bucket.empty()) r.novel_per_bucket = r.data.uniques_per_bucket();
  std::optional<DimensionPair> pair;
  if (spec.kind == RunKind::Pair && spec.config.dims.size() == 2) {
    pair = DimensionPair{spec.config.dims[0].kind, spec.config.dims[1].kind};
  }
  const int g = spec.config.dims.empty() ? 5 : spec.config.dims.front().granularity;
  if (!r.data.empty()) r.coverage = coverage(r.data, pair, g);
  return r;
}

std::vector<RunSpec> sweep_specs(const EngineConfig& base, long generations,
                                 const std::vector<std::pair<Dimension, Dimension>>& pairs) {
  const int g = base.dims.empty() ? 5 : base.dims.front().granularity;
  std::vector<RunSpec> specs;
  for (const auto& [a, b] : pairs) {
    RunSpec s{"", RunKind::Pair, base, generations};
    s.config.dims = {{a, g}, {b, g}};
    s.label = pair_label(s.config.dims);
    specs.push_back(std::move(s));
  }
  RunSpec all{"all", RunKind::AllDimensions, base, generations};
  all.config.dims.clear();
  for (Dimension d : kAllDimensions) all.config.dims.push_back({d, g});
  specs.push_back(std::move(all));
  RunSpec baseline{"baseline", RunKind::Baseline, base, generations};
  baseline.config.dims = {{Dimension::Nsp, g}, {Dimension::Symmetry, g}};
  specs.push_back(std::move(baseline));
  return specs;
}

std::vector<RunResult> run_all(const std::vector<RunSpec>& specs, const Room& target, int jobs) {
  std::vector<RunResult> results(specs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= specs.size()) return;
      try {
        results[i] = run_experiment(specs[i], target);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

json make_manifest(const std::string& command, const RunSpec& spec, const Room& target) {
  const char* kind = spec.kind == RunKind::Pair ? "pair" : spec.kind == RunKind::AllDimensions ? "all_dimensions"
                                                                                               : "baseline";
  return {{"tool", "roomqd"},
          {"version", ROOMQD_VERSION},
          {"compiler", __VERSION__},
          {"command", command},
          {"run", spec.label},
          {"kind", kind},
          {"generations", spec.generations},
          {"seed", spec.config.seed},
          {"config", config_to_json(spec.config)},
          {"target", room_to_json(target)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

namespace {

json coverage_json(const CoverageStats& c, std::size_t uniques) {
  json j = {{"all_dim_coverage", c.all_dim_coverage},
            {"single_dim_coverage", c.single_dim_coverage},
            {"avg_fitness", c.avg_fitness},
            {"feasible_uniques", c.feasible_uniques},
            {"uniques", uniques}};
  j["pair_coverage"] = c.pair_coverage ? json(*c.pair_coverage) : json(nullptr);
  return j;
}

}  // namespace

void write_run(const RunResult& r, const Room& target, const std::string& command, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_csv(r.data, dir / "era.csv");
  json cov = coverage_json(r.coverage, r.data.size());
  cov["novel_per_bucket"] = r.novel_per_bucket;
  write_json(dir / "coverage.json", cov);
  if (r.final_grid) {
    write_json(dir / "elites.json", broadcast_to_json(*r.final_grid));
    write_text(dir / "elites.svg", elite_grid_svg(*r.final_grid));
  }
  json manifest = make_manifest(command, r.spec, target);
  manifest["cells"] = r.final_grid ? json(r.final_grid->cell_count) : json(nullptr);
  write_json(dir / "manifest.json", manifest);
}

void write_analysis(const EraDataset& data, const Room& target, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto target_scores = evaluate_room(target, FitnessContext::build(target)).scores;
  auto score = [&](Dimension d) { return target_scores[static_cast<std::size_t>(d)]; };
  for (const auto& [a, b] : all_dimension_pairs()) {
    const std::string stem = "hexbin_" + std::string(name(a)) + "_" + std::string(name(b));
    const auto bins = hexbin_export(data, a, b);
    std::ostringstream csv;
    write_hexbin_csv(bins, csv);
    write_text(dir / (stem + ".csv"), csv.str());
    write_text(dir / (stem + ".svg"), hexbin_svg(bins, name(a), name(b), std::pair{score(a), score(b)}));
  }
  if (!data.feasible_only().empty()) {
    json corr = json::object();
    for (const auto& df : fitness_by_dimension(data)) {
      const std::string dim(name(df.dim));
      std::string csv = "score,fitness\n";
      char buf[64];
      for (const auto& [s, f] : df.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s, f);
        csv += buf;
      }
      write_text(dir / ("fitness_by_" + dim + ".csv"), csv);
      write_text(dir / ("fitness_by_" + dim + ".svg"), scatter_svg(df, score(df.dim)));
      corr[dim] = df.pearson_r;
    }
    write_json(dir / "fitness_correlation.json", corr);
  }
  const auto series = fitness_over_time(data);
  std::ostringstream csv;
  write_fitness_over_time_csv(series, csv);
  write_text(dir / "fitness_over_time.csv", csv.str());
  write_text(dir / "fitness_over_time.svg", fitness_over_time_svg(series));
}

SummaryRow summarize(const RunResult& r) {
  SummaryRow row;
  row.label = r.spec.label;
  row.dims = r.spec.kind == RunKind::Baseline ? "objective" : pair_label(r.spec.config.dims);
  row.avg_fitness = r.coverage.avg_fitness;
  row.all_dim_coverage = r.coverage.all_dim_coverage;
  row.single_dim_coverage = r.coverage.single_dim_coverage;
  row.pair_coverage = r.coverage.pair_coverage;
  row.feasible_uniques = r.coverage.feasible_uniques;
  row.uniques = r.data.size();
  return row;
}

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& csv_path,
                   const std::filesystem::path& md_path) {
  char buf[256];
  std::string csv = "run,dims,avg_fitness,all_dim_coverage,single_dim_coverage,pair_coverage,feasible_uniques,uniques\n";
  std::string md = "| run | avg fitness | coverage (21 pairs) | coverage (7 dims) | pair coverage | feasible uniques |\n"
                   "|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    const std::string pc = r.pair_coverage ? std::to_string(*r.pair_coverage) : "";
    std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.4f,%.4f,%s,%zu,%zu\n", r.label.c_str(), r.dims.c_str(), r.avg_fitness,
                  r.all_dim_coverage, r.single_dim_coverage, pc.c_str(), r.feasible_uniques, r.uniques);
    csv += buf;
    char pcs[32] = "";
    if (r.pair_coverage) std::snprintf(pcs, sizeof pcs, "%.1f%%", *r.pair_coverage);
    std::snprintf(buf, sizeof buf, "| %s | %.3f | %.2f%% | %.2f%% | %s | %zu |\n", r.label.c_str(), r.avg_fitness,
                  r.all_dim_coverage, r.single_dim_coverage, pcs, r.feasible_uniques);
    md += buf;
  }
  write_text(csv_path, csv);
  write_text(md_path, md);
}

Room load_target(const std::string& preset_or_path) {
  if (preset_or_path == "basic") return basic_room();
  if (preset_or_path == "complex") return complex_room();
  return load_room(preset_or_path);
}

}  // namespace roomqd::tools
