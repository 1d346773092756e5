#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <thread>

#include "roomqd/config.hpp"
#include "roomqd/patterns.hpp"
#include "roomqd/room_io.hpp"
#include "roomqd_tools/experiments.hpp"
#include "roomqd_tools/http_service.hpp"

namespace fs = std::filesystem;
using namespace roomqd;
using namespace roomqd::tools;

namespace {

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

EngineConfig base_config(const std::string& config_path, std::uint64_t seed, bool seed_given) {
  EngineConfig c = config_path.empty() ? EngineConfig{} : load_config(config_path);
  if (seed_given) c.seed = seed;
  return c;
}

std::vector<DimensionPair> parse_pairs(const std::string& text) {
  std::vector<DimensionPair> out;
  if (text.empty()) return all_dimension_pairs();
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    const auto dims = parse_dimension_list(item, 5);
    if (dims.size() != 2) throw std::invalid_argument("each pair needs exactly two dimensions: '" + item + "'");
    out.emplace_back(dims[0].kind, dims[1].kind);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

HttpService* g_service = nullptr;
void on_signal(int) {
  if (g_service) std::thread([] { g_service->stop(); }).detach();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive constrained MAP-Elites for tile rooms"};
  app.require_subcommand(1);
  const std::string invocation = command_line(argc, argv);

  // pair-run
  auto* pair = app.add_subcommand("pair-run", "Evolve with two dimensions and export the results");
  std::string pair_dims;
  std::string pair_target = "basic";
  std::string pair_config;
  std::string pair_out;
  long pair_generations = 2100;
  std::uint64_t pair_seed = 1;
  int pair_granularity = 5;
  pair->add_option("--dims", pair_dims, "Two dimensions, e.g. nsp,symmetry (name:g sets granularity)")->required();
  pair->add_option("--target", pair_target, "Room file, or 'basic' / 'complex'");
  pair->add_option("--generations", pair_generations, "Generations to run")->check(CLI::PositiveNumber);
  auto* pair_seed_opt = pair->add_option("--seed", pair_seed, "Random seed");
  pair->add_option("--granularity", pair_granularity, "Bins per dimension")->check(CLI::Range(2, 100));
  pair->add_option("--config", pair_config, "key = value config file")->check(CLI::ExistingFile);
  pair->add_option("--out", pair_out, "Output directory")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "All 21 pairs, the all-dimensions run and the objective baseline");
  std::string sweep_target = "basic";
  std::string sweep_config;
  std::string sweep_out;
  std::string sweep_pairs;
  long sweep_generations = 5000;
  std::uint64_t sweep_seed = 1;
  int sweep_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool sweep_analyze = true;
  sweep->add_option("--target", sweep_target, "Room file, or 'basic' / 'complex'");
  sweep->add_option("--generations", sweep_generations, "Generations per run")->check(CLI::PositiveNumber);
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Random seed");
  sweep->add_option("--config", sweep_config, "key = value config file")->check(CLI::ExistingFile);
  sweep->add_option("--pairs", sweep_pairs, "Subset of pairs, e.g. 'nsp,symmetry;nmp,linearity'");
  sweep->add_option("--jobs", sweep_jobs, "Parallel runs")->check(CLI::PositiveNumber);
  sweep->add_flag("!--no-analysis", sweep_analyze, "Skip the per-run expressive-range exports");
  sweep->add_option("--out", sweep_out, "Output directory")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the session service over HTTP");
  std::string serve_config;
  std::string serve_host = "127.0.0.1";
  std::string serve_target = "basic";
  int serve_port = 8080;
  serve->add_option("--config", serve_config, "Default session config")->check(CLI::ExistingFile);
  serve->add_option("--port", serve_port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--target", serve_target, "Default target room");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Recompute analysis exports from stored era.csv files");
  std::string analyze_in;
  std::string analyze_out;
  analyze->add_option("--in", analyze_in, "Directory holding run outputs")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--out", analyze_out, "Output directory")->required();

  // patterns
  auto* patterns = app.add_subcommand("patterns", "Print the pattern analysis of a room as JSON");
  std::string patterns_room = "basic";
  patterns->add_option("room", patterns_room, "Room file, or 'basic' / 'complex'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pair) {
      EngineConfig config = base_config(pair_config, pair_seed, pair_seed_opt->count() > 0);
      config.dims = parse_dimension_list(pair_dims, pair_granularity);
      if (config.dims.size() != 2) throw std::invalid_argument("--dims needs exactly two dimensions");
      config.validate();
      const Room target = load_target(pair_target);
      RunSpec spec{pair_label(config.dims), RunKind::Pair, config, pair_generations};
      const RunResult r = run_experiment(spec, target);
      write_run(r, target, invocation, pair_out);
      write_analysis(r.data, target, fs::path(pair_out) / "analysis");
      const auto& grid = *r.final_grid;
      std::printf("%s: %d/%zu feasible cells, mean elite %.3f, max %.3f, %zu uniques, %.1fs\n", spec.label.c_str(),
                  grid.occupied_feasible_cells(), grid.cell_count, grid.mean_elite_fitness(),
                  grid.max_elite_fitness(), r.data.size(), r.seconds);
      return 0;
    }

    if (*sweep) {
      EngineConfig config = base_config(sweep_config, sweep_seed, sweep_seed_opt->count() > 0);
      const Room target = load_target(sweep_target);
      const auto specs = sweep_specs(config, sweep_generations, parse_pairs(sweep_pairs));
      const auto results = run_all(specs, target, sweep_jobs);
      std::vector<SummaryRow> rows;
      for (const auto& r : results) {
        const fs::path dir = fs::path(sweep_out) / r.spec.label;
        write_run(r, target, invocation, dir);
        if (sweep_analyze) write_analysis(r.data, target, dir / "analysis");
        rows.push_back(summarize(r));
        std::printf("%-28s %8zu uniques %7.1fs%s\n", r.spec.label.c_str(), r.data.size(), r.seconds,
                    r.final_grid ? (" " + std::to_string(r.final_grid->cell_count) + " cells").c_str() : "");
      }
      write_summary(rows, fs::path(sweep_out) / "summary.csv", fs::path(sweep_out) / "summary.md");
      RunSpec whole{"sweep", RunKind::Pair, config, sweep_generations};
      auto manifest = make_manifest(invocation, whole, target);
      manifest["runs"] = nlohmann::json::array();
      for (const auto& s : specs) manifest["runs"].push_back(s.label);
      write_json(fs::path(sweep_out) / "manifest.json", manifest);
      return 0;
    }

    if (*serve) {
      ServiceOptions opts;
      opts.defaults = base_config(serve_config, 0, false);
      opts.default_target = serve_target;
      load_target(serve_target);
      HttpService service(opts);
      const int port = service.bind(serve_host, serve_port);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::printf("listening on http://%s:%d\n", serve_host.c_str(), port);
      std::fflush(stdout);
      service.listen();
      g_service = nullptr;
      return 0;
    }

    if (*analyze) {
      int count = 0;
      std::vector<fs::path> csvs;
      for (const auto& entry : fs::recursive_directory_iterator(analyze_in)) {
        if (entry.is_regular_file() && entry.path().filename() == "era.csv") csvs.push_back(entry.path());
      }
      std::sort(csvs.begin(), csvs.end());
      for (const auto& csv : csvs) {
        const fs::path run_dir = csv.parent_path();
        Room target = load_target("basic");
        std::optional<DimensionPair> pair;
        int g = 5;
        if (fs::exists(run_dir / "manifest.json")) {
          std::ifstream in(run_dir / "manifest.json");
          const auto m = nlohmann::json::parse(in);
          target = room_from_json(m.at("target"));
          const auto cfg = config_from_json(m.at("config"));
          g = cfg.dims.front().granularity;
          if (m.value("kind", "") == "pair") pair = DimensionPair{cfg.dims[0].kind, cfg.dims[1].kind};
        }
        const EraDataset data = load_csv(csv);
        const fs::path rel = fs::relative(run_dir, analyze_in);
        const fs::path out = fs::path(analyze_out) / rel;
        write_analysis(data, target, out);
        if (!data.empty()) {
          const auto c = coverage(data, pair, g);
          nlohmann::json j = {{"all_dim_coverage", c.all_dim_coverage},
                              {"single_dim_coverage", c.single_dim_coverage},
                              {"avg_fitness", c.avg_fitness},
                              {"feasible_uniques", c.feasible_uniques},
                              {"uniques", data.size()},
                              {"pair_coverage", c.pair_coverage ? nlohmann::json(*c.pair_coverage) : nlohmann::json()}};
          write_json(out / "coverage.json", j);
        }
        ++count;
      }
      if (count == 0) throw std::runtime_error("no era.csv found under " + analyze_in);
      write_json(fs::path(analyze_out) / "manifest.json",
                 {{"tool", "roomqd"}, {"command", invocation}, {"inputs", count}});
      std::printf("analyzed %d run(s)\n", count);
      return 0;
    }

    if (*patterns) {
      const Room room = load_target(patterns_room);
      std::cout << pattern_report_to_json(room, detect(room)).dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
