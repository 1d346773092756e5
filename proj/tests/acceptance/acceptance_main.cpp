// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any fails. Pass criterion names to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "roomqd/baseline.hpp"
#include "roomqd/dimensions.hpp"
#include "roomqd/engine.hpp"
#include "roomqd/era.hpp"
#include "roomqd/fitness.hpp"
#include "roomqd/patterns.hpp"
#include "roomqd/protocol.hpp"
#include "roomqd/targets.hpp"
#include "roomqd_tools/experiments.hpp"

using namespace roomqd;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ------------------------------------------------------------- formulas

// Pattern graph straight from the oracle's segmentation.
std::vector<std::vector<int>> oracle_graph(const Room& room, const oracle::Segmentation& seg) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(seg.total()));
  for (int y = 0; y < room.rows(); ++y) {
    for (int x = 0; x < room.cols(); ++x) {
      const int a = seg.owner[static_cast<std::size_t>(room.index({x, y}))];
      if (a < 0) continue;
      for (Coord n : {Coord{x + 1, y}, Coord{x, y + 1}}) {
        if (!room.in_bounds(n)) continue;
        const int b = seg.owner[static_cast<std::size_t>(room.index(n))];
        if (b < 0 || b == a) continue;
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
      }
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : adj) out.emplace_back(s.begin(), s.end());
  return out;
}

Outcome formulas() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const Room target = complex_room();
  const auto target_profile = oracle::profile(target);
  const auto lib_target_profile = micro_profile(target, detect(target));
  double worst = 0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };

  for (int i = 0; i < 100; ++i) {
    const Room r = oracle::random_room(rng);
    const Room other = oracle::random_room(rng);
    const auto rep = detect(r);
    const auto seg = oracle::segment(r);
    const auto p = micro_profile(r, rep);
    const auto o = oracle::profile(r);
    track(symmetry(r), oracle::symmetry(r));
    track(similarity(r, other), oracle::similarity(r, other));
    track(similarity(r, target), oracle::similarity(r, target));
    track(nmp(rep, r), oracle::nmp(seg.meso, r.cols(), r.rows()));
    track(nsp(rep, r), oracle::nsp(seg.total(), r.cols(), r.rows()));
    for (std::size_t k = 0; k < 3; ++k) {
      track(p.kinds[k].density, o.den[k]);
      track(p.kinds[k].sparsity, o.spa[k]);
    }
    track(inner_similarity(p, lib_target_profile), oracle::inner_similarity(o, target_profile));
    const double ds = oracle::door_safety(r);
    track(door_safety(r), ds);
    track(leniency(p, door_safety(r), {}), oracle::leniency(o, ds, 0.4, 0.4, 0.2));
  }
  const bool formulas_ok = worst <= 1e-9;

  // linearity on real pattern graphs of at most 8 nodes
  int rooms = 0;
  double worst_lin = 0;
  for (int attempt = 0; attempt < 200000 && rooms < 100; ++attempt) {
    oracle::RoomDraw draw;
    draw.wall = 0.04 * static_cast<double>(attempt % 4);
    const Room r = oracle::random_room(rng, draw);
    const auto seg = oracle::segment(r);
    if (seg.total() > 8) continue;
    ++rooms;
    const auto g = oracle_graph(r, seg);
    std::vector<int> door_patterns;
    std::size_t neighbors = 0;
    for (const auto& d : r.doors()) {
      const int owner = seg.owner[static_cast<std::size_t>(r.index(d))];
      door_patterns.push_back(owner);
      neighbors += g[static_cast<std::size_t>(owner)].size();
    }
    std::sort(door_patterns.begin(), door_patterns.end());
    door_patterns.erase(std::unique(door_patterns.begin(), door_patterns.end()), door_patterns.end());
    std::size_t paths = 0;
    for (std::size_t a = 0; a < door_patterns.size(); ++a)
      for (std::size_t b = a + 1; b < door_patterns.size(); ++b)
        paths += oracle::simple_paths(g, door_patterns[a], door_patterns[b]);
    const double denom = static_cast<double>(seg.total()) + static_cast<double>(neighbors);
    const double expected = denom <= 0 ? 1.0 : std::clamp(1.0 - static_cast<double>(paths) / denom, 0.0, 1.0);
    worst_lin = std::max(worst_lin, std::abs(linearity(detect(r), r) - expected));
  }
  // and on dense random graphs, where path counts get large
  bool paths_ok = true;
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 != 0) {
          adj[static_cast<std::size_t>(a)].push_back(b);
          adj[static_cast<std::size_t>(b)].push_back(a);
        }
    paths_ok = paths_ok && count_simple_paths(adj, 0, n - 1) == oracle::simple_paths(adj, 0, n - 1);
  }
  const double secs = seconds_since(t0);
  const bool pass = formulas_ok && rooms == 100 && worst_lin <= 1e-9 && paths_ok && secs < 60;
  return {pass, fmt("max |diff| %.2e over 100 rooms; linearity %d rooms max |diff| %.2e; path counts %s; %.1fs",
                    worst, rooms, worst_lin, paths_ok ? "agree" : "DIFFER", secs)};
}

// ------------------------------------------------------------- shared runs

struct PairRun {
  EliteBroadcast grid;
  EraDataset data;
  double seconds = 0;
};

PairRun pair_run(Dimension a, Dimension b, long generations, std::uint64_t seed) {
  EngineConfig c;
  c.seed = seed;
  c.dims = {{a, 5}, {b, 5}};
  EraLogger logger;
  const auto t0 = Clock::now();
  PairRun r;
  r.grid = run_map_elites(c, basic_room(), generations, [&](const Individual& ind, long g) { logger(ind, g); });
  r.seconds = seconds_since(t0);
  r.data = logger.take();
  return r;
}

const PairRun& grid_run() {
  static const PairRun run = pair_run(Dimension::Nsp, Dimension::Symmetry, 2100, 1);
  return run;
}

Outcome pair_quality() {
  const auto& r = grid_run();
  const int cells = r.grid.occupied_feasible_cells();
  const double m = r.grid.mean_elite_fitness();
  const double mx = r.grid.max_elite_fitness();
  const bool pass = cells >= 20 && m >= 0.77 && mx >= 0.86 && r.seconds < 300;
  return {pass, fmt("nsp,symmetry 2100 gens: %d/25 cells, mean %.3f (>= 0.77), max %.3f (>= 0.86), %.1fs", cells, m,
                    mx, r.seconds)};
}

// Reduced sweep: 5 seeds, 1000 generations, 5 pairs.
struct Sweep {
  std::vector<double> pair_fitness, all_fitness, baseline_fitness;
  std::vector<double> pair_circle, baseline_circle;
  std::vector<double> pair_triangle, all_triangle;
  std::vector<std::vector<std::size_t>> baseline_novel;
  double seconds = 0;
};

const std::vector<std::pair<Dimension, Dimension>> kSweepPairs = {
    {Dimension::Nsp, Dimension::Symmetry},
    {Dimension::Similarity, Dimension::Symmetry},
    {Dimension::Nmp, Dimension::Nsp},
    {Dimension::Nmp, Dimension::Linearity},
    {Dimension::Leniency, Dimension::InnerSimilarity},
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep s;
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      EngineConfig base;
      base.seed = seed;
      const auto specs = tools::sweep_specs(base, 1000, kSweepPairs);
      const auto results = tools::run_all(specs, basic_room(), 1);
      const auto& baseline = results.back();
      for (const auto& r : results) {
        if (r.spec.kind == tools::RunKind::Pair) {
          const auto& dims = r.spec.config.dims;
          s.pair_fitness.push_back(r.coverage.avg_fitness);
          s.pair_circle.push_back(*r.coverage.pair_coverage);
          s.baseline_circle.push_back(pair_coverage(baseline.data, dims[0].kind, dims[1].kind, 5));
          s.pair_triangle.push_back(r.coverage.all_dim_coverage);
        } else if (r.spec.kind == tools::RunKind::AllDimensions) {
          s.all_fitness.push_back(r.coverage.avg_fitness);
          s.all_triangle.push_back(r.coverage.all_dim_coverage);
        } else {
          s.baseline_fitness.push_back(r.coverage.avg_fitness);
          s.baseline_novel.push_back(r.novel_per_bucket);
        }
      }
      std::printf("  sweep seed %llu done, %.0fs\n", static_cast<unsigned long long>(seed), seconds_since(t0));
      std::fflush(stdout);
    }
    s.seconds = seconds_since(t0);
    return s;
  }();
  return s;
}

Outcome sweep_orderings() {
  const auto& s = sweep();
  const double pf = mean(s.pair_fitness), af = mean(s.all_fitness), bf = mean(s.baseline_fitness);
  const double pc = mean(s.pair_circle), bc = mean(s.baseline_circle);
  const double pt = mean(s.pair_triangle), at = mean(s.all_triangle);
  const bool a = bf > pf;
  const bool b = pc >= bc + 15.0;
  const bool c = at > pt;
  const bool d = af < pf;
  const bool pass = a && b && c && d && s.seconds < 7200;
  return {pass, fmt("(a) EA fit %.3f > pair %.3f %s; (b) pair circle %.1f%% vs EA %.1f%% %s; (c) all tri %.1f%% > pair "
                    "%.1f%% %s; (d) all fit %.3f < pair %.3f %s; %.0fs",
                    bf, pf, a ? "ok" : "NO", pc, bc, b ? "ok" : "NO", at, pt, c ? "ok" : "NO", af, pf, d ? "ok" : "NO",
                    s.seconds)};
}

// ------------------------------------------------------------- responsiveness

Outcome responsiveness() {
  Engine e(EngineConfig{}, basic_room());
  double worst = 0;
  for (int cycle = 0; cycle < 3; ++cycle) {
    const auto t0 = Clock::now();
    std::optional<EliteBroadcast> b;
    while (!b) b = e.advance();
    worst = std::max(worst, seconds_since(t0));
  }
  return {worst <= 5.0, fmt("slowest of 3 broadcast cycles (100 gens, pop 1000, 13x7): %.2fs (<= 5s)", worst)};
}

// ------------------------------------------------------------- invariants

struct FuzzResult {
  std::vector<std::string> problems;
  std::string transcript;  // every broadcast, serialized
  long checks = 0;
};

Room scrambled(const Room& from, std::mt19937_64& rng) {
  std::vector<Tile> tiles(from.tiles().begin(), from.tiles().end());
  const auto editable = from.editable();
  constexpr std::array<Tile, 4> kinds = {Tile::Floor, Tile::Wall, Tile::Enemy, Tile::Treasure};
  for (int k = 0; k < 6; ++k) {
    const int idx = editable[rng() % editable.size()];
    tiles[static_cast<std::size_t>(idx)] = kinds[rng() % 4];
  }
  return from.with_tiles(std::move(tiles));
}

FuzzResult fuzz(long generations) {
  FuzzResult out;
  Room current = complex_room();
  auto problem = [&](std::string s) {
    if (out.problems.size() < 20) out.problems.push_back(std::move(s));
  };
  auto observer = [&](const Individual& ind, long g) {
    const Room& r = ind.room;
    if (r.doors() != current.doors()) problem(fmt("gen %ld: door set changed", g));
    for (int i = 0; i < r.size(); ++i) {
      if ((current.is_locked(i) || current.is_door(i)) && r.at(i) != current.at(i)) {
        problem(fmt("gen %ld: tile %d fixed by the target changed", g, i));
        break;
      }
    }
  };
  EngineConfig cfg;
  cfg.seed = 99;
  Engine e(cfg, current, observer);
  std::mt19937_64 rng(7);
  std::map<std::size_t, double> best;  // per-cell best feasible fitness
  bool reset_at_broadcast = false;
  for (long g = 1; g <= generations; ++g) {
    // a user edit every 700 generations, dimension swaps now and then
    if (g % 700 == 0) {
      best.clear();
      reset_at_broadcast = true;
      const int what = static_cast<int>((g / 700) % 3);
      if (what == 0) {
        current = scrambled(current, rng);
      } else if (what == 1) {
        std::vector<Coord> locks;
        for (int k = 0; k < 5; ++k) locks.push_back({1 + static_cast<int>(rng() % 11), 1 + static_cast<int>(rng() % 5)});
        current = current.with_locked(locks);
      } else {
        const auto& pairs = all_dimension_pairs();
        const auto [a, b] = pairs[rng() % pairs.size()];
        e.change_dimensions({{a, 5}, {b, 5}});
      }
      if (what != 2) e.update_target(current);
    }
    auto broadcast = e.advance();
    if (broadcast) {
      out.transcript += broadcast_to_json(*broadcast).dump();
      out.transcript += '\n';
      if (reset_at_broadcast) {
        best.clear();
        reset_at_broadcast = false;
      }
    }
    if (g % 10 == 0 || broadcast) {
      for (auto& p : e.check_invariants()) problem(fmt("gen %ld: ", g) + p);
      ++out.checks;
    }
    const auto& archive = e.archive();
    for (std::size_t idx : archive.occupied(PopulationClass::Feasible)) {
      const double f = archive.cell(idx).feasible.front().fitness();
      auto [it, fresh] = best.emplace(idx, f);
      if (!fresh && f + 1e-12 < it->second) problem(fmt("gen %ld: cell %zu elite fell %.6f -> %.6f", g, idx, it->second, f));
      it->second = std::max(it->second, f);
    }
  }
  return out;
}

Outcome invariants() {
  const auto t0 = Clock::now();
  const auto a = fuzz(10000);
  const auto b = fuzz(10000);
  const bool same = a.transcript == b.transcript;
  std::string detail = fmt("10000 gens, %ld invariant checks, %zu problems, transcripts %s (%zu bytes), %.0fs", a.checks,
                           a.problems.size(), same ? "byte-identical" : "DIFFER", a.transcript.size(), seconds_since(t0));
  for (const auto& p : a.problems) detail += "\n    " + p;
  return {a.problems.empty() && same && !a.transcript.empty(), detail};
}

// ------------------------------------------------------------- correlation

Outcome correlation() {
  const auto sim_run = pair_run(Dimension::Similarity, Dimension::Symmetry, 2100, 1);
  bool pass = true;
  std::string detail;
  for (const auto* r : {&grid_run(), &sim_run}) {
    const auto rel = fitness_by_dimension(r->data);
    const double rs = rel[static_cast<std::size_t>(Dimension::Similarity)].pearson_r;
    const double ri = rel[static_cast<std::size_t>(Dimension::InnerSimilarity)].pearson_r;
    const bool ok = rs > 0.5 && ri < rs - 0.2;
    pass = pass && ok;
    const auto& dims = r->grid.dims;
    detail += fmt("%s%s-%s: r(similarity) %.3f, r(inner) %.3f", detail.empty() ? "" : "; ",
                  std::string(name(dims[0].kind)).c_str(), std::string(name(dims[1].kind)).c_str(), rs, ri);
  }
  return {pass, detail + " (need r > 0.5 and inner at least 0.2 lower)"};
}

// ------------------------------------------------------------- novelty

Outcome novelty() {
  const auto& s = sweep();
  // baseline: share of uniques logged in the first 10% of its generations
  std::size_t early = 0, total = 0;
  for (const auto& v : s.baseline_novel) {
    early += v.empty() ? 0 : v[0];
    total += std::accumulate(v.begin(), v.end(), std::size_t{0});
  }
  const double share = total ? static_cast<double>(early) / static_cast<double>(total) : 0.0;

  const auto per = grid_run().data.uniques_per_bucket();
  std::vector<double> before, after;
  for (std::size_t b = 0; b < per.size(); ++b) (b < 10 ? before : after).push_back(static_cast<double>(per[b]));
  const double mb = mean(before), ma = mean(after);
  const bool pass = share >= 0.9 && ma > 0 && ma < mb;
  return {pass, fmt("EA: %.1f%% of %zu uniques in the first 10%% of generations; MAP-Elites novel per 100 gens: %.1f "
                    "before gen 1000, %.1f after",
                    100 * share, total, mb, ma)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"formula-oracles", formulas},   {"pair-run-quality", pair_quality},   {"sweep-orderings", sweep_orderings},
      {"responsiveness", responsiveness}, {"engine-invariants", invariants}, {"similarity-correlation", correlation},
      {"novelty-dynamics", novelty},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [label, check] : criteria) {
    if (!wanted.empty() && !wanted.count(label)) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", label.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
