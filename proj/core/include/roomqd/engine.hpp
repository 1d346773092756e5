#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "roomqd/config.hpp"
#include "roomqd/fitness.hpp"
#include "roomqd/room.hpp"

namespace roomqd {

enum class PopulationClass : std::uint8_t { Feasible = 0, Infeasible = 1 };

struct Individual {
  Room room;
  Evaluation eval;
  std::uint64_t hash = 0;

  double fitness() const noexcept { return eval.fitness.total; }
};

/// Called once for every room the search creates (initial mutants,
/// offspring, broadcast mutants and re-inserted targets), with the
/// generation in which it appeared.
using IndividualObserver = std::function<void(const Individual&, long generation)>;

/// One archive bucket: a feasible and an infeasible population, each kept
/// sorted by descending fitness and capped after every trim.
struct Cell {
  std::vector<Individual> feasible;
  std::vector<Individual> infeasible;

  std::vector<Individual>& of(PopulationClass c) noexcept {
    return c == PopulationClass::Feasible ? feasible : infeasible;
  }
  const std::vector<Individual>& of(PopulationClass c) const noexcept {
    return c == PopulationClass::Feasible ? feasible : infeasible;
  }
  bool empty() const noexcept { return feasible.empty() && infeasible.empty(); }
};

/// Dense MAP-Elites grid over the active dimensions. Cell index is
/// row-major with the first dimension varying fastest.
class Archive {
 public:
  explicit Archive(std::vector<DimensionDescriptor> dims);

  const std::vector<DimensionDescriptor>& dims() const noexcept { return dims_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }

  std::vector<int> bins_of(const DimensionScores& scores) const;
  std::size_t index_of(const DimensionScores& scores) const;
  /// Throws std::out_of_range for coordinates outside the grid.
  std::size_t index_of(std::span<const int> coords) const;
  std::vector<int> coordinates(std::size_t index) const;

  const Cell& cell(std::size_t index) const { return cells_.at(index); }

  /// Adds to the matching population unless an identical layout is already
  /// there. Returns false for duplicates.
  bool insert(Individual ind);

  /// Sorts and caps every cell touched since the last trim. A cell holding
  /// the `keep` layout retains it even when it falls past capacity, as long
  /// as the capacity is at least two.
  void trim(int capacity, std::optional<std::uint64_t> keep = std::nullopt);

  /// Cells whose given population is non-empty, in first-filled order.
  const std::vector<std::size_t>& occupied(PopulationClass c) const noexcept {
    return occupied_[static_cast<std::size_t>(c)];
  }

  std::size_t size() const noexcept;
  std::size_t size(PopulationClass c) const noexcept;

  /// Moves every stored individual out (cell order, feasible first) and
  /// leaves the archive empty.
  std::vector<Individual> drain();

 private:
  std::vector<DimensionDescriptor> dims_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> strides_;
  std::array<std::vector<std::size_t>, 2> occupied_;
  std::vector<std::size_t> dirty_;
  std::vector<std::uint8_t> dirty_flag_;
};

struct EliteEntry {
  std::vector<int> coords;
  std::optional<Individual> elite;  // best feasible member, if any
  int feasible_count = 0;
  int infeasible_count = 0;
};

struct EliteBroadcast {
  long generation = 0;
  std::vector<DimensionDescriptor> dims;
  std::vector<EliteEntry> cells;  // non-empty cells only, ascending index
  std::size_t cell_count = 0;
  std::size_t feasible_total = 0;
  std::size_t infeasible_total = 0;

  int occupied_feasible_cells() const noexcept;
  double mean_elite_fitness() const noexcept;
  double max_elite_fitness() const noexcept;
};

/// Interactive constrained MAP-Elites over tile rooms.
///
/// Each generation breeds the feasible and the infeasible populations
/// separately: parents come from uniformly chosen non-empty cells by
/// tournament, offspring come from two-point crossover with a chance of a
/// single-tile mutation, and every offspring is filed into the cell and
/// population its own evaluation dictates. Every `publish_gen` generations
/// the engine publishes its elites, then re-files the whole archive together
/// with a mutated copy of every member and the unchanged target.
class Engine {
 public:
  Engine(EngineConfig config, Room target, IndividualObserver observer = {});

  const EngineConfig& config() const noexcept { return config_; }
  const Archive& archive() const noexcept { return archive_; }
  const FitnessContext& context() const noexcept { return ctx_; }
  const Room& target() const noexcept { return ctx_.target; }
  long generation() const noexcept { return generation_; }

  /// One generation; when it completes a publishing period the broadcast
  /// cycle runs and its elites are returned.
  std::optional<EliteBroadcast> advance();

  void step_generation();
  EliteBroadcast broadcast_cycle();
  /// Current elites without touching the archive.
  EliteBroadcast snapshot() const;

  /// Swaps the fitness context. New evaluations use it immediately; stored
  /// members are re-evaluated at the next broadcast. The room must keep the
  /// current size and doors.
  void update_target(Room target);
  /// Rebuilds the grid and re-files every member (2..7 dimensions).
  void change_dimensions(std::vector<DimensionDescriptor> dims);
  /// Fresh initial population from the current target.
  void restart();

  /// Descriptions of violated archive invariants; empty when healthy.
  std::vector<std::string> check_invariants() const;

 private:
  void initialize();
  Individual make_individual(Room room) const;
  void breed(PopulationClass cls);
  void file(Individual ind);

  EngineConfig config_;
  FitnessContext ctx_;
  Archive archive_;
  IndividualObserver observer_;
  std::mt19937_64 rng_;
  long generation_ = 0;
  bool stale_ = false;
};

/// Runs a fresh engine for `generations`. Every archive member is passed to
/// `survivors` at each broadcast, before the refresh, and once more at the
/// end if the run stops between broadcasts. Returns the final elites.
EliteBroadcast run_map_elites(const EngineConfig& config, const Room& target, long generations,
                              const IndividualObserver& survivors);

}  // namespace roomqd
