#pragma once

#include <array>
#include <random>
#include <unordered_set>
#include <vector>

#include "roomqd/engine.hpp"

namespace roomqd {

/// Archive-free FI2Pop evolution toward the target fitness: a feasible and
/// an infeasible population, each capped at `pop_size`, bred with the same
/// selection, crossover and mutation operators as the MAP-Elites engine.
/// Every generation each population produces as many offspring as it has
/// members; parents and offspring then compete by truncation.
class ObjectiveBaseline {
 public:
  ObjectiveBaseline(EngineConfig config, Room target, IndividualObserver observer = {});

  void step_generation();
  long generation() const noexcept { return generation_; }
  const std::vector<Individual>& population(PopulationClass c) const noexcept {
    return pops_[static_cast<std::size_t>(c)];
  }
  const FitnessContext& context() const noexcept { return ctx_; }

 private:
  Individual make_individual(Room room) const;
  void route(Individual ind, std::array<std::vector<Individual>, 2>& into);
  void truncate();

  EngineConfig config_;
  FitnessContext ctx_;
  IndividualObserver observer_;
  std::mt19937_64 rng_;
  std::array<std::vector<Individual>, 2> pops_;
  long generation_ = 0;
};

struct BaselineRunLog {
  long generations = 0;
  std::vector<std::size_t> novel_per_bucket;  // layouts first logged, per 100 generations
  std::size_t unique_total = 0;
  double best_fitness = 0.0;
};

/// Runs the baseline for `generations`. Both populations are passed to
/// `survivors` every 100 generations and at the end, matching the points at
/// which MAP-Elites runs log their archive. Layouts never logged before are
/// counted per bucket (see bucket_index).
BaselineRunLog run_objective_baseline(const EngineConfig& config, const Room& target, long generations,
                                      IndividualObserver survivors = {});

}  // namespace roomqd
