#include "roomqd/baseline.hpp"

#include <algorithm>

#include "roomqd/era.hpp"
#include "roomqd/operators.hpp"

namespace roomqd {

ObjectiveBaseline::ObjectiveBaseline(EngineConfig config, Room target, IndividualObserver observer)
    : config_(std::move(config)),
      ctx_(FitnessContext::build(std::move(target), config_.leniency)),
      observer_(std::move(observer)),
      rng_(config_.seed) {
  config_.validate();
  for (int i = 0; i < config_.pop_size; ++i) {
    Room r = ctx_.target;
    mutate_tiles(r, ctx_.target, config_.init_mutation_rate, rng_);
    route(make_individual(std::move(r)), pops_);
  }
  truncate();
}

Individual ObjectiveBaseline::make_individual(Room room) const {
  Evaluation eval = evaluate_room(room, ctx_);
  const auto hash = room.layout_hash();
  return Individual{std::move(room), eval, hash};
}

void ObjectiveBaseline::route(Individual ind, std::array<std::vector<Individual>, 2>& into) {
  if (observer_) observer_(ind, generation_);
  const auto cls = ind.eval.feasible ? PopulationClass::Feasible : PopulationClass::Infeasible;
  into[static_cast<std::size_t>(cls)].push_back(std::move(ind));
}

void ObjectiveBaseline::truncate() {
  const auto cap = static_cast<std::size_t>(config_.pop_size);
  for (auto& pop : pops_) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness() > b.fitness(); });
    if (pop.size() > cap) pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(cap), pop.end());
  }
}

void ObjectiveBaseline::step_generation() {
  ++generation_;
  std::array<std::vector<Individual>, 2> offspring;
  std::bernoulli_distribution mutation(config_.mutation_rate);
  for (const auto cls : {PopulationClass::Feasible, PopulationClass::Infeasible}) {
    const auto& pop = pops_[static_cast<std::size_t>(cls)];
    if (pop.empty()) continue;
    const std::size_t lambda = pop.size();
    for (std::size_t i = 0; i < lambda; ++i) {
      auto fitness_of = [&](std::size_t j) { return pop[j].fitness(); };
      const Room& a = pop[tournament_pick(pop.size(), config_.tournament_size, rng_, fitness_of)].room;
      const Room& b = pop[tournament_pick(pop.size(), config_.tournament_size, rng_, fitness_of)].room;
      Room child = two_point_crossover(a, b, ctx_.target, rng_);
      if (mutation(rng_)) mutate_one_tile(child, ctx_.target, rng_);
      route(make_individual(std::move(child)), offspring);
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    std::move(offspring[c].begin(), offspring[c].end(), std::back_inserter(pops_[c]));
  }
  truncate();
}

BaselineRunLog run_objective_baseline(const EngineConfig& config, const Room& target, long generations,
                                      IndividualObserver survivors) {
  BaselineRunLog log;
  log.generations = generations;
  log.novel_per_bucket.assign(static_cast<std::size_t>(bucket_index(generations) + 1), 0);
  std::unordered_set<std::uint64_t> seen;
  ObjectiveBaseline ea(config, target);
  auto report = [&] {
    const long gen = ea.generation();
    for (const auto cls : {PopulationClass::Feasible, PopulationClass::Infeasible}) {
      for (const auto& ind : ea.population(cls)) {
        if (seen.insert(ind.hash).second) {
          ++log.novel_per_bucket[static_cast<std::size_t>(bucket_index(gen))];
          if (ind.eval.feasible) log.best_fitness = std::max(log.best_fitness, ind.fitness());
        }
        if (survivors) survivors(ind, gen);
      }
    }
  };
  while (ea.generation() < generations) {
    ea.step_generation();
    if (ea.generation() % kBucketWidth == 0) report();
  }
  if (generations % kBucketWidth != 0) report();
  log.unique_total = seen.size();
  return log;
}

}  // namespace roomqd
