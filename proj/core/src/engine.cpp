#include "roomqd/engine.hpp"

#include "roomqd/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace roomqd {

// ---------------------------------------------------------------- Archive

Archive::Archive(std::vector<DimensionDescriptor> dims) : dims_(std::move(dims)) {
  validate_dimensions(dims_);
  std::size_t total = 1;
  for (const auto& d : dims_) {
    strides_.push_back(total);
    total *= static_cast<std::size_t>(d.granularity);
  }
  cells_.resize(total);
  dirty_flag_.assign(total, 0);
}

std::vector<int> Archive::bins_of(const DimensionScores& scores) const {
  std::vector<int> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(bin(scores[static_cast<std::size_t>(d.kind)], d));
  return out;
}

std::size_t Archive::index_of(const DimensionScores& scores) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const int b = bin(scores[static_cast<std::size_t>(dims_[i].kind)], dims_[i]);
    idx += strides_[i] * static_cast<std::size_t>(b);
  }
  return idx;
}

std::size_t Archive::index_of(std::span<const int> coords) const {
  if (coords.size() != dims_.size()) throw std::out_of_range("coordinate arity does not match dimensions");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= dims_[i].granularity) throw std::out_of_range("cell coordinate out of range");
    idx += strides_[i] * static_cast<std::size_t>(coords[i]);
  }
  return idx;
}

std::vector<int> Archive::coordinates(std::size_t index) const {
  std::vector<int> out(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    out[i] = static_cast<int>(index % static_cast<std::size_t>(dims_[i].granularity));
    index /= static_cast<std::size_t>(dims_[i].granularity);
  }
  return out;
}

bool Archive::insert(Individual ind) {
  const std::size_t idx = index_of(ind.eval.scores);
  const auto cls = ind.eval.feasible ? PopulationClass::Feasible : PopulationClass::Infeasible;
  auto& list = cells_[idx].of(cls);
  for (const auto& m : list) {
    if (m.hash == ind.hash && m.room == ind.room) return false;
  }
  if (list.empty()) occupied_[static_cast<std::size_t>(cls)].push_back(idx);
  list.push_back(std::move(ind));
  if (!dirty_flag_[idx]) {
    dirty_flag_[idx] = 1;
    dirty_.push_back(idx);
  }
  return true;
}

void Archive::trim(int capacity, std::optional<std::uint64_t> keep) {
  const auto cap = static_cast<std::size_t>(capacity);
  auto by_fitness = [](const Individual& a, const Individual& b) { return a.fitness() > b.fitness(); };
  for (std::size_t idx : dirty_) {
    dirty_flag_[idx] = 0;
    for (auto* list : {&cells_[idx].feasible, &cells_[idx].infeasible}) {
      std::stable_sort(list->begin(), list->end(), by_fitness);
      if (list->size() <= cap) continue;
      if (keep && cap >= 2) {
        auto it = std::find_if(list->begin() + static_cast<std::ptrdiff_t>(cap), list->end(),
                               [&](const Individual& m) { return m.hash == *keep; });
        if (it != list->end()) std::iter_swap(list->begin() + static_cast<std::ptrdiff_t>(cap - 1), it);
      }
      list->erase(list->begin() + static_cast<std::ptrdiff_t>(cap), list->end());
    }
  }
  dirty_.clear();
}

std::size_t Archive::size(PopulationClass c) const noexcept {
  std::size_t n = 0;
  for (std::size_t idx : occupied(c)) n += cells_[idx].of(c).size();
  return n;
}

std::size_t Archive::size() const noexcept {
  return size(PopulationClass::Feasible) + size(PopulationClass::Infeasible);
}

std::vector<Individual> Archive::drain() {
  std::vector<std::size_t> touched;
  for (const auto& occ : occupied_) touched.insert(touched.end(), occ.begin(), occ.end());
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<Individual> out;
  for (std::size_t idx : touched) {
    auto& c = cells_[idx];
    for (auto* list : {&c.feasible, &c.infeasible}) {
      std::move(list->begin(), list->end(), std::back_inserter(out));
      list->clear();
    }
  }
  for (auto& occ : occupied_) occ.clear();
  for (std::size_t idx : dirty_) dirty_flag_[idx] = 0;
  dirty_.clear();
  return out;
}

// ---------------------------------------------------------- EliteBroadcast

int EliteBroadcast::occupied_feasible_cells() const noexcept {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.elite.has_value(); }));
}

double EliteBroadcast::mean_elite_fitness() const noexcept {
  double sum = 0;
  int n = 0;
  for (const auto& c : cells) {
    if (c.elite) {
      sum += c.elite->fitness();
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

double EliteBroadcast::max_elite_fitness() const noexcept {
  double best = 0;
  for (const auto& c : cells) {
    if (c.elite) best = std::max(best, c.elite->fitness());
  }
  return best;
}

// ----------------------------------------------------------------- Engine

Engine::Engine(EngineConfig config, Room target, IndividualObserver observer)
    : config_(std::move(config)),
      ctx_(FitnessContext::build(std::move(target), config_.leniency)),
      archive_(config_.dims),
      observer_(std::move(observer)),
      rng_(config_.seed) {
  config_.validate();
  initialize();
}

Individual Engine::make_individual(Room room) const {
  Evaluation eval = evaluate_room(room, ctx_);
  const auto hash = room.layout_hash();
  return Individual{std::move(room), eval, hash};
}

void Engine::file(Individual ind) {
  if (observer_) observer_(ind, generation_);
  archive_.insert(std::move(ind));
}

void Engine::initialize() {
  for (int i = 0; i < config_.pop_size; ++i) {
    Room r = ctx_.target;
    mutate_tiles(r, ctx_.target, config_.init_mutation_rate, rng_);
    file(make_individual(std::move(r)));
  }
  archive_.trim(config_.cell_capacity);
}

void Engine::breed(PopulationClass cls) {
  const auto& occupied = archive_.occupied(cls);
  if (occupied.empty()) return;
  const auto k = static_cast<std::size_t>(config_.parents_per_population);
  std::vector<Room> parents;
  parents.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t cell = occupied[std::uniform_int_distribution<std::size_t>(0, occupied.size() - 1)(rng_)];
    const auto& members = archive_.cell(cell).of(cls);
    const std::size_t winner = tournament_pick(members.size(), config_.tournament_size, rng_,
                                               [&](std::size_t i) { return members[i].fitness(); });
    parents.push_back(members[winner].room);
  }
  std::bernoulli_distribution mutation(config_.mutation_rate);
  for (std::size_t i = 0; i < k; ++i) {
    Room child = two_point_crossover(parents[i], parents[(i + 1) % k], ctx_.target, rng_);
    if (mutation(rng_)) mutate_one_tile(child, ctx_.target, rng_);
    file(make_individual(std::move(child)));
  }
}

void Engine::step_generation() {
  ++generation_;
  breed(PopulationClass::Feasible);
  breed(PopulationClass::Infeasible);
  archive_.trim(config_.cell_capacity);
}

EliteBroadcast Engine::snapshot() const {
  EliteBroadcast b;
  b.generation = generation_;
  b.dims = archive_.dims();
  b.cell_count = archive_.cell_count();
  std::vector<std::size_t> cells;
  for (auto cls : {PopulationClass::Feasible, PopulationClass::Infeasible}) {
    const auto& occ = archive_.occupied(cls);
    cells.insert(cells.end(), occ.begin(), occ.end());
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (std::size_t idx : cells) {
    const Cell& c = archive_.cell(idx);
    EliteEntry e;
    e.coords = archive_.coordinates(idx);
    e.feasible_count = static_cast<int>(c.feasible.size());
    e.infeasible_count = static_cast<int>(c.infeasible.size());
    if (!c.feasible.empty()) {
      e.elite = *std::max_element(c.feasible.begin(), c.feasible.end(), [](const auto& x, const auto& y) {
        return x.fitness() < y.fitness();
      });
    }
    b.feasible_total += c.feasible.size();
    b.infeasible_total += c.infeasible.size();
    b.cells.push_back(std::move(e));
  }
  return b;
}

EliteBroadcast Engine::broadcast_cycle() {
  EliteBroadcast published = snapshot();

  std::vector<Individual> retained = archive_.drain();
  if (stale_) {
    for (auto& ind : retained) ind.eval = evaluate_room(ind.room, ctx_);
    stale_ = false;
  }
  std::vector<Room> mutants;
  mutants.reserve(retained.size());
  for (const auto& ind : retained) {
    Room copy = adopt_target_frame(ind.room, ctx_.target);
    mutate_one_tile(copy, ctx_.target, rng_);
    mutants.push_back(std::move(copy));
  }
  for (auto& ind : retained) archive_.insert(std::move(ind));
  for (auto& m : mutants) file(make_individual(std::move(m)));
  Individual target = make_individual(ctx_.target);
  const auto keep = target.hash;
  file(std::move(target));
  archive_.trim(config_.cell_capacity, keep);
  return published;
}

std::optional<EliteBroadcast> Engine::advance() {
  step_generation();
  if (generation_ % config_.publish_gen == 0) return broadcast_cycle();
  return std::nullopt;
}

void Engine::update_target(Room target) {
  if (!target.same_shape(ctx_.target)) {
    throw std::invalid_argument("target must keep the room size and door positions");
  }
  ctx_ = FitnessContext::build(std::move(target), config_.leniency);
  stale_ = true;
}

void Engine::change_dimensions(std::vector<DimensionDescriptor> dims) {
  validate_dimensions(dims);
  std::vector<Individual> retained = archive_.drain();
  archive_ = Archive(dims);
  config_.dims = std::move(dims);
  for (auto& ind : retained) archive_.insert(std::move(ind));
  archive_.trim(config_.cell_capacity);
}

void Engine::restart() {
  archive_ = Archive(config_.dims);
  generation_ = 0;
  stale_ = false;
  initialize();
}

std::vector<std::string> Engine::check_invariants() const {
  std::vector<std::string> problems;
  const auto cap = static_cast<std::size_t>(config_.cell_capacity);
  for (std::size_t idx = 0; idx < archive_.cell_count(); ++idx) {
    const Cell& c = archive_.cell(idx);
    if (c.empty()) continue;
    for (auto cls : {PopulationClass::Feasible, PopulationClass::Infeasible}) {
      const auto& list = c.of(cls);
      const char* label = cls == PopulationClass::Feasible ? "feasible" : "infeasible";
      if (list.size() > cap) problems.push_back("cell " + std::to_string(idx) + " over capacity");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& m = list[i];
        if (i > 0 && list[i - 1].fitness() < m.fitness()) {
          problems.push_back("cell " + std::to_string(idx) + " " + label + " list not sorted");
        }
        if (!stale_ && archive_.index_of(m.eval.scores) != idx) {
          problems.push_back("cell " + std::to_string(idx) + " holds a member binned elsewhere");
        }
        if (!stale_) {
          const auto fresh = evaluate_room(m.room, ctx_);
          if (archive_.index_of(fresh.scores) != idx) {
            problems.push_back("cell " + std::to_string(idx) + " member re-bins elsewhere");
          }
        }
        if (is_feasible(m.room) != (cls == PopulationClass::Feasible)) {
          problems.push_back("cell " + std::to_string(idx) + " " + label + " member in wrong population");
        }
        if (m.room.doors() != ctx_.target.doors()) {
          problems.push_back("cell " + std::to_string(idx) + " member has different doors");
        }
        for (const auto& d : m.room.doors()) {
          if (m.room.at(d) != Tile::Door) problems.push_back("door tile overwritten");
        }
        if (m.room.count(Tile::Door) != static_cast<int>(m.room.doors().size())) {
          problems.push_back("stray door tile");
        }
      }
    }
  }
  return problems;
}

namespace {
void report_members(const Archive& archive, long generation, const IndividualObserver& out) {
  for (std::size_t i = 0; i < archive.cell_count(); ++i) {
    const Cell& c = archive.cell(i);
    for (const auto& m : c.feasible) out(m, generation);
    for (const auto& m : c.infeasible) out(m, generation);
  }
}
}  // namespace

EliteBroadcast run_map_elites(const EngineConfig& config, const Room& target, long generations,
                              const IndividualObserver& survivors) {
  Engine engine(config, target);
  while (engine.generation() < generations) {
    engine.step_generation();
    if (engine.generation() % config.publish_gen != 0) continue;
    if (survivors) report_members(engine.archive(), engine.generation(), survivors);
    engine.broadcast_cycle();
  }
  if (survivors && generations % config.publish_gen != 0) {
    report_members(engine.archive(), engine.generation(), survivors);
  }
  return engine.snapshot();
}

}  // namespace roomqd
