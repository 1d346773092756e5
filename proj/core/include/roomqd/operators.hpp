#pragma once

#include <random>
#include <vector>

#include "roomqd/room.hpp"

namespace roomqd {

using Rng = std::mt19937_64;

/// Rewrites one tile the target leaves editable (not a door, not locked) to
/// a different kind among floor, wall, treasure and enemy.
void mutate_one_tile(Room& room, const Room& target, Rng& rng);

/// Rewrites each editable tile with probability `rate` as above. At least one
/// tile always changes, so the result never equals the input.
void mutate_tiles(Room& room, const Room& target, double rate, Rng& rng);

/// Two-point crossover over the row-major tile array: tiles in [lo, hi) come
/// from `b`, the rest from `a`. The child takes the target's frame, so doors
/// and locked tiles are copied from the target.
Room two_point_crossover(const Room& a, const Room& b, const Room& target, Rng& rng);

/// `room`'s editable tiles on the target's frame (doors and locks from target).
Room adopt_target_frame(const Room& room, const Room& target);

/// Index of the tournament winner among `size` candidates, drawn with
/// replacement; higher `fitness(i)` wins, earlier draw wins ties.
template <typename FitnessFn>
std::size_t tournament_pick(std::size_t size, int rounds, Rng& rng, FitnessFn&& fitness) {
  std::uniform_int_distribution<std::size_t> draw(0, size - 1);
  std::size_t best = draw(rng);
  for (int i = 1; i < rounds; ++i) {
    const std::size_t c = draw(rng);
    if (fitness(c) > fitness(best)) best = c;
  }
  return best;
}

}  // namespace roomqd
