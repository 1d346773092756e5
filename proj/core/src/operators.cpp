#include "roomqd/operators.hpp"

#include <utility>

namespace roomqd {

namespace {
constexpr Tile kInteriorKinds[4] = {Tile::Floor, Tile::Wall, Tile::Treasure, Tile::Enemy};

void rewrite(Room& room, int idx, Rng& rng) {
  const Tile current = room.at(idx);
  std::uniform_int_distribution<int> kind(0, 3);
  Tile next = current;
  while (next == current) next = kInteriorKinds[kind(rng)];
  room.set_unchecked(idx, next);
}
}  // namespace

void mutate_one_tile(Room& room, const Room& target, Rng& rng) {
  const auto& editable = target.editable();
  if (editable.empty()) return;
  rewrite(room, editable[std::uniform_int_distribution<std::size_t>(0, editable.size() - 1)(rng)], rng);
}

void mutate_tiles(Room& room, const Room& target, double rate, Rng& rng) {
  std::bernoulli_distribution hit(rate);
  bool changed = false;
  for (int idx : target.editable()) {
    if (!hit(rng)) continue;
    rewrite(room, idx, rng);
    changed = true;
  }
  if (!changed) mutate_one_tile(room, target, rng);
}

Room two_point_crossover(const Room& a, const Room& b, const Room& target, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(a.size());
  std::uniform_int_distribution<std::size_t> cut(0, n);
  std::size_t lo = cut(rng);
  std::size_t hi = cut(rng);
  if (lo > hi) std::swap(lo, hi);
  Room child = target;
  const auto ta = a.tiles();
  const auto tb = b.tiles();
  for (int idx : target.editable()) {
    const auto i = static_cast<std::size_t>(idx);
    child.set_unchecked(idx, (i >= lo && i < hi) ? tb[i] : ta[i]);
  }
  return child;
}

Room adopt_target_frame(const Room& room, const Room& target) {
  Room out = target;
  const auto src = room.tiles();
  for (int idx : target.editable()) out.set_unchecked(idx, src[static_cast<std::size_t>(idx)]);
  return out;
}

}  // namespace roomqd
