#include "roomqd/operators.hpp"

#include <gtest/gtest.h>

#include "roomqd/targets.hpp"

namespace roomqd {
namespace {

Room locked_target() { return complex_room().with_locked({{2, 2}, {5, 4}, {10, 1}}); }

int differing(const Room& a, const Room& b) {
  int n = 0;
  for (int i = 0; i < a.size(); ++i) n += a.at(i) != b.at(i);
  return n;
}

void expect_frame_kept(const Room& r, const Room& target) {
  for (int i = 0; i < target.size(); ++i) {
    if (target.is_door(i) || target.is_locked(i)) {
      ASSERT_EQ(r.at(i), target.at(i)) << "tile " << i;
    } else {
      ASSERT_NE(r.at(i), Tile::Door) << "tile " << i;
    }
  }
}

TEST(Mutation, OneTileChangesExactlyOneEditableTile) {
  const Room t = locked_target();
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Room r = t;
    mutate_one_tile(r, t, rng);
    ASSERT_EQ(differing(r, t), 1);
    expect_frame_kept(r, t);
  }
}

TEST(Mutation, RateZeroStillChangesOneTile) {
  const Room t = locked_target();
  Rng rng(2);
  Room r = t;
  mutate_tiles(r, t, 0.0, rng);
  EXPECT_EQ(differing(r, t), 1);
}

TEST(Mutation, RateOneRewritesEveryEditableTile) {
  const Room t = locked_target();
  Rng rng(3);
  Room r = t;
  mutate_tiles(r, t, 1.0, rng);
  EXPECT_EQ(differing(r, t), static_cast<int>(t.editable().size()));
  expect_frame_kept(r, t);
}

TEST(Mutation, RateControlsTheChangedFraction) {
  const Room t = locked_target();
  Rng rng(4);
  long changed = 0;
  const int trials = 400;
  for (int i = 0; i < trials; ++i) {
    Room r = t;
    mutate_tiles(r, t, 0.25, rng);
    changed += differing(r, t);
  }
  const double frac = static_cast<double>(changed) / (trials * static_cast<double>(t.editable().size()));
  EXPECT_NEAR(frac, 0.25, 0.02);
}

TEST(Mutation, SameSeedSameResult) {
  const Room t = complex_room();
  Rng a(9), b(9);
  Room ra = t, rb = t;
  mutate_tiles(ra, t, 0.3, a);
  mutate_tiles(rb, t, 0.3, b);
  EXPECT_EQ(ra, rb);
}

TEST(Crossover, ChildTakesOneContiguousSpanFromTheSecondParent) {
  const Room t = locked_target();
  Rng rng(5);
  Room a = t, b = t;
  for (int idx : t.editable()) {
    a.set_unchecked(idx, Tile::Floor);
    b.set_unchecked(idx, Tile::Wall);
  }
  for (int i = 0; i < 300; ++i) {
    const Room child = two_point_crossover(a, b, t, rng);
    expect_frame_kept(child, t);
    // editable tiles from b must form one run in the row-major order
    int runs = 0;
    bool in_b = false;
    for (int idx : t.editable()) {
      const bool from_b = child.at(idx) == Tile::Wall;
      if (from_b && !in_b) ++runs;
      in_b = from_b;
    }
    ASSERT_LE(runs, 1);
  }
}

TEST(Crossover, EveryTileComesFromAParentAtTheSameIndex) {
  const Room t = complex_room();
  Rng rng(6);
  Room a = t, b = t;
  mutate_tiles(a, t, 0.5, rng);
  mutate_tiles(b, t, 0.5, rng);
  for (int i = 0; i < 100; ++i) {
    const Room child = two_point_crossover(a, b, t, rng);
    for (int idx = 0; idx < t.size(); ++idx) ASSERT_TRUE(child.at(idx) == a.at(idx) || child.at(idx) == b.at(idx));
  }
}

TEST(Frame, AdoptingCopiesLocksFromTheTarget) {
  const Room t = locked_target();
  Room r = complex_room();
  Rng rng(7);
  mutate_tiles(r, complex_room(), 1.0, rng);
  const Room adopted = adopt_target_frame(r, t);
  expect_frame_kept(adopted, t);
  EXPECT_EQ(adopted.locked(), t.locked());
  for (int idx : t.editable()) EXPECT_EQ(adopted.at(idx), r.at(idx));
}

TEST(Tournament, PicksTheFittestWhenEveryoneIsDrawn) {
  Rng rng(8);
  const std::vector<double> fit = {0.1, 0.9, 0.3};
  int best = 0;
  for (int i = 0; i < 200; ++i) best += tournament_pick(fit.size(), 50, rng, [&](std::size_t k) { return fit[k]; }) == 1;
  EXPECT_EQ(best, 200);
}

TEST(Tournament, SingleRoundIsUniform) {
  Rng rng(10);
  std::vector<int> hits(4, 0);
  for (int i = 0; i < 4000; ++i) ++hits[tournament_pick(4, 1, rng, [](std::size_t k) { return double(k); })];
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

}  // namespace
}  // namespace roomqd
