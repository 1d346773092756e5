#include "roomqd/room.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "roomqd/room_io.hpp"
#include "roomqd/targets.hpp"

namespace roomqd {
namespace {

Room open_room(int cols, int rows) {
  return Room::filled(cols, rows, Tile::Floor, {{0, rows / 2}, {cols - 1, rows / 2}});
}

TEST(Room, RejectsSizesOutsideThreeToTwenty) {
  EXPECT_THROW(Room::filled(2, 5, Tile::Floor, {{0, 1}}), RoomError);
  EXPECT_THROW(Room::filled(21, 5, Tile::Floor, {{0, 1}}), RoomError);
  EXPECT_NO_THROW(Room::filled(3, 3, Tile::Floor, {{0, 1}}));
  EXPECT_NO_THROW(Room::filled(20, 20, Tile::Floor, {{0, 1}}));
}

TEST(Room, DoorsMustExistAndSitOnTheBorder) {
  try {
    Room::filled(5, 5, Tile::Floor, {});
    FAIL() << "no doors accepted";
  } catch (const RoomError& e) {
    EXPECT_EQ(e.code(), RoomError::Code::NoDoors);
  }
  try {
    Room::filled(5, 5, Tile::Floor, {{2, 2}});
    FAIL() << "interior door accepted";
  } catch (const RoomError& e) {
    EXPECT_EQ(e.code(), RoomError::Code::DoorOffBorder);
  }
  try {
    Room::filled(5, 5, Tile::Floor, {{0, 2}, {0, 2}});
    FAIL() << "duplicate door accepted";
  } catch (const RoomError& e) {
    EXPECT_EQ(e.code(), RoomError::Code::DuplicateDoor);
  }
}

TEST(Room, DoorTilesMatchTheDoorList) {
  std::vector<Tile> tiles(9, Tile::Floor);
  // door listed but tile is floor
  EXPECT_THROW(Room(3, 3, tiles, {{0, 1}}), RoomError);
  tiles[3] = Tile::Door;
  EXPECT_NO_THROW(Room(3, 3, tiles, {{0, 1}}));
  tiles[5] = Tile::Door;  // stray door tile not in the list
  try {
    Room(3, 3, tiles, {{0, 1}});
    FAIL();
  } catch (const RoomError& e) {
    EXPECT_EQ(e.code(), RoomError::Code::StrayDoorTile);
  }
  EXPECT_THROW(Room(3, 3, std::vector<Tile>(8, Tile::Floor), {{0, 1}}), RoomError);
}

TEST(Room, LocksMustBeInBounds) {
  const Room r = open_room(5, 5);
  EXPECT_THROW(r.with_locked({{5, 0}}), RoomError);
  EXPECT_THROW(r.with_locked({{-1, 0}}), RoomError);
  const Room locked = r.with_locked({{2, 2}, {1, 1}});
  EXPECT_TRUE(locked.is_locked(locked.index({2, 2})));
  EXPECT_EQ(locked.locked().front(), (Coord{1, 1}));  // canonical row-major order
}

TEST(Room, EditableExcludesDoorsAndLocks) {
  const Room r = open_room(5, 5).with_locked({{2, 2}});
  EXPECT_EQ(r.editable().size(), 25u - 2u - 1u);
  for (int idx : r.editable()) {
    EXPECT_FALSE(r.is_door(idx));
    EXPECT_FALSE(r.is_locked(idx));
  }
}

TEST(Room, DoorTilesCannotBeEdited) {
  const Room r = open_room(5, 5);
  EXPECT_THROW(r.with_tile({0, 2}, Tile::Floor), RoomError);
  EXPECT_THROW(r.with_tile({2, 2}, Tile::Door), RoomError);
  EXPECT_EQ(r.with_tile({2, 2}, Tile::Wall).at(Coord{2, 2}), Tile::Wall);
}

TEST(Room, CountsAndHash) {
  const Room r = open_room(5, 5).with_tile({1, 1}, Tile::Wall).with_tile({2, 1}, Tile::Enemy);
  EXPECT_EQ(r.count(Tile::Wall), 1);
  EXPECT_EQ(r.count(Tile::Enemy), 1);
  EXPECT_EQ(r.count(Tile::Door), 2);
  EXPECT_EQ(r.passable_count(), 24);
  EXPECT_NE(r.layout_hash(), open_room(5, 5).layout_hash());
  EXPECT_EQ(r.layout_hash(), Room(r).layout_hash());
}

TEST(Room, SameShapeIgnoresLocksButNotDoors) {
  const Room a = open_room(7, 5);
  EXPECT_TRUE(a.same_shape(a.with_locked({{3, 3}})));
  EXPECT_FALSE(a.same_shape(Room::filled(7, 5, Tile::Floor, {{0, 1}})));
  EXPECT_FALSE(a.same_shape(open_room(7, 6)));
}

TEST(Feasibility, OpenRoomIsFeasible) { EXPECT_TRUE(is_feasible(open_room(13, 7))); }

TEST(Feasibility, WallLineBetweenDoorsIsInfeasible) {
  Room r = open_room(13, 7);
  for (int y = 0; y < 7; ++y) r = r.with_tile({6, y}, Tile::Wall);
  EXPECT_FALSE(is_feasible(r));
}

TEST(Feasibility, IsolatedFloorPocketIsTolerated) {
  Room r = open_room(7, 5);
  for (Coord c : {Coord{2, 0}, Coord{3, 1}, Coord{4, 0}}) r = r.with_tile(c, Tile::Wall);
  // (3,0) is now a floor pocket cut off from both doors
  EXPECT_TRUE(is_feasible(r));
  EXPECT_FALSE(is_feasible(r.with_tile({3, 0}, Tile::Treasure)));
  EXPECT_FALSE(is_feasible(r.with_tile({3, 0}, Tile::Enemy)));
}

TEST(Feasibility, EnemiesDoNotBlock) {
  Room r = open_room(13, 7);
  for (int y = 0; y < 7; ++y) r = r.with_tile({6, y}, y == 3 ? Tile::Enemy : Tile::Wall);
  EXPECT_TRUE(is_feasible(r));
}

TEST(Feasibility, BundledTargetsAreFeasible) {
  EXPECT_TRUE(is_feasible(basic_room()));
  EXPECT_TRUE(oracle::feasible(basic_room()));
  EXPECT_TRUE(is_feasible(complex_room()));
  EXPECT_TRUE(oracle::feasible(complex_room()));
}

TEST(Feasibility, AgreesWithPerPairBfsOnRandomRooms) {
  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int i = 0; i < 1000; ++i) {
    const Room r = oracle::random_room(rng, {13, 7, 0.35, 0.05, 0.05, 4});
    const bool want = oracle::feasible(r);
    ASSERT_EQ(is_feasible(r), want) << encode_room(r);
    feasible += want;
  }
  // both outcomes must actually be exercised
  EXPECT_GT(feasible, 50);
  EXPECT_LT(feasible, 950);
}

TEST(Feasibility, ComponentsLabelWallsMinusOne) {
  Room r = open_room(5, 3).with_tile({2, 0}, Tile::Wall).with_tile({2, 1}, Tile::Wall).with_tile({2, 2}, Tile::Wall);
  const auto comp = passable_components(r);
  EXPECT_EQ(comp[static_cast<std::size_t>(r.index({2, 1}))], -1);
  EXPECT_NE(comp[static_cast<std::size_t>(r.index({0, 0}))], comp[static_cast<std::size_t>(r.index({4, 0}))]);
  EXPECT_EQ(comp[static_cast<std::size_t>(r.index({0, 0}))], comp[static_cast<std::size_t>(r.index({1, 2}))]);
}

TEST(Dungeon, NeedsTwoRoomsAndAnEdge) {
  EXPECT_THROW(DungeonStub({open_room(5, 5)}, {}, 0), std::invalid_argument);
  EXPECT_THROW(DungeonStub({open_room(5, 5), open_room(5, 5)}, {}, 0), std::invalid_argument);
  EXPECT_THROW(DungeonStub({open_room(5, 5), open_room(5, 5)}, {{0, 0, 1, 5}}, 0), std::invalid_argument);
  EXPECT_THROW(DungeonStub({open_room(5, 5), open_room(5, 5)}, {{0, 0, 2, 0}}, 0), std::invalid_argument);
}

TEST(Dungeon, TwoOpenRoomsAreConnected) {
  DungeonStub d({open_room(5, 5), open_room(5, 5)}, {{0, 1, 1, 0}}, 0);
  EXPECT_TRUE(dungeon_reachability(d).empty());
}

TEST(Dungeon, RoomOutsideEdgeListIsUnreachable) {
  DungeonStub d({open_room(5, 5), open_room(5, 5), open_room(5, 5)}, {{0, 1, 1, 0}}, 0);
  EXPECT_EQ(dungeon_reachability(d), (std::set<int>{2}));
}

TEST(Dungeon, WalledMiddleRoomCutsTheChain) {
  Room middle = open_room(5, 5);
  for (int y = 0; y < 5; ++y) middle = middle.with_tile({2, y}, Tile::Wall);
  // 0 -(door 1 / door 0)- 1 -(door 1 / door 0)- 2
  DungeonStub d({open_room(5, 5), middle, open_room(5, 5)}, {{0, 1, 1, 0}, {1, 1, 2, 0}}, 0);
  EXPECT_EQ(dungeon_reachability(d), (std::set<int>{2}));
  DungeonStub open({open_room(5, 5), open_room(5, 5), open_room(5, 5)}, {{0, 1, 1, 0}, {1, 1, 2, 0}}, 0);
  EXPECT_TRUE(dungeon_reachability(open).empty());
}

}  // namespace
}  // namespace roomqd
