#include "roomqd/targets.hpp"

#include "roomqd/room_io.hpp"

namespace roomqd {

namespace {

constexpr const char* kBasicRoom =
    "13 7\n"
    "fffffwwwfffff\n"
    "ffeffffffffff\n"
    "fffffffffffff\n"
    "dffffftfffffd\n"
    "fffffffffffff\n"
    "ffffffffffeff\n"
    "fffffwwwfffff\n";

constexpr const char* kComplexRoom =
    "13 7\n"
    "fffwffdffwfff\n"
    "fefwfffffwftf\n"
    "fffwwfffwwfff\n"
    "dfffffefffffd\n"
    "fffwwfffwwfff\n"
    "ftfwfffffwfef\n"
    "fffwfffffwfff\n";

}  // namespace

Room basic_room() { return decode_room(kBasicRoom); }
Room complex_room() { return decode_room(kComplexRoom); }

}  // namespace roomqd
