#pragma once

#include "roomqd/room.hpp"

namespace roomqd {

/// Bundled 13x7 target rooms used by the experiment drivers.
/// "Basic" is a mostly open room; "complex" splits the space with wall columns.
Room basic_room();
Room complex_room();

}  // namespace roomqd
