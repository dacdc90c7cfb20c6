#pragma once

#include "field.hpp"

namespace specwin {

/// Optional damping term applied inside the fringe zone during integration:
/// rhs -= strength * w(x) * (u - target). The weight w is 1 deep inside the
/// fringe, 0 in the interior; target is the post-respawn state of the cycle.
struct FringeForcing {
    double strength = 0.0;
    PhysicalField weight;  // single component, broadcast over velocity components
    PhysicalField target;  // same shape as the evolving field
};

} // namespace specwin
