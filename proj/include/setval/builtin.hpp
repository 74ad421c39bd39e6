// The worked examples shipped with the library.
#pragma once

#include "setval/economy.hpp"
#include "setval/maps.hpp"
#include "setval/radner.hpp"

namespace setval {

/// T1 on (0,2): (0,1) on (0,1], [1,2) on (1,2).
PiecewiseMap example_2_1_map();
/// D = {1}.
BoxSet example_2_1_target();

struct MapPair {
  PiecewiseMap t1;
  PiecewiseMap t2;
  BoxSet target;
};

/// T1: [2-x,2] on (0,1), {4} at 1, [1,2] on (1,2); T2: [2,3] on (0,1],
/// {2} on (1,2); D = [1,2].
MapPair example_2_2_pair();

/// One-agent economy with A = T1, P = T2, B ≡ [1,2], D = [1,2] on X = (0,2).
AbstractEconomy example_2_2_economy();

/// n agents with X_i = [0,4], D_i = [0,2].
AbstractEconomy example_4_1_economy(std::size_t n);

/// Two agents, one good, two states.  Agent 1 cannot tell the states apart,
/// agent 2 can.
InfoEconomy radner_toy();

}  // namespace setval
