#pragma once

#include <cstdint>
#include <random>

#include "autalg/algebra.hpp"

namespace autalg {

using Rng = std::mt19937_64;

// 1..max_states states, 1..max_letters letters, each transition undefined
// with probability p_undefined. States q0.., letters a0..
AutomaticAlgebra random_algebra(Rng& rng, int max_states, int max_letters, double p_undefined = 0.3);

// Letters act as translations of a random abelian group of order
// <= max_states (cyclic, or Z2 x Z2), generating it; states shuffled.
AutomaticAlgebra random_commuting_connected(Rng& rng, int max_states);

}  // namespace autalg
