#pragma once

#include <cstddef>
#include <vector>

namespace flapevo {

// Objective vectors are key vectors: every key is minimized. Callers negate
// anything they want maximized before building the keys.

// a dominates b: a is no worse on every key and strictly better on at least one.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Fronts of indices into `keys`, best (non-dominated) first. Fast non-dominated
// sort; each index appears in exactly one front.
std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<std::vector<double>>& keys);

// Crowding distance for the members of one front (parallel to `front`).
// Boundary members on any key get +infinity; keys with zero range contribute
// nothing.
std::vector<double> crowding_distance(const std::vector<std::vector<double>>& keys,
                                      const std::vector<std::size_t>& front);

}  // namespace flapevo
