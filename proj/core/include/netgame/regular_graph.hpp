#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace netgame {

struct RegularGraph {
  int m = 0;  // vertices
  int k = 0;  // degree
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<std::vector<int>> adj;       // sorted neighbor lists
};

// Smallest vertex count we are willing to sample at. Twice the minimum
// possible order of a k-regular graph with no 3- or 4-cycles, so the
// randomized search has room to settle. k = 2 is built directly as a cycle
// and only needs the cycle itself to be long enough.
int min_girth5_order(int k);

// Random connected k-regular graph with girth >= 5 on m vertices: stub
// pairing, then conflict-repair edge swaps until no edge sits on a cycle of
// length <= 4, then component merges (which cannot create short cycles).
// Deterministic given the seed. Throws ConstructionError when m is below
// min_girth5_order(k), when m*k is odd, or when the search exhausts its
// budget.
RegularGraph gen_regular_girth5(int k, int m, std::uint64_t seed);

}  // namespace netgame
