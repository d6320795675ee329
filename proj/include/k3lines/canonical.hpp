#pragma once
// Canonical labeling of colored multigraphs by partition refinement with
// backtracking, constrained by setwise-fixed vertex sets and pointwise-fixed
// vertices.  Returns canonical bytes, generators of the constrained
// automorphism group, and the group order.

#include "k3lines/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace k3l::fano {

using Perm = std::vector<int>;  // v -> image

struct Constraints {
  std::vector<std::vector<int>> setwise;
  std::vector<int> pointwise;
};

struct CanonicalResult {
  std::vector<uint8_t> bytes;
  std::vector<Perm> generators;
  Int aut_order = 1;
  Perm labeling;  // vertex -> canonical position

  std::string hex() const;
};

CanonicalResult canonical_form(const ConfigGraph& g, const Constraints& c = {});

// permutation-group utilities used by the searches
Perm compose(const Perm& p, const Perm& q);           // p after q
Perm inverse_perm(const Perm& p);
Int group_order(int n, const std::vector<Perm>& gens);  // Schreier-Sims

// orbit partition of {0..n-1}
std::vector<int> vertex_orbits(int n, const std::vector<Perm>& gens);

// orbit representatives among the given sorted vertex sets (the list must be
// closed under the group); returns for each input set the index of its
// representative
std::vector<int> orbit_reps_on_sets(const std::vector<std::vector<int>>& sets,
                                    const std::vector<Perm>& gens);

}  // namespace k3l::fano
