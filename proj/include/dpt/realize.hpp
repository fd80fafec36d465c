#pragma once

// Explicit trees for every vector in the image of F, built as chains of
// f_k and g_k blocks glued by connected sums.

#include <string>
#include <vector>

#include "dpt/invariant.hpp"
#include "dpt/tree.hpp"

namespace dpt {

struct Block {
  Tree tree;
  /// Designated delta-1 merge vertices; equal for single-vertex blocks.
  std::string left, right;
};

/// Path 1,3,...,k,...,3,1 (or through negative degrees for k < 0) with edges
/// pointing away from the centre; F = e_k. Throws PreconditionError for even k.
Block building_block_f(int k);

/// Path k,...,1,...,k,...,1,...,k with edges pointing away from the two
/// delta-1 sources; F = 2e_1 - e_k. Throws PreconditionError for even k.
Block building_block_g(int k);

struct Decomposition {
  /// Indices with positive coefficient, repeated by multiplicity, ascending.
  std::vector<InvariantVector::Index> a;
  /// Indices with negative coefficient, repeated by multiplicity, ascending.
  std::vector<InvariantVector::Index> b;
};

/// Throws PreconditionError unless in_image(h), or when sum |h_k| exceeds
/// one million.
Decomposition decompose(const InvariantVector& h);

/// f_{a1} # g_{b1} # f_{a2} # ... # f_{an}; invariant_of(result) == h.
/// Throws PreconditionError unless in_image(h).
Tree realize(const InvariantVector& h);

}  // namespace dpt
