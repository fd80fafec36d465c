#pragma once

// Tree modifications induced by crossing the E (elliptic tangency) and
// H (hyperbolic tangency) strata, their inverses and enumeration.

#include <string>
#include <variant>
#include <vector>

#include "dpt/tree.hpp"

namespace dpt {

/// A move that does not apply to the given tree.
class MoveError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

enum class SplitKind { Parallel, Sequential };

struct SplitSpec {
  SplitKind kind = SplitKind::Parallel;
  /// Parallel on (v,w): edges at w moved to the new vertex.
  /// Sequential on (v,w): edges at v moved to the new vertex.
  std::vector<std::string> reattach;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

/// Two new leaves w1 (delta d1) under v1 and w2 (delta d2) under v2, with the
/// new edges (v1,w1), (v2,w2) paired.
struct EBirth {
  std::string v1, v2;
  int d1 = 0, d2 = 0;
  friend bool operator==(const EBirth&, const EBirth&) = default;
};

/// Removes a conjugate pair whose heads are leaves.
struct EDeath {
  std::string e1, e2;
  friend bool operator==(const EDeath&, const EDeath&) = default;
};

/// Splits a1 by side1, then a2 by side2; the two new edges form a new pair.
struct HMove {
  std::string a1, a2;
  SplitSpec side1, side2;
  friend bool operator==(const HMove&, const HMove&) = default;
};

/// Inverse of an HMove: collapses b2 into a2, then b1 into a1.
struct HMerge {
  std::string a1, a2;
  std::string b1, b2;
  friend bool operator==(const HMerge&, const HMerge&) = default;
};

using Move = std::variant<EBirth, EDeath, HMove, HMerge>;

struct MoveLimits {
  /// Vertices with more incident edges only offer the empty reattach set.
  int max_reattach_degree = 8;
};

/// Throws MoveError when a precondition fails or the result is invalid. The
/// input must be valid (PreconditionError otherwise).
Tree apply_move(const Tree& tree, const Move& m);

/// The move undoing m on apply_move(tree, m).
Move invert_move(const Tree& tree, const Move& m);

/// Every applicable move, in a deterministic order.
std::vector<Move> enumerate_moves(const Tree& tree, const MoveLimits& limits = {});

struct Successor {
  Move move;
  Tree tree;
};

/// enumerate_moves together with the resulting trees.
std::vector<Successor> enumerate_successors(const Tree& tree, const MoveLimits& limits = {});

std::string_view move_name(const Move& m);
std::string_view split_kind_name(SplitKind k);

/// One-line human readable rendering.
std::string describe(const Move& m);

}  // namespace dpt
