#pragma once

// Bounded enumeration of double point trees and reachability search in the
// move graph.

#include <cstdint>
#include <string>
#include <vector>

#include "dpt/canonical.hpp"
#include "dpt/invariant.hpp"
#include "dpt/moves.hpp"

namespace dpt {

/// A bound exceeds the configured resource limit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct EnumeratedTree {
  CanonicalCode code;
  /// decode(code), so ids are canonical.
  Tree tree;
};

struct EnumerationLimits {
  /// Upper bound on shape x pairing x degree candidates examined.
  std::uint64_t max_candidates = 50'000'000;
};

/// Candidate count enumerate_trees would examine.
std::uint64_t enumeration_estimate(int max_vertices, int delta_bound);

/// Every valid tree with at most max_vertices vertices and all |delta| <=
/// delta_bound, once each, sorted by code.
std::vector<EnumeratedTree> enumerate_trees(int max_vertices, int delta_bound, const EnumerationLimits& limits = {});

/// Unlabeled free trees on n vertices as edge lists over 0..n-1.
std::vector<std::vector<std::pair<int, int>>> free_tree_shapes(int n);

enum class ReachStatus { Reached, CertifiedUnreachable, Unknown };

std::string_view reach_status_name(ReachStatus s);

struct ReachLimits {
  int max_steps = 6;
  int max_vertices = 11;
  int max_reattach_degree = 6;
  /// Distinct states kept before giving up.
  std::size_t max_states = 200'000;
};

struct ReachResult {
  ReachStatus status = ReachStatus::Unknown;
  /// Replays from the source to a tree isomorphic to the target.
  std::vector<Move> path;
  InvariantVector source_invariant;
  InvariantVector target_invariant;
  std::size_t states_visited = 0;
  int depth_searched = 0;
  std::string detail;
};

ReachResult reachable(const Tree& source, const Tree& target, const ReachLimits& limits = {});

}  // namespace dpt
