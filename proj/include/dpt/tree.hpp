#pragma once

// Double point trees: a directed tree whose edges are paired by a
// fixed-point-free involution and whose vertices carry an odd topological
// degree.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dpt {

/// Malformed input: unparsable data, dangling or duplicate ids.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A well-formed input that violates a structural rule or an operation's
/// precondition.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Vertex {
  std::string id;
  int delta = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Directed tail -> head, i.e. toward the disk component.
struct Edge {
  std::string id;
  int tail = -1;
  int head = -1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Tree {
public:
  Tree() = default;

  int add_vertex(std::string id, int delta);
  int add_edge(std::string id, int tail, int head);
  int add_edge(std::string id, std::string_view tail, std::string_view head);
  void add_pair(int e1, int e2);
  void add_pair(std::string_view e1, std::string_view e2);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Pairs in insertion order; each edge should occur exactly once.
  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;
  /// Throws InputError for unknown ids.
  int vertex_index(std::string_view id) const;
  int edge_index(std::string_view id) const;

  /// Conjugate edge, or -1 when the edge is unpaired. When an edge is listed
  /// in several pairs the first listing wins (validate() reports the rest).
  int partner(int e) const { return partner_[static_cast<std::size_t>(e)]; }

  int delta(int v) const { return vertices_[static_cast<std::size_t>(v)].delta; }
  int indegree(int v) const;
  /// Edge indices incident to v, ascending.
  std::vector<int> incident(int v) const;
  /// Adjacency list: for each vertex, the incident edge indices.
  std::vector<std::vector<int>> incidence() const;

  int other_end(int e, int v) const {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    return ed.tail == v ? ed.head : ed.tail;
  }

  // In-place edits used by the move calculus. Ids stay stable.
  void set_delta(int v, int delta) { vertices_[static_cast<std::size_t>(v)].delta = delta; }
  void set_endpoints(int e, int tail, int head);
  void unpair(int e);

  /// Smallest unused "v<n>" / "e<n>" with n >= current count.
  std::string fresh_vertex_id() const;
  std::string fresh_edge_id() const;

  /// Copy without the given vertices and edges; remaining order is kept.
  Tree without(const std::vector<int>& drop_vertices, const std::vector<int>& drop_edges) const;

  friend bool operator==(const Tree&, const Tree&) = default;

private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> partner_;
  std::map<std::string, int, std::less<>> vertex_ids_;
  std::map<std::string, int, std::less<>> edge_ids_;
};

enum class Rule {
  EdgeCount,        // |E| = |V| - 1
  Connected,
  Acyclic,
  PairingCoverage,  // every edge listed in exactly one pair
  SelfPaired,
  DeltaParity,
  DeltaStep,        // |delta(v) - delta(w)| = 2 across every edge
  Orientation,      // conjugate lies on the tail side
};

std::string_view rule_name(Rule r);

struct Violation {
  Rule rule;
  std::vector<std::string> witness;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(Rule r) const;
};

ValidationReport validate(const Tree& tree);

/// Throws PreconditionError listing the violated rules.
void require_valid(const Tree& tree, std::string_view what = "tree");

/// Orientation rule alone, for callers that build candidate trees in bulk.
/// Requires a connected acyclic tree with complete pairing.
bool orientation_consistent(const Tree& tree);

/// Same vertices, edges and pairing with every delta negated.
Tree negate(const Tree& tree);

struct SumResult {
  Tree tree;
  /// Old id in the second summand -> id in the result.
  std::map<std::string, std::string> vertex_relabel;
  std::map<std::string, std::string> edge_relabel;
};

/// Glue two trees along delta-1 vertices. The merged vertex keeps v1's id;
/// every element of t2 is relabeled freshly.
SumResult connected_sum(const Tree& t1, std::string_view v1, const Tree& t2, std::string_view v2);

int indegree(const Tree& tree, std::string_view vertex_id);

}  // namespace dpt
