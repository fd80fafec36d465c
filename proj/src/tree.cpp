#include "dpt/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace dpt {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

// Entry/exit times of a DFS rooted at vertex 0, used for subtree membership.
struct RootedTree {
  std::vector<int> parent;
  std::vector<int> tin;
  std::vector<int> tout;

  bool in_subtree(int v, int root) const { return tin[at(root)] <= tin[at(v)] && tout[at(v)] <= tout[at(root)]; }
};

RootedTree root_at_zero(const Tree& tree) {
  const auto adj = tree.incidence();
  const std::size_t n = tree.vertex_count();
  RootedTree rt{std::vector<int>(n, -1), std::vector<int>(n, 0), std::vector<int>(n, 0)};
  int clock = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  rt.tin[0] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < adj[at(v)].size()) {
      const int w = tree.other_end(adj[at(v)][next++], v);
      if (!seen[at(w)]) {
        seen[at(w)] = true;
        rt.parent[at(w)] = v;
        rt.tin[at(w)] = clock++;
        stack.emplace_back(w, 0);
      }
    } else {
      rt.tout[at(v)] = clock++;
      stack.pop_back();
    }
  }
  return rt;
}

// True when the partner of e lies in the component of tree - e containing tail(e).
bool edge_oriented_away(const Tree& tree, const RootedTree& rt, int e) {
  const Edge& ed = tree.edges()[at(e)];
  const int child = rt.parent[at(ed.head)] == ed.tail ? ed.head : ed.tail;
  const bool head_is_child = child == ed.head;
  const Edge& pe = tree.edges()[at(tree.partner(e))];
  const bool partner_below = rt.in_subtree(pe.tail, child) && rt.in_subtree(pe.head, child);
  return head_is_child ? !partner_below : partner_below;
}

std::string fresh_id(const std::map<std::string, int, std::less<>>& used, char prefix, std::size_t start) {
  for (std::size_t n = start;; ++n) {
    std::string id = prefix + std::to_string(n);
    if (!used.contains(id)) return id;
  }
}

}  // namespace

int Tree::add_vertex(std::string id, int delta) {
  if (id.empty()) throw InputError("vertex id must be non-empty");
  if (vertex_ids_.contains(id)) throw InputError("duplicate vertex id '" + id + "'");
  const int idx = static_cast<int>(vertices_.size());
  vertex_ids_.emplace(id, idx);
  vertices_.push_back({std::move(id), delta});
  return idx;
}

int Tree::add_edge(std::string id, int tail, int head) {
  if (id.empty()) throw InputError("edge id must be non-empty");
  if (edge_ids_.contains(id)) throw InputError("duplicate edge id '" + id + "'");
  const int n = static_cast<int>(vertices_.size());
  if (tail < 0 || tail >= n || head < 0 || head >= n)
    throw InputError("edge '" + id + "' references an unknown vertex");
  const int idx = static_cast<int>(edges_.size());
  edge_ids_.emplace(id, idx);
  edges_.push_back({std::move(id), tail, head});
  partner_.push_back(-1);
  return idx;
}

int Tree::add_edge(std::string id, std::string_view tail, std::string_view head) {
  return add_edge(std::move(id), vertex_index(tail), vertex_index(head));
}

void Tree::add_pair(int e1, int e2) {
  const int n = static_cast<int>(edges_.size());
  if (e1 < 0 || e1 >= n || e2 < 0 || e2 >= n) throw InputError("pairing references an unknown edge");
  pairs_.emplace_back(e1, e2);
  if (partner_[at(e1)] == -1 && partner_[at(e2)] == -1) {
    partner_[at(e1)] = e2;
    partner_[at(e2)] = e1;
  }
}

void Tree::add_pair(std::string_view e1, std::string_view e2) { add_pair(edge_index(e1), edge_index(e2)); }

std::optional<int> Tree::find_vertex(std::string_view id) const {
  if (auto it = vertex_ids_.find(id); it != vertex_ids_.end()) return it->second;
  return std::nullopt;
}

std::optional<int> Tree::find_edge(std::string_view id) const {
  if (auto it = edge_ids_.find(id); it != edge_ids_.end()) return it->second;
  return std::nullopt;
}

int Tree::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InputError("unknown vertex id '" + std::string(id) + "'");
}

int Tree::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw InputError("unknown edge id '" + std::string(id) + "'");
}

int Tree::indegree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.head == v; }));
}

std::vector<int> Tree::incident(int v) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].tail == v || edges_[e].head == v) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<std::vector<int>> Tree::incidence() const {
  std::vector<std::vector<int>> adj(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adj[at(edges_[e].tail)].push_back(static_cast<int>(e));
    if (edges_[e].head != edges_[e].tail) adj[at(edges_[e].head)].push_back(static_cast<int>(e));
  }
  return adj;
}

void Tree::set_endpoints(int e, int tail, int head) {
  edges_[at(e)].tail = tail;
  edges_[at(e)].head = head;
}

void Tree::unpair(int e) {
  const int p = partner_[at(e)];
  if (p == -1) return;
  partner_[at(e)] = -1;
  partner_[at(p)] = -1;
  std::erase_if(pairs_, [&](const auto& pr) { return pr.first == e || pr.second == e; });
}

std::string Tree::fresh_vertex_id() const { return fresh_id(vertex_ids_, 'v', vertices_.size()); }
std::string Tree::fresh_edge_id() const { return fresh_id(edge_ids_, 'e', edges_.size()); }

Tree Tree::without(const std::vector<int>& drop_vertices, const std::vector<int>& drop_edges) const {
  const std::set<int> dv(drop_vertices.begin(), drop_vertices.end());
  const std::set<int> de(drop_edges.begin(), drop_edges.end());
  Tree out;
  std::vector<int> vmap(vertices_.size(), -1);
  std::vector<int> emap(edges_.size(), -1);
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (!dv.contains(static_cast<int>(v))) vmap[v] = out.add_vertex(vertices_[v].id, vertices_[v].delta);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (de.contains(static_cast<int>(e))) continue;
    const int t = vmap[at(edges_[e].tail)];
    const int h = vmap[at(edges_[e].head)];
    if (t < 0 || h < 0) throw std::logic_error("Tree::without: kept edge '" + edges_[e].id + "' loses an endpoint");
    emap[e] = out.add_edge(edges_[e].id, t, h);
  }
  for (const auto& [a, b] : pairs_)
    if (emap[at(a)] >= 0 && emap[at(b)] >= 0) out.add_pair(emap[at(a)], emap[at(b)]);
  return out;
}

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::EdgeCount: return "edge_count";
    case Rule::Connected: return "connected";
    case Rule::Acyclic: return "acyclic";
    case Rule::PairingCoverage: return "pairing_coverage";
    case Rule::SelfPaired: return "self_paired";
    case Rule::DeltaParity: return "delta_parity";
    case Rule::DeltaStep: return "delta_step";
    case Rule::Orientation: return "orientation";
  }
  return "unknown";
}

bool ValidationReport::has(Rule r) const {
  return std::any_of(violations.begin(), violations.end(), [r](const Violation& v) { return v.rule == r; });
}

ValidationReport validate(const Tree& tree) {
  ValidationReport report;
  auto fail = [&report](Rule r, std::vector<std::string> witness) {
    report.ok = false;
    report.violations.push_back({r, std::move(witness)});
  };
  const auto& vs = tree.vertices();
  const auto& es = tree.edges();

  if (vs.empty()) {
    fail(Rule::Connected, {});
    return report;
  }
  if (es.size() + 1 != vs.size())
    fail(Rule::EdgeCount, {std::to_string(vs.size()) + " vertices", std::to_string(es.size()) + " edges"});

  DisjointSets dsu(vs.size());
  bool acyclic = true;
  for (const Edge& e : es) {
    if (!dsu.unite(at(e.tail), at(e.head))) {
      acyclic = false;
      fail(Rule::Acyclic, {e.id});
    }
  }
  bool connected = true;
  for (std::size_t v = 1; v < vs.size(); ++v) {
    if (dsu.find(v) != dsu.find(0)) {
      connected = false;
      fail(Rule::Connected, {vs[v].id});
    }
  }

  std::vector<int> listed(es.size(), 0);
  for (const auto& [a, b] : tree.pairs()) {
    if (a == b) {
      fail(Rule::SelfPaired, {es[at(a)].id});
      ++listed[at(a)];
    } else {
      ++listed[at(a)];
      ++listed[at(b)];
    }
  }
  bool pairing_ok = true;
  for (std::size_t e = 0; e < es.size(); ++e) {
    if (listed[e] != 1) {
      pairing_ok = false;
      if (listed[e] == 0 || !report.has(Rule::SelfPaired) || tree.partner(static_cast<int>(e)) != static_cast<int>(e))
        fail(Rule::PairingCoverage, {es[e].id});
    }
  }

  for (const Vertex& v : vs)
    if (v.delta % 2 == 0) fail(Rule::DeltaParity, {v.id});

  for (const Edge& e : es) {
    const int diff = vs[at(e.tail)].delta - vs[at(e.head)].delta;
    if (diff != 2 && diff != -2) fail(Rule::DeltaStep, {e.id, vs[at(e.tail)].id, vs[at(e.head)].id});
  }

  if (acyclic && connected && es.size() + 1 == vs.size() && !es.empty()) {
    const RootedTree rt = root_at_zero(tree);
    for (std::size_t e = 0; e < es.size(); ++e) {
      const int p = tree.partner(static_cast<int>(e));
      if (p < 0 || p == static_cast<int>(e) || listed[e] != 1) continue;
      if (!edge_oriented_away(tree, rt, static_cast<int>(e))) fail(Rule::Orientation, {es[e].id, es[at(p)].id});
    }
  }
  (void)pairing_ok;
  return report;
}

void require_valid(const Tree& tree, std::string_view what) {
  const ValidationReport r = validate(tree);
  if (r.ok) return;
  std::ostringstream msg;
  msg << what << " is not a valid double point tree:";
  for (const Violation& v : r.violations) {
    msg << ' ' << rule_name(v.rule);
    if (!v.witness.empty()) {
      msg << '(';
      for (std::size_t i = 0; i < v.witness.size(); ++i) msg << (i ? "," : "") << v.witness[i];
      msg << ')';
    }
  }
  throw PreconditionError(msg.str());
}

bool orientation_consistent(const Tree& tree) {
  if (tree.edge_count() == 0) return true;
  const RootedTree rt = root_at_zero(tree);
  for (std::size_t e = 0; e < tree.edge_count(); ++e)
    if (!edge_oriented_away(tree, rt, static_cast<int>(e))) return false;
  return true;
}

Tree negate(const Tree& tree) {
  Tree out = tree;
  for (std::size_t v = 0; v < out.vertex_count(); ++v) out.set_delta(static_cast<int>(v), -tree.delta(static_cast<int>(v)));
  return out;
}

SumResult connected_sum(const Tree& t1, std::string_view v1, const Tree& t2, std::string_view v2) {
  require_valid(t1, "first summand");
  require_valid(t2, "second summand");
  const int m1 = t1.vertex_index(v1);
  const int m2 = t2.vertex_index(v2);
  if (t1.delta(m1) != 1 || t2.delta(m2) != 1)
    throw PreconditionError("connected sum requires merge vertices of delta 1");

  SumResult res{t1, {}, {}};
  Tree& out = res.tree;
  std::vector<int> vmap(t2.vertex_count(), -1);
  for (std::size_t v = 0; v < t2.vertex_count(); ++v) {
    const auto& vert = t2.vertices()[v];
    if (static_cast<int>(v) == m2) {
      vmap[v] = m1;
      res.vertex_relabel[vert.id] = std::string(v1);
    } else {
      std::string id = out.fresh_vertex_id();
      res.vertex_relabel[vert.id] = id;
      vmap[v] = out.add_vertex(std::move(id), vert.delta);
    }
  }
  std::vector<int> emap(t2.edge_count(), -1);
  for (std::size_t e = 0; e < t2.edge_count(); ++e) {
    const auto& ed = t2.edges()[e];
    std::string id = out.fresh_edge_id();
    res.edge_relabel[ed.id] = id;
    emap[e] = out.add_edge(std::move(id), vmap[at(ed.tail)], vmap[at(ed.head)]);
  }
  for (const auto& [a, b] : t2.pairs()) out.add_pair(emap[at(a)], emap[at(b)]);
  return res;
}

int indegree(const Tree& tree, std::string_view vertex_id) { return tree.indegree(tree.vertex_index(vertex_id)); }

}  // namespace dpt
