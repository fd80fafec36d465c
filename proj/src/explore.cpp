#include "dpt/explore.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dpt {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Rooted trees on n vertices as nested AHU strings "(...)".
const std::vector<std::string>& rooted_trees(int n) {
  static std::map<int, std::vector<std::string>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::set<std::string> found;
  // Children as a nonincreasing sequence of (size, index) keeps each multiset once.
  std::function<void(int, int, int, std::vector<std::string>&)> grow = [&](int left, int max_size, int max_index,
                                                                          std::vector<std::string>& kids) {
    if (left == 0) {
      std::vector<std::string> sorted = kids;
      std::sort(sorted.begin(), sorted.end());
      std::string s = "(";
      for (const auto& k : sorted) s += k;
      found.insert(s + ")");
      return;
    }
    for (int size = std::min(left, max_size); size >= 1; --size) {
      const auto& opts = rooted_trees(size);
      const int top = size == max_size ? max_index : static_cast<int>(opts.size()) - 1;
      for (int i = top; i >= 0; --i) {
        kids.push_back(opts[at(i)]);
        grow(left - size, size, i, kids);
        kids.pop_back();
      }
    }
  };
  std::vector<std::string> kids;
  if (n >= 1) grow(n - 1, n - 1, n - 1 >= 1 ? static_cast<int>(rooted_trees(n - 1).size()) - 1 : 0, kids);
  auto& out = memo[n];
  out.assign(found.begin(), found.end());
  return out;
}

std::vector<std::pair<int, int>> parse_rooted(const std::string& s) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> stack;
  int next = 0;
  for (char c : s) {
    if (c == '(') {
      const int v = next++;
      if (!stack.empty()) edges.emplace_back(stack.back(), v);
      stack.push_back(v);
    } else {
      stack.pop_back();
    }
  }
  return edges;
}

std::string ahu(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[at(v)])
    if (w != parent) kids.push_back(ahu(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::string free_key(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(at(n));
  for (auto [a, b] : edges) {
    adj[at(a)].push_back(b);
    adj[at(b)].push_back(a);
  }
  std::string best;
  for (int r = 0; r < n; ++r) {
    std::string s = ahu(adj, r, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::uint64_t double_factorial_odd(int m) {
  std::uint64_t r = 1;
  for (int k = m; k > 1; k -= 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

// All perfect matchings of {0..m-1}.
void matchings(std::vector<int>& free, std::vector<std::pair<int, int>>& cur,
               std::vector<std::vector<std::pair<int, int>>>& out) {
  if (free.empty()) {
    out.push_back(cur);
    return;
  }
  const int a = free.front();
  for (std::size_t i = 1; i < free.size(); ++i) {
    const int b = free[i];
    std::vector<int> rest;
    for (std::size_t j = 1; j < free.size(); ++j)
      if (j != i) rest.push_back(free[j]);
    cur.emplace_back(a, b);
    matchings(rest, cur, out);
    cur.pop_back();
  }
}

// Orients e away from its partner f: the tail is the endpoint of e nearer f.
bool near_f(const std::vector<std::vector<int>>& adj, int from, int blocked, int target_a, int target_b) {
  std::vector<int> stack{from};
  std::vector<bool> seen(adj.size(), false);
  seen[at(from)] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == target_a || u == target_b) return true;
    for (int w : adj[at(u)]) {
      if (w == blocked || seen[at(w)]) continue;
      seen[at(w)] = true;
      stack.push_back(w);
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> free_tree_shapes(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (n < 1) return out;
  std::set<std::string> seen;
  for (const auto& s : rooted_trees(n)) {
    auto edges = parse_rooted(s);
    if (seen.insert(free_key(n, edges)).second) out.push_back(std::move(edges));
  }
  return out;
}

std::uint64_t enumeration_estimate(int max_vertices, int delta_bound) {
  std::uint64_t total = 0;
  const std::uint64_t roots = static_cast<std::uint64_t>(delta_bound + 1);
  for (int n = 1; n <= max_vertices; n += 2) {
    const std::uint64_t shapes = free_tree_shapes(n).size();
    const std::uint64_t per = double_factorial_odd(n - 2) * (std::uint64_t{1} << (n - 1)) * roots;
    total += shapes * per;
  }
  return total;
}

std::vector<EnumeratedTree> enumerate_trees(int max_vertices, int delta_bound, const EnumerationLimits& limits) {
  if (max_vertices < 1 || delta_bound < 1) throw PreconditionError("enumeration bounds must be at least 1");
  if (max_vertices > 25) throw ResourceError("maxVertices exceeds the enumeration resource limit");
  const std::uint64_t estimate = enumeration_estimate(max_vertices, delta_bound);
  if (estimate > limits.max_candidates)
    throw ResourceError("enumeration would examine " + std::to_string(estimate) + " candidates, limit is " +
                        std::to_string(limits.max_candidates));

  std::set<CanonicalCode> codes;
  for (int n = 1; n <= max_vertices; n += 2) {
    for (const auto& shape : free_tree_shapes(n)) {
      const int m = n - 1;
      std::vector<std::vector<int>> adj(at(n));
      for (auto [a, b] : shape) {
        adj[at(a)].push_back(b);
        adj[at(b)].push_back(a);
      }
      std::vector<std::vector<std::pair<int, int>>> all;
      std::vector<int> free(at(m));
      for (int i = 0; i < m; ++i) free[at(i)] = i;
      std::vector<std::pair<int, int>> cur;
      matchings(free, cur, all);

      for (const auto& matching : all) {
        // Orientation is forced by the pairing.
        std::vector<std::pair<int, int>> directed(shape.size());
        std::vector<int> partner(at(m), -1);
        for (auto [e, f] : matching) {
          partner[at(e)] = f;
          partner[at(f)] = e;
        }
        for (int e = 0; e < m; ++e) {
          auto [a, b] = shape[at(e)];
          const auto [fa, fb] = shape[at(partner[at(e)])];
          directed[at(e)] = near_f(adj, a, b, fa, fb) ? std::pair{a, b} : std::pair{b, a};
        }
        // Degrees: the root takes any odd value, every edge steps by +-2.
        for (int root = -delta_bound; root <= delta_bound; ++root) {
          if (root % 2 == 0) continue;
          for (std::uint32_t steps = 0; steps < (1u << m); ++steps) {
            std::vector<int> delta(at(n), 0);
            delta[0] = root;
            bool ok = true;
            // In a parsed rooted tree the parent index precedes the child.
            for (int e = 0; e < m && ok; ++e) {
              auto [p, c] = shape[at(e)];
              delta[at(c)] = delta[at(p)] + ((steps >> e & 1) ? 2 : -2);
              ok = delta[at(c)] >= -delta_bound && delta[at(c)] <= delta_bound;
            }
            if (!ok) continue;
            Tree t;
            for (int v = 0; v < n; ++v) t.add_vertex("v" + std::to_string(v), delta[at(v)]);
            for (int e = 0; e < m; ++e)
              t.add_edge("e" + std::to_string(e), directed[at(e)].first, directed[at(e)].second);
            for (auto [e, f] : matching) t.add_pair(e, f);
            if (!validate(t).ok) continue;
            codes.insert(canonical_code_unchecked(t));
          }
        }
      }
    }
  }
  std::vector<EnumeratedTree> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back({c, decode(c)});
  return out;
}

std::string_view reach_status_name(ReachStatus s) {
  switch (s) {
    case ReachStatus::Reached: return "Reached";
    case ReachStatus::CertifiedUnreachable: return "CertifiedUnreachable";
    case ReachStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

ReachResult reachable(const Tree& source, const Tree& target, const ReachLimits& limits) {
  ReachResult res;
  res.source_invariant = invariant_of(source);
  res.target_invariant = invariant_of(target);
  if (res.source_invariant != res.target_invariant) {
    res.status = ReachStatus::CertifiedUnreachable;
    res.detail = "invariants differ";
    return res;
  }
  const CanonicalCode goal = canonical_code_unchecked(target);
  const CanonicalCode start = canonical_code_unchecked(source);
  if (start == goal) {
    res.status = ReachStatus::Reached;
    res.states_visited = 1;
    res.detail = "source and target are isomorphic";
    return res;
  }

  struct Origin {
    CanonicalCode parent;
    Move move;
  };
  std::map<CanonicalCode, Origin> origin;
  std::set<CanonicalCode> visited{start};
  std::map<CanonicalCode, Tree> frontier{{start, source}};
  const MoveLimits move_limits{limits.max_reattach_degree};

  auto path_to = [&](CanonicalCode code) {
    std::vector<Move> path;
    while (code != start) {
      const Origin& o = origin.at(code);
      path.push_back(o.move);
      code = o.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (int depth = 1; depth <= limits.max_steps; ++depth) {
    std::map<CanonicalCode, Tree> next;
    for (const auto& [code, tree] : frontier) {
      for (auto& s : enumerate_successors(tree, move_limits)) {
        if (static_cast<int>(s.tree.vertex_count()) > limits.max_vertices) continue;
        CanonicalCode c = canonical_code_unchecked(s.tree);
        if (!visited.insert(c).second) continue;
        origin.emplace(c, Origin{code, s.move});
        if (c == goal) {
          res.status = ReachStatus::Reached;
          res.path = path_to(c);
          res.states_visited = visited.size();
          res.depth_searched = depth;
          res.detail = "path found at the tree level; not a certified geometric regular homotopy";
          return res;
        }
        next.emplace(std::move(c), std::move(s.tree));
        if (visited.size() > limits.max_states) {
          res.states_visited = visited.size();
          res.depth_searched = depth;
          res.detail = "state limit reached";
          return res;
        }
      }
    }
    res.depth_searched = depth;
    if (next.empty()) {
      res.states_visited = visited.size();
      res.detail = "every state within the vertex bound was explored";
      return res;
    }
    frontier = std::move(next);
  }
  res.states_visited = visited.size();
  res.detail = "step limit reached";
  return res;
}

}  // namespace dpt
