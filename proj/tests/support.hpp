#pragma once

// Shared helpers for the test suites: fixture loading, hand-rolled random
// generators and brute-force oracles that do not use the library's own
// algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dpt/invariant.hpp"
#include "dpt/io.hpp"
#include "dpt/tree.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(DPT_FIXTURES) + "/" + name; }

inline dpt::Tree fixture(const std::string& name) { return dpt::io::tree_from_json(dpt::io::load(fixture_path(name + ".json"))); }

using Rng = std::mt19937_64;

/// Random valid tree on n (odd) vertices: random shape, random perfect
/// matching of the edges, the orientation each pairing forces, and degrees
/// stepping by +-2 from a random odd root value.
inline dpt::Tree random_tree(Rng& rng, int n, int root_bound = 5) {
  std::vector<std::pair<int, int>> shape;
  for (int v = 1; v < n; ++v) shape.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  const int m = n - 1;
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> partner(static_cast<std::size_t>(m));
  for (int i = 0; i + 1 < m; i += 2) {
    partner[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = order[static_cast<std::size_t>(i + 1)];
    partner[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])] = order[static_cast<std::size_t>(i)];
  }
  // parent[v] for the shape rooted at 0; side test by walking to the root.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (auto [p, c] : shape) parent[static_cast<std::size_t>(c)] = p;
  auto below = [&](int v, int child) {  // is v in the subtree of child?
    for (; v != -1; v = parent[static_cast<std::size_t>(v)])
      if (v == child) return true;
    return false;
  };
  std::vector<int> delta(static_cast<std::size_t>(n));
  const int span = root_bound;  // odd root in [-span, span]
  int root = std::uniform_int_distribution<int>(-(span + 1) / 2, (span - 1) / 2)(rng) * 2 + 1;
  delta[0] = root;
  for (auto [p, c] : shape)
    delta[static_cast<std::size_t>(c)] = delta[static_cast<std::size_t>(p)] + (rng() % 2 ? 2 : -2);

  dpt::Tree t;
  for (int v = 0; v < n; ++v) t.add_vertex("n" + std::to_string(v), delta[static_cast<std::size_t>(v)]);
  for (int e = 0; e < m; ++e) {
    auto [p, c] = shape[static_cast<std::size_t>(e)];
    auto [fp, fc] = shape[static_cast<std::size_t>(partner[static_cast<std::size_t>(e)])];
    // The partner edge lies below c exactly when its child end does.
    const bool partner_below = below(fc, c);
    if (partner_below) t.add_edge("x" + std::to_string(e), c, p);
    else t.add_edge("x" + std::to_string(e), p, c);
    (void)fp;
  }
  for (int e = 0; e < m; ++e)
    if (e < partner[static_cast<std::size_t>(e)]) t.add_pair(e, partner[static_cast<std::size_t>(e)]);
  return t;
}

inline int random_odd_size(Rng& rng, int max_n) { return 2 * std::uniform_int_distribution<int>(0, (max_n - 1) / 2)(rng) + 1; }

/// Shifts all degrees so vertex v has delta 1.
inline dpt::Tree with_unit_vertex(dpt::Tree t, int v) {
  const int shift = 1 - t.delta(v);
  for (std::size_t i = 0; i < t.vertex_count(); ++i) t.set_delta(static_cast<int>(i), t.delta(static_cast<int>(i)) + shift);
  return t;
}

/// Same tree with all ids renamed and vertices, edges and pairs reordered.
inline dpt::Tree relabel(const dpt::Tree& t, Rng& rng) {
  const std::size_t n = t.vertex_count();
  const std::size_t m = t.edge_count();
  std::vector<int> vperm(n), eperm(m);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> vpos(n), epos(m);
  dpt::Tree out;
  for (std::size_t i = 0; i < n; ++i) {
    vpos[static_cast<std::size_t>(vperm[i])] = static_cast<int>(i);
    out.add_vertex("r" + std::to_string(rng() % 1000) + "_" + std::to_string(i), t.delta(vperm[i]));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = t.edges()[static_cast<std::size_t>(eperm[i])];
    epos[static_cast<std::size_t>(eperm[i])] = static_cast<int>(i);
    out.add_edge("q" + std::to_string(i), vpos[static_cast<std::size_t>(e.tail)], vpos[static_cast<std::size_t>(e.head)]);
  }
  auto pairs = t.pairs();
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (auto [a, b] : pairs) {
    if (rng() % 2) std::swap(a, b);
    out.add_pair(epos[static_cast<std::size_t>(a)], epos[static_cast<std::size_t>(b)]);
  }
  return out;
}

/// Tries every vertex bijection.
inline bool brute_isomorphic(const dpt::Tree& a, const dpt::Tree& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::map<std::pair<int, int>, int> bedge;
  for (std::size_t e = 0; e < b.edge_count(); ++e) bedge[{b.edges()[e].tail, b.edges()[e].head}] = static_cast<int>(e);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) ok = a.delta(static_cast<int>(v)) == b.delta(perm[v]);
    std::vector<int> emap(a.edge_count(), -1);
    for (std::size_t e = 0; e < a.edge_count() && ok; ++e) {
      auto it = bedge.find({perm[static_cast<std::size_t>(a.edges()[e].tail)], perm[static_cast<std::size_t>(a.edges()[e].head)]});
      if (it == bedge.end()) ok = false;
      else emap[e] = it->second;
    }
    for (std::size_t e = 0; e < a.edge_count() && ok; ++e)
      ok = b.partner(emap[e]) == emap[static_cast<std::size_t>(a.partner(static_cast<int>(e)))];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// F by definition, from the raw edge list.
inline std::map<long long, long long> naive_invariant(const dpt::Tree& t) {
  std::map<long long, long long> f;
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    long long in = 0;
    for (const auto& e : t.edges()) in += e.head == static_cast<int>(v);
    f[t.delta(static_cast<int>(v))] += 1 - in;
  }
  for (auto it = f.begin(); it != f.end();) it = it->second == 0 ? f.erase(it) : std::next(it);
  return f;
}

/// Orientation rule checked edge by edge: delete e, flood from its tail and
/// require the partner to be reached.
inline bool naive_orientation_ok(const dpt::Tree& t) {
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    std::vector<bool> seen(t.vertex_count(), false);
    std::vector<int> stack{t.edges()[e].tail};
    seen[static_cast<std::size_t>(stack[0])] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (std::size_t f = 0; f < t.edge_count(); ++f) {
        if (f == e) continue;
        const auto& ed = t.edges()[f];
        int w = -1;
        if (ed.tail == u) w = ed.head;
        else if (ed.head == u) w = ed.tail;
        if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    const auto& p = t.edges()[static_cast<std::size_t>(t.partner(static_cast<int>(e)))];
    if (!seen[static_cast<std::size_t>(p.tail)] || !seen[static_cast<std::size_t>(p.head)]) return false;
  }
  return true;
}

/// Random h in the image of F: odd support in [-21,21], coefficient sum 1,
/// sum |h_k| <= 13.
inline dpt::InvariantVector random_image_vector(Rng& rng) {
  std::uniform_int_distribution<int> idx(-11, 10);
  while (true) {
    dpt::InvariantVector h;
    const int pos = std::uniform_int_distribution<int>(1, 7)(rng);
    for (int i = 0; i < pos; ++i) h.add_at(2 * idx(rng) + 1, 1);
    for (int i = 0; i < pos - 1; ++i) h.add_at(2 * idx(rng) + 1, -1);
    if (dpt::in_image(h)) return h;
  }
}

}  // namespace testing
