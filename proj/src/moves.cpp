#include "dpt/moves.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <sstream>

namespace dpt {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Failure reason of an internal step; empty when the step succeeded.
using Err = std::optional<std::string>;

int distinct_count(std::initializer_list<int> xs) { return static_cast<int>(std::set<int>(xs).size()); }

bool incident_to(const Tree& t, int e, int v) {
  const Edge& ed = t.edges()[at(e)];
  return ed.tail == v || ed.head == v;
}

void replace_endpoint(Tree& t, int e, int from, int to) {
  const Edge& ed = t.edges()[at(e)];
  t.set_endpoints(e, ed.tail == from ? to : ed.tail, ed.head == from ? to : ed.head);
}

Err report_error(const ValidationReport& r) {
  std::string msg = "result is not a valid double point tree:";
  for (const Violation& v : r.violations) msg += " " + std::string(rule_name(v.rule));
  return msg;
}

Err check_birth_degrees(int dv1, int dv2, int d1, int d2) {
  if (d1 - dv1 != 2 && d1 - dv1 != -2) return "d1 must differ from delta(v1) by 2";
  if (d2 - dv2 != 2 && d2 - dv2 != -2) return "d2 must differ from delta(v2) by 2";
  const int diff = dv1 - dv2;
  if (diff != 2 && diff != 0 && diff != -2) return "delta(v1) - delta(v2) must be -2, 0 or 2";
  if (distinct_count({dv1, dv2, d1, d2}) != 2) return "the four degrees must take exactly 2 values";
  return std::nullopt;
}

// First edge on the path from v toward edge target, where target lies on v's
// side of skip. The target itself counts when it is incident to v.
int first_path_edge(const Tree& t, int v, int skip, int target) {
  if (incident_to(t, target, v)) return target;
  const auto adj = t.incidence();
  std::vector<int> first(t.vertex_count(), -1);
  std::vector<bool> seen(t.vertex_count(), false);
  std::deque<int> queue{v};
  seen[at(v)] = true;
  const Edge& te = t.edges()[at(target)];
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == te.tail || u == te.head) return first[at(u)];
    for (int e : adj[at(u)]) {
      if (e == skip) continue;
      const int x = t.other_end(e, u);
      if (seen[at(x)]) continue;
      seen[at(x)] = true;
      first[at(x)] = u == v ? e : first[at(u)];
      queue.push_back(x);
    }
  }
  return -1;
}

// One half of an H crossing on edge a. Returns the new edge through b.
Err split(Tree& t, int a, SplitKind kind, const std::vector<int>& reattach, int& b) {
  const int v = t.edges()[at(a)].tail;
  const int w = t.edges()[at(a)].head;
  const int pivot = kind == SplitKind::Parallel ? w : v;
  std::set<int> distinct;
  for (int e : reattach) {
    if (e == a) return "an edge cannot be reattached by its own split";
    if (!incident_to(t, e, pivot)) return "reattached edge '" + t.edges()[at(e)].id + "' is not incident to the split vertex";
    if (!distinct.insert(e).second) return "reattached edge '" + t.edges()[at(e)].id + "' listed twice";
  }
  if (kind == SplitKind::Parallel) {
    const int w2 = t.add_vertex(t.fresh_vertex_id(), t.delta(w));
    for (int e : reattach) replace_endpoint(t, e, w, w2);
    b = t.add_edge(t.fresh_edge_id(), v, w2);
    return std::nullopt;
  }
  const int p = t.partner(a);
  const bool flip = p >= 0 && distinct.contains(first_path_edge(t, v, a, p));
  const int z = t.add_vertex(t.fresh_vertex_id(), t.delta(v));
  for (int e : reattach) replace_endpoint(t, e, v, z);
  b = t.add_edge(t.fresh_edge_id(), w, z);
  if (flip) {
    t.set_endpoints(a, w, v);
    t.set_endpoints(b, z, w);
  }
  return std::nullopt;
}

Err check_h_degrees(const Tree& t, int a1, int a2) {
  const Edge& x = t.edges()[at(a1)];
  const Edge& y = t.edges()[at(a2)];
  if (distinct_count({t.delta(x.tail), t.delta(x.head), t.delta(y.tail), t.delta(y.head)}) != 2)
    return "the endpoints of the pair must carry exactly 2 distinct degrees";
  return std::nullopt;
}

Err resolve_edges(const Tree& t, const std::vector<std::string>& ids, std::vector<int>& out) {
  out.clear();
  for (const auto& id : ids) {
    auto e = t.find_edge(id);
    if (!e) return "unknown edge id '" + id + "'";
    out.push_back(*e);
  }
  return std::nullopt;
}

std::vector<std::string> edge_ids(const Tree& t, const std::vector<int>& es) {
  std::vector<std::string> out;
  for (int e : es) out.push_back(t.edges()[at(e)].id);
  return out;
}

struct Applied {
  Tree tree;
  Move inverse;
};

Err do_ebirth(const Tree& t, const EBirth& m, Applied& out) {
  const auto v1 = t.find_vertex(m.v1);
  const auto v2 = t.find_vertex(m.v2);
  if (!v1 || !v2) return "unknown vertex id";
  if (auto err = check_birth_degrees(t.delta(*v1), t.delta(*v2), m.d1, m.d2)) return err;
  out.tree = t;
  Tree& r = out.tree;
  const int w1 = r.add_vertex(r.fresh_vertex_id(), m.d1);
  const int w2 = r.add_vertex(r.fresh_vertex_id(), m.d2);
  const int e1 = r.add_edge(r.fresh_edge_id(), *v1, w1);
  const int e2 = r.add_edge(r.fresh_edge_id(), *v2, w2);
  r.add_pair(e1, e2);
  if (auto rep = validate(r); !rep.ok) return report_error(rep);
  out.inverse = EDeath{r.edges()[at(e1)].id, r.edges()[at(e2)].id};
  return std::nullopt;
}

Err do_edeath(const Tree& t, const EDeath& m, Applied& out) {
  const auto e1 = t.find_edge(m.e1);
  const auto e2 = t.find_edge(m.e2);
  if (!e1 || !e2) return "unknown edge id";
  if (t.partner(*e1) != *e2 || *e1 == *e2) return "edges are not conjugate";
  const Edge& x = t.edges()[at(*e1)];
  const Edge& y = t.edges()[at(*e2)];
  if (t.incident(x.head).size() != 1 || t.incident(y.head).size() != 1) return "both heads must be leaves";
  if (auto err = check_birth_degrees(t.delta(x.tail), t.delta(y.tail), t.delta(x.head), t.delta(y.head))) return err;
  out.inverse = EBirth{t.vertices()[at(x.tail)].id, t.vertices()[at(y.tail)].id, t.delta(x.head), t.delta(y.head)};
  out.tree = t.without({x.head, y.head}, {*e1, *e2});
  if (auto rep = validate(out.tree); !rep.ok) return report_error(rep);
  return std::nullopt;
}

Err do_hmove(const Tree& t, const HMove& m, Applied& out) {
  const auto a1 = t.find_edge(m.a1);
  const auto a2 = t.find_edge(m.a2);
  if (!a1 || !a2) return "unknown edge id";
  if (t.partner(*a1) != *a2 || *a1 == *a2) return "edges are not conjugate";
  if (auto err = check_h_degrees(t, *a1, *a2)) return err;
  out.tree = t;
  Tree& r = out.tree;
  std::vector<int> re;
  int b1 = -1;
  int b2 = -1;
  if (auto err = resolve_edges(r, m.side1.reattach, re)) return err;
  if (auto err = split(r, *a1, m.side1.kind, re, b1)) return err;
  if (auto err = resolve_edges(r, m.side2.reattach, re)) return err;
  if (std::find(re.begin(), re.end(), b1) != re.end()) return "side2 cannot reattach the edge created by side1";
  if (auto err = split(r, *a2, m.side2.kind, re, b2)) return err;
  r.add_pair(b1, b2);
  if (auto rep = validate(r); !rep.ok) return report_error(rep);
  out.inverse = HMerge{m.a1, m.a2, r.edges()[at(b1)].id, r.edges()[at(b2)].id};
  return std::nullopt;
}

// Collapses b into a, undoing one split. other_b must not hang off the
// removed vertex. Records the split that recreates b.
Err unsplit(Tree& t, const std::string& a_id, const std::string& b_id, const std::string& other_b, SplitSpec& spec) {
  const int a = t.edge_index(a_id);
  const int b = t.edge_index(b_id);
  const Edge ea = t.edges()[at(a)];
  const Edge eb = t.edges()[at(b)];
  int s = -1;
  int shared = 0;
  for (int u : {ea.tail, ea.head})
    if (u == eb.tail || u == eb.head) {
      s = u;
      ++shared;
    }
  if (shared != 1) return "collapsed edge must share exactly one vertex with the kept edge";
  const int x = t.other_end(a, s);
  const int y = t.other_end(b, s);
  bool flipped = false;
  if (ea.tail == s && eb.tail == s) {
    spec.kind = SplitKind::Parallel;
  } else if (ea.head == s && eb.tail == s) {
    spec.kind = SplitKind::Sequential;
  } else if (ea.tail == s && eb.head == s) {
    spec.kind = SplitKind::Sequential;
    flipped = true;
  } else {
    return "kept and collapsed edges must not share their heads";
  }
  if (t.delta(x) != t.delta(y)) return "merged vertices must have equal degree";
  std::vector<int> moved;
  for (int e : t.incident(y)) {
    if (e == b) continue;
    if (!other_b.empty() && t.edges()[at(e)].id == other_b) return "the first collapsed edge hangs off the second";
    moved.push_back(e);
  }
  for (int e : moved) replace_endpoint(t, e, y, x);
  if (flipped) t.set_endpoints(a, x, s);
  if (spec.kind == SplitKind::Sequential) {
    const int p = t.partner(a);
    const int first = first_path_edge(t, x, a, p);
    const bool would_flip = std::find(moved.begin(), moved.end(), first) != moved.end();
    if (would_flip != flipped) return "edge orientation does not match the reattached edges";
  }
  spec.reattach = edge_ids(t, moved);
  t = t.without({y}, {b});
  return std::nullopt;
}

Err do_hmerge(const Tree& t, const HMerge& m, Applied& out) {
  const auto a1 = t.find_edge(m.a1);
  const auto a2 = t.find_edge(m.a2);
  const auto b1 = t.find_edge(m.b1);
  const auto b2 = t.find_edge(m.b2);
  if (!a1 || !a2 || !b1 || !b2) return "unknown edge id";
  if (t.partner(*a1) != *a2 || *a1 == *a2) return "kept edges are not conjugate";
  if (t.partner(*b1) != *b2 || *b1 == *b2) return "collapsed edges are not conjugate";
  if (*b1 == *a1 || *b1 == *a2) return "kept and collapsed pairs must differ";
  out.tree = t;
  HMove inv{m.a1, m.a2, {}, {}};
  if (auto err = unsplit(out.tree, m.a2, m.b2, m.b1, inv.side2)) return err;
  if (auto err = unsplit(out.tree, m.a1, m.b1, "", inv.side1)) return err;
  const Tree& r = out.tree;
  if (auto err = check_h_degrees(r, r.edge_index(m.a1), r.edge_index(m.a2))) return err;
  if (auto rep = validate(r); !rep.ok) return report_error(rep);
  out.inverse = inv;
  return std::nullopt;
}

Err do_move(const Tree& t, const Move& m, Applied& out) {
  return std::visit(
      [&](const auto& mv) -> Err {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, EBirth>) return do_ebirth(t, mv, out);
        else if constexpr (std::is_same_v<T, EDeath>) return do_edeath(t, mv, out);
        else if constexpr (std::is_same_v<T, HMove>) return do_hmove(t, mv, out);
        else return do_hmerge(t, mv, out);
      },
      m);
}

Applied apply_checked(const Tree& tree, const Move& m) {
  require_valid(tree, "input tree");
  Applied out;
  if (auto err = do_move(tree, m, out)) throw MoveError(std::string(move_name(m)) + " not applicable: " + *err);
  return out;
}

std::vector<std::vector<int>> subsets(const std::vector<int>& items) {
  std::vector<std::vector<int>> out;
  const std::size_t count = std::size_t{1} << items.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask >> i & 1) s.push_back(items[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> reattach_options(const Tree& t, int a, SplitKind kind, int exclude, int max_degree) {
  const Edge& e = t.edges()[at(a)];
  const int pivot = kind == SplitKind::Parallel ? e.head : e.tail;
  const auto inc = t.incident(pivot);
  if (static_cast<int>(inc.size()) > max_degree) return {{}};
  std::vector<int> items;
  for (int x : inc)
    if (x != a && x != exclude) items.push_back(x);
  return subsets(items);
}

void h_successors(const Tree& t, const MoveLimits& limits, std::vector<Successor>& out) {
  static constexpr SplitKind kinds[] = {SplitKind::Parallel, SplitKind::Sequential};
  for (std::size_t i = 0; i < t.edge_count(); ++i) {
    const int a1 = static_cast<int>(i);
    const int a2 = t.partner(a1);
    if (a2 < a1 || check_h_degrees(t, a1, a2)) continue;
    for (SplitKind k1 : kinds) {
      for (const auto& re1 : reattach_options(t, a1, k1, -1, limits.max_reattach_degree)) {
        Tree t1 = t;
        int b1 = -1;
        if (split(t1, a1, k1, re1, b1)) continue;
        for (SplitKind k2 : kinds) {
          for (const auto& re2 : reattach_options(t1, a2, k2, b1, limits.max_reattach_degree)) {
            Tree t2 = t1;
            int b2 = -1;
            if (split(t2, a2, k2, re2, b2)) continue;
            t2.add_pair(b1, b2);
            if (!validate(t2).ok) continue;
            HMove m{t.edges()[i].id, t.edges()[at(a2)].id, {k1, edge_ids(t, re1)}, {k2, edge_ids(t1, re2)}};
            out.push_back({std::move(m), std::move(t2)});
          }
        }
      }
    }
  }
}

}  // namespace

Tree apply_move(const Tree& tree, const Move& m) { return apply_checked(tree, m).tree; }

Move invert_move(const Tree& tree, const Move& m) { return apply_checked(tree, m).inverse; }

std::vector<Successor> enumerate_successors(const Tree& tree, const MoveLimits& limits) {
  require_valid(tree, "input tree");
  std::vector<Successor> out;
  const int n = static_cast<int>(tree.vertex_count());
  const auto& vs = tree.vertices();
  const auto& es = tree.edges();
  Applied ap;

  for (int v1 = 0; v1 < n; ++v1) {
    for (int v2 = 0; v2 < n; ++v2) {
      for (int s1 : {-2, 2}) {
        for (int s2 : {-2, 2}) {
          EBirth m{vs[at(v1)].id, vs[at(v2)].id, tree.delta(v1) + s1, tree.delta(v2) + s2};
          if (check_birth_degrees(tree.delta(v1), tree.delta(v2), m.d1, m.d2)) continue;
          if (!do_ebirth(tree, m, ap)) out.push_back({m, std::move(ap.tree)});
        }
      }
    }
  }

  for (std::size_t e = 0; e < es.size(); ++e) {
    const int p = tree.partner(static_cast<int>(e));
    if (p <= static_cast<int>(e)) continue;
    EDeath m{es[e].id, es[at(p)].id};
    if (!do_edeath(tree, m, ap)) out.push_back({m, std::move(ap.tree)});
  }

  h_successors(tree, limits, out);

  for (std::size_t i = 0; i < es.size(); ++i) {
    const int a1 = static_cast<int>(i);
    const int a2 = tree.partner(a1);
    std::vector<int> near;
    for (int u : {es[i].tail, es[i].head})
      for (int b : tree.incident(u))
        if (b != a1 && b != a2) near.push_back(b);
    std::sort(near.begin(), near.end());
    for (int b1 : near) {
      const int b2 = tree.partner(b1);
      if (b2 == a1 || b2 == a2) continue;
      HMerge m{es[i].id, es[at(a2)].id, es[at(b1)].id, es[at(b2)].id};
      if (!do_hmerge(tree, m, ap)) out.push_back({m, std::move(ap.tree)});
    }
  }
  return out;
}

std::vector<Move> enumerate_moves(const Tree& tree, const MoveLimits& limits) {
  std::vector<Move> out;
  for (auto& s : enumerate_successors(tree, limits)) out.push_back(std::move(s.move));
  return out;
}

std::string_view move_name(const Move& m) {
  static constexpr std::string_view names[] = {"EBirth", "EDeath", "HMove", "HMerge"};
  return names[m.index()];
}

std::string_view split_kind_name(SplitKind k) { return k == SplitKind::Parallel ? "parallel" : "sequential"; }

std::string describe(const Move& m) {
  std::ostringstream out;
  out << move_name(m);
  auto side = [&](const SplitSpec& s) {
    out << split_kind_name(s.kind) << '[';
    for (std::size_t i = 0; i < s.reattach.size(); ++i) out << (i ? "," : "") << s.reattach[i];
    out << ']';
  };
  std::visit(
      [&](const auto& mv) {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, EBirth>) {
          out << " v1=" << mv.v1 << " v2=" << mv.v2 << " d1=" << mv.d1 << " d2=" << mv.d2;
        } else if constexpr (std::is_same_v<T, EDeath>) {
          out << " e1=" << mv.e1 << " e2=" << mv.e2;
        } else if constexpr (std::is_same_v<T, HMove>) {
          out << " a1=" << mv.a1 << " a2=" << mv.a2 << " side1=";
          side(mv.side1);
          out << " side2=";
          side(mv.side2);
        } else {
          out << " keep=" << mv.a1 << ',' << mv.a2 << " collapse=" << mv.b1 << ',' << mv.b2;
        }
      },
      m);
  return out.str();
}

}  // namespace dpt
