#include <doctest.h>

#include "dpt/canonical.hpp"
#include "dpt/invariant.hpp"
#include "dpt/moves.hpp"
#include "support.hpp"

using namespace dpt;

namespace {

Tree single(int delta) {
  Tree t;
  t.add_vertex("v", delta);
  return t;
}

template <class T>
int count_type(const std::vector<Move>& ms) {
  return static_cast<int>(std::count_if(ms.begin(), ms.end(), [](const Move& m) { return std::holds_alternative<T>(m); }));
}

// Pairs whose heads are leaves and whose four degrees satisfy the E rule,
// counted straight from the edge list.
int expected_deaths(const Tree& t) {
  int n = 0;
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const int p = t.partner(static_cast<int>(e));
    if (p < static_cast<int>(e)) continue;
    const Edge& a = t.edges()[e];
    const Edge& b = t.edges()[static_cast<std::size_t>(p)];
    auto leaf = [&](int v) {
      int deg = 0;
      for (const Edge& x : t.edges()) deg += (x.tail == v) + (x.head == v);
      return deg == 1;
    };
    if (!leaf(a.head) || !leaf(b.head)) continue;
    const std::set<int> ds{t.delta(a.tail), t.delta(b.tail), t.delta(a.head), t.delta(b.head)};
    const int diff = t.delta(a.tail) - t.delta(b.tail);
    if (ds.size() == 2 && (diff == 0 || diff == 2 || diff == -2)) ++n;
  }
  return n;
}

int indeg(const Tree& t, const std::string& id) { return t.indegree(t.vertex_index(id)); }

}  // namespace

TEST_CASE("EBirth on the standard sphere") {
  const Tree out = apply_move(single(1), EBirth{"v", "v", 3, 3});
  REQUIRE(validate(out).ok);
  CHECK(out.vertex_count() == 3);
  CHECK(indeg(out, "v") == 0);
  CHECK(invariant_of(out) == basis(1));
  int leaves3 = 0;
  for (const Vertex& v : out.vertices()) leaves3 += v.delta == 3;
  CHECK(leaves3 == 2);
  CHECK_THROWS_AS(apply_move(single(1), EBirth{"v", "v", 3, -1}), MoveError);
  CHECK_THROWS_AS(apply_move(single(1), EBirth{"v", "v", 5, 5}), MoveError);
  CHECK_THROWS_AS(apply_move(single(1), EBirth{"v", "x", 3, 3}), MoveError);
}

TEST_CASE("EDeath inverts EBirth") {
  const Tree t = single(1);
  const Move birth = EBirth{"v", "v", 3, 3};
  const Tree grown = apply_move(t, birth);
  const Move inv = invert_move(t, birth);
  REQUIRE(std::holds_alternative<EDeath>(inv));
  const Tree back = apply_move(grown, inv);
  CHECK(back.vertex_count() == 1);
  CHECK(back.delta(0) == 1);
  const Move rebirth = invert_move(grown, inv);
  REQUIRE(std::holds_alternative<EBirth>(rebirth));
  CHECK(std::get<EBirth>(rebirth) == std::get<EBirth>(birth));
}

TEST_CASE("EDeath preconditions") {
  const Tree f = testing::fixture("mixed_1");
  CHECK_THROWS_AS(apply_move(f, EDeath{"a1", "b1"}), MoveError);  // not conjugate
  CHECK_THROWS_AS(apply_move(f, EDeath{"a1", "a2"}), MoveError);  // w2 is no leaf
  CHECK_THROWS_AS(apply_move(f, EDeath{"a1", "zz"}), MoveError);
}

TEST_CASE("HMove with two parallel splits on j") {
  const Tree j = testing::fixture("j");
  const Tree out = apply_move(j, HMove{"a1", "a2", {SplitKind::Parallel, {}}, {SplitKind::Parallel, {}}});
  REQUIRE(validate(out).ok);
  CHECK(out.vertex_count() == 5);
  CHECK(out.pairs().size() == 2);
  const int v = out.vertex_index("v");
  CHECK(out.incident(v).size() == 4);
  for (int e : out.incident(v)) CHECK(out.edges()[static_cast<std::size_t>(e)].tail == v);
  for (const Vertex& x : out.vertices())
    if (x.id != "v") CHECK(x.delta == 1);
  CHECK(invariant_of(out) == basis(3));

  const Move inv = invert_move(j, HMove{"a1", "a2", {SplitKind::Parallel, {}}, {SplitKind::Parallel, {}}});
  REQUIRE(std::holds_alternative<HMerge>(inv));
  CHECK(canonical_code(apply_move(out, inv)) == canonical_code(j));
}

TEST_CASE("sequential split flips when the conjugate is reattached") {
  const Tree j = testing::fixture("j");
  const Tree out = apply_move(j, HMove{"a1", "a2", {SplitKind::Sequential, {"a2"}}, {SplitKind::Parallel, {}}});
  REQUIRE(validate(out).ok);
  const Edge& a1 = out.edges()[static_cast<std::size_t>(out.edge_index("a1"))];
  CHECK(out.vertices()[static_cast<std::size_t>(a1.tail)].id == "w1");
  CHECK(out.vertices()[static_cast<std::size_t>(a1.head)].id == "v");
  // The edge created on a1's side now points into w1.
  const int b1 = out.partner(out.edge_count() - 1);
  CHECK(out.edges()[static_cast<std::size_t>(b1)].head == out.vertex_index("w1"));
  CHECK(invariant_of(out) == basis(3));
}

TEST_CASE("HMove preconditions") {
  const Tree j = testing::fixture("j");
  const Tree f3 = testing::fixture("mixed_3");
  const SplitSpec par{SplitKind::Parallel, {}};
  CHECK_THROWS_AS(apply_move(testing::fixture("mixed_1"), HMove{"a1", "b1", par, par}), MoveError);
  CHECK_THROWS_AS(apply_move(j, HMove{"a1", "a2", {SplitKind::Parallel, {"a2"}}, par}), MoveError);
  CHECK_THROWS_AS(apply_move(j, HMove{"a1", "a2", {SplitKind::Parallel, {"a1"}}, par}), MoveError);
  CHECK_THROWS_AS(apply_move(j, HMove{"a1", "a2", par, {SplitKind::Parallel, {"e3"}}}), MoveError);
  CHECK_THROWS_AS(apply_move(j, HMove{"a1", "a2", {SplitKind::Sequential, {"a2", "a2"}}, par}), MoveError);
  // Degrees {3,1,-1}: three values.
  Tree bad;
  bad.add_vertex("m", 1);
  bad.add_vertex("l", 3);
  bad.add_vertex("r", -1);
  bad.add_edge("x", "m", "l");
  bad.add_edge("y", "m", "r");
  bad.add_pair("x", "y");
  CHECK_THROWS_AS(apply_move(bad, HMove{"x", "y", par, par}), MoveError);
  (void)f3;
}

TEST_CASE("HMerge preconditions") {
  const Tree f = testing::fixture("mixed_1");
  CHECK_THROWS_AS(apply_move(f, HMerge{"a1", "a2", "a1", "a2"}), MoveError);
  CHECK_THROWS_AS(apply_move(f, HMerge{"a1", "b1", "a2", "b2"}), MoveError);
  CHECK_THROWS_AS(apply_move(f, HMerge{"a1", "a2", "b1", "b2"}), MoveError);
}

TEST_CASE("moves of the standard sphere: exactly the two births") {
  const auto ms = enumerate_moves(single(1));
  REQUIRE(ms.size() == 2);
  std::set<std::pair<int, int>> ds;
  for (const Move& m : ms) {
    REQUIRE(std::holds_alternative<EBirth>(m));
    ds.insert({std::get<EBirth>(m).d1, std::get<EBirth>(m).d2});
  }
  CHECK(ds == std::set<std::pair<int, int>>{{3, 3}, {-1, -1}});
}

TEST_CASE("moves of j include all four split kind combinations with empty reattach") {
  std::set<std::pair<SplitKind, SplitKind>> kinds;
  for (const Move& m : enumerate_moves(testing::fixture("j"))) {
    if (const auto* h = std::get_if<HMove>(&m); h && h->side1.reattach.empty() && h->side2.reattach.empty())
      kinds.insert({h->side1.kind, h->side2.kind});
  }
  CHECK(kinds.size() == 4);
}

TEST_CASE("enumeration is deterministic and every move applies") {
  const Tree t = testing::fixture("mixed_4");
  const auto a = enumerate_moves(t);
  const auto b = enumerate_moves(t);
  CHECK(a == b);
  for (const Move& m : a) CHECK_NOTHROW(apply_move(t, m));
}

TEST_CASE("reattach degree cap limits subsets") {
  const Tree t = testing::fixture("mixed_4");
  CHECK(enumerate_moves(t, MoveLimits{1}).size() < enumerate_moves(t, MoveLimits{8}).size());
}

TEST_CASE("property: moves preserve F and validity, and invert") {
  testing::Rng rng(17);
  int total = 0;
  for (int it = 0; it < 60; ++it) {
    const Tree t = testing::random_tree(rng, testing::random_odd_size(rng, 7), 3);
    const InvariantVector f = invariant_of(t);
    const CanonicalCode code = canonical_code(t);
    const auto moves = enumerate_moves(t, MoveLimits{6});
    CHECK(count_type<EDeath>(moves) == expected_deaths(t));
    for (const Move& m : moves) {
      ++total;
      const Tree g = apply_move(t, m);
      REQUIRE(validate(g).ok);
      CHECK(invariant_of(g) == f);
      const long dv = static_cast<long>(g.vertex_count()) - static_cast<long>(t.vertex_count());
      if (std::holds_alternative<EDeath>(m) || std::holds_alternative<HMerge>(m)) CHECK(dv == -2);
      else CHECK(dv == 2);
      const Move inv = invert_move(t, m);
      CHECK(canonical_code(apply_move(g, inv)) == code);
    }
  }
  CHECK(total > 1000);
}

TEST_CASE("property: indegree bookkeeping of each split") {
  // For a side on pair edge a with new edge b and new vertex y merging into x:
  // deg-(x) before = deg-(x) after + deg-(y) after - 1, and the shared
  // vertex keeps its indegree.
  testing::Rng rng(29);
  int checked = 0;
  for (int it = 0; it < 80; ++it) {
    const Tree f = testing::random_tree(rng, testing::random_odd_size(rng, 7), 3);
    for (const Move& m : enumerate_moves(f, MoveLimits{6})) {
      const auto* h = std::get_if<HMove>(&m);
      if (!h) continue;
      const Tree g = apply_move(f, m);
      const HMerge inv = std::get<HMerge>(invert_move(f, m));
      struct Side {
        std::string x, y, s;
      };
      std::vector<Side> sides;
      for (auto [a_id, b_id] : {std::pair{inv.a1, inv.b1}, std::pair{inv.a2, inv.b2}}) {
        const Edge& a = g.edges()[static_cast<std::size_t>(g.edge_index(a_id))];
        const Edge& b = g.edges()[static_cast<std::size_t>(g.edge_index(b_id))];
        const int s = (a.tail == b.tail || a.tail == b.head) ? a.tail : a.head;
        const int x = a.tail == s ? a.head : a.tail;
        const int y = b.tail == s ? b.head : b.tail;
        sides.push_back({g.vertices()[static_cast<std::size_t>(x)].id, g.vertices()[static_cast<std::size_t>(y)].id,
                         g.vertices()[static_cast<std::size_t>(s)].id});
      }
      const std::set<std::string> s0{sides[0].x, sides[0].y, sides[0].s};
      const std::set<std::string> s1{sides[1].x, sides[1].y, sides[1].s};
      std::vector<std::string> common;
      std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(common));
      if (!common.empty()) continue;
      for (const Side& sd : sides) {
        CHECK(indeg(f, sd.x) == indeg(g, sd.x) + indeg(g, sd.y) - 1);
        CHECK(indeg(f, sd.s) == indeg(g, sd.s));
        CHECK_FALSE(f.find_vertex(sd.y));
      }
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("describe") {
  CHECK(describe(EBirth{"v", "v", 3, 3}) == "EBirth v1=v v2=v d1=3 d2=3");
  CHECK(describe(HMove{"a", "b", {SplitKind::Sequential, {"c", "d"}}, {}}) ==
        "HMove a1=a a2=b side1=sequential[c,d] side2=parallel[]");
  CHECK(describe(HMerge{"a", "b", "c", "d"}) == "HMerge keep=a,b collapse=c,d");
  CHECK(describe(EDeath{"a", "b"}) == "EDeath e1=a e2=b");
}
