#include <doctest.h>

#include "dpt/canonical.hpp"
#include "dpt/realize.hpp"
#include "support.hpp"

using namespace dpt;

namespace {

Tree star(int center, int leaf) {
  Tree t;
  t.add_vertex("c", center);
  t.add_vertex("l1", leaf);
  t.add_vertex("l2", leaf);
  t.add_edge("x", "c", "l1");
  t.add_edge("y", "c", "l2");
  t.add_pair("x", "y");
  return t;
}

}  // namespace

TEST_CASE("permuted ids give the same code") {
  Tree j2;
  j2.add_vertex("leafB", 1);
  j2.add_vertex("hub", 3);
  j2.add_vertex("leafA", 1);
  j2.add_edge("q", "hub", "leafA");
  j2.add_edge("p", "hub", "leafB");
  j2.add_pair("q", "p");
  CHECK(canonical_code(j2) == canonical_code(testing::fixture("j")));
}

TEST_CASE("codes separate degrees and signs") {
  const Tree j = testing::fixture("j");
  CHECK(canonical_code(j) != canonical_code(star(1, 3)));
  CHECK(canonical_code(j) != canonical_code(negate(j)));
  CHECK_FALSE(isomorphic(j, negate(j)));
}

TEST_CASE("isomorphic") {
  const Tree t = testing::fixture("mixed_2");
  CHECK(isomorphic(t, t));
  // Mirror: swap the roles of the two sources and the outer leaves.
  Tree m;
  m.add_vertex("A", 1);
  m.add_vertex("B", 1);
  m.add_vertex("x", -1);
  m.add_vertex("y", -1);
  m.add_vertex("z", -1);
  m.add_edge("f1", "B", "z");
  m.add_edge("f2", "B", "y");
  m.add_edge("g1", "A", "y");
  m.add_edge("g2", "A", "x");
  m.add_pair("g2", "g1");
  m.add_pair("f2", "f1");
  CHECK(isomorphic(t, m));
  CHECK_FALSE(isomorphic(building_block_f(3).tree, building_block_g(1).tree));
}

TEST_CASE("hex form round trips") {
  const CanonicalCode c = canonical_code(testing::fixture("mixed_4"));
  const std::string h = c.hex();
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(CanonicalCode::from_hex(h) == c);
  CHECK_THROWS_AS(CanonicalCode::from_hex("abc"), InputError);
  CHECK_THROWS_AS(CanonicalCode::from_hex("zz"), InputError);
}

TEST_CASE("decode inverts canonical_code") {
  for (const char* name : {"e", "neg_e", "j", "neg_j", "mixed_1", "mixed_2", "mixed_3", "mixed_4"}) {
    const Tree t = testing::fixture(name);
    const CanonicalCode c = canonical_code(t);
    const Tree d = decode(c);
    CHECK(validate(d).ok);
    CHECK(canonical_code(d) == c);
    CHECK(testing::brute_isomorphic(t, d));
  }
  CHECK_THROWS_AS(decode(CanonicalCode{}), InputError);
  CHECK_THROWS_AS(decode(CanonicalCode::from_hex("0302")), InputError);
}

TEST_CASE("property: relabeling never changes the code") {
  testing::Rng rng(99);
  for (int it = 0; it < 300; ++it) {
    const Tree t = testing::random_tree(rng, testing::random_odd_size(rng, 21));
    const Tree r = testing::relabel(t, rng);
    CHECK(canonical_code(r) == canonical_code(t));
    CHECK(canonical_code(decode(canonical_code(t))) == canonical_code(t));
  }
}

TEST_CASE("property: codes agree with brute-force isomorphism on small trees") {
  testing::Rng rng(1234);
  std::vector<Tree> pool;
  for (int it = 0; it < 400; ++it) pool.push_back(testing::random_tree(rng, testing::random_odd_size(rng, 7), 3));
  // Add relabeled copies so equal codes occur often.
  for (int it = 0; it < 100; ++it) pool.push_back(testing::relabel(pool[rng() % pool.size()], rng));
  std::vector<CanonicalCode> codes;
  for (const Tree& t : pool) codes.push_back(canonical_code(t));
  int same = 0;
  int checked = 0;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      if (pool[a].vertex_count() != pool[b].vertex_count()) continue;
      if (testing::naive_invariant(pool[a]) != testing::naive_invariant(pool[b])) {
        CHECK(codes[a] != codes[b]);
        continue;
      }
      ++checked;
      const bool iso = testing::brute_isomorphic(pool[a], pool[b]);
      CHECK((codes[a] == codes[b]) == iso);
      same += iso;
    }
  }
  CHECK(same > 50);
  CHECK(checked > 200);
}

TEST_CASE("highly symmetric trees canonicalize quickly and consistently") {
  // Centre with many identical paired fans.
  Tree t;
  t.add_vertex("c", 1);
  for (int i = 0; i < 6; ++i) {
    const std::string s = std::to_string(i);
    t.add_vertex("a" + s, -1);
    t.add_vertex("b" + s, 1);
    t.add_edge("p" + s, "a" + s, "c");
    t.add_edge("q" + s, "a" + s, "b" + s);
    t.add_pair("p" + s, "q" + s);
  }
  testing::Rng rng(2);
  const CanonicalCode c = canonical_code(t);
  for (int it = 0; it < 5; ++it) CHECK(canonical_code(testing::relabel(t, rng)) == c);
}
