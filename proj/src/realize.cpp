#include "dpt/realize.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dpt {

namespace {

constexpr InvariantVector::Coeff kMaxBlocks = 1'000'000;

void require_odd(int k) {
  if (k % 2 == 0) throw PreconditionError("block index must be odd, got " + std::to_string(k));
}

std::string vid(int i) { return "p" + std::to_string(i); }

// Adds an edge between path vertices i and i+1 pointing to `head`.
int path_edge(Tree& t, int i, int head) {
  const int tail = head == i ? i + 1 : i;
  return t.add_edge("q" + std::to_string(i), tail, head);
}

int block_index(InvariantVector::Index k) {
  if (k > 1'000'000 || k < -1'000'000) throw PreconditionError("block index out of range");
  return static_cast<int>(k);
}

}  // namespace

Block building_block_f(int k) {
  require_odd(k);
  const int sign = k > 0 ? 1 : -1;
  const int m = (std::abs(k) - 1) / 2 + (k < 0 ? 1 : 0);
  // k = 1 has m = 0; k = -1 needs one step down and back.
  Block b;
  for (int i = 0; i <= 2 * m; ++i) b.tree.add_vertex(vid(i), 1 + sign * 2 * (m - std::abs(i - m)));
  std::vector<int> edges;
  for (int i = 0; i < 2 * m; ++i) edges.push_back(path_edge(b.tree, i, i < m ? i : i + 1));
  for (int j = 0; j < m; ++j) b.tree.add_pair(edges[static_cast<std::size_t>(j)], edges[static_cast<std::size_t>(2 * m - 1 - j)]);
  b.left = vid(0);
  b.right = vid(2 * m);
  return b;
}

Block building_block_g(int k) {
  require_odd(k);
  Block b;
  if (k == 1) {
    b.tree.add_vertex(vid(0), 1);
    b.left = b.right = vid(0);
    return b;
  }
  const int sign = k > 0 ? 1 : -1;
  const int m = k > 0 ? (k - 1) / 2 : (-k + 1) / 2;
  const int s1 = m;
  const int s2 = 3 * m;
  for (int i = 0; i <= 4 * m; ++i) {
    const int dist = std::min(std::abs(i - s1), std::abs(i - s2));
    b.tree.add_vertex(vid(i), 1 + sign * 2 * dist);
  }
  std::vector<int> edges;
  for (int i = 0; i < 4 * m; ++i) {
    // Away from the nearer source: leftwards left of each source.
    const bool leftwards = i < s1 || (i >= 2 * m && i < s2);
    edges.push_back(path_edge(b.tree, i, leftwards ? i : i + 1));
  }
  for (int s : {s1, s2})
    for (int j = 0; j < m; ++j)
      b.tree.add_pair(edges[static_cast<std::size_t>(s - 1 - j)], edges[static_cast<std::size_t>(s + j)]);
  b.left = vid(s1);
  b.right = vid(s2);
  return b;
}

Decomposition decompose(const InvariantVector& h) {
  if (!in_image(h)) throw PreconditionError("vector " + to_string(h) + " is not in the image of F");
  InvariantVector::Coeff blocks = 0;
  for (const auto& [k, c] : h.coefficients()) {
    blocks += std::abs(c);
    if (blocks > kMaxBlocks) throw PreconditionError("vector " + to_string(h) + " needs too many blocks to realize");
  }
  Decomposition d;
  for (const auto& [k, c] : h.coefficients()) {
    auto& dst = c > 0 ? d.a : d.b;
    for (InvariantVector::Coeff i = 0; i < std::abs(c); ++i) dst.push_back(k);
  }
  return d;
}

Tree realize(const InvariantVector& h) {
  const Decomposition d = decompose(h);
  Block first = building_block_f(block_index(d.a.front()));
  Tree acc = std::move(first.tree);
  std::string right = first.right;
  auto glue = [&](const Block& next) {
    SumResult s = connected_sum(acc, right, next.tree, next.left);
    right = s.vertex_relabel.at(next.right);
    acc = std::move(s.tree);
  };
  for (std::size_t l = 0; l < d.b.size(); ++l) {
    glue(building_block_g(block_index(d.b[l])));
    glue(building_block_f(block_index(d.a[l + 1])));
  }
  if (invariant_of(acc) != h) throw std::logic_error("realized tree has the wrong invariant");
  return acc;
}

}  // namespace dpt
