#include "dpt/canonical.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace dpt {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// The tree hung from a root, each edge identified with its lower endpoint so
// the pairing becomes an involution on non-root vertices.
struct Rooted {
  int root = 0;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> depth;
  std::vector<int> down;  // 1 when the edge above v points from parent to v
  std::vector<int> mate;
  std::vector<int> delta;
};

Rooted hang(const Tree& tree, int root) {
  const std::size_t n = tree.vertex_count();
  const auto adj = tree.incidence();
  Rooted r;
  r.root = root;
  r.parent.assign(n, -1);
  r.children.assign(n, {});
  r.depth.assign(n, 0);
  r.down.assign(n, 0);
  r.mate.assign(n, -1);
  r.delta.resize(n);
  std::vector<int> edge_above(n, -1);
  std::vector<int> child_of_edge(tree.edge_count(), -1);
  std::vector<bool> seen(n, false);
  std::deque<int> queue{root};
  seen[at(root)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    r.delta[at(v)] = tree.delta(v);
    for (int e : adj[at(v)]) {
      const int w = tree.other_end(e, v);
      if (seen[at(w)]) continue;
      seen[at(w)] = true;
      r.parent[at(w)] = v;
      r.children[at(v)].push_back(w);
      r.depth[at(w)] = r.depth[at(v)] + 1;
      r.down[at(w)] = tree.edges()[at(e)].tail == v ? 1 : 0;
      edge_above[at(w)] = e;
      child_of_edge[at(e)] = w;
      queue.push_back(w);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (edge_above[v] >= 0) r.mate[v] = child_of_edge[at(tree.partner(edge_above[v]))];
  return r;
}

std::vector<int> centers(const Tree& tree) {
  const std::size_t n = tree.vertex_count();
  if (n <= 2) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    return all;
  }
  const auto adj = tree.incidence();
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] <= 1) layer.push_back(static_cast<int>(v));
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<int> next;
    for (int v : layer) {
      for (int e : adj[at(v)]) {
        const int w = tree.other_end(e, v);
        if (--deg[at(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(x | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(x));
}

std::uint64_t zigzag(std::int64_t x) {
  return (static_cast<std::uint64_t>(x) << 1) ^ static_cast<std::uint64_t>(x >> 63);
}

std::int64_t unzigzag(std::uint64_t x) {
  return static_cast<std::int64_t>(x >> 1) ^ -static_cast<std::int64_t>(x & 1);
}

class Canonizer {
public:
  explicit Canonizer(const Rooted& r) : r_(r), n_(r.parent.size()) {}

  std::vector<std::uint8_t> run() {
    std::vector<std::vector<int>> keys(n_);
    for (std::size_t v = 0; v < n_; ++v) keys[v] = {r_.depth[v], r_.delta[v], r_.down[v]};
    search(rank(keys));
    return *best_;
  }

private:
  std::vector<int> rank(const std::vector<std::vector<int>>& keys) const {
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(n_);
    for (std::size_t v = 0; v < n_; ++v)
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    return color;
  }

  static int count_colors(const std::vector<int>& color) {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  }

  std::vector<int> refine(std::vector<int> color) const {
    int classes = count_colors(color);
    while (true) {
      std::vector<std::vector<int>> keys(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        auto& k = keys[v];
        k.push_back(color[v]);
        k.push_back(r_.parent[v] < 0 ? -1 : color[at(r_.parent[v])]);
        k.push_back(r_.mate[v] < 0 ? -1 : color[at(r_.mate[v])]);
        std::vector<int> cs;
        for (int c : r_.children[v]) cs.push_back(color[at(c)]);
        std::sort(cs.begin(), cs.end());
        k.insert(k.end(), cs.begin(), cs.end());
      }
      color = rank(keys);
      const int now = count_colors(color);
      if (now == classes) return color;
      classes = now;
    }
  }

  // Smallest color shared by two siblings, if any.
  std::optional<int> target_cell(const std::vector<int>& color) const {
    std::optional<int> best;
    for (std::size_t v = 0; v < n_; ++v) {
      std::vector<int> cs;
      for (int c : r_.children[v]) cs.push_back(color[at(c)]);
      std::sort(cs.begin(), cs.end());
      for (std::size_t i = 1; i < cs.size(); ++i)
        if (cs[i] == cs[i - 1] && (!best || cs[i] < *best)) best = cs[i];
    }
    return best;
  }

  void search(std::vector<int> color) {
    color = refine(std::move(color));
    const auto cell = target_cell(color);
    if (!cell) {
      auto code = leaf_code(color);
      if (!best_ || code < *best_) best_ = std::move(code);
      return;
    }
    for (std::size_t u = 0; u < n_; ++u) {
      if (color[u] != *cell) continue;
      std::vector<int> split = color;
      for (std::size_t v = 0; v < n_; ++v)
        if (split[v] > *cell || (split[v] == *cell && v != u)) ++split[v];
      search(std::move(split));
    }
  }

  std::vector<std::uint8_t> leaf_code(const std::vector<int>& color) const {
    std::vector<int> order;
    std::vector<int> index(n_, -1);
    std::vector<int> stack{r_.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      index[at(v)] = static_cast<int>(order.size());
      order.push_back(v);
      std::vector<int> cs = r_.children[at(v)];
      std::sort(cs.begin(), cs.end(), [&](int a, int b) { return color[at(a)] > color[at(b)]; });
      for (int c : cs) stack.push_back(c);
    }
    std::vector<std::uint8_t> out;
    put_varint(out, n_);
    for (int v : order) {
      put_varint(out, zigzag(r_.delta[at(v)]));
      put_varint(out, r_.children[at(v)].size());
      out.push_back(static_cast<std::uint8_t>(r_.down[at(v)]));
    }
    for (std::size_t i = 1; i < order.size(); ++i) put_varint(out, static_cast<std::uint64_t>(index[at(r_.mate[at(order[i])])]));
    return out;
  }

  const Rooted& r_;
  std::size_t n_;
  std::optional<std::vector<std::uint8_t>> best_;
};

class Reader {
public:
  explicit Reader(const std::vector<std::uint8_t>& b) : b_(b) {}

  std::uint64_t varint() {
    std::uint64_t x = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      if (pos_ >= b_.size()) throw InputError("truncated canonical code");
      const std::uint8_t byte = b_[pos_++];
      x |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
      if (!(byte & 0x80)) return x;
    }
    throw InputError("malformed varint in canonical code");
  }

  std::uint8_t byte() {
    if (pos_ >= b_.size()) throw InputError("truncated canonical code");
    return b_[pos_++];
  }

  bool done() const { return pos_ == b_.size(); }

private:
  const std::vector<std::uint8_t>& b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

CanonicalCode CanonicalCode::from_hex(std::string_view hex) {
  if (hex.size() % 2) throw InputError("hex code has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError("invalid hex digit");
  };
  CanonicalCode code;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    code.bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  return code;
}

CanonicalCode canonical_code_unchecked(const Tree& tree) {
  std::optional<std::vector<std::uint8_t>> best;
  for (int c : centers(tree)) {
    const Rooted r = hang(tree, c);
    auto code = Canonizer(r).run();
    if (!best || code < *best) best = std::move(code);
  }
  return CanonicalCode{best.value_or(std::vector<std::uint8_t>{})};
}

CanonicalCode canonical_code(const Tree& tree) {
  require_valid(tree);
  return canonical_code_unchecked(tree);
}

bool isomorphic(const Tree& t1, const Tree& t2) {
  return t1.vertex_count() == t2.vertex_count() && canonical_code(t1) == canonical_code(t2);
}

Tree decode(const CanonicalCode& code) {
  Reader in(code.bytes);
  const std::uint64_t n = in.varint();
  if (n == 0 || n > code.bytes.size()) throw InputError("canonical code has an implausible vertex count");
  struct Rec {
    std::int64_t delta;
    std::uint64_t kids;
    std::uint8_t down;
  };
  std::vector<Rec> recs(n);
  for (auto& rec : recs) {
    rec.delta = unzigzag(in.varint());
    rec.kids = in.varint();
    rec.down = in.byte();
    if (rec.down > 1) throw InputError("malformed direction flag in canonical code");
  }
  Tree t;
  for (std::uint64_t i = 0; i < n; ++i) t.add_vertex("v" + std::to_string(i), static_cast<int>(recs[i].delta));

  // Preorder with child counts determines the parents.
  std::vector<int> parent(n, -1);
  std::vector<std::pair<int, std::uint64_t>> open;  // vertex, children still expected
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i > 0) {
      while (!open.empty() && open.back().second == 0) open.pop_back();
      if (open.empty()) throw InputError("canonical code is not a single tree");
      parent[i] = open.back().first;
      --open.back().second;
    }
    open.emplace_back(static_cast<int>(i), recs[i].kids);
  }
  for (auto& [v, left] : open)
    if (left != 0) throw InputError("canonical code child counts are inconsistent");

  std::vector<int> edge_of(n, -1);
  for (std::uint64_t i = 1; i < n; ++i) {
    const int p = parent[i];
    const int v = static_cast<int>(i);
    edge_of[i] = recs[i].down ? t.add_edge("e" + std::to_string(i), p, v) : t.add_edge("e" + std::to_string(i), v, p);
  }
  std::vector<std::uint64_t> mate(n, 0);
  for (std::uint64_t i = 1; i < n; ++i) {
    mate[i] = in.varint();
    if (mate[i] == 0 || mate[i] >= n) throw InputError("canonical code has an invalid mate index");
  }
  if (!in.done()) throw InputError("trailing bytes in canonical code");
  for (std::uint64_t i = 1; i < n; ++i) {
    if (mate[mate[i]] != i || mate[i] == i) throw InputError("canonical code mates are not an involution");
    if (i < mate[i]) t.add_pair(edge_of[i], edge_of[mate[i]]);
  }
  return t;
}

}  // namespace dpt
