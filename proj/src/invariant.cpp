#include "dpt/invariant.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dpt {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

}  // namespace checked

InvariantVector InvariantVector::basis(Index k) {
  InvariantVector v;
  v.coeffs_[k] = 1;
  return v;
}

InvariantVector::Coeff InvariantVector::operator[](Index k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0 : it->second;
}

void InvariantVector::add_at(Index k, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(k, 0);
  it->second = checked::add(it->second, c);
  if (it->second == 0) coeffs_.erase(it);
}

InvariantVector& InvariantVector::operator+=(const InvariantVector& o) {
  for (const auto& [k, c] : o.coeffs_) add_at(k, c);
  return *this;
}

InvariantVector& InvariantVector::operator-=(const InvariantVector& o) {
  for (const auto& [k, c] : o.coeffs_) add_at(k, checked::sub(0, c));
  return *this;
}

InvariantVector basis(InvariantVector::Index k) { return InvariantVector::basis(k); }
InvariantVector add(const InvariantVector& a, const InvariantVector& b) { return a + b; }
InvariantVector subtract(const InvariantVector& a, const InvariantVector& b) { return a - b; }

InvariantVector scale(const InvariantVector& v, InvariantVector::Coeff c) {
  InvariantVector out;
  for (const auto& [k, x] : v.coefficients()) out.add_at(k, checked::mul(x, c));
  return out;
}

InvariantVector reverse(const InvariantVector& v) {
  InvariantVector out;
  for (const auto& [k, c] : v.coefficients()) out.add_at(checked::sub(0, k), c);
  return out;
}

InvariantVector::Coeff coefficient_sum(const InvariantVector& v) {
  InvariantVector::Coeff s = 0;
  for (const auto& [k, c] : v.coefficients()) s = checked::add(s, c);
  return s;
}

bool in_image(const InvariantVector& v) {
  for (const auto& [k, c] : v.coefficients())
    if (k % 2 == 0) return false;
  return coefficient_sum(v) == 1;
}

InvariantVector invariant_unchecked(const Tree& tree) {
  std::vector<int> indeg(tree.vertex_count(), 0);
  for (const Edge& e : tree.edges()) ++indeg[static_cast<std::size_t>(e.head)];
  InvariantVector out;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) out.add_at(tree.vertices()[v].delta, 1 - indeg[v]);
  return out;
}

InvariantVector invariant_of(const Tree& tree) {
  require_valid(tree);
  return invariant_unchecked(tree);
}

std::string to_string(const InvariantVector& v) {
  if (v.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : v.coefficients()) {
    out << (first ? "" : " ") << k << ':' << c;
    first = false;
  }
  return out.str();
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t x = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || b == e)
    throw InputError("malformed coefficient term '" + std::string(whole) + "'");
  return x;
}

}  // namespace

std::pair<InvariantVector::Index, InvariantVector::Coeff> parse_term(std::string_view term) {
  const auto colon = term.find(':');
  if (colon == std::string_view::npos) throw InputError("coefficient term '" + std::string(term) + "' lacks ':'");
  return {parse_int(term.substr(0, colon), term), parse_int(term.substr(colon + 1), term)};
}

InvariantVector parse_vector(std::string_view text) {
  InvariantVector out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "0") continue;
    auto [k, c] = parse_term(tok);
    out.add_at(k, c);
  }
  return out;
}

}  // namespace dpt
