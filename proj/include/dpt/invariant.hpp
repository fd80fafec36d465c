#pragma once

// The invariant F: for each odd k, the sum of (1 - indegree) over vertices of
// degree k. Stored as a sparse integer vector with no zero entries.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "dpt/tree.hpp"

namespace dpt {

class InvariantVector {
public:
  using Index = std::int64_t;
  using Coeff = std::int64_t;

  InvariantVector() = default;

  static InvariantVector basis(Index k);

  Coeff operator[](Index k) const;
  /// Adds c to the coefficient at k, dropping the entry when it becomes 0.
  void add_at(Index k, Coeff c);

  const std::map<Index, Coeff>& coefficients() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }

  InvariantVector& operator+=(const InvariantVector& o);
  InvariantVector& operator-=(const InvariantVector& o);

  friend InvariantVector operator+(InvariantVector a, const InvariantVector& b) { return a += b; }
  friend InvariantVector operator-(InvariantVector a, const InvariantVector& b) { return a -= b; }
  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;

private:
  std::map<Index, Coeff> coeffs_;
};

InvariantVector basis(InvariantVector::Index k);
InvariantVector add(const InvariantVector& a, const InvariantVector& b);
InvariantVector subtract(const InvariantVector& a, const InvariantVector& b);
InvariantVector scale(const InvariantVector& v, InvariantVector::Coeff c);

/// Coefficient at k moves to -k.
InvariantVector reverse(const InvariantVector& v);

/// Odd support and coefficient sum exactly 1.
bool in_image(const InvariantVector& v);

/// Sum of all coefficients (checked).
InvariantVector::Coeff coefficient_sum(const InvariantVector& v);

/// Throws PreconditionError on an invalid tree.
InvariantVector invariant_of(const Tree& tree);

/// Same as invariant_of without the validity check; for trees already known
/// to be valid.
InvariantVector invariant_unchecked(const Tree& tree);

/// "-1:2 3:1", ascending by index; the empty vector renders as "0".
std::string to_string(const InvariantVector& v);

/// Parses one "k:c" term. Throws InputError.
std::pair<InvariantVector::Index, InvariantVector::Coeff> parse_term(std::string_view term);

/// Parses whitespace-separated "k:c" terms (repeats accumulate); "0" or an
/// empty string is the zero vector. Throws InputError.
InvariantVector parse_vector(std::string_view text);

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
}  // namespace checked

}  // namespace dpt
