#pragma once

// Isomorphism-invariant encoding of double point trees. Isomorphisms preserve
// incidence, edge direction, delta and the pairing.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dpt/tree.hpp"

namespace dpt {

struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  /// Lowercase hex.
  std::string hex() const;
  static CanonicalCode from_hex(std::string_view hex);

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

/// Throws PreconditionError for invalid trees.
CanonicalCode canonical_code(const Tree& tree);

/// Skips validation; the tree must be connected, acyclic and fully paired.
CanonicalCode canonical_code_unchecked(const Tree& tree);

bool isomorphic(const Tree& t1, const Tree& t2);

/// Rebuilds a tree from its code. Vertex ids are "v<i>" in canonical preorder,
/// edge ids "e<i>" name the edge above vertex i. Throws InputError on
/// malformed codes.
Tree decode(const CanonicalCode& code);

}  // namespace dpt
