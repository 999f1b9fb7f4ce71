#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "posetcalc/poset.hpp"

namespace posetcalc {

/// Canonical encoding of the <= matrix under a canonical relabeling.
/// Equal keys iff the posets are isomorphic; stable across runs.
struct CanonicalKey {
  std::string bytes;
  std::string hex() const;
  auto operator<=>(const CanonicalKey&) const = default;
};

struct CanonicalForm {
  CanonicalKey key;
  std::vector<int> order;  // order[new index] = original element
};

CanonicalKey canonical_key(const Poset& p);
CanonicalForm canonical_form(const Poset& p);

/// Byte encoding of the matrix under the labeling as given (no
/// canonicalization); an exact-match memo key for arbitrary posets.
std::string labeled_encoding(const Poset& p);

/// Fast-rejects on (n, height, level sizes, degree multisets, component
/// sizes) before doing any exact work.
bool is_isomorphic(const Poset& p, const Poset& q);

/// f[p element] = q element, preserving and reflecting <=. The returned
/// bijection is re-verified before it is handed back.
std::optional<std::vector<int>> find_isomorphism(const Poset& p, const Poset& q);

}  // namespace posetcalc
