#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "posetcalc/canonical.hpp"
#include "posetcalc/poset.hpp"

namespace posetcalc {

/// A requested size is beyond what the catalog may materialize.
class catalog_bound_error : public poset_error {
 public:
  catalog_bound_error(int needed, int limit)
      : poset_error("catalog size " + std::to_string(needed) + " exceeds limit " +
                    std::to_string(limit)),
        needed(needed),
        limit(limit) {}
  int needed;
  int limit;
};

/// All posets of each size up to isomorphism: the verification universe.
/// Entries per size are pairwise non-isomorphic, complete, and iterate in
/// canonical key order. Immutable once a size is materialized.
class Catalog {
 public:
  explicit Catalog(int limit = 8, std::string cache_dir = {});

  /// Materializes every size <= n. Throws catalog_bound_error past the limit.
  void ensure(int n);
  int materialized() const { return materialized_; }
  int limit() const { return limit_; }

  const std::vector<Poset>& posets(int n) const;
  const std::vector<CanonicalKey>& keys(int n) const;
  std::vector<int> connected_indices(int n) const;

  /// Looks a poset up by canonical key among materialized sizes.
  const Poset* find(const CanonicalKey& key) const;

  /// Memo shared by the factorization oracle (guarded for concurrent use).
  std::optional<bool> irreducible_cached(const CanonicalKey& key) const;
  void irreducible_store(const CanonicalKey& key, bool value) const;

 private:
  void materialize(int n);

  int limit_;
  std::string cache_dir_;
  int materialized_ = -1;
  std::vector<std::vector<Poset>> by_size_;
  std::vector<std::vector<CanonicalKey>> keys_;
  std::unordered_map<std::string, std::pair<int, int>> index_;  // key bytes -> (n, idx)
  mutable std::mutex irr_mutex_;
  mutable std::unordered_map<std::string, bool> irr_cache_;
};

/// One representative per isomorphism class, in canonical key order.
std::vector<Poset> enumerate_posets(int n);
std::vector<Poset> connected_posets(int n);

/// Generation strategies. Extension by a new maximal (resp. minimal)
/// element covering (resp. covered by) an antichain of an (n-1)-poset,
/// deduplicated by canonical key. The matrix filter enumerates all
/// relation matrices and keeps the ones satisfying the order axioms; it is
/// only feasible for small n and serves as the independent oracle.
std::vector<Poset> extend_by_maximal(const std::vector<Poset>& smaller);
std::vector<Poset> extend_by_minimal(const std::vector<Poset>& smaller);
std::vector<Poset> enumerate_by_matrix_filter(int n);

/// Cache file: header `posetcat v1 n=<k> count=<c>`, then one hex
/// canonical key plus cover list per line.
void save_catalog_file(const std::string& path, int n, const std::vector<Poset>& posets);
std::optional<std::vector<Poset>> load_catalog_file(const std::string& path, int expect_n);

}  // namespace posetcalc
