#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/poset.hpp"

using namespace posetcalc;

namespace {

std::set<std::string> key_set(const std::vector<Poset>& posets) {
  std::set<std::string> out;
  for (const Poset& p : posets) out.insert(canonical_key(p).bytes);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("catalog");

TEST_CASE("poset counts match the known sequence") {
  const int expected[] = {1, 1, 2, 5, 16, 63, 318, 2045, 16999};
  Catalog cat(8);
  cat.ensure(8);
  for (int n = 0; n <= 8; ++n) CHECK(cat.posets(n).size() == expected[n]);
}

TEST_CASE("connected counts match the known sequence") {
  const int expected[] = {1, 1, 3, 10, 44};
  for (int n = 1; n <= 5; ++n) CHECK(connected_posets(n).size() == expected[n - 1]);
}

TEST_CASE("the generator agrees with the matrix-filter oracle up to n=4") {
  for (int n = 0; n <= 4; ++n) {
    auto generated = enumerate_posets(n);
    auto filtered = enumerate_by_matrix_filter(n);
    CHECK(generated.size() == filtered.size());
    CHECK(key_set(generated) == key_set(filtered));
  }
}

TEST_CASE("maximal and minimal extension strategies agree at n=5") {
  Catalog cat(5);
  cat.ensure(4);
  auto by_max = extend_by_maximal(cat.posets(4));
  auto by_min = extend_by_minimal(cat.posets(4));
  CHECK(by_max.size() == 63);
  CHECK(key_set(by_max) == key_set(by_min));
}

TEST_CASE("no two catalog entries share a key and iteration is key-ordered") {
  Catalog cat(5);
  cat.ensure(5);
  for (int n = 0; n <= 5; ++n) {
    const auto& keys = cat.keys(n);
    for (std::size_t i = 1; i < keys.size(); ++i) CHECK(keys[i - 1] < keys[i]);
  }
}

TEST_CASE("regeneration is deterministic") {
  Catalog a(4), b(4);
  a.ensure(4);
  b.ensure(4);
  for (int n = 0; n <= 4; ++n) {
    REQUIRE(a.posets(n).size() == b.posets(n).size());
    for (std::size_t i = 0; i < a.posets(n).size(); ++i) CHECK(a.posets(n)[i] == b.posets(n)[i]);
  }
}

TEST_CASE("every component of a catalog poset is a connected catalog member") {
  Catalog cat(4);
  cat.ensure(4);
  std::set<std::string> connected_keys;
  for (int n = 1; n <= 4; ++n)
    for (int i : cat.connected_indices(n))
      connected_keys.insert(cat.keys(n)[i].bytes);
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : cat.posets(n)) {
      ComponentPartition parts = components(p);
      for (int c = 0; c < parts.count; ++c) {
        std::vector<int> elems;
        for (int e = 0; e < n; ++e)
          if (parts.labels[e] == c) elems.push_back(e);
        CHECK(connected_keys.count(canonical_key(induced(p, elems)).bytes) == 1);
      }
    }
}

TEST_CASE("cache files round trip and reject stale content") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "posetcalc_cache_test";
  fs::create_directories(dir);
  fs::path file = dir / "p3.posetcat";

  auto posets = enumerate_posets(3);
  save_catalog_file(file.string(), 3, posets);
  auto loaded = load_catalog_file(file.string(), 3);
  REQUIRE(loaded.has_value());
  REQUIRE(loaded->size() == posets.size());
  for (std::size_t i = 0; i < posets.size(); ++i) CHECK((*loaded)[i] == posets[i]);

  CHECK_FALSE(load_catalog_file(file.string(), 4).has_value());

  // catalog construction through the cache directory
  Catalog cat(4, dir.string());
  cat.ensure(4);
  CHECK(cat.posets(4).size() == 16);
  Catalog cat2(4, dir.string());
  cat2.ensure(4);  // now served from the cache
  CHECK(cat2.posets(4).size() == 16);
  for (int n = 0; n <= 4; ++n)
    for (std::size_t i = 0; i < cat.posets(n).size(); ++i)
      CHECK(cat.posets(n)[i] == cat2.posets(n)[i]);
  fs::remove_all(dir);
}

TEST_CASE("the catalog refuses sizes past its limit") {
  Catalog cat(3);
  CHECK_THROWS_AS(cat.ensure(4), catalog_bound_error);
  cat.ensure(3);
  CHECK(cat.materialized() == 3);
  CHECK_THROWS_AS(cat.posets(4), catalog_bound_error);
}

TEST_CASE("find locates entries by key") {
  Catalog cat(4);
  cat.ensure(4);
  const Poset* crown = cat.find(canonical_key(Poset::crown4()));
  REQUIRE(crown != nullptr);
  CHECK(is_isomorphic(*crown, Poset::crown4()));
  CHECK(cat.find(CanonicalKey{"missing"}) == nullptr);
}

TEST_SUITE_END();
