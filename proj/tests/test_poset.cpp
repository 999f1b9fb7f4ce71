#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/poset.hpp"

using namespace posetcalc;

TEST_SUITE_BEGIN("poset");

TEST_CASE("from_covers builds the 2-chain") {
  Poset p = Poset::from_covers(2, {{0, 1}});
  CHECK(p.leq(0, 0));
  CHECK(p.leq(1, 1));
  CHECK(p.leq(0, 1));
  CHECK_FALSE(p.leq(1, 0));
  CHECK(p == Poset::chain(2));
}

TEST_CASE("from_covers builds the 4-crown") {
  Poset crown = Poset::from_covers(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(crown == Poset::crown4());
  CHECK(crown.leq(0, 2));
  CHECK(crown.leq(1, 3));
  CHECK_FALSE(crown.leq(0, 1));
  CHECK_FALSE(crown.leq(2, 3));
  CHECK(crown.cover_pairs() ==
        std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

TEST_CASE("from_covers rejects cycles and bad indices") {
  CHECK_THROWS_AS(Poset::from_covers(3, {{0, 1}, {1, 2}, {2, 0}}), cycle_error);
  CHECK_THROWS_AS(Poset::from_covers(2, {{0, 0}}), cycle_error);
  CHECK_THROWS_AS(Poset::from_covers(2, {{0, 2}}), index_error);
  CHECK_THROWS_AS(Poset::from_covers(2, {{-1, 1}}), index_error);
}

TEST_CASE("from_leq validates the order axioms with witnesses") {
  BitMatrix id3(3, 3);
  for (int i = 0; i < 3; ++i) id3.set(i, i);
  CHECK(Poset::from_leq(id3) == Poset::antichain(3));

  BitMatrix not_reflexive(2, 2);
  not_reflexive.set(0, 1);
  not_reflexive.set(1, 1);
  try {
    Poset::from_leq(not_reflexive);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(e.kind == validation_error::Kind::NotReflexive);
    CHECK(e.i == 0);
  }

  BitMatrix not_transitive(3, 3);
  for (int i = 0; i < 3; ++i) not_transitive.set(i, i);
  not_transitive.set(0, 1);
  not_transitive.set(1, 2);
  try {
    Poset::from_leq(not_transitive);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(e.kind == validation_error::Kind::NotTransitive);
    CHECK(e.i == 0);
    CHECK(e.j == 2);
  }

  BitMatrix not_antisym(2, 2);
  not_antisym.set(0, 0);
  not_antisym.set(1, 1);
  not_antisym.set(0, 1);
  not_antisym.set(1, 0);
  CHECK_THROWS_AS(Poset::from_leq(not_antisym), validation_error);
}

TEST_CASE("sum is a disjoint union with shifted labels") {
  CHECK(sum(Poset::chain(1), Poset::chain(1)) == Poset::antichain(2));
  Poset s = sum(Poset::chain(2), Poset::chain(2));
  CHECK(s.size() == 4);
  CHECK(components(s).count == 2);
  CHECK(s.leq(2, 3));
  CHECK_FALSE(s.leq(0, 2));
  CHECK(sum(Poset::chain(3), Poset()) == Poset::chain(3));
}

TEST_CASE("component counts add under sum across the small catalog") {
  for (int na = 0; na <= 4; ++na)
    for (int nb = 0; na + nb <= 5; ++nb)
      for (const Poset& a : enumerate_posets(na))
        for (const Poset& b : enumerate_posets(nb))
          CHECK(components(sum(a, b)).count == components(a).count + components(b).count);
}

TEST_CASE("product uses row-major pairs with componentwise order") {
  Poset grid = product(Poset::chain(2), Poset::chain(2));
  CHECK(grid.size() == 4);
  CHECK(heights(grid).total == 2);
  // (0,0) <= everything, (1,1) on top, (0,1) and (1,0) incomparable
  CHECK(grid.leq(0, 3));
  CHECK_FALSE(grid.leq(1, 2));
  CHECK_FALSE(grid.leq(2, 1));
  CHECK(is_isomorphic(grid, Poset::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));
}

TEST_CASE("heights add under product across the small catalog") {
  for (int na = 1; na <= 4; ++na)
    for (int nb = 1; nb <= 4; ++nb)
      for (const Poset& a : enumerate_posets(na))
        for (const Poset& b : enumerate_posets(nb))
          CHECK(heights(product(a, b)).total == heights(a).total + heights(b).total);
}

TEST_CASE("product unit law is exact") {
  for (int n = 0; n <= 5; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      CHECK(product(p, Poset::chain(1)) == p);
      CHECK(is_isomorphic(product(Poset::chain(1), p), p));
    }
}

TEST_CASE("product and sum are associative and commutative up to isomorphism") {
  const Poset a = Poset::chain(2);
  const Poset b = Poset::crown4();
  const Poset c = Poset::antichain(2);
  CHECK(canonical_key(product(a, b)) == canonical_key(product(b, a)));
  CHECK(canonical_key(product(a, product(b, c))) == canonical_key(product(product(a, b), c)));
  CHECK(canonical_key(sum(a, b)) == canonical_key(sum(b, a)));
  CHECK(canonical_key(sum(a, sum(b, c))) == canonical_key(sum(sum(a, b), c)));
}

TEST_CASE("dual transposes and is an elementwise involution") {
  CHECK(is_isomorphic(dual(Poset::chain(2)), Poset::chain(2)));
  CHECK(canonical_key(dual(Poset::crown4())) == canonical_key(Poset::crown4()));
  for (int n = 0; n <= 5; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      CHECK(dual(dual(p)) == p);
      if (n >= 1) CHECK(heights(dual(p)).total == heights(p).total);
    }
}

TEST_CASE("heights match the spec examples and the chain oracle") {
  CHECK(heights(Poset::chain(3)).per_element == std::vector<int>{0, 1, 2});
  CHECK(heights(Poset::chain(3)).total == 2);
  CHECK(heights(Poset::crown4()).per_element == std::vector<int>{0, 0, 1, 1});
  CHECK(heights(Poset::crown4()).total == 1);
  CHECK(heights(Poset::antichain(5)).per_element == std::vector<int>(5, 0));
  CHECK_THROWS_AS(heights(Poset()), empty_poset_error);

  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      HeightProfile h = heights(p);
      CHECK(h.total == oracle::brute_height(p));
      CHECK(h.total == *std::max_element(h.per_element.begin(), h.per_element.end()));
      for (int i = 0; i < n; ++i) {
        bool minimal = true;
        for (int j = 0; j < n; ++j)
          if (p.less(j, i)) minimal = false;
        CHECK((h.per_element[i] == 0) == minimal);
      }
    }
}

TEST_CASE("components partitions by comparability paths") {
  CHECK(components(Poset::crown4()).count == 1);
  CHECK(components(Poset::antichain(3)).count == 3);
  CHECK(components(sum(Poset::chain(2), Poset::crown4())).count == 2);
  CHECK(components(Poset()).count == 0);
  ComponentPartition parts = components(sum(Poset::chain(2), Poset::chain(1)));
  CHECK(parts.labels == std::vector<int>{0, 0, 1});
}

TEST_CASE("interval takes the induced order between comparable endpoints") {
  CHECK(is_isomorphic(interval(Poset::chain(3), 0, 2), Poset::chain(3)));
  Poset grid = product(Poset::chain(2), Poset::chain(2));
  CHECK(is_isomorphic(interval(grid, 0, 3), grid));
  CHECK(is_isomorphic(interval(Poset::crown4(), 0, 2), Poset::chain(2)));
  CHECK_THROWS_AS(interval(Poset::crown4(), 0, 1), not_comparable_error);
  CHECK_THROWS_AS(interval(Poset::chain(2), 1, 0), not_comparable_error);
}

TEST_CASE("predicates agree with the conventions") {
  CHECK(is_connected(Poset::crown4()));
  CHECK_FALSE(is_antichain(Poset::crown4()));
  CHECK_FALSE(is_connected(Poset()));
  CHECK(is_antichain(Poset()));
  CHECK_FALSE(is_trivial(Poset()));
  CHECK(is_chain(Poset()));
  const Poset one = Poset::chain(1);
  CHECK(is_connected(one));
  CHECK(is_antichain(one));
  CHECK(is_chain(one));
  CHECK(is_trivial(one));
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n))
      CHECK(is_antichain(p) == (heights(p).total == 0));
}

TEST_CASE("linear extension respects the order") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      std::vector<int> ext = linear_extension(p);
      std::vector<int> pos(n);
      for (int t = 0; t < n; ++t) pos[ext[t]] = t;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (p.less(i, j)) CHECK(pos[i] < pos[j]);
    }
}

TEST_CASE("text format round trips") {
  std::stringstream s;
  write_poset_text(s, Poset::crown4());
  Poset back = read_poset_text(s);
  CHECK(back == Poset::crown4());

  std::stringstream with_comments("# a crown\n4\n0 < 2  # lower left\n0 < 3\n1 < 2\n1 < 3\n");
  CHECK(read_poset_text(with_comments) == Poset::crown4());

  std::stringstream empty_input("");
  CHECK_THROWS_AS(read_poset_text(empty_input), parse_error);
  std::stringstream junk("4\n0 ? 1\n");
  CHECK_THROWS_AS(read_poset_text(junk), parse_error);
  std::stringstream cyclic("2\n0 < 1\n1 < 0\n");
  CHECK_THROWS_AS(read_poset_text(cyclic), cycle_error);
}

TEST_CASE("dot output lists covers and one rank per level") {
  std::string dot = to_dot(Poset::crown4());
  CHECK(dot.find("0 -> 2;") != std::string::npos);
  CHECK(dot.find("1 -> 3;") != std::string::npos);
  CHECK(dot.find("rank=same") != std::string::npos);
  CHECK(to_dot(Poset()).find("digraph") != std::string::npos);
}

TEST_SUITE_END();
