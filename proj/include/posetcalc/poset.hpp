#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace posetcalc {

/// Dense boolean matrix with 64-bit packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        words_((cols + 63) / 64),
        bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_), 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_; }

  bool get(int i, int j) const {
    return (bits_[static_cast<std::size_t>(i) * words_ + (static_cast<unsigned>(j) >> 6)] >>
            (j & 63)) &
           1u;
  }
  void set(int i, int j) {
    bits_[static_cast<std::size_t>(i) * words_ + (static_cast<unsigned>(j) >> 6)] |=
        std::uint64_t{1} << (j & 63);
  }
  void reset(int i, int j) {
    bits_[static_cast<std::size_t>(i) * words_ + (static_cast<unsigned>(j) >> 6)] &=
        ~(std::uint64_t{1} << (j & 63));
  }

  std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }
  const std::uint64_t* row(int i) const {
    return bits_.data() + static_cast<std::size_t>(i) * words_;
  }

  void or_rows(int dst, int src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (int w = 0; w < words_; ++w) d[w] |= s[w];
  }

  BitMatrix transposed() const;

  bool operator==(const BitMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class poset_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cover input (or a relation matrix) contains a strict cycle.
class cycle_error : public poset_error {
 public:
  using poset_error::poset_error;
};

class index_error : public poset_error {
 public:
  using poset_error::poset_error;
};

/// A relation matrix failed one of the order axioms. Carries a witness pair.
class validation_error : public poset_error {
 public:
  enum class Kind { NotReflexive, NotAntisymmetric, NotTransitive };
  validation_error(Kind kind, int i, int j, const std::string& what)
      : poset_error(what), kind(kind), i(i), j(j) {}
  Kind kind;
  int i;
  int j;
};

class empty_poset_error : public poset_error {
 public:
  using poset_error::poset_error;
};

class not_comparable_error : public poset_error {
 public:
  using poset_error::poset_error;
};

class parse_error : public poset_error {
 public:
  using poset_error::poset_error;
};

/// A finite poset: elements 0..n-1 with a reflexive, antisymmetric,
/// transitive relation stored as a full <= bit matrix. Immutable after
/// construction; every construction path validates the axioms.
class Poset {
 public:
  Poset() = default;  // the empty poset

  /// Reflexive-transitive closure of a cover list.
  static Poset from_covers(int n, const std::vector<std::pair<int, int>>& covers);
  /// Validates the three order axioms, naming a witness pair on failure.
  static Poset from_leq(BitMatrix leq);
  /// Trusted constructor for callers that guarantee the axioms hold
  /// (sum/product/dual/induced preserve them structurally).
  static Poset unchecked(BitMatrix leq);

  static Poset chain(int n);
  static Poset antichain(int n);
  /// The 4-element crown: minimal a,b under maximal c,d with all four
  /// cross relations and no top or bottom.
  static Poset crown4();

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  bool leq(int i, int j) const { return leq_.get(i, j); }
  bool less(int i, int j) const { return i != j && leq_.get(i, j); }
  const BitMatrix& matrix() const { return leq_; }

  /// Covering pairs (i, j): i < j with nothing strictly between.
  std::vector<std::pair<int, int>> cover_pairs() const;

  /// Poset on the same elements where new index k holds old element order[k].
  Poset reordered(const std::vector<int>& order) const;
  /// Relabeling that sends element i to new index perm[i].
  Poset relabeled(const std::vector<int>& perm) const;

  bool operator==(const Poset&) const = default;

 private:
  explicit Poset(BitMatrix m) : n_(m.rows()), leq_(std::move(m)) {}
  int n_ = 0;
  BitMatrix leq_;
};

struct ComponentPartition {
  std::vector<int> labels;  // element -> component id, ids 0..count-1
  int count = 0;
};

struct HeightProfile {
  std::vector<int> per_element;  // longest chain below-and-including, minus 1
  int total = 0;
};

/// Disjoint union; elements of q are shifted by p.size().
Poset sum(const Poset& p, const Poset& q);
/// Componentwise order on pairs, row-major index (a, b) -> a*|q| + b.
Poset product(const Poset& p, const Poset& q);
/// Transposed order. Involutive elementwise.
Poset dual(const Poset& p);

/// Throws empty_poset_error on the empty poset (height is undefined there).
HeightProfile heights(const Poset& p);
ComponentPartition components(const Poset& p);

/// Induced order on {z : x <= z <= y}; throws not_comparable_error unless x <= y.
Poset interval(const Poset& p, int x, int y);
/// Induced subposet on the given (distinct) elements, in the given order.
Poset induced(const Poset& p, const std::vector<int>& elems);

bool is_connected(const Poset& p);  // false for the empty poset
bool is_antichain(const Poset& p);  // true for the empty poset
bool is_chain(const Poset& p);
bool is_trivial(const Poset& p);  // exactly one element

/// Indices sorted by (element height, index); a linear extension.
std::vector<int> linear_extension(const Poset& p);

/// Text format: first non-comment line is the element count, then one
/// `a < b` cover pair per line; `#` starts a comment.
Poset read_poset_text(std::istream& in);
Poset read_poset_file(const std::string& path);
void write_poset_text(std::ostream& out, const Poset& p);

/// DOT rendering of the Hasse diagram, one rank per height level.
std::string to_dot(const Poset& p, const std::string& name = "poset");

}  // namespace posetcalc
