#include "posetcalc/poset.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace posetcalc {

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    const std::uint64_t* r = row(i);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        int j = w * 64 + std::countr_zero(bits);
        t.set(j, i);
        bits &= bits - 1;
      }
    }
  }
  return t;
}

Poset Poset::unchecked(BitMatrix leq) {
  assert(leq.rows() == leq.cols());
  return Poset(std::move(leq));
}

Poset Poset::from_leq(BitMatrix leq) {
  if (leq.rows() != leq.cols()) throw validation_error(validation_error::Kind::NotReflexive, -1, -1, "matrix is not square");
  const int n = leq.rows();
  for (int i = 0; i < n; ++i) {
    if (!leq.get(i, i))
      throw validation_error(validation_error::Kind::NotReflexive, i, i,
                             "not reflexive: missing leq(" + std::to_string(i) + "," + std::to_string(i) + ")");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq.get(i, j) && leq.get(j, i))
        throw validation_error(validation_error::Kind::NotAntisymmetric, i, j,
                               "not antisymmetric: leq(" + std::to_string(i) + "," + std::to_string(j) +
                                   ") and leq(" + std::to_string(j) + "," + std::to_string(i) + ")");
  const int words = leq.words_per_row();
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* ri = leq.row(i);
    for (int j = 0; j < n; ++j) {
      if (!leq.get(i, j)) continue;
      // row(i) must contain row(j)
      const std::uint64_t* rj = leq.row(j);
      for (int w = 0; w < words; ++w) {
        std::uint64_t missing = rj[w] & ~ri[w];
        if (missing) {
          int k = w * 64 + std::countr_zero(missing);
          throw validation_error(validation_error::Kind::NotTransitive, i, k,
                                 "not transitive: leq(" + std::to_string(i) + "," + std::to_string(j) +
                                     ") and leq(" + std::to_string(j) + "," + std::to_string(k) +
                                     ") but not leq(" + std::to_string(i) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  return Poset(std::move(leq));
}

Poset Poset::from_covers(int n, const std::vector<std::pair<int, int>>& covers) {
  if (n < 0) throw index_error("negative element count");
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  for (auto [lo, hi] : covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw index_error("cover pair (" + std::to_string(lo) + "," + std::to_string(hi) +
                        ") out of range for n=" + std::to_string(n));
    if (lo == hi)
      throw cycle_error("cover pair (" + std::to_string(lo) + "," + std::to_string(hi) +
                        ") is a self-loop");
    m.set(lo, hi);
  }
  // Warshall-style closure with bit-row OR propagation.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (i != k && m.get(i, k)) m.or_rows(i, k);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.get(i, j) && m.get(j, i))
        throw cycle_error("cover list has a cycle through " + std::to_string(i) + " and " +
                          std::to_string(j));
  return Poset(std::move(m));
}

Poset Poset::chain(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j);
  return Poset(std::move(m));
}

Poset Poset::antichain(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return Poset(std::move(m));
}

Poset Poset::crown4() {
  return from_covers(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  if (n_ == 0) return out;
  HeightProfile h = heights(*this);
  for (int i = 0; i < n_; ++i) {
    // Peel minimal-height elements of the strict up-set; everything above
    // an emitted cover is removed, so only covers survive.
    std::vector<int> up;
    for (int j = 0; j < n_; ++j)
      if (less(i, j)) up.push_back(j);
    std::sort(up.begin(), up.end(), [&](int a, int b) {
      return h.per_element[a] != h.per_element[b] ? h.per_element[a] < h.per_element[b] : a < b;
    });
    std::vector<char> removed(n_, 0);
    for (int j : up) {
      if (removed[j]) continue;
      out.emplace_back(i, j);
      for (int k : up)
        if (less(j, k)) removed[k] = 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poset Poset::reordered(const std::vector<int>& order) const {
  assert(static_cast<int>(order.size()) == n_);
  BitMatrix m(n_, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (leq(order[a], order[b])) m.set(a, b);
  return Poset(std::move(m));
}

Poset Poset::relabeled(const std::vector<int>& perm) const {
  std::vector<int> order(n_);
  for (int i = 0; i < n_; ++i) order[perm[i]] = i;
  return reordered(order);
}

Poset sum(const Poset& p, const Poset& q) {
  const int np = p.size(), nq = q.size();
  BitMatrix m(np + nq, np + nq);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      if (p.leq(i, j)) m.set(i, j);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      if (q.leq(i, j)) m.set(np + i, np + j);
  return Poset::unchecked(std::move(m));
}

Poset product(const Poset& p, const Poset& q) {
  const int np = p.size(), nq = q.size();
  const int n = np * nq;
  BitMatrix m(n, n);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) {
      const int i = a * nq + b;
      for (int c = 0; c < np; ++c) {
        if (!p.leq(a, c)) continue;
        for (int d = 0; d < nq; ++d)
          if (q.leq(b, d)) m.set(i, c * nq + d);
      }
    }
  return Poset::unchecked(std::move(m));
}

Poset dual(const Poset& p) {
  return Poset::unchecked(p.matrix().transposed());
}

HeightProfile heights(const Poset& p) {
  if (p.empty()) throw empty_poset_error("height of the empty poset is undefined");
  const int n = p.size();
  HeightProfile out;
  out.per_element.assign(n, 0);
  // Process by increasing strict-down-set size (a linear extension) and
  // push h+1 forward along the strict order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> downsize(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (p.less(i, j)) ++downsize[j];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return downsize[a] != downsize[b] ? downsize[a] < downsize[b] : a < b;
  });
  for (int i : order)
    for (int j = 0; j < n; ++j)
      if (p.less(i, j)) out.per_element[j] = std::max(out.per_element[j], out.per_element[i] + 1);
  out.total = *std::max_element(out.per_element.begin(), out.per_element.end());
  return out;
}

ComponentPartition components(const Poset& p) {
  const int n = p.size();
  ComponentPartition out;
  out.labels.assign(n, -1);
  out.count = 0;
  if (n == 0) return out;
  BitMatrix down = p.matrix().transposed();
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (out.labels[s] >= 0) continue;
    const int id = out.count++;
    out.labels[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u) {
        if (out.labels[u] >= 0) continue;
        if (p.leq(v, u) || down.get(v, u)) {
          out.labels[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return out;
}

Poset interval(const Poset& p, int x, int y) {
  if (x < 0 || x >= p.size() || y < 0 || y >= p.size()) throw index_error("interval endpoint out of range");
  if (!p.leq(x, y))
    throw not_comparable_error("interval [" + std::to_string(x) + "," + std::to_string(y) +
                               "]: endpoints are not comparable");
  std::vector<int> elems;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(x, z) && p.leq(z, y)) elems.push_back(z);
  return induced(p, elems);
}

Poset induced(const Poset& p, const std::vector<int>& elems) {
  const int n = static_cast<int>(elems.size());
  BitMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(elems[a], elems[b])) m.set(a, b);
  return Poset::unchecked(std::move(m));
}

bool is_connected(const Poset& p) {
  return components(p).count == 1;
}

bool is_antichain(const Poset& p) {
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.less(i, j)) return false;
  return true;
}

bool is_chain(const Poset& p) {
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (!p.leq(i, j) && !p.leq(j, i)) return false;
  return true;
}

bool is_trivial(const Poset& p) {
  return p.size() == 1;
}

std::vector<int> linear_extension(const Poset& p) {
  std::vector<int> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  if (p.empty()) return order;
  HeightProfile h = heights(p);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return h.per_element[a] != h.per_element[b] ? h.per_element[a] < h.per_element[b] : a < b;
  });
  return order;
}

Poset read_poset_text(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_content = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
      std::size_t b = 0, e = line.size();
      while (b < e && is_space(line[b])) ++b;
      while (e > b && is_space(line[e - 1])) --e;
      if (b == e) continue;
      out = line.substr(b, e - b);
      return true;
    }
    return false;
  };

  std::string content;
  if (!next_content(content)) throw parse_error("missing element count line");
  int n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoi(content, &pos);
    if (pos != content.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw parse_error("line " + std::to_string(lineno) + ": expected element count, got '" + content + "'");
  }
  if (n < 0) throw parse_error("negative element count");

  std::vector<std::pair<int, int>> covers;
  while (next_content(content)) {
    std::istringstream ls(content);
    int a = 0, b = 0;
    char rel = 0;
    if (!(ls >> a >> rel >> b) || rel != '<' || (ls >> std::ws, !ls.eof()))
      throw parse_error("line " + std::to_string(lineno) + ": expected 'a < b', got '" + content + "'");
    covers.emplace_back(a, b);
  }
  return Poset::from_covers(n, covers);
}

Poset read_poset_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open '" + path + "'");
  return read_poset_text(f);
}

void write_poset_text(std::ostream& out, const Poset& p) {
  out << p.size() << "\n";
  for (auto [a, b] : p.cover_pairs()) out << a << " < " << b << "\n";
}

std::string to_dot(const Poset& p, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=circle];\n";
  if (!p.empty()) {
    HeightProfile h = heights(p);
    for (int level = 0; level <= h.total; ++level) {
      std::vector<int> at;
      for (int i = 0; i < p.size(); ++i)
        if (h.per_element[i] == level) at.push_back(i);
      if (at.empty()) continue;
      out << "  { rank=same;";
      for (int i : at) out << " " << i << ";";
      out << " }\n";
    }
    for (int i = 0; i < p.size(); ++i) out << "  " << i << ";\n";
    for (auto [a, b] : p.cover_pairs()) out << "  " << a << " -> " << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace posetcalc
