#pragma once

#include "ratfunc.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace mzeta {

/// (r, A, B) with A, B sorted subsets of {1..r}, |A| = p, |B| = q, A u B = {1..r}.
struct Stuffling {
  unsigned r = 0;
  std::vector<unsigned> A, B;

  bool is_shuffle() const { return A.size() + B.size() == r; }
  auto operator<=>(const Stuffling&) const = default;

  nlohmann::json to_json() const { return {{"r", r}, {"A", A}, {"B", B}}; }
};

namespace detail {

// k-subsets of {1..n} in lexicographic order
inline std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  if (k > n) return out;
  std::vector<unsigned> c(k);
  for (unsigned i = 0; i < k; ++i) c[i] = i + 1;
  for (;;) {
    out.push_back(c);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + static_cast<unsigned>(i) + 1) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// All stufflings of p and q ordered by r, then A, then B (lexicographic).
inline std::vector<Stuffling> enumerate_stufflings(unsigned p, unsigned q, bool shuffle_only) {
  std::vector<Stuffling> out;
  for (unsigned r = shuffle_only ? p + q : std::max(p, q); r <= p + q; ++r) {
    auto bs = detail::subsets(r, q);
    for (const auto& A : detail::subsets(r, p)) {
      for (const auto& B : bs) {
        std::vector<bool> hit(r + 1, false);
        for (unsigned x : A) hit[x] = true;
        for (unsigned x : B) hit[x] = true;
        if (std::all_of(hit.begin() + 1, hit.end(), [](bool h) { return h; })) out.push_back({r, A, B});
      }
    }
  }
  return out;
}

/// Sequence deduced from x and y by a stuffling; arguments in A n B are added.
template <class T>
std::vector<T> deduce_sequence(const std::vector<T>& x, const std::vector<T>& y, const Stuffling& st) {
  if (x.size() != st.A.size() || y.size() != st.B.size())
    throw std::invalid_argument("deduce_sequence: arity mismatch");
  std::vector<T> out;
  std::size_t ia = 0, ib = 0;
  for (unsigned i = 1; i <= st.r; ++i) {
    bool in_a = ia < st.A.size() && st.A[ia] == i;
    bool in_b = ib < st.B.size() && st.B[ib] == i;
    if (in_a && in_b)
      out.push_back(x[ia++] + y[ib++]);
    else if (in_a)
      out.push_back(x[ia++]);
    else
      out.push_back(y[ib++]);
  }
  return out;
}

/// Subset of {0..r}.
using IndexSet = std::vector<unsigned>;

/// i in I iff a_1 + ... + a_i = i; always contains 0.
inline IndexSet index_set_of(const std::vector<int>& a) {
  IndexSet out{0};
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i];
    if (s == static_cast<long>(i + 1)) out.push_back(static_cast<unsigned>(i + 1));
  }
  return out;
}

using RatMatrix = std::vector<std::vector<RatFunc>>;

/// a_{i,j} = prod_{m=i+1}^{j} 1/(X_m + ... + X_j) for i <= j.
inline RatFunc a_rational(unsigned i, unsigned j, unsigned r) {
  if (i > j) return RatFunc(r);
  RatFunc out(r, 1);
  for (unsigned m = i + 1; m <= j; ++m) out *= RatFunc::reciprocal_sum(r, m, j);
  return out;
}

namespace detail {

inline bool in_set(const IndexSet& I, unsigned x) { return std::find(I.begin(), I.end(), x) != I.end(); }

// extend `order` (largest t first) with elements of {lo..hi} respecting the zigzag
inline void extensions(unsigned lo, unsigned hi, const IndexSet& I, std::vector<unsigned>& order,
                       std::vector<bool>& used, std::vector<std::vector<unsigned>>& out) {
  if (order.size() == hi - lo + 1) {
    out.push_back(order);
    return;
  }
  for (unsigned m = lo; m <= hi; ++m) {
    if (used[m - lo]) continue;
    // every element that must be larger than t_m is already placed
    bool ok = true;
    if (m > lo) {
      bool prev_larger = !in_set(I, m - 1);  // t_{m-1} > t_m unless m-1 in I
      if (prev_larger && !used[m - 1 - lo]) ok = false;
    }
    if (ok && m < hi) {
      bool next_larger = in_set(I, m);  // t_m < t_{m+1} if m in I
      if (next_larger && !used[m + 1 - lo]) ok = false;
    }
    if (!ok) continue;
    used[m - lo] = true;
    order.push_back(m);
    extensions(lo, hi, I, order, used, out);
    order.pop_back();
    used[m - lo] = false;
  }
}

}  // namespace detail

/// Linear extensions of the zigzag order on t_{i+1}, ..., t_j, each listed from the
/// largest coordinate to the smallest.
inline std::vector<std::vector<unsigned>> zigzag_extensions(const IndexSet& I, unsigned i, unsigned j) {
  std::vector<std::vector<unsigned>> out;
  if (j <= i) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> order;
  std::vector<bool> used(j - i, false);
  detail::extensions(i + 1, j, I, order, used, out);
  return out;
}

/// Integral of prod t_m^{X_m - 1} over the zigzag region B_{i,j}, as a rational function.
inline RatFunc b_rational(const IndexSet& I, unsigned i, unsigned j, unsigned r) {
  if (i > j || j > r) throw std::invalid_argument("b_rational: need i <= j <= r");
  static std::mutex mu;
  static std::map<std::tuple<IndexSet, unsigned, unsigned, unsigned>, RatFunc> cache;
  auto key = std::make_tuple(I, i, j, r);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  RatFunc total(r);
  for (const auto& order : zigzag_extensions(I, i, j)) {
    // 1 > t_{o1} > ... > t_{on} > 0 integrates to prod_k 1/(x_{ok} + ... + x_{on})
    RatFunc term(r, 1);
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::vector<Rational> c(r, Rational(0));
      for (std::size_t l = k; l < order.size(); ++l) c[order[l] - 1] = 1;
      term *= RatFunc::reciprocal(r, c, 0);
    }
    total += term;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = total;
  return total;
}

/// Upper triangular I x I matrix with entries a_{i,j}; rows and columns follow sorted I.
inline RatMatrix matrix_A(IndexSet I, unsigned r) {
  std::sort(I.begin(), I.end());
  RatMatrix m(I.size(), std::vector<RatFunc>(I.size(), RatFunc(r)));
  for (std::size_t x = 0; x < I.size(); ++x)
    for (std::size_t y = x; y < I.size(); ++y) m[x][y] = a_rational(I[x], I[y], r);
  return m;
}

/// Entries (-1)^{|I n {i+1..j}|} b_{i,j}.
inline RatMatrix matrix_A_inverse(IndexSet I, unsigned r) {
  std::sort(I.begin(), I.end());
  RatMatrix m(I.size(), std::vector<RatFunc>(I.size(), RatFunc(r)));
  for (std::size_t x = 0; x < I.size(); ++x)
    for (std::size_t y = x; y < I.size(); ++y) {
      unsigned count = static_cast<unsigned>(y - x);  // elements of I in (I[x], I[y]]
      RatFunc b = b_rational(I, I[x], I[y], r);
      m[x][y] = count % 2 ? -b : b;
    }
  return m;
}

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b, unsigned r) {
  std::size_t n = a.size();
  RatMatrix out(n, std::vector<RatFunc>(n, RatFunc(r)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
  return out;
}

/// f_i = b_{0,i} over the region Delta_i; requires i in I.
inline RatFunc f_rational(const IndexSet& I, unsigned i, unsigned r) {
  if (!detail::in_set(I, i)) throw std::invalid_argument("f_rational: index " + std::to_string(i) + " not in I");
  return b_rational(I, 0, i, r);
}

/// 1 / (Z_n (Z_n + Z_{n-1}) ... (Z_n + ... + Z_1)) for values or rational functions.
template <class T>
T reciprocal_chain(const std::vector<T>& z, const T& one) {
  T acc = one, sum = one - one;
  for (std::size_t k = z.size(); k-- > 0;) {
    sum = sum + z[k];
    acc = acc / sum;
  }
  return acc;
}

/// Shuffle identity for reciprocal chains at a point: returns (lhs, rhs).
inline std::pair<Rational, Rational> shuffle_identity(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational lhs = reciprocal_chain(x, Rational(1)) * reciprocal_chain(y, Rational(1));
  Rational rhs = 0;
  for (const auto& st : enumerate_stufflings(static_cast<unsigned>(x.size()), static_cast<unsigned>(y.size()), true))
    rhs += reciprocal_chain(deduce_sequence(x, y, st), Rational(1));
  return {lhs, rhs};
}

/// Sets E and F of the stuffle bijection together with the image of E under phi.
struct BijectionCheck {
  std::size_t size_e = 0, size_f = 0;
  bool image_in_f = true;
  bool injective = true;
  bool surjective = true;
};

inline BijectionCheck check_bijection(const std::vector<int>& a, const std::vector<int>& b) {
  using Elem = std::pair<Stuffling, unsigned>;
  unsigned p = static_cast<unsigned>(a.size()), q = static_cast<unsigned>(b.size());
  IndexSet ia = index_set_of(a), ib = index_set_of(b);

  std::set<Elem> f;
  for (const auto& st : enumerate_stufflings(p, q, false)) {
    auto c = deduce_sequence(a, b, st);
    long s = 0;
    f.insert({st, 0});
    for (unsigned k = 1; k <= st.r; ++k) {
      s += c[k - 1];
      if (s == k) f.insert({st, k});
    }
  }

  BijectionCheck out;
  out.size_f = f.size();
  std::set<Elem> image;
  for (unsigned i : ia)
    for (unsigned j : ib)
      for (const auto& sh : enumerate_stufflings(i, j, true))
        for (const auto& st : enumerate_stufflings(p - i, q - j, false)) {
          ++out.size_e;
          Stuffling m{i + j + st.r, sh.A, sh.B};
          for (unsigned x : st.A) m.A.push_back(i + j + x);
          for (unsigned x : st.B) m.B.push_back(i + j + x);
          Elem e{m, i + j};
          if (!f.count(e)) out.image_in_f = false;
          if (!image.insert(e).second) out.injective = false;
        }
  out.surjective = image == f;
  return out;
}

}  // namespace mzeta
