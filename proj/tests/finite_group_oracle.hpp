// Brute-force oracles over finite abelian groups, by explicit enumeration of
// elements and set maps. Independent of the Smith-form code paths.
#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Element = std::vector<long>;
using Histogram = std::map<long, long>;  // element order -> count

/// Z/n_1 + ... + Z/n_k, all n_i >= 1.
struct FiniteGroup {
  std::vector<long> orders;

  long size() const {
    long s = 1;
    for (long n : orders) s *= n;
    return s;
  }

  std::vector<Element> elements() const {
    std::vector<Element> out{Element(orders.size(), 0)};
    for (std::size_t i = 0; i < orders.size(); ++i) {
      std::vector<Element> next;
      for (const auto& e : out)
        for (long v = 0; v < orders[i]; ++v) {
          Element f = e;
          f[i] = v;
          next.push_back(f);
        }
      out = std::move(next);
    }
    return out;
  }

  Element add(const Element& a, const Element& b) const {
    Element c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % orders[i];
    return c;
  }

  Element scale(long k, const Element& a) const {
    Element c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      long v = (k % orders[i]) * a[i] % orders[i];
      c[i] = (v + orders[i]) % orders[i];
    }
    return c;
  }

  long order(const Element& a) const {
    long o = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      long g = std::gcd(a[i], orders[i]);
      o = std::lcm(o, orders[i] / g);
    }
    return o;
  }
};

/// Tuples of group elements (elements of G^k).
inline std::vector<std::vector<Element>> tuples(const FiniteGroup& g, std::size_t k) {
  auto elems = g.elements();
  std::vector<std::vector<Element>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<Element>> next;
    for (const auto& t : out)
      for (const auto& e : elems) {
        auto u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

inline long tuple_order(const FiniteGroup& g, const std::vector<Element>& t) {
  long o = 1;
  for (const auto& e : t) o = std::lcm(o, g.order(e));
  return o;
}

inline Histogram histogram_of(const FiniteGroup& g) {
  Histogram h;
  for (const auto& e : g.elements()) ++h[g.order(e)];
  return h;
}

/// Relation rows P (a x b) presenting M = Z^b / rows.
using Relations = std::vector<std::vector<long>>;

// sum_j coeff[j] * x[j]
inline Element combine(const FiniteGroup& n, const std::vector<long>& coeff,
                       const std::vector<Element>& x) {
  Element acc(n.orders.size(), 0);
  for (std::size_t j = 0; j < coeff.size(); ++j) acc = n.add(acc, n.scale(coeff[j], x[j]));
  return acc;
}

/// Hom(M, N): all assignments of generators satisfying every relation.
inline Histogram hom_histogram(const Relations& p, std::size_t b, const FiniteGroup& n) {
  Histogram h;
  Element zero(n.orders.size(), 0);
  for (const auto& x : tuples(n, b)) {
    bool ok = true;
    for (const auto& row : p)
      if (combine(n, row, x) != zero) {
        ok = false;
        break;
      }
    if (ok) ++h[tuple_order(n, x)];
  }
  return h;
}

/// Histogram of the quotient G^a / H for a subgroup H given as a set.
inline Histogram quotient_histogram(const FiniteGroup& n, std::size_t a,
                                    const std::set<std::vector<Element>>& sub) {
  Histogram h;
  for (const auto& x : tuples(n, a)) {
    long k = 1;
    while (true) {
      std::vector<Element> kx;
      for (const auto& e : x) kx.push_back(n.scale(k, e));
      if (sub.count(kx)) break;
      ++k;
    }
    ++h[k];
  }
  for (auto& [order, count] : h) count /= static_cast<long>(sub.size());
  return h;
}

/// Ext^1(M, N) = N^a / {(sum_j P_ij x_j)_i}, P injective (finite M with a
/// square nonsingular presentation).
inline Histogram ext_histogram(const Relations& p, std::size_t b, const FiniteGroup& n) {
  std::set<std::vector<Element>> img;
  for (const auto& x : tuples(n, b)) {
    std::vector<Element> y;
    for (const auto& row : p) y.push_back(combine(n, row, x));
    img.insert(y);
  }
  return quotient_histogram(n, p.size(), img);
}

/// Tor_1(M, N) = ker(N^a -> N^b, (y_i) -> (sum_i P_ij y_i)_j), P injective.
inline Histogram tor_histogram(const Relations& p, std::size_t b, const FiniteGroup& n) {
  Histogram h;
  Element zero(n.orders.size(), 0);
  for (const auto& y : tuples(n, p.size())) {
    bool ok = true;
    for (std::size_t j = 0; j < b && ok; ++j) {
      std::vector<long> col;
      for (const auto& row : p) col.push_back(row[j]);
      if (combine(n, col, y) != zero) ok = false;
    }
    if (ok) ++h[tuple_order(n, y)];
  }
  return h;
}

}  // namespace oracle
