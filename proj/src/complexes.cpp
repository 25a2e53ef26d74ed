#include "weightkit/complexes.hpp"

#include <algorithm>
#include <sstream>

namespace weightkit {

namespace {

std::string degree_text(int i) { return std::to_string(i); }

Matrix zeros(const RingSpec& spec, std::size_t rows, std::size_t cols) {
  return Matrix(spec, rows, cols);
}

// Builds a complex on [lo, hi] from rank/differential callbacks, trimmed.
template <typename RankFn, typename DiffFn>
ChainComplex assemble(const RingSpec& spec, int lo, int hi, RankFn rank, DiffFn diff) {
  if (hi < lo) return ChainComplex::zero(spec);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int i = lo; i <= hi; ++i) ranks.push_back(rank(i));
  for (int i = lo; i < hi; ++i) ds.push_back(diff(i));
  return ChainComplex(spec, lo, std::move(ranks), std::move(ds)).trimmed();
}

}  // namespace

// ---------------------------------------------------------------- complexes

ChainComplex::ChainComplex(RingSpec spec, int lo, std::vector<std::size_t> ranks,
                           std::vector<Matrix> differentials) {
  const std::size_t expected = ranks.empty() ? 0 : ranks.size() - 1;
  if (differentials.size() != expected)
    throw Error("complex with " + std::to_string(ranks.size()) + " terms needs " +
                std::to_string(expected) + " differentials, got " +
                std::to_string(differentials.size()));
  for (std::size_t k = 0; k < differentials.size(); ++k) {
    Matrix& d = differentials[k];
    const int deg = lo + static_cast<int>(k);
    if (d.rows() != ranks[k + 1] || d.cols() != ranks[k])
      throw Error("differential at degree " + degree_text(deg) + " has shape " +
                  std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                  ", expected " + std::to_string(ranks[k + 1]) + "x" +
                  std::to_string(ranks[k]));
    if (d.empty()) d = Matrix(spec, d.rows(), d.cols());
    if (!(d.spec() == spec)) throw Error("differential at degree " + degree_text(deg) +
                                         " lives in a different ring");
  }
  for (std::size_t k = 0; k + 1 < differentials.size(); ++k)
    if (!(differentials[k + 1] * differentials[k]).is_zero())
      throw Error("d o d != 0 at degree " + degree_text(lo + static_cast<int>(k)));
  data_ = std::make_shared<const Data>(
      Data{spec, lo, std::move(ranks), std::move(differentials)});
}

ChainComplex ChainComplex::zero(RingSpec spec) { return ChainComplex(spec, 0, {}, {}); }

ChainComplex ChainComplex::concentrated(RingSpec spec, int degree, std::size_t rank) {
  return ChainComplex(spec, degree, {rank}, {});
}

ChainComplex ChainComplex::two_term(const Matrix& d, int degree) {
  return ChainComplex(d.spec(), degree, {d.cols(), d.rows()}, {d});
}

std::size_t ChainComplex::rank(int degree) const {
  if (degree < lo() || degree > hi()) return 0;
  return data_->ranks[static_cast<std::size_t>(degree - lo())];
}

Matrix ChainComplex::differential(int degree) const {
  if (degree >= lo() && degree < hi())
    return data_->differentials[static_cast<std::size_t>(degree - lo())];
  return zeros(spec(), rank(degree + 1), rank(degree));
}

bool ChainComplex::is_zero() const { return !support().has_value(); }

std::optional<std::pair<int, int>> ChainComplex::support() const {
  std::optional<std::pair<int, int>> s;
  for (int i = lo(); i <= hi(); ++i) {
    if (rank(i) == 0) continue;
    if (!s) s = std::make_pair(i, i);
    s->second = i;
  }
  return s;
}

ChainComplex ChainComplex::trimmed() const {
  auto s = support();
  if (!s) return zero(spec());
  if (s->first == lo() && s->second == hi()) return *this;
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int i = s->first; i <= s->second; ++i) ranks.push_back(rank(i));
  for (int i = s->first; i < s->second; ++i) ds.push_back(differential(i));
  return ChainComplex(spec(), s->first, std::move(ranks), std::move(ds));
}

ChainComplex ChainComplex::shift(int k) const {
  std::vector<Matrix> ds = data_->differentials;
  if (k % 2 != 0)
    for (auto& d : ds) d = -d;
  return ChainComplex(spec(), lo() - k, data_->ranks, std::move(ds));
}

std::string ChainComplex::to_string() const {
  auto s = support();
  if (!s) return "0";
  std::ostringstream out;
  for (int i = s->first; i <= s->second; ++i) {
    out << "deg " << i << ": R^" << rank(i);
    if (i < s->second) out << "  d = " << differential(i).to_string();
    out << "\n";
  }
  return out.str();
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (!(a.spec() == b.spec())) return false;
  ChainComplex x = a.trimmed();
  ChainComplex y = b.trimmed();
  if (x.support() != y.support()) return false;
  if (x.data_->ranks != y.data_->ranks) return false;
  for (std::size_t k = 0; k < x.data_->differentials.size(); ++k)
    if (!(x.data_->differentials[k] == y.data_->differentials[k])) return false;
  return true;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (!(a.spec() == b.spec())) throw Error("complexes over different rings");
  if (a.is_zero()) return b.trimmed();
  if (b.is_zero()) return a.trimmed();
  int lo = std::min(a.lo(), b.lo());
  int hi = std::max(a.hi(), b.hi());
  return assemble(
      a.spec(), lo, hi, [&](int i) { return a.rank(i) + b.rank(i); },
      [&](int i) { return block_diagonal(a.differential(i), b.differential(i)); });
}

ChainComplex random_complex(const RingSpec& spec, Rng& rng, int lo, int length,
                            std::size_t max_rank, long bound) {
  std::uniform_int_distribution<std::size_t> pick(0, max_rank);
  std::vector<std::size_t> ranks;
  for (int k = 0; k < length; ++k) ranks.push_back(pick(rng));
  std::vector<Matrix> ds;
  for (int k = 0; k + 1 < length; ++k) {
    const std::size_t a = ranks[static_cast<std::size_t>(k)];
    const std::size_t b = ranks[static_cast<std::size_t>(k) + 1];
    Matrix allowed = Matrix::identity(spec, a);
    if (k > 0) allowed = kernel_basis(ds.back().transpose());
    ds.push_back(random_matrix(spec, b, allowed.cols(), rng, bound) * allowed.transpose());
  }
  return ChainComplex(spec, lo, std::move(ranks), std::move(ds));
}

// ---------------------------------------------------------------- chain maps

ChainMap::ChainMap(ChainComplex source, ChainComplex target, const Builder& component)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!(source_.spec() == target_.spec())) throw Error("chain map between different rings");
  lo_ = std::max(source_.lo(), target_.lo());
  const int hi = std::min(source_.hi(), target_.hi());
  for (int i = lo_; i <= hi; ++i) {
    Matrix f = component(i);
    if (f.rows() != target_.rank(i) || f.cols() != source_.rank(i))
      throw Error("chain map component at degree " + degree_text(i) + " has shape " +
                  std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                  ", expected " + std::to_string(target_.rank(i)) + "x" +
                  std::to_string(source_.rank(i)));
    if (f.empty()) f = zeros(source_.spec(), f.rows(), f.cols());
    components_.push_back(std::move(f));
  }
  const int from = std::min(source_.lo(), target_.lo()) - 1;
  const int to = std::max(source_.hi(), target_.hi());
  for (int i = from; i <= to; ++i)
    if (!(target_.differential(i) * this->component(i) ==
          this->component(i + 1) * source_.differential(i)))
      throw Error("chain map does not commute with the differentials at degree " +
                  degree_text(i));
}

ChainMap ChainMap::identity(const ChainComplex& m) {
  return ChainMap(m, m, [&](int i) { return Matrix::identity(m.spec(), m.rank(i)); });
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return ChainMap(source, target, [&](int i) {
    return zeros(source.spec(), target.rank(i), source.rank(i));
  });
}

Matrix ChainMap::component(int degree) const {
  const int k = degree - lo_;
  if (k >= 0 && k < static_cast<int>(components_.size()))
    return components_[static_cast<std::size_t>(k)];
  return zeros(source_.spec(), target_.rank(degree), source_.rank(degree));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  return ChainMap(f.source(), g.target(),
                  [&](int i) { return g.component(i) * f.component(i); });
}

ChainMap subtract(const ChainMap& f, const ChainMap& g) {
  return ChainMap(f.source(), f.target(),
                  [&](int i) { return f.component(i) - g.component(i); });
}

// ---------------------------------------------------------------- homotopies

Homotopy::Homotopy(ChainComplex source, ChainComplex target,
                   const std::function<Matrix(int degree)>& component)
    : source_(std::move(source)), target_(std::move(target)) {
  lo_ = std::max(source_.lo(), target_.lo() + 1);
  const int hi = std::min(source_.hi(), target_.hi() + 1);
  for (int i = lo_; i <= hi; ++i) {
    Matrix h = component(i);
    if (h.rows() != target_.rank(i - 1) || h.cols() != source_.rank(i))
      throw Error("homotopy component at degree " + degree_text(i) + " has wrong shape");
    if (h.empty()) h = zeros(source_.spec(), h.rows(), h.cols());
    components_.push_back(std::move(h));
  }
}

Homotopy Homotopy::zero(const ChainComplex& source, const ChainComplex& target) {
  return Homotopy(source, target, [&](int i) {
    return zeros(source.spec(), target.rank(i - 1), source.rank(i));
  });
}

Matrix Homotopy::component(int degree) const {
  const int k = degree - lo_;
  if (k >= 0 && k < static_cast<int>(components_.size()))
    return components_[static_cast<std::size_t>(k)];
  return zeros(source_.spec(), target_.rank(degree - 1), source_.rank(degree));
}

bool Homotopy::relates(const ChainMap& f, const ChainMap& g) const {
  const int from = std::min(source_.lo(), target_.lo()) - 1;
  const int to = std::max(source_.hi(), target_.hi()) + 1;
  for (int i = from; i <= to; ++i) {
    Matrix lhs = f.component(i) - g.component(i);
    Matrix rhs = target_.differential(i - 1) * component(i) +
                 component(i + 1) * source_.differential(i);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Homotopy add(const Homotopy& a, const Homotopy& b) {
  return Homotopy(a.source(), a.target(),
                  [&](int i) { return a.component(i) + b.component(i); });
}

Homotopy sandwich(const ChainMap& g, const Homotopy& h, const ChainMap& f) {
  return Homotopy(f.source(), g.target(), [&](int i) {
    return g.component(i - 1) * h.component(i) * f.component(i);
  });
}

bool HomotopyEquivalence::verify() const {
  if (!(backward.source() == forward.target()) || !(backward.target() == forward.source()))
    return false;
  return on_source.relates(ChainMap::identity(source()), compose(backward, forward)) &&
         on_target.relates(ChainMap::identity(target()), compose(forward, backward));
}

HomotopyEquivalence compose(const HomotopyEquivalence& second,
                            const HomotopyEquivalence& first) {
  HomotopyEquivalence e;
  e.forward = compose(second.forward, first.forward);
  e.backward = compose(first.backward, second.backward);
  e.on_source = add(first.on_source,
                    sandwich(first.backward, second.on_source, first.forward));
  e.on_target = add(second.on_target,
                    sandwich(second.forward, first.on_target, second.backward));
  return e;
}

HomotopyEquivalence invert(const HomotopyEquivalence& e) {
  return HomotopyEquivalence{e.backward, e.forward, e.on_target, e.on_source};
}

// ---------------------------------------------------------------- truncations

WeightDecomposition weight_truncate(const ChainComplex& m, int n) {
  const int cut = -n;
  const RingSpec& spec = m.spec();
  ChainComplex lower = assemble(
      spec, std::max(m.lo(), cut), m.hi(), [&](int i) { return m.rank(i); },
      [&](int i) { return m.differential(i); });
  ChainComplex upper = assemble(
      spec, m.lo(), std::min(m.hi(), cut - 1), [&](int i) { return m.rank(i); },
      [&](int i) { return m.differential(i); });
  ChainMap incl(lower, m, [&](int i) {
    return i >= cut ? Matrix::identity(spec, m.rank(i)) : zeros(spec, m.rank(i), 0);
  });
  ChainMap proj(m, upper, [&](int i) {
    return i < cut ? Matrix::identity(spec, m.rank(i)) : zeros(spec, 0, m.rank(i));
  });
  return WeightDecomposition{std::move(lower), std::move(upper), std::move(incl),
                             std::move(proj)};
}

TDecomposition t_truncate(const ChainComplex& m, int n) {
  const int cut = -n;
  const RingSpec& spec = m.spec();
  // Adapted basis at the cut: V = [complement | cycles].
  LinearSystem at_cut(m.differential(cut));
  const SmithDecomposition& snf = at_cut.smith();
  const std::size_t r = snf.rank();
  const std::size_t rc = m.rank(cut);
  Matrix cycles = snf.V.columns(r, rc - r);
  Matrix complement = snf.V.columns(0, r);
  Matrix to_complement = snf.V_inv.row_block(0, r);
  Matrix to_cycles = snf.V_inv.row_block(r, rc - r);

  auto lower_rank = [&](int i) { return i == cut ? rc - r : m.rank(i); };
  ChainComplex lower = assemble(
      spec, std::min(m.lo(), cut), cut, lower_rank, [&](int i) {
        return i == cut - 1 ? to_cycles * m.differential(i) : m.differential(i);
      });
  auto upper_rank = [&](int i) { return i == cut ? r : m.rank(i); };
  ChainComplex upper = assemble(spec, cut, std::max(m.hi(), cut), upper_rank, [&](int i) {
    return i == cut ? m.differential(i) * complement : m.differential(i);
  });

  ChainMap incl(lower, m, [&](int i) {
    if (i == cut) return cycles;
    if (i < cut) return Matrix::identity(spec, m.rank(i));
    return zeros(spec, m.rank(i), 0);
  });
  ChainMap proj(m, upper, [&](int i) {
    if (i == cut) return to_complement;
    if (i > cut) return Matrix::identity(spec, m.rank(i));
    return zeros(spec, 0, m.rank(i));
  });
  return TDecomposition{std::move(lower), std::move(upper), std::move(incl),
                        std::move(proj)};
}

Subquotient homology_with_basis(const ChainComplex& m, int degree) {
  return subquotient(kernel_basis(m.differential(degree)), m.differential(degree - 1));
}

FpModule homology(const ChainComplex& m, int degree) {
  if (m.rank(degree) == 0) return FpModule::zero(m.spec());
  return homology_with_basis(m, degree).module;
}

ChainComplex cone(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const RingSpec& spec = x.spec();
  const int lo = std::min(y.lo(), x.lo() - 1);
  const int hi = std::max(y.hi(), x.hi() - 1);
  return assemble(
      spec, lo, hi, [&](int i) { return y.rank(i) + x.rank(i + 1); },
      [&](int i) {
        Matrix top = hstack(y.differential(i), f.component(i + 1));
        Matrix bottom = hstack(zeros(spec, x.rank(i + 2), y.rank(i)), -x.differential(i + 1));
        return vstack(top, bottom);
      });
}

// ---------------------------------------------------------------- minimization

namespace {

// Mutable complex on a fixed degree window together with the accumulated
// equivalence data back to the original complex.
struct Reduction {
  RingSpec spec;
  int lo = 0;
  std::vector<std::size_t> ranks;  // current complex C
  std::vector<Matrix> d;           // d[k] : C^{lo+k} -> C^{lo+k+1}
  std::vector<Matrix> to;          // M^k -> C^k
  std::vector<Matrix> from;        // C^k -> M^k
  std::vector<Matrix> h;           // M^k -> M^{k-1}, id - from o to = dh + hd
  std::vector<std::size_t> original_ranks;

  std::size_t len() const { return ranks.size(); }

  // Cancels the unit pivots of d[k]; returns false if there are none.
  bool cancel(std::size_t k) {
    SmithDecomposition snf = smith_normal_form(d[k]);
    std::size_t u = 0;
    while (u < snf.rank() && snf.invariant_factors[u].is_unit()) ++u;
    if (u == 0) return false;
    const std::size_t a = ranks[k], b = ranks[k + 1];
    // Iso C -> C~ (V^-1 at k, U at k+1), then project away the first u pairs.
    Matrix f_k = snf.V_inv.row_block(u, a - u);
    Matrix f_k1 = snf.U.row_block(u, b - u);
    Matrix g_k = snf.V.columns(u, a - u);
    Matrix g_k1 = snf.U_inv.columns(u, b - u);
    // Homotopy on C at degree k+1: V * [[Phi^-1, 0], [0, 0]] * U.
    Matrix phi_inv(spec, a, b);
    for (std::size_t j = 0; j < u; ++j) phi_inv(j, j) = snf.D(j, j).inverse();
    Matrix h_c = snf.V * phi_inv * snf.U;

    h[k + 1] = h[k + 1] + from[k] * h_c * to[k + 1];

    if (k > 0) d[k - 1] = f_k * d[k - 1];
    if (k + 1 < d.size()) d[k + 1] = d[k + 1] * g_k1;
    d[k] = snf.D.block(u, u, b - u, a - u);
    to[k] = f_k * to[k];
    to[k + 1] = f_k1 * to[k + 1];
    from[k] = from[k] * g_k;
    from[k + 1] = from[k + 1] * g_k1;
    ranks[k] -= u;
    ranks[k + 1] -= u;
    return true;
  }
};

}  // namespace

Minimization minimize(const ChainComplex& m) {
  const RingSpec& spec = m.spec();
  Reduction red;
  red.spec = spec;
  red.lo = m.lo();
  for (int i = m.lo(); i <= m.hi(); ++i) {
    red.ranks.push_back(m.rank(i));
    red.to.push_back(Matrix::identity(spec, m.rank(i)));
    red.from.push_back(Matrix::identity(spec, m.rank(i)));
    red.h.push_back(zeros(spec, m.rank(i - 1), m.rank(i)));
    if (i < m.hi()) red.d.push_back(m.differential(i));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < red.d.size(); ++k)
      if (red.cancel(k)) changed = true;
  }

  ChainComplex full(spec, red.lo, red.ranks, red.d);
  ChainComplex minimal = full.trimmed();
  auto index = [&](int i) { return static_cast<std::size_t>(i - red.lo); };
  auto inside = [&](int i) { return i >= m.lo() && i <= m.hi(); };
  HomotopyEquivalence eq;
  eq.forward = ChainMap(m, minimal, [&](int i) {
    return inside(i) ? red.to[index(i)] : zeros(spec, minimal.rank(i), m.rank(i));
  });
  eq.backward = ChainMap(minimal, m, [&](int i) {
    return inside(i) ? red.from[index(i)] : zeros(spec, m.rank(i), minimal.rank(i));
  });
  eq.on_source = Homotopy(m, m, [&](int i) {
    return inside(i) ? red.h[index(i)] : zeros(spec, m.rank(i - 1), m.rank(i));
  });
  eq.on_target = Homotopy::zero(minimal, minimal);
  return Minimization{std::move(minimal), std::move(eq)};
}

bool homotopy_equivalent(const ChainComplex& m, const ChainComplex& n) {
  if (!(m.spec() == n.spec())) throw Error("complexes over different rings");
  const int lo = std::min(m.lo(), n.lo());
  const int hi = std::max(m.hi(), n.hi());
  for (int i = lo; i <= hi; ++i)
    if (!is_isomorphic(homology(m, i), homology(n, i))) return false;
  return true;
}

// ---------------------------------------------------------------- canonical forms

namespace {

struct HomologyShape {
  std::vector<RingElement> torsion;
  std::size_t free = 0;
};

ChainComplex canonical_from_homology(const RingSpec& spec, int lo, int hi,
                                     const std::vector<HomologyShape>& shapes) {
  auto shape = [&](int i) -> const HomologyShape* {
    if (i < lo || i > hi) return nullptr;
    return &shapes[static_cast<std::size_t>(i - lo)];
  };
  auto torsion = [&](int i) { return shape(i) ? shape(i)->torsion.size() : 0; };
  auto free = [&](int i) { return shape(i) ? shape(i)->free : 0; };
  return assemble(
      spec, lo, hi, [&](int i) { return torsion(i) + free(i) + torsion(i + 1); },
      [&](int i) {
        const std::size_t cols = torsion(i) + free(i) + torsion(i + 1);
        const std::size_t rows = torsion(i + 1) + free(i + 1) + torsion(i + 2);
        Matrix d(spec, rows, cols);
        for (std::size_t j = 0; j < torsion(i + 1); ++j)
          d(j, torsion(i) + free(i) + j) = shape(i + 1)->torsion[j];
        return d;
      });
}

std::vector<HomologyShape> homology_shapes(const ChainComplex& m) {
  std::vector<HomologyShape> shapes;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    FpModule h = homology(m, i);
    shapes.push_back(HomologyShape{h.invariant_factors(), h.free_rank()});
  }
  return shapes;
}

}  // namespace

ChainComplex canonical_complex(const ChainComplex& m) {
  return canonical_from_homology(m.spec(), m.lo(), m.hi(), homology_shapes(m));
}

HomotopyEquivalence canonical_equivalence(const ChainComplex& m) {
  Minimization mini = minimize(m);
  const ChainComplex& n = mini.minimal;
  const RingSpec& spec = m.spec();
  ChainComplex canon = canonical_from_homology(spec, n.lo(), n.hi(), homology_shapes(n));
  if (n.is_zero()) return mini.equivalence;

  // Per degree: SNF of d^i gives C^i = W^i + Z^i; the SNF of the boundary
  // inclusion B^{i+1} -> Z^{i+1} then adapts both Z^{i+1} and W^i.
  const int lo = n.lo();
  const int hi = n.hi();
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<SmithDecomposition> diff_snf;
  for (int i = lo; i <= hi; ++i) diff_snf.push_back(smith_normal_form(n.differential(i)));
  auto r = [&](std::size_t k) { return diff_snf[k].rank(); };
  auto z = [&](std::size_t k) { return n.rank(lo + static_cast<int>(k)) - r(k); };

  // P[k] adapts Z at degree lo+k, Q[k] adapts W at degree lo+k.
  std::vector<Matrix> P(len), P_inv(len), Q(len), Q_inv(len);
  for (std::size_t k = 0; k < len; ++k) {
    Matrix e(spec, z(k), 0);
    if (k > 0) {
      const SmithDecomposition& prev = diff_snf[k - 1];
      e = diff_snf[k].V_inv.row_block(r(k), z(k)) *
          n.differential(lo + static_cast<int>(k) - 1) * prev.V.columns(0, r(k - 1));
    }
    SmithDecomposition s = smith_normal_form(e);
    P[k] = s.U;
    P_inv[k] = s.U_inv;
    if (k > 0) {
      Q[k - 1] = s.V;
      Q_inv[k - 1] = s.V_inv;
    }
  }
  Q[len - 1] = Matrix::identity(spec, r(len - 1));
  Q_inv[len - 1] = Matrix::identity(spec, r(len - 1));

  auto index = [&](int i) { return static_cast<std::size_t>(i - lo); };
  auto inside = [&](int i) { return i >= lo && i <= hi; };
  ChainMap to_canon(n, canon, [&](int i) {
    if (!inside(i)) return zeros(spec, canon.rank(i), n.rank(i));
    const std::size_t k = index(i);
    const SmithDecomposition& s = diff_snf[k];
    return vstack(P[k] * s.V_inv.row_block(r(k), z(k)),
                  Q_inv[k] * s.V_inv.row_block(0, r(k)));
  });
  ChainMap from_canon(canon, n, [&](int i) {
    if (!inside(i)) return zeros(spec, n.rank(i), canon.rank(i));
    const std::size_t k = index(i);
    const SmithDecomposition& s = diff_snf[k];
    return hstack(s.V.columns(r(k), z(k)) * P_inv[k], s.V.columns(0, r(k)) * Q[k]);
  });
  HomotopyEquivalence iso{to_canon, from_canon, Homotopy::zero(n, n),
                          Homotopy::zero(canon, canon)};
  return compose(iso, mini.equivalence);
}

std::optional<HomotopyEquivalence> homotopy_equivalence(const ChainComplex& m,
                                                        const ChainComplex& n) {
  if (!(m.spec() == n.spec())) throw Error("complexes over different rings");
  HomotopyEquivalence em = canonical_equivalence(m);
  HomotopyEquivalence en = canonical_equivalence(n);
  if (!(em.target() == en.target())) return std::nullopt;
  // Re-target en onto the very same canonical object as em.
  HomotopyEquivalence back = invert(en);
  ChainMap fwd(em.target(), n, [&](int i) { return back.forward.component(i); });
  ChainMap bwd(n, em.target(), [&](int i) { return back.backward.component(i); });
  Homotopy hs(em.target(), em.target(), [&](int i) { return back.on_source.component(i); });
  return compose(HomotopyEquivalence{fwd, bwd, hs, back.on_target}, em);
}

// ---------------------------------------------------------------- Hom complex

namespace {

// Hom^n(X, Y) = prod_i Hom(X^i, Y^{i+n}); block i is vectorized row-major.
struct HomBlocks {
  std::vector<std::size_t> offset;  // per i in [x.lo, x.hi]
  std::size_t total = 0;
};

HomBlocks hom_blocks(const ChainComplex& x, const ChainComplex& y, int n) {
  HomBlocks b;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    b.offset.push_back(b.total);
    b.total += y.rank(i + n) * x.rank(i);
  }
  return b;
}

// D(phi) = d_Y phi - (-1)^n phi d_X : Hom^n -> Hom^{n+1}.
Matrix hom_differential(const ChainComplex& x, const ChainComplex& y, int n) {
  const RingSpec& spec = x.spec();
  HomBlocks src = hom_blocks(x, y, n);
  HomBlocks dst = hom_blocks(x, y, n + 1);
  Matrix D(spec, dst.total, src.total);
  const RingElement sign = n % 2 == 0 ? -spec.one() : spec.one();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const std::size_t bi = static_cast<std::size_t>(i - x.lo());
    const std::size_t rows = y.rank(i + n);
    const std::size_t cols = x.rank(i);
    Matrix dy = y.differential(i + n);
    Matrix dx = x.differential(i - 1);
    const std::size_t next_rows = y.rank(i + n + 1);
    const std::size_t prev_cols = x.rank(i - 1);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) {
        const std::size_t col = src.offset[bi] + a * cols + b;
        // d_Y E_ab lands in block i of Hom^{n+1}.
        for (std::size_t r = 0; r < next_rows; ++r)
          if (!dy(r, a).is_zero()) D(dst.offset[bi] + r * cols + b, col) += dy(r, a);
        // E_ab d_X lands in block i-1.
        if (i > x.lo())
          for (std::size_t c = 0; c < prev_cols; ++c)
            if (!dx(b, c).is_zero())
              D(dst.offset[bi - 1] + a * prev_cols + c, col) += sign * dx(b, c);
      }
  }
  return D;
}

}  // namespace

FpModule hom_upto_homotopy(const ChainComplex& x, const ChainComplex& y) {
  if (!(x.spec() == y.spec())) throw Error("complexes over different rings");
  Matrix d0 = hom_differential(x, y, 0);
  if (d0.cols() == 0) return FpModule::zero(x.spec());
  Matrix dm1 = hom_differential(x, y, -1);
  return subquotient(kernel_basis(d0), dm1).module;
}

std::optional<std::pair<int, int>> weight_range(const ChainComplex& m) {
  auto s = minimize(m).minimal.support();
  if (!s) return std::nullopt;
  return std::make_pair(-s->second, -s->first);
}

// ---------------------------------------------------------------- axioms

WeightAxiomReport verify_weight_axioms(const std::vector<ChainComplex>& sample, int n_lo,
                                       int n_hi, const WeightTruncator& truncate) {
  WeightAxiomReport report;
  auto fail = [&](std::string what) { report.violations.push_back(std::move(what)); };
  auto range_text = [](const std::optional<std::pair<int, int>>& r) {
    if (!r) return std::string("none");
    return "[" + std::to_string(r->first) + ", " + std::to_string(r->second) + "]";
  };

  std::vector<WeightDecomposition> previous;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    std::vector<WeightDecomposition> current;
    for (int n = n_lo; n <= n_hi; ++n) {
      const std::string where =
          "sample " + std::to_string(j) + ", n = " + std::to_string(n) + ": ";
      WeightDecomposition dec;
      try {
        dec = truncate(sample[j], n);
      } catch (const Error& e) {
        fail(where + "truncation is not a pair of chain maps (" + e.what() + ")");
        continue;
      }
      ++report.checks;
      if (!(dec.inclusion.target() == sample[j]) || !(dec.projection.source() == sample[j]))
        fail(where + "truncation maps do not start/end at the sample");
      auto wl = weight_range(dec.lower);
      if (wl && wl->second > n)
        fail(where + "lower piece has weight range " + range_text(wl) + ", not in w<=" +
             std::to_string(n));
      auto wr = weight_range(dec.upper);
      if (wr && wr->first < n + 1)
        fail(where + "upper piece has weight range " + range_text(wr) + ", not in w>=" +
             std::to_string(n + 1));
      ++report.checks;
      if (!homotopy_equivalent(cone(dec.inclusion), dec.upper))
        fail(where + "cone of the inclusion is not equivalent to the upper piece");
      ++report.checks;
      if (!hom_upto_homotopy(dec.lower, dec.upper).is_zero())
        fail(where + "Hom_K(lower, upper) != 0");
      const std::size_t slot = static_cast<std::size_t>(n - n_lo);
      if (slot < previous.size()) {
        ++report.checks;
        if (!hom_upto_homotopy(dec.lower, previous[slot].upper).is_zero())
          fail(where + "Hom_K(lower, upper of sample " + std::to_string(j - 1) + ") != 0");
        ++report.checks;
        if (!hom_upto_homotopy(previous[slot].lower, dec.upper).is_zero())
          fail(where + "Hom_K(lower of sample " + std::to_string(j - 1) + ", upper) != 0");
      }
      current.push_back(std::move(dec));
    }
    if (current.size() == static_cast<std::size_t>(n_hi - n_lo + 1))
      previous = std::move(current);
    else
      previous.clear();
  }

  const RingSpec spec = sample.empty() ? RingSpec::integers() : sample.front().spec();
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t q = 1; q <= 2; ++q)
      for (int i = 1; i <= 3; ++i) {
        ++report.checks;
        ChainComplex P = ChainComplex::concentrated(spec, 0, p);
        ChainComplex Q = ChainComplex::concentrated(spec, 0, q).shift(i);
        if (!hom_upto_homotopy(P, Q).is_zero())
          fail("connectivity: Hom_K(R^" + std::to_string(p) + ", R^" + std::to_string(q) +
               "[" + std::to_string(i) + "]) != 0");
      }
  return report;
}

}  // namespace weightkit
