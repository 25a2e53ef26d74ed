#include "weightkit/fpmod.hpp"

namespace weightkit {

namespace {

Matrix vec(const Matrix& f) {
  Matrix v(f.spec(), f.rows() * f.cols(), 1);
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (std::size_t i = 0; i < f.rows(); ++i) v(i + f.rows() * j, 0) = f(i, j);
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  Matrix f(v.spec(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) f(i, j) = v(i + rows * j, 0);
  return f;
}

// Hom(R/(m), R/(n)) with zero meaning a free summand.
RingElement hom_table(const RingElement& m, const RingElement& n) {
  if (m.is_zero()) return n;
  if (n.is_zero()) return m.spec().one();
  return gcd(m, n);
}

RingElement ext_table(const RingElement& m, const RingElement& n) {
  if (m.is_zero()) return m.spec().one();
  return gcd(m, n);
}

RingElement tor_table(const RingElement& m, const RingElement& n) {
  if (m.is_zero() || n.is_zero()) return m.spec().one();
  return gcd(m, n);
}

template <typename Table>
FpModule tabulate(const FpModule& m, const FpModule& n, Table table) {
  if (!(m.spec() == n.spec())) throw Error("modules over different rings");
  std::vector<RingElement> orders;
  for (const auto& a : m.summand_orders())
    for (const auto& b : n.summand_orders()) orders.push_back(table(a, b));
  return FpModule::from_cyclics(m.spec(), orders);
}

}  // namespace

FpModule::FpModule(RingSpec spec, std::size_t generators, Matrix relations) {
  if (relations.rows() == 0 && relations.cols() != generators)
    relations = Matrix(spec, 0, generators);
  if (relations.cols() != generators)
    throw Error("presentation has " + std::to_string(relations.cols()) +
                " columns but the module has " + std::to_string(generators) +
                " generators");
  if (!(relations.spec() == spec) && !relations.empty())
    throw Error("presentation entries live in a different ring");
  Matrix cols = relations.transpose();
  LinearSystem system(cols);
  const SmithDecomposition& snf = system.smith();
  std::vector<std::size_t> torsion;
  std::vector<std::size_t> free;
  std::vector<RingElement> factors;
  for (std::size_t i = 0; i < generators; ++i) {
    if (i < snf.rank()) {
      if (!snf.invariant_factors[i].is_unit()) {
        torsion.push_back(i);
        factors.push_back(snf.invariant_factors[i]);
      }
    } else {
      free.push_back(i);
    }
  }
  std::vector<std::size_t> kept = torsion;
  kept.insert(kept.end(), free.begin(), free.end());
  Matrix to = snf.U.select_rows(kept);
  Matrix from = snf.U_inv.select_columns(kept);
  data_ = std::make_shared<const Data>(Data{spec, generators, std::move(relations),
                                            std::move(cols), std::move(system),
                                            free.size(), std::move(factors),
                                            std::move(to), std::move(from)});
}

FpModule FpModule::zero(RingSpec spec) { return FpModule(spec, 0, Matrix(spec, 0, 0)); }

FpModule FpModule::free(RingSpec spec, std::size_t rank) {
  return FpModule(spec, rank, Matrix(spec, 0, rank));
}

FpModule FpModule::cyclic(const RingElement& d) {
  return from_cyclics(d.spec(), {d});
}

FpModule FpModule::from_cyclics(RingSpec spec, const std::vector<RingElement>& orders) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (!orders[i].is_zero()) rows.push_back(i);
  Matrix rel(spec, rows.size(), orders.size());
  for (std::size_t k = 0; k < rows.size(); ++k) rel(k, rows[k]) = orders[rows[k]];
  return FpModule(spec, orders.size(), std::move(rel));
}

FpModule FpModule::from_invariants(RingSpec spec, std::size_t free_rank,
                                   const std::vector<RingElement>& factors) {
  std::vector<RingElement> orders = factors;
  orders.resize(factors.size() + free_rank, spec.zero());
  return from_cyclics(spec, orders);
}

std::vector<RingElement> FpModule::summand_orders() const {
  std::vector<RingElement> orders = data_->factors;
  orders.resize(normal_generators(), spec().zero());
  return orders;
}

Matrix FpModule::reduce(const Matrix& x) const {
  Matrix y = to_normal() * x;
  for (std::size_t i = 0; i < data_->factors.size(); ++i)
    for (std::size_t k = 0; k < y.cols(); ++k)
      y(i, k) = divmod(y(i, k), data_->factors[i]).second;
  return y;
}

bool FpModule::is_zero_element(const Matrix& x) const { return reduce(x).is_zero(); }

FpModule FpModule::normalize() const {
  return from_invariants(spec(), free_rank(), invariant_factors());
}

std::string FpModule::describe() const {
  if (is_zero()) return "0";
  const std::string ring = spec().to_string();
  const bool scalar = !spec().is_polynomial();
  std::string out;
  for (const auto& d : invariant_factors()) {
    if (!out.empty()) out += " + ";
    out += ring + "/" + (scalar ? d.to_string() : "(" + d.to_string() + ")");
  }
  if (free_rank() > 0) {
    if (!out.empty()) out += " + ";
    out += ring;
    if (free_rank() > 1) out += "^" + std::to_string(free_rank());
  }
  return out;
}

bool is_isomorphic(const FpModule& m, const FpModule& n) {
  return m.spec() == n.spec() && m.free_rank() == n.free_rank() &&
         m.invariant_factors() == n.invariant_factors();
}

FpModule normalize(const FpModule& m) { return m.normalize(); }

FpModule direct_sum(const FpModule& m, const FpModule& n) {
  if (!(m.spec() == n.spec())) throw Error("direct sum over different rings");
  return FpModule(m.spec(), m.generators() + n.generators(),
                  block_diagonal(m.relations(), n.relations()));
}

FpModule power(const FpModule& m, std::size_t k) {
  FpModule out = FpModule::zero(m.spec());
  for (std::size_t i = 0; i < k; ++i) out = direct_sum(out, m);
  return out;
}

ModuleHom::ModuleHom(FpModule source, FpModule target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators()) {
    if (matrix_.empty() && matrix_.rows() * matrix_.cols() == 0)
      matrix_ = Matrix(source_.spec(), target_.generators(), source_.generators());
    else
      throw Error("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                  std::to_string(matrix_.cols()) + ", expected " +
                  std::to_string(target_.generators()) + "x" +
                  std::to_string(source_.generators()));
  }
  if (!target_.relation_system().in_span(matrix_ * source_.relation_columns()))
    throw Error("matrix does not respect the source relations");
}

ModuleHom ModuleHom::identity(const FpModule& m) {
  return ModuleHom(m, m, Matrix::identity(m.spec(), m.generators()));
}

ModuleHom ModuleHom::zero(const FpModule& source, const FpModule& target) {
  return ModuleHom(source, target,
                   Matrix(source.spec(), target.generators(), source.generators()));
}

ModuleHom ModuleHom::scalar(const FpModule& m, const RingElement& r) {
  return ModuleHom(m, m, r * Matrix::identity(m.spec(), m.generators()));
}

bool ModuleHom::is_zero() const { return target_.is_zero_element(matrix_); }

ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  return ModuleHom(f.source(), g.target(), g.matrix() * f.matrix());
}

bool equal_maps(const ModuleHom& f, const ModuleHom& g) {
  return f.target().is_zero_element(f.matrix() - g.matrix());
}

Subquotient subquotient(const Matrix& s_generators, const Matrix& t_generators) {
  const RingSpec& spec = s_generators.spec();
  Matrix basis = image_basis(s_generators);
  auto coords = LinearSystem(basis).solve(t_generators);
  if (!coords) throw Error("subquotient: T is not contained in S");
  return Subquotient{FpModule(spec, basis.cols(), coords->transpose()), std::move(basis)};
}

Subquotient kernel(const ModuleHom& h) {
  const std::size_t m = h.source().generators();
  Matrix big = hstack(h.matrix(), h.target().relation_columns());
  Matrix k = kernel_basis(big);
  return subquotient(k.row_block(0, m), h.source().relation_columns());
}

FpModule cokernel(const ModuleHom& h) {
  return FpModule(h.target().spec(), h.target().generators(),
                  vstack(h.target().relations(), h.matrix().transpose()));
}

Subquotient image(const ModuleHom& h) {
  return subquotient(hstack(h.matrix(), h.target().relation_columns()),
                     h.target().relation_columns());
}

BijectivityCertificate hom_map_bijective(const ModuleHom& h) {
  BijectivityCertificate cert;
  FpModule coker = cokernel(h);
  if (!coker.is_zero()) cert.cokernel_representative = coker.from_normal().column(0);
  Subquotient ker = kernel(h);
  if (!ker.module.is_zero())
    cert.kernel_element = ker.basis * ker.module.from_normal().column(0);
  cert.bijective = !cert.kernel_element && !cert.cokernel_representative;
  return cert;
}

FpModule hom_module(const FpModule& m, const FpModule& n) {
  return tabulate(m, n, hom_table);
}

FpModule ext1(const FpModule& m, const FpModule& n) { return tabulate(m, n, ext_table); }

FpModule tor1(const FpModule& m, const FpModule& n) { return tabulate(m, n, tor_table); }

namespace {

Subquotient hom_subquotient(const FpModule& source, const FpModule& target) {
  const RingSpec& spec = source.spec();
  const std::size_t m = source.generators();
  const std::size_t n = target.generators();
  const Matrix& qm = source.relation_columns();  // m x a
  const Matrix& qn = target.relation_columns();  // n x an
  const std::size_t a = qm.cols();
  const std::size_t an = qn.cols();
  // Unknowns vec(F) (n*m) and vec(K) (an*a); equations F*qm - qn*K = 0.
  Matrix eq(spec, n * a, n * m + an * a);
  for (std::size_t q = 0; q < a; ++q)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t row = i + n * q;
      for (std::size_t j = 0; j < m; ++j) eq(row, i + n * j) = qm(j, q);
      for (std::size_t p = 0; p < an; ++p) eq(row, n * m + p + an * q) = -qn(i, p);
    }
  Matrix sols = kernel_basis(eq).row_block(0, n * m);
  Matrix trivial(spec, n * m, m * an);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t p = 0; p < an; ++p)
      for (std::size_t i = 0; i < n; ++i) trivial(i + n * j, j * an + p) = qn(i, p);
  return subquotient(sols, trivial);
}

}  // namespace

HomSpace::HomSpace(FpModule source, FpModule target)
    : source_(std::move(source)),
      target_(std::move(target)),
      space_(hom_subquotient(source_, target_)),
      basis_system_(space_.basis) {}

ModuleHom HomSpace::element(const Matrix& coordinates) const {
  return ModuleHom(source_, target_,
                   unvec(space_.basis * coordinates, target_.generators(),
                         source_.generators()));
}

Matrix HomSpace::coordinates(const ModuleHom& h) const {
  auto c = basis_system_.solve(vec(h.matrix()));
  if (!c) throw Error("HomSpace::coordinates: map is not in this Hom space");
  return *c;
}

FpModule hom_presented(const FpModule& m, const FpModule& n) {
  return hom_subquotient(m, n).module;
}

FpModule ext1_presented(const FpModule& m, const FpModule& n) {
  // Injective presentation R^r --P--> R^b of M; Ext^1 = coker(N^b -> N^r).
  Matrix p = image_basis(m.relation_columns());
  Matrix id = Matrix::identity(n.spec(), n.generators());
  ModuleHom precompose(power(n, p.rows()), power(n, p.cols()),
                       kronecker(p.transpose(), id));
  return cokernel(precompose);
}

FpModule tor1_presented(const FpModule& m, const FpModule& n) {
  Matrix p = image_basis(m.relation_columns());
  Matrix id = Matrix::identity(n.spec(), n.generators());
  ModuleHom tensored(power(n, p.cols()), power(n, p.rows()), kronecker(p, id));
  return kernel(tensored).module;
}

ModuleHom hom_covariant(const FpModule& q, const ModuleHom& f) {
  HomSpace from(q, f.source());
  HomSpace to(q, f.target());
  const std::size_t k = from.module().generators();
  Matrix images(q.spec(), to.module().generators(), k);
  for (std::size_t g = 0; g < k; ++g) {
    Matrix e(q.spec(), k, 1);
    e(g, 0) = q.spec().one();
    Matrix c = to.coordinates(compose(f, from.element(e)));
    for (std::size_t i = 0; i < c.rows(); ++i) images(i, g) = c(i, 0);
  }
  return ModuleHom(from.module(), to.module(), std::move(images));
}

ProjectiveDimension projective_dimension(const FpModule& m) {
  if (m.is_zero()) return ProjectiveDimension::MinusInfinity;
  return m.is_free() ? ProjectiveDimension::Zero : ProjectiveDimension::One;
}

std::string to_string(ProjectiveDimension pd) {
  switch (pd) {
    case ProjectiveDimension::MinusInfinity:
      return "-inf";
    case ProjectiveDimension::Zero:
      return "0";
    case ProjectiveDimension::One:
      return "1";
  }
  return "?";
}

}  // namespace weightkit
