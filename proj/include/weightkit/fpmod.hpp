// Finitely presented modules over the active Euclidean domain, their
// morphisms, and Hom / Ext^1 / Tor_1 / projective dimension.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weightkit/matrix.hpp"
#include "weightkit/smith.hpp"

namespace weightkit {

/// coker(R^a -> R^b). The presentation is stored as an a x b matrix whose
/// rows are the relations; elements are column vectors in R^b.
///
/// The invariant-factor normal form is computed once at construction and
/// carries explicit change-of-basis matrices, so elements can be moved
/// between the given generators and the normal-form generators.
class FpModule {
 public:
  FpModule() : FpModule(RingSpec::integers(), 0, Matrix(RingSpec::integers(), 0, 0)) {}
  FpModule(RingSpec spec, std::size_t generators, Matrix relations);

  static FpModule zero(RingSpec spec);
  static FpModule free(RingSpec spec, std::size_t rank);
  /// R/(d); d = 0 gives R, a unit gives 0.
  static FpModule cyclic(const RingElement& d);
  /// Direct sum of R/(d_i), zeros meaning free summands.
  static FpModule from_cyclics(RingSpec spec, const std::vector<RingElement>& orders);
  static FpModule from_invariants(RingSpec spec, std::size_t free_rank,
                                  const std::vector<RingElement>& factors);

  const RingSpec& spec() const { return data_->spec; }
  std::size_t generators() const { return data_->generators; }
  const Matrix& relations() const { return data_->relations; }
  /// relations() transposed: generators x relations, columns span the
  /// relation submodule.
  const Matrix& relation_columns() const { return data_->relation_columns; }
  /// Solver for membership in the relation submodule.
  const LinearSystem& relation_system() const { return data_->relation_system; }

  std::size_t free_rank() const { return data_->free_rank; }
  /// Non-unit nonzero invariant factors in divisibility order.
  const std::vector<RingElement>& invariant_factors() const { return data_->factors; }
  /// Orders of the normal-form cyclic summands: factors, then one zero per
  /// free summand.
  std::vector<RingElement> summand_orders() const;
  std::size_t normal_generators() const { return data_->factors.size() + data_->free_rank; }

  /// normal_generators() x generators(): given coordinates -> normal ones.
  const Matrix& to_normal() const { return data_->to_normal; }
  /// generators() x normal_generators(): normal generator images.
  const Matrix& from_normal() const { return data_->from_normal; }

  bool is_zero() const { return normal_generators() == 0; }
  bool is_free() const { return data_->factors.empty(); }
  bool is_torsion() const { return data_->free_rank == 0; }

  /// Normal coordinates reduced modulo the summand orders: a canonical
  /// representative of the class of x.
  Matrix reduce(const Matrix& x) const;
  bool is_zero_element(const Matrix& x) const;

  /// The same module presented by its diagonal invariant-factor form.
  FpModule normalize() const;

  /// e.g. "Z/2 + Z/6 + Z^2"; "0" for the zero module.
  std::string describe() const;

 private:
  struct Data {
    RingSpec spec;
    std::size_t generators = 0;
    Matrix relations;
    Matrix relation_columns;
    LinearSystem relation_system;
    std::size_t free_rank = 0;
    std::vector<RingElement> factors;
    Matrix to_normal;
    Matrix from_normal;
  };
  std::shared_ptr<const Data> data_;
};

/// Isomorphism test on normal forms.
bool is_isomorphic(const FpModule& m, const FpModule& n);

FpModule normalize(const FpModule& m);
FpModule direct_sum(const FpModule& m, const FpModule& n);
FpModule power(const FpModule& m, std::size_t k);

/// R-linear map given on generators: target.generators() x source.generators().
class ModuleHom {
 public:
  /// Throws Error if the matrix does not send source relations into the
  /// target relation submodule.
  ModuleHom(FpModule source, FpModule target, Matrix matrix);

  static ModuleHom identity(const FpModule& m);
  static ModuleHom zero(const FpModule& source, const FpModule& target);
  /// Multiplication by r on m.
  static ModuleHom scalar(const FpModule& m, const RingElement& r);

  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Matrix apply(const Matrix& x) const { return matrix_ * x; }
  bool is_zero() const;

 private:
  FpModule source_;
  FpModule target_;
  Matrix matrix_;
};

/// g o f
ModuleHom compose(const ModuleHom& g, const ModuleHom& f);
bool equal_maps(const ModuleHom& f, const ModuleHom& g);

/// S/T for submodules T <= S of a free module, given by generator columns.
/// basis holds a basis of S as columns; module generator k is basis column k.
struct Subquotient {
  FpModule module;
  Matrix basis;
};
Subquotient subquotient(const Matrix& s_generators, const Matrix& t_generators);

/// Kernel as a subquotient of the source: basis columns live in source
/// generator coordinates.
Subquotient kernel(const ModuleHom& h);
FpModule cokernel(const ModuleHom& h);
/// Image as a subquotient of the target.
Subquotient image(const ModuleHom& h);

struct BijectivityCertificate {
  bool bijective = false;
  /// Nonzero kernel element (source coordinates), if injectivity fails.
  std::optional<Matrix> kernel_element;
  /// Target element outside the image, if surjectivity fails.
  std::optional<Matrix> cokernel_representative;
};
BijectivityCertificate hom_map_bijective(const ModuleHom& h);

/// Hom_R(M, N) from the cyclic-summand tables on normal forms.
FpModule hom_module(const FpModule& m, const FpModule& n);
FpModule ext1(const FpModule& m, const FpModule& n);
FpModule tor1(const FpModule& m, const FpModule& n);

/// Hom_R(M, N) computed from the presentations, with explicit elements.
class HomSpace {
 public:
  HomSpace(FpModule source, FpModule target);

  const FpModule& module() const { return space_.module; }
  /// The homomorphism with the given module coordinates.
  ModuleHom element(const Matrix& coordinates) const;
  /// Module coordinates of h (h must go source -> target).
  Matrix coordinates(const ModuleHom& h) const;

 private:
  FpModule source_;
  FpModule target_;
  Subquotient space_;
  LinearSystem basis_system_;
};

FpModule hom_presented(const FpModule& m, const FpModule& n);
FpModule ext1_presented(const FpModule& m, const FpModule& n);
FpModule tor1_presented(const FpModule& m, const FpModule& n);

/// Induced map Hom(Q, f): Hom(Q, A) -> Hom(Q, B) on presentation-level
/// Hom spaces.
ModuleHom hom_covariant(const FpModule& q, const ModuleHom& f);

enum class ProjectiveDimension { MinusInfinity, Zero, One };
ProjectiveDimension projective_dimension(const FpModule& m);
std::string to_string(ProjectiveDimension pd);

}  // namespace weightkit
