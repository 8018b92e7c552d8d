#pragma once

// Operator-valued reproducing kernels on chart domains, their Gram matrices,
// finite-sample RKHS models, admissibility, and the Grassmannian universal
// kernel.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bck/core.hpp"
#include "bck/polynomial.hpp"

namespace bck::kernels {

using Index = Eigen::Index;
using SectionField = std::function<Matrix(const ChartPoint&)>;
using KernelFn = std::function<Matrix(const ChartPoint&, const ChartPoint&)>;

// ---------------------------------------------------------------------------
// Subspaces of C^N with orthonormal bases.

class Subspace {
 public:
  /// Orthonormalizes the columns of `basis` (modified Gram-Schmidt, two passes,
  /// positive diagonal). Throws StructuralError on rank deficiency.
  explicit Subspace(const Matrix& basis);

  /// Span of the columns of [I_k; Z] for a (N-k) x k chart matrix Z.
  static Subspace from_chart(const Matrix& z);

  Index ambient_dim() const { return u_.rows(); }
  Index rank() const { return u_.cols(); }
  const Matrix& basis() const { return u_; }
  /// Orthogonal projection U U^* onto the subspace.
  Matrix projector() const { return u_ * u_.adjoint(); }

 private:
  Matrix u_;
};

/// Matrix of (p_{S1})|_{S2} in the given bases: U1^* U2.
Matrix universal_kernel(const Subspace& s1, const Subspace& s2);

/// Modified Gram-Schmidt with re-orthogonalization in the inner product
/// <x, y> = y^* metric x. Returns Q (metric-orthonormal columns) and upper
/// triangular R with positive real diagonal, columns = Q R.
struct QrFactors {
  Matrix q;
  Matrix r;
};
QrFactors gram_schmidt(const Matrix& columns, const Matrix& metric);

// ---------------------------------------------------------------------------
// Kernel specifications.

struct DiscPower {
  double nu = 1.0;
};

struct FromSections {
  SectionField sections;              // E(z), n x m
  Matrix gram;                        // G, m x m Hermitian positive definite
  std::optional<Polynomial> polynomial;  // set when E is a polynomial
};

struct UniversalGrassmann {
  int ambient = 2;
  int rank = 1;
};

struct Constant {
  Matrix value;
};

struct UserHook {
  KernelFn fn;
};

class KernelSpec {
 public:
  using Variant = std::variant<DiscPower, FromSections, UniversalGrassmann, Constant, UserHook>;

  /// (1 - z conj(w))^(-nu) on the open unit disc; nu >= 1.
  static KernelSpec disc_power(double nu);
  /// E(z) G^{-1} E(w)^* on C^dim. Rejects non-Hermitian or non-definite G.
  static KernelSpec from_sections(SectionField e, Matrix gram, int dim, Index fiber_dim,
                                  std::optional<Polynomial> poly = std::nullopt);
  static KernelSpec from_sections(const Polynomial& e, Matrix gram);
  /// Chart Z in C^{(N-k) x k} (column-major coordinates), value U(Z1)^* U(Z2).
  static KernelSpec universal_grassmann(int ambient, int rank);
  /// Constant M on C^dim. A non-PSD M is accepted and flagged as a pseudo-kernel.
  static KernelSpec constant(Matrix m, int dim);
  static KernelSpec user_hook(KernelFn fn, int dim, Index fiber_dim, Domain domain,
                              std::string name = "user_hook");

  const Variant& variant() const { return variant_; }
  const std::string& name() const { return name_; }
  int base_dim() const { return dim_; }
  Index fiber_dim() const { return n_; }
  const Domain& domain() const { return domain_; }
  /// True for constant kernels whose matrix is not positive semidefinite.
  bool pseudo() const { return pseudo_; }

  /// K(z, w), an n x n matrix. Throws DomainError outside the domain.
  Matrix eval(const ChartPoint& z, const ChartPoint& w) const;

 private:
  KernelSpec(Variant v, std::string name, int dim, Index n, Domain domain);

  Variant variant_;
  std::string name_;
  int dim_;
  Index n_;
  Domain domain_;
  bool pseudo_ = false;
};

/// Chart point of C^{(N-k) x k} from a column-major matrix and back.
ChartPoint grassmann_point(const Matrix& z);
Matrix grassmann_chart(const ChartPoint& p, int ambient, int rank);

/// Dual kernel K*(z, w) = conj(K(conj z, conj w)) on the conjugate domain: the
/// kernel of the dual bundle in the conjugate chart and dual fibers.
KernelSpec dual_kernel(const KernelSpec& spec);

/// Seeded points of the kernel domain, drawn uniformly from the box
/// |Re|, |Im| <= radius and rejected when outside.
std::vector<ChartPoint> sample_points(const KernelSpec& spec, std::size_t count,
                                      std::uint64_t seed, double radius = 0.9);

// ---------------------------------------------------------------------------
// Gram matrices and positivity.

struct GramMatrix {
  std::vector<ChartPoint> points;
  Index fiber_dim = 0;
  Matrix assembled;  // block (l, j) = K(t_l, t_j)

  std::size_t size() const { return points.size(); }
  Matrix block(std::size_t l, std::size_t j) const;
};

GramMatrix gram(const KernelSpec& spec, const std::vector<ChartPoint>& points);

struct PsdResult {
  double margin = 0.0;       // smallest eigenvalue of the Hermitianized assembly
  double hermiticity = 0.0;  // ||A - A^*||_max
  bool psd = false;          // margin >= -tol
};

/// Throws StructuralError when the assembly is not Hermitian within 1e-10 (relative).
PsdResult psd_check(const GramMatrix& g, double tol = 1e-10);

// ---------------------------------------------------------------------------
// RKHS inner product and finite-sample models.

/// A generator K_xi = K(., s) xi.
struct Generator {
  Vector xi;
  ChartPoint s;
};

/// <K_xi, K_eta> = (K(t, s) xi | eta), linear in the first slot.
Complex rkhs_inner(const KernelSpec& spec, const Generator& a, const Generator& b);

/// Span of finitely many generators with its Gram matrix W_{il} = <K_l, K_i>
/// factored spectrally as W = V diag(lambda) V^*. Inner products of span
/// elements are computed from the spectral features diag(sqrt lambda) V^* c.
class RkhsModel {
 public:
  RkhsModel(KernelSpec spec, std::vector<Generator> generators, double rank_tol = 1e-12);

  const KernelSpec& spec() const { return spec_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Matrix& gram() const { return w_; }
  /// Numerical rank of the Gram matrix (dimension of the finite-rank surrogate).
  Index rank() const { return features_.rows(); }

  /// Feature vector of the span element sum_l c_l K_l.
  Vector features(const Vector& c) const;
  /// <f, g> for f = sum c_l K_l, g = sum d_l K_l.
  Complex inner(const Vector& c, const Vector& d) const;
  /// Value f(t) of f = sum c_l K_l.
  Vector value(const Vector& c, const ChartPoint& t) const;

 private:
  KernelSpec spec_;
  std::vector<Generator> gens_;
  Matrix w_;
  Matrix features_;  // rank x L
};

/// |<f, K_eta@t> - (f(t) | eta)|, with the left side computed in the model
/// augmented by the generator (eta, t).
double reproducing_check(const RkhsModel& model, const Vector& c, const Generator& probe);

/// |<K_xi@s, K_eta@t> - (xi | K(s, t) eta)|, both sides evaluated separately.
double evaluation_adjoint_check(const KernelSpec& spec, const ChartPoint& s, const ChartPoint& t,
                                const Vector& xi, const Vector& eta);

// ---------------------------------------------------------------------------
// Admissibility.

struct Admissibility {
  bool invertible = false;
  double smallest_singular_value = 0.0;
  double norm = 0.0;  // spectral norm of K(s, s)
};

/// invertible iff sigma_min(K(s,s)) >= tau ||K(s,s)|| and K(s,s) != 0.
Admissibility admissibility(const KernelSpec& spec, const ChartPoint& s, double tau = 1e-10);

/// Four equivalent finite-dimensional statements about the point s:
/// (1) xi -> K_xi is injective (rank of stacked K(t_m, s) over a sample),
/// (2) K(s, s) invertible, (3) K(s, s) surjective (pivoted QR rank),
/// (4) ev_s onto the fiber (rank of stacked K(s, t_m)).
struct Lemma51Report {
  bool injective = false;
  bool invertible = false;
  bool surjective = false;
  bool evaluation_onto = false;
  Index injective_rank = 0;
  Index qr_rank = 0;
  Index evaluation_rank = 0;
  double smallest_singular_value = 0.0;

  bool consistent() const {
    return injective == invertible && invertible == surjective && surjective == evaluation_onto;
  }
};

Lemma51Report lemma51_consistency(const KernelSpec& spec, const ChartPoint& s,
                                  std::size_t sample_count = 12, std::uint64_t seed = 7,
                                  double tau = 1e-10);

}  // namespace bck::kernels
