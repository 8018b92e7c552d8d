#pragma once

// Herm/Symm/Skew correspondence for real-bilinear maps on C^d, the Griffiths
// form of a curvature, sampled positivity verdicts, and global generation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bck/chern.hpp"
#include "bck/forms.hpp"
#include "bck/kernels.hpp"

namespace bck::positivity {

using forms::Form2;
using Index = Eigen::Index;

/// Real-bilinear map C^d x C^d -> matrices stored by its values on the real
/// basis u_a (a = 0..2d-1, see real_axis).
class BilinearTable {
 public:
  BilinearTable(int dim, std::vector<Matrix> values);

  static BilinearTable probe(const forms::RealBilinearMap& f, int dim);
  static BilinearTable zero(int dim, Index rows, Index cols);

  int dim() const { return dim_; }
  const Matrix& at(int a, int b) const { return values_[index(a, b)]; }
  Matrix operator()(const Vector& v, const Vector& w) const;

  double max_norm() const;
  /// max ||T(a, b) - other(a, b)||
  double distance(const BilinearTable& other) const;

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a * 2 * dim_ + b); }

  int dim_;
  std::vector<Matrix> values_;
};

struct SesquiTriple {
  BilinearTable psi;
  BilinearTable omega;
  double hermiticity_defect = 0.0;  // max ||Psi(u_a,u_b)^* - Psi(u_b,u_a)||
};

/// psi = (Psi(v1,v2) + Psi(v2,v1))/2, omega = (Psi(v1,v2) - Psi(v2,v1))/(2i).
/// Rejects Psi whose probe defect exceeds tol (relative to the value scale).
SesquiTriple triple_split(const forms::RealBilinearMap& big_psi, int dim, double tol = 1e-12);

/// Psi(v1, v2) = -omega(v1, i v2) + i omega(v1, v2). Rejects omega outside Skew
/// (skew, invariant under (i., i.), self-adjoint values) beyond tol.
BilinearTable triple_join(const BilinearTable& omega, double tol = 1e-12);

/// Largest violation of the Skew conditions.
double skew_defect(const BilinearTable& omega);

// ---------------------------------------------------------------------------

struct GriffithsValue {
  Matrix g;                 // -i h Theta(x, i x)
  double hermiticity = 0.0; // ||G - G^*||_max
  double lambda_min = 0.0;  // of the Hermitian part
  Vector eigenvector;
};

/// G = -i h Theta(x, i x). Throws StructuralError when Theta is not (1,1)
/// within purity_tol or G is not Hermitian within herm_tol (both relative).
GriffithsValue griffiths_form(const Matrix& h, const Form2& theta, const Vector& x,
                              double purity_tol = 1e-5, double herm_tol = 1e-6);

/// Psi(x, y) = h (-i Theta(x, i y) - Theta(x, y)).
Matrix polarization(const Matrix& h, const Form2& theta, const Vector& x, const Vector& y);

/// Axes +-e_j, +-i e_j, then `count` seeded uniform points of the unit sphere.
std::vector<Vector> sample_directions(int dim, std::size_t count = 64, std::uint64_t seed = 0);

enum class Verdict { positive, nonnegative, indefinite };
std::string to_string(Verdict v);

struct GriffithsReport {
  struct Witness {
    std::size_t point = 0;
    std::size_t direction = 0;
    Vector z;
    Vector x;
    Vector eigenvector;
    double lambda = 0.0;
  };

  std::size_t points = 0;
  std::size_t directions = 0;
  std::vector<double> point_min;  // min over directions, per point
  double min_margin = 0.0;
  double max_hermiticity = 0.0;
  Verdict verdict = Verdict::nonnegative;
  Witness witness;
  std::string sampling_note;
};

using CurvatureField = std::function<Form2(const ChartPoint&)>;

/// Sweeps (z, x) pairs. Ties in the minimum go to the smallest
/// (point, direction) index pair, so the result does not depend on `threads`.
GriffithsReport griffiths_verdict(const chern::MetricField& h, const CurvatureField& theta,
                                  const std::vector<ChartPoint>& points,
                                  const std::vector<Vector>& directions, double pos_tol = 1e-6,
                                  double neg_tol = 1e-6, unsigned threads = 1);

// ---------------------------------------------------------------------------

struct GlobalGeneration {
  bool generated = false;
  double min_rank_margin = 0.0;  // min over points of sigma_min(E(z))
  std::optional<std::size_t> failing_point;
  double cr_residual = 0.0;
  std::optional<kernels::KernelSpec> kernel;  // E(z) E(w)^*
};

/// generated iff sigma_min(E(z)) >= 1e-10 ||E(z)|| at every point. Throws
/// NotHolomorphicError when the Cauchy-Riemann residual exceeds cr_tol.
GlobalGeneration global_generation_check(const forms::Field0& e,
                                         const std::vector<ChartPoint>& points,
                                         const Domain& dom, double cr_tol = 1e-6,
                                         const FdOptions& opts = {});

}  // namespace bck::positivity
