#pragma once

// Hermitian metrics on trivialized bundles, their Chern connections and
// curvatures, and the compatibility / Hilbert-Schmidt / subbundle / dual
// identities built on them.

#include <optional>
#include <string>

#include "bck/core.hpp"
#include "bck/forms.hpp"
#include "bck/kernels.hpp"

namespace bck::chern {

using forms::Form1;
using forms::Form2;
using Index = Eigen::Index;

/// z -> h(z), Hermitian positive definite. Evaluation checks both properties
/// and returns the Hermitian part.
class MetricField {
 public:
  using Fn = std::function<Matrix(const ChartPoint&)>;

  MetricField(Fn h, Domain domain, Index fiber_dim);

  Matrix operator()(const ChartPoint& z) const;
  const Domain& domain() const { return domain_; }
  Index fiber_dim() const { return n_; }
  int dim() const { return domain_.dim(); }

 private:
  Fn h_;
  Domain domain_;
  Index n_;
};

/// h(z) = K(z, z). Non-admissible points raise SingularMetricError.
MetricField metric_from_kernel(const kernels::KernelSpec& spec);

/// conj(K(z, z)): the dual-frame form of the quotient metric K(z,z)^{-1} under
/// which the adjoint evaluation maps are isometries. Equal to metric_from_kernel
/// for line bundles; for rank >= 2 the two can differ in Griffiths sign.
MetricField evaluation_dual_metric(const kernels::KernelSpec& spec);

/// A = h^{-1} dh^(1,0): dz coefficients h^{-1} d/dz_j h, dzbar coefficients 0.
Form1 chern_connection(const MetricField& h, const ChartPoint& z, const FdOptions& opts = {});
forms::Field1 connection_field(const MetricField& h, const FdOptions& opts = {});

enum class CurvatureMethod { nested_fd, analytic_expansion };
std::string to_string(CurvatureMethod m);
CurvatureMethod curvature_method_from_string(const std::string& s);

struct Curvature {
  Form2 theta;
  double purity = 0.0;  // ||C20|| + ||C02|| of the computed form
};

/// nested_fd: Theta = dA + A^A with A from chern_connection and an outer
///   difference layer at the second-order step.
/// analytic_expansion: R11[k][j] = h^{-1} dbar_k d_j h - h^{-1} (dbar_k h) h^{-1} (d_j h)
///   from mixed second differences of h.
Curvature curvature(const MetricField& h, const ChartPoint& z, const FdOptions& opts = {},
                    CurvatureMethod method = CurvatureMethod::nested_fd);

/// Curvature of an arbitrary connection field: dA + A^A.
Form2 connection_curvature(const forms::Field1& a, const ChartPoint& z, const Domain& dom,
                           const FdOptions& opts = {});

struct Compatibility {
  double metric = 0.0;     // max over real axes u of ||dh(u) - h A(u) - A(u)^* h||
  double holo = 0.0;       // ||A^(0,1)||
  double structure = 0.0;  // ||del A + A^A||
};

Compatibility compatibility_residuals(const MetricField& h, const ChartPoint& z,
                                      const FdOptions& opts = {});
/// Same residuals for an arbitrary connection field a.
Compatibility compatibility_residuals(const MetricField& h, const forms::Field1& a,
                                      const ChartPoint& z, const FdOptions& opts = {});

struct CovariantDerivative {
  Form1 nabla;                        // d sigma + A ^ sigma
  double holo_section_residual = 0.0; // ||(nabla sigma)^(0,1)||
  double nabla2_residual = 0.0;       // ||nabla(nabla sigma) - Theta ^ sigma||
};

/// sigma is a section field with n x 1 (or n x m) values.
CovariantDerivative covariant_derivative(const forms::Field1& a, const forms::Field0& sigma,
                                         const ChartPoint& z, const Domain& dom,
                                         const FdOptions& opts = {});

/// Chern connection of H(z) S = h2 S h1^{-1} on n2 x n1 matrices, computed as a
/// superoperator (column-major vec) and compared with S -> A2 S - S A1.
double hs_connection_check(const MetricField& h1, const MetricField& h2, const ChartPoint& z,
                           const FdOptions& opts = {});

struct SubbundleSplit {
  Matrix frame;         // adapted h-unitary frame at z: first k columns span F(z)
  std::vector<int> complement;  // standard basis vectors completing the frame
  Form1 omega;          // ambient connection in the adapted frame
  Form1 beta;           // lower-left (n-k) x k block of omega
  Form2 theta_ambient;  // ambient curvature in the adapted frame
  Form2 theta1;         // curvature of F^* h F, moved to the unitary frame
  Form2 theta2;         // curvature of the lower-right block of omega
  double beta_antiholomorphic = 0.0;  // ||beta^(0,1)||
  double residual11 = 0.0;  // ||Theta_block11 - (Theta1 - beta^* ^ beta)||
  double residual22 = 0.0;  // ||Theta_block22 - (Theta2 - beta ^ beta^*)||
};

SubbundleSplit subbundle_split(const MetricField& h, const forms::Field0& frame,
                               const ChartPoint& z, const FdOptions& opts = {},
                               CurvatureMethod method = CurvatureMethod::nested_fd);

struct DualCurvature {
  Form2 theta;       // of K at z
  Form2 theta_dual;  // of K* at conj(z), pulled back to the z chart
  double residual = 0.0;
};

/// Theta* from the dual kernel in the conjugate chart, pulled back through
/// zeta = conj(z) and compared coefficientwise with -(h Theta h^{-1})^T
/// (which is -Theta for scalar bundles).
DualCurvature dual_curvature_check(const kernels::KernelSpec& spec, const ChartPoint& z,
                                   const FdOptions& opts = {},
                                   CurvatureMethod method = CurvatureMethod::nested_fd);

/// Frame change g: metric g^* h g. Used by covariance tests and the CLI.
MetricField transform_metric(const MetricField& h, const forms::Field0& g);

}  // namespace bck::chern
