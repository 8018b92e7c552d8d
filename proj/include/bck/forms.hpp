#pragma once

// Matrix-valued differential forms of degree <= 2 at a point of a chart in C^d,
// stored as coefficients on the dz / dzbar basis.
//
//   1-form:  alpha(v) = sum_j P_j v_j + sum_k Q_k conj(v_k)
//   2-form:  sum_{j<k} C20[j][k] dz_j^dz_k + sum_{k,j} R11[k][j] dzbar_k^dz_j
//            + sum_{j<k} C02[j][k] dzbar_j^dzbar_k
//
// with (a^b)(v, w) = a(v) b(w) - a(w) b(v) for scalar 1-forms. The (1,1) block is
// kept in dzbar^dz orientation, so the Bergman/Hardy disc curvature reads
// +nu / (1 - |z|^2)^2.

#include <functional>
#include <variant>
#include <vector>

#include "bck/core.hpp"

namespace bck::forms {

using Index = Eigen::Index;

class Form1 {
 public:
  Form1() = default;
  Form1(std::vector<Matrix> dz, std::vector<Matrix> dzbar);

  static Form1 zero(int dim, Index rows, Index cols);

  int dim() const { return static_cast<int>(dz_.size()); }
  Index rows() const { return dz_.empty() ? 0 : dz_.front().rows(); }
  Index cols() const { return dz_.empty() ? 0 : dz_.front().cols(); }

  const Matrix& dz(int j) const { return dz_[static_cast<std::size_t>(j)]; }
  Matrix& dz(int j) { return dz_[static_cast<std::size_t>(j)]; }
  const Matrix& dzbar(int k) const { return dzbar_[static_cast<std::size_t>(k)]; }
  Matrix& dzbar(int k) { return dzbar_[static_cast<std::size_t>(k)]; }

  /// Value on a tangent vector v in C^d.
  Matrix operator()(const Vector& v) const;

  Form1 type10() const;
  Form1 type01() const;
  /// Pointwise adjoint: (alpha^*)(v) = alpha(v)^*.
  Form1 adjoint() const;
  /// Applies f to every coefficient.
  Form1 map(const std::function<Matrix(const Matrix&)>& f) const;

  /// Largest Frobenius norm over coefficients.
  double norm() const;

  Form1& operator+=(const Form1& o);
  Form1& operator-=(const Form1& o);
  Form1& operator*=(Complex c);

 private:
  std::vector<Matrix> dz_;
  std::vector<Matrix> dzbar_;
};

Form1 operator+(Form1 a, const Form1& b);
Form1 operator-(Form1 a, const Form1& b);
Form1 operator*(Complex c, Form1 a);
Form1 operator*(double c, Form1 a);

class Form2 {
 public:
  Form2() = default;
  static Form2 zero(int dim, Index rows, Index cols);

  int dim() const { return dim_; }
  Index rows() const { return r11_.empty() ? 0 : r11_.front().rows(); }
  Index cols() const { return r11_.empty() ? 0 : r11_.front().cols(); }

  // Full d x d arrays; c20 and c02 are kept antisymmetric by set_*.
  const Matrix& c20(int j, int k) const { return c20_[at(j, k)]; }
  const Matrix& r11(int k, int j) const { return r11_[at(k, j)]; }
  Matrix& r11(int k, int j) { return r11_[at(k, j)]; }
  const Matrix& c02(int j, int k) const { return c02_[at(j, k)]; }
  void set_c20(int j, int k, const Matrix& m);
  void set_c02(int j, int k, const Matrix& m);

  /// Value on a pair of tangent vectors.
  Matrix operator()(const Vector& v, const Vector& w) const;

  Form2 type11() const;
  Form2 map(const std::function<Matrix(const Matrix&)>& f) const;

  double norm() const;
  /// ||C20|| + ||C02||, the defect from being of type (1,1).
  double pure_norm() const;

  Form2& operator+=(const Form2& o);
  Form2& operator-=(const Form2& o);
  Form2& operator*=(Complex c);

 private:
  std::size_t at(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(b);
  }

  int dim_ = 0;
  std::vector<Matrix> c20_;
  std::vector<Matrix> r11_;
  std::vector<Matrix> c02_;
};

Form2 operator+(Form2 a, const Form2& b);
Form2 operator-(Form2 a, const Form2& b);
Form2 operator*(Complex c, Form2 a);
Form2 operator*(double c, Form2 a);

/// A form of degree 0, 1 or 2 at one point.
using PointForm = std::variant<Matrix, Form1, Form2>;
int degree(const PointForm& f);

// ---------------------------------------------------------------------------
// Wedge products. `Multiply` is the bilinear pairing of values; operator
// composition by default (also covers operator acting on a column vector).

using Multiply = std::function<Matrix(const Matrix&, const Matrix&)>;
Matrix compose(const Matrix& a, const Matrix& b);

Form1 wedge(const Matrix& a, const Form1& b, const Multiply& mul = compose);
Form1 wedge(const Form1& a, const Matrix& b, const Multiply& mul = compose);
Form2 wedge(const Form1& a, const Form1& b, const Multiply& mul = compose);
Form2 wedge(const Matrix& a, const Form2& b, const Multiply& mul = compose);
Form2 wedge(const Form2& a, const Matrix& b, const Multiply& mul = compose);
/// Degree-dispatching wedge; throws StructuralError when p1 + p2 > 2.
PointForm wedge(const PointForm& a, const PointForm& b, const Multiply& mul = compose);

namespace detail {
/// 1-form wedge with the sign of the transposed term exposed; the standard
/// product uses cross_sign = -1. Only the self-test mutation uses +1.
Form2 wedge11(const Form1& a, const Form1& b, const Multiply& mul, double cross_sign);
}  // namespace detail

// ---------------------------------------------------------------------------
// (p,q) splitting of real-linear and real-bilinear maps.

using RealLinearMap = std::function<Matrix(const Vector&)>;
using RealBilinearMap = std::function<Matrix(const Vector&, const Vector&)>;

struct LinearSplit {
  Form1 holomorphic;      // C-linear part, only dz coefficients
  Form1 antiholomorphic;  // conjugate-linear part, only dzbar coefficients
  double reassembly_residual = 0.0;
};

/// T^(1,0) v = (T v - i T(i v)) / 2, T^(0,1) v = (T v + i T(i v)) / 2, probed on
/// e_j and i e_j.
LinearSplit split_linear(const RealLinearMap& t, int dim);

/// Splits a skew real-bilinear map into its (2,0), (1,1), (0,2) coefficients.
/// Rejects maps whose probe asymmetry exceeds skew_tol (relative to the value
/// scale) with a StructuralError.
Form2 split_bilinear(const RealBilinearMap& phi, int dim, double skew_tol = 1e-12);

// ---------------------------------------------------------------------------
// Form fields and derivatives.

using Field0 = std::function<Matrix(const ChartPoint&)>;
using Field1 = std::function<Form1(const ChartPoint&)>;

/// df for a function field.
Form1 exterior_derivative(const Field0& f, const ChartPoint& z, const Domain& dom,
                          const FdOptions& opts = {});
/// d sigma for a 1-form field, from derivatives of its coefficient fields.
Form2 exterior_derivative(const Field1& sigma, const ChartPoint& z, const Domain& dom,
                          const FdOptions& opts = {});
/// d sigma evaluated on (v, w) directly as sigma'(v)(w) - sigma'(w)(v), with
/// directional central differences; independent of the coefficient route.
Matrix exterior_derivative_direct(const Field1& sigma, const ChartPoint& z, const Vector& v,
                                  const Vector& w, const Domain& dom, const FdOptions& opts = {});

struct DelDelbar {
  Form1 del;
  Form1 delbar;
};
DelDelbar del_delbar(const Field0& f, const ChartPoint& z, const Domain& dom,
                     const FdOptions& opts = {});

/// (d - dbar) and dbar of a 1-form field: dbar collects the dzbar-derivatives of
/// the dz coefficients (into R11) and of the dzbar coefficients (into C02).
Form2 del(const Field1& sigma, const ChartPoint& z, const Domain& dom, const FdOptions& opts = {});
Form2 delbar(const Field1& sigma, const ChartPoint& z, const Domain& dom,
             const FdOptions& opts = {});

/// max over points of ||dbar f||. Throws StructuralError on an empty point set.
double cauchy_riemann_residual(const Field0& f, const std::vector<ChartPoint>& points,
                               const Domain& dom, const FdOptions& opts = {});
double cauchy_riemann_residual(const Field0& f, const ChartGrid& grid, const Domain& dom,
                               const FdOptions& opts = {});

}  // namespace bck::forms
