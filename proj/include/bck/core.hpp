#pragma once

// Shared numeric types for the bundle/kernel/curvature toolkit: chart points,
// chart domains, sampling grids, finite-difference policy and the error
// hierarchy used by every module.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bck {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto exit codes (config 2, domain 3, numeric 4).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or a finite-difference stencil node falls outside the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A structural property was violated (symmetry, skewness, type, purity).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The metric (or K(s,s)) is numerically singular at an evaluated point.
class SingularMetricError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// A holomorphy premise failed (Cauchy-Riemann residual above gate).
class NotHolomorphicError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// Non-finite values produced while evaluating a user map.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------

/// Coordinates z_1..z_d of a point in a chart of C^d.
class ChartPoint {
 public:
  explicit ChartPoint(Vector coords);
  ChartPoint(std::initializer_list<Complex> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vector& coords() const { return coords_; }
  Complex operator[](int j) const { return coords_(j); }

  ChartPoint shifted(const Vector& delta) const;
  ChartPoint conjugated() const;

 private:
  Vector coords_;
};

/// Open subset of C^d described by a membership predicate.
class Domain {
 public:
  using Predicate = std::function<bool(const ChartPoint&)>;

  Domain(int dim, Predicate contains, std::string name);

  static Domain whole(int dim);
  /// max_j |z_j| < radius
  static Domain polydisc(int dim, double radius);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  bool contains(const ChartPoint& z) const;
  /// z and every node z +- r u_a +- r u_b (u over the 2d real axes) lie inside.
  bool contains_with_margin(const ChartPoint& z, double r) const;
  void require(const ChartPoint& z, const char* what) const;

  /// Image of the domain under z -> conj(z).
  Domain conjugated() const;

 private:
  int dim_;
  Predicate contains_;
  std::string name_;
};

/// Finite-difference policy. Steps are multiplied by the per-axis scale.
struct FdOptions {
  double first_step = 1e-5;
  double second_step = 1e-4;
  bool richardson = false;
  std::vector<double> scale;  // one entry per complex axis; empty means 1

  double axis_scale(int complex_axis) const;
};

/// Rectangular sampling of a box in C^d. Real axes are ordered
/// (re z_1, im z_1, re z_2, im z_2, ...) and enumerated row-major, first
/// axis slowest.
class ChartGrid {
 public:
  ChartGrid(Vector lower, Vector upper, std::vector<int> resolution);

  int dim() const { return static_cast<int>(lower_.size()); }
  std::size_t size() const { return size_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  ChartPoint point(std::size_t index) const;
  std::vector<int> multi_index(std::size_t index) const;
  std::vector<ChartPoint> points() const;

 private:
  Vector lower_;
  Vector upper_;
  std::vector<int> resolution_;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Small matrix helpers shared across modules.

/// Largest entry modulus.
double max_abs(const Matrix& m);
/// ||m - m^*||_max
double hermiticity_defect(const Matrix& m);
Matrix hermitian_part(const Matrix& m);
bool all_finite(const Matrix& m);
/// Smallest singular value (0 for empty matrices).
double smallest_singular_value(const Matrix& m);
/// Smallest eigenvalue of the Hermitian part.
double smallest_eigenvalue(const Matrix& m);

/// Unit vector along real axis a in C^d: a = 2j gives e_j, a = 2j+1 gives i e_j.
Vector real_axis(int dim, int a);

}  // namespace bck
