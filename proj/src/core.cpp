#include "bck/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bck {

ChartPoint::ChartPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) {
    throw StructuralError("chart point needs at least one coordinate");
  }
  if (!coords_.allFinite()) {
    throw EvaluationError("chart point has non-finite coordinates");
  }
}

ChartPoint::ChartPoint(std::initializer_list<Complex> coords)
    : ChartPoint([&] {
        Vector v(static_cast<Eigen::Index>(coords.size()));
        Eigen::Index j = 0;
        for (const Complex& c : coords) v(j++) = c;
        return v;
      }()) {}

ChartPoint ChartPoint::shifted(const Vector& delta) const {
  return ChartPoint(coords_ + delta);
}

ChartPoint ChartPoint::conjugated() const { return ChartPoint(coords_.conjugate()); }

// ---------------------------------------------------------------------------

Domain::Domain(int dim, Predicate contains, std::string name)
    : dim_(dim), contains_(std::move(contains)), name_(std::move(name)) {
  if (dim_ < 1) throw StructuralError("domain dimension must be >= 1");
}

Domain Domain::whole(int dim) {
  return Domain(dim, [](const ChartPoint&) { return true; }, "C^" + std::to_string(dim));
}

Domain Domain::polydisc(int dim, double radius) {
  std::ostringstream name;
  name << "polydisc(r=" << radius << ")";
  return Domain(
      dim,
      [radius](const ChartPoint& z) {
        return z.coords().cwiseAbs().maxCoeff() < radius;
      },
      name.str());
}

bool Domain::contains(const ChartPoint& z) const {
  return z.dim() == dim_ && contains_(z);
}

bool Domain::contains_with_margin(const ChartPoint& z, double r) const {
  if (!contains(z)) return false;
  if (r <= 0.0) return true;
  const int n = 2 * dim_;
  for (int a = 0; a < n; ++a) {
    const Vector ua = real_axis(dim_, a);
    for (double sa : {-1.0, 1.0}) {
      if (!contains(z.shifted(sa * r * ua))) return false;
      for (int b = a + 1; b < n; ++b) {
        const Vector ub = real_axis(dim_, b);
        for (double sb : {-1.0, 1.0}) {
          if (!contains(z.shifted(r * (sa * ua + sb * ub)))) return false;
        }
      }
    }
  }
  return true;
}

void Domain::require(const ChartPoint& z, const char* what) const {
  if (!contains(z)) {
    std::ostringstream msg;
    msg << what << ": point (";
    for (int j = 0; j < z.dim(); ++j) {
      msg << (j ? ", " : "") << z[j].real() << (z[j].imag() < 0 ? "" : "+") << z[j].imag() << "i";
    }
    msg << ") outside domain " << name_;
    throw DomainError(msg.str());
  }
}

Domain Domain::conjugated() const {
  Predicate inner = contains_;
  return Domain(
      dim_, [inner](const ChartPoint& z) { return inner(z.conjugated()); },
      "conj(" + name_ + ")");
}

double FdOptions::axis_scale(int complex_axis) const {
  if (scale.empty()) return 1.0;
  if (complex_axis < 0 || complex_axis >= static_cast<int>(scale.size())) {
    throw StructuralError("finite-difference scale has fewer entries than chart axes");
  }
  return scale[static_cast<std::size_t>(complex_axis)];
}

// ---------------------------------------------------------------------------

ChartGrid::ChartGrid(Vector lower, Vector upper, std::vector<int> resolution)
    : lower_(std::move(lower)), upper_(std::move(upper)), resolution_(std::move(resolution)) {
  const int d = static_cast<int>(lower_.size());
  if (d < 1 || upper_.size() != lower_.size()) {
    throw StructuralError("grid corners must be non-empty and of equal dimension");
  }
  if (resolution_.size() == 1) resolution_.assign(static_cast<std::size_t>(2 * d), resolution_[0]);
  if (static_cast<int>(resolution_.size()) != 2 * d) {
    throw StructuralError("grid resolution needs one entry per real axis (2d)");
  }
  size_ = 1;
  for (int r : resolution_) {
    if (r < 1) throw StructuralError("grid resolution entries must be >= 1");
    size_ *= static_cast<std::size_t>(r);
  }
  if (!lower_.allFinite() || !upper_.allFinite()) {
    throw EvaluationError("grid corners must be finite");
  }
}

std::vector<int> ChartGrid::multi_index(std::size_t index) const {
  std::vector<int> idx(resolution_.size());
  for (std::size_t a = resolution_.size(); a-- > 0;) {
    const auto r = static_cast<std::size_t>(resolution_[a]);
    idx[a] = static_cast<int>(index % r);
    index /= r;
  }
  return idx;
}

ChartPoint ChartGrid::point(std::size_t index) const {
  const auto idx = multi_index(index);
  const int d = dim();
  Vector z(d);
  auto coord = [&](int a, double lo, double hi) {
    const int r = resolution_[static_cast<std::size_t>(a)];
    if (r == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(idx[static_cast<std::size_t>(a)]) / (r - 1);
  };
  for (int j = 0; j < d; ++j) {
    const double re = coord(2 * j, lower_(j).real(), upper_(j).real());
    const double im = coord(2 * j + 1, lower_(j).imag(), upper_(j).imag());
    z(j) = Complex(re, im);
  }
  return ChartPoint(z);
}

std::vector<ChartPoint> ChartGrid::points() const {
  std::vector<ChartPoint> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(point(i));
  return out;
}

// ---------------------------------------------------------------------------

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  // Rank-deficiency in the wide/tall sense: count min(rows, cols) values.
  return s(s.size() - 1);
}

double smallest_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Vector real_axis(int dim, int a) {
  Vector v = Vector::Zero(dim);
  v(a / 2) = (a % 2 == 0) ? Complex(1.0, 0.0) : kI;
  return v;
}

}  // namespace bck
