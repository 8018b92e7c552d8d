#include "bck/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bck/parallel.hpp"

namespace bck::positivity {

namespace {

// i * u_a = sign * u_{axis}
std::pair<double, int> rotate(int a) {
  if (a % 2 == 0) return {1.0, a + 1};
  return {-1.0, a - 1};
}

std::vector<double> real_coords(const Vector& v) {
  std::vector<double> x(static_cast<std::size_t>(2 * v.size()));
  for (Index j = 0; j < v.size(); ++j) {
    x[static_cast<std::size_t>(2 * j)] = v(j).real();
    x[static_cast<std::size_t>(2 * j + 1)] = v(j).imag();
  }
  return x;
}

}  // namespace

BilinearTable::BilinearTable(int dim, std::vector<Matrix> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ < 1) throw StructuralError("bilinear table dimension must be >= 1");
  if (values_.size() != static_cast<std::size_t>(4 * dim_ * dim_)) {
    throw StructuralError("bilinear table needs (2d)^2 values");
  }
  for (const auto& m : values_) {
    if (m.rows() != values_[0].rows() || m.cols() != values_[0].cols()) {
      throw StructuralError("bilinear table values differ in shape");
    }
  }
}

BilinearTable BilinearTable::probe(const forms::RealBilinearMap& f, int dim) {
  std::vector<Matrix> v;
  for (int a = 0; a < 2 * dim; ++a) {
    for (int b = 0; b < 2 * dim; ++b) {
      Matrix m = f(real_axis(dim, a), real_axis(dim, b));
      if (!m.allFinite()) throw EvaluationError("bilinear map returned non-finite values");
      v.push_back(std::move(m));
    }
  }
  return BilinearTable(dim, std::move(v));
}

BilinearTable BilinearTable::zero(int dim, Index rows, Index cols) {
  return BilinearTable(dim, std::vector<Matrix>(static_cast<std::size_t>(4 * dim * dim),
                                                Matrix::Zero(rows, cols)));
}

Matrix BilinearTable::operator()(const Vector& v, const Vector& w) const {
  if (v.size() != dim_ || w.size() != dim_) {
    throw StructuralError("bilinear table evaluated on vectors of wrong dimension");
  }
  const auto x = real_coords(v);
  const auto y = real_coords(w);
  Matrix out = Matrix::Zero(values_[0].rows(), values_[0].cols());
  for (int a = 0; a < 2 * dim_; ++a) {
    if (x[static_cast<std::size_t>(a)] == 0.0) continue;
    for (int b = 0; b < 2 * dim_; ++b) {
      out += (x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)]) * at(a, b);
    }
  }
  return out;
}

double BilinearTable::max_norm() const {
  double n = 0.0;
  for (const auto& m : values_) n = std::max(n, m.norm());
  return n;
}

double BilinearTable::distance(const BilinearTable& other) const {
  if (other.dim_ != dim_) throw StructuralError("bilinear tables differ in dimension");
  double n = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    n = std::max(n, (values_[i] - other.values_[i]).norm());
  }
  return n;
}

// ---------------------------------------------------------------------------

SesquiTriple triple_split(const forms::RealBilinearMap& big_psi, int dim, double tol) {
  const BilinearTable t = BilinearTable::probe(big_psi, dim);
  const int n = 2 * dim;
  double defect = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      defect = std::max(defect, (t.at(a, b).adjoint() - t.at(b, a)).norm());
    }
  }
  if (defect > tol * std::max(1.0, t.max_norm())) {
    std::ostringstream msg;
    msg << "triple_split: map is not Hermitian, measured defect " << defect;
    throw StructuralError(msg.str());
  }
  std::vector<Matrix> psi;
  std::vector<Matrix> omega;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      psi.push_back(0.5 * (t.at(a, b) + t.at(b, a)));
      omega.push_back((t.at(a, b) - t.at(b, a)) / (2.0 * kI));
    }
  }
  return {BilinearTable(dim, std::move(psi)), BilinearTable(dim, std::move(omega)), defect};
}

double skew_defect(const BilinearTable& omega) {
  const int n = 2 * omega.dim();
  double defect = 0.0;
  for (int a = 0; a < n; ++a) {
    const auto [sa, ra] = rotate(a);
    for (int b = 0; b < n; ++b) {
      const auto [sb, rb] = rotate(b);
      const Matrix& w = omega.at(a, b);
      defect = std::max({defect, (w + omega.at(b, a)).norm(),
                         (sa * sb * omega.at(ra, rb) - w).norm(), (w.adjoint() - w).norm()});
    }
  }
  return defect;
}

BilinearTable triple_join(const BilinearTable& omega, double tol) {
  const double defect = skew_defect(omega);
  if (defect > tol * std::max(1.0, omega.max_norm())) {
    std::ostringstream msg;
    msg << "triple_join: map is not in Skew, measured defect " << defect;
    throw StructuralError(msg.str());
  }
  const int n = 2 * omega.dim();
  std::vector<Matrix> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto [sb, rb] = rotate(b);
      out.push_back(-sb * omega.at(a, rb) + kI * omega.at(a, b));
    }
  }
  return BilinearTable(omega.dim(), std::move(out));
}

// ---------------------------------------------------------------------------

GriffithsValue griffiths_form(const Matrix& h, const Form2& theta, const Vector& x,
                              double purity_tol, double herm_tol) {
  const double purity = theta.pure_norm();
  if (purity > purity_tol * std::max(1.0, theta.norm())) {
    std::ostringstream msg;
    msg << "griffiths_form: curvature is not of type (1,1), pure part " << purity;
    throw StructuralError(msg.str());
  }
  GriffithsValue out;
  out.g = -kI * h * theta(x, kI * x);
  out.hermiticity = hermiticity_defect(out.g);
  if (out.hermiticity > herm_tol * std::max(1.0, max_abs(out.g))) {
    std::ostringstream msg;
    msg << "griffiths_form: Griffiths form is not Hermitian, defect " << out.hermiticity;
    throw StructuralError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(out.g));
  out.lambda_min = es.eigenvalues()(0);
  out.eigenvector = es.eigenvectors().col(0);
  return out;
}

Matrix polarization(const Matrix& h, const Form2& theta, const Vector& x, const Vector& y) {
  return h * (-kI * theta(x, kI * y) - theta(x, y));
}

std::vector<Vector> sample_directions(int dim, std::size_t count, std::uint64_t seed) {
  if (dim < 1) throw StructuralError("sample_directions: dimension must be >= 1");
  std::vector<Vector> out;
  for (int j = 0; j < dim; ++j) {
    const Vector e = real_axis(dim, 2 * j);
    for (Complex c : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
      out.push_back(c * e);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(dim);
    for (int j = 0; j < dim; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      v(j) = Complex(re, im);
    }
    out.push_back(v / v.norm());
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::positive:
      return "positive";
    case Verdict::nonnegative:
      return "nonnegative";
    case Verdict::indefinite:
      return "indefinite";
  }
  return "unknown";
}

GriffithsReport griffiths_verdict(const chern::MetricField& h, const CurvatureField& theta,
                                  const std::vector<ChartPoint>& points,
                                  const std::vector<Vector>& directions, double pos_tol,
                                  double neg_tol, unsigned threads) {
  if (points.empty()) throw StructuralError("griffiths_verdict: no base points");
  if (directions.empty()) throw StructuralError("griffiths_verdict: no directions");

  struct PointResult {
    double lambda = 0.0;
    std::size_t direction = 0;
    Vector eigenvector;
    double hermiticity = 0.0;
  };
  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const Matrix hz = h(points[i]);
    const Form2 th = theta(points[i]);
    PointResult r;
    for (std::size_t k = 0; k < directions.size(); ++k) {
      const GriffithsValue g = griffiths_form(hz, th, directions[k]);
      r.hermiticity = std::max(r.hermiticity, g.hermiticity);
      if (k == 0 || g.lambda_min < r.lambda) {
        r.lambda = g.lambda_min;
        r.direction = k;
        r.eigenvector = g.eigenvector;
      }
    }
    results[i] = std::move(r);
  });

  GriffithsReport rep;
  rep.points = points.size();
  rep.directions = directions.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const PointResult& r = results[i];
    rep.point_min.push_back(r.lambda);
    rep.max_hermiticity = std::max(rep.max_hermiticity, r.hermiticity);
    if (i == 0 || r.lambda < rep.min_margin) {
      rep.min_margin = r.lambda;
      rep.witness = {i, r.direction, points[i].coords(), directions[r.direction], r.eigenvector,
                     r.lambda};
    }
  }
  if (rep.min_margin > pos_tol) {
    rep.verdict = Verdict::positive;
  } else if (rep.min_margin >= -neg_tol) {
    rep.verdict = Verdict::nonnegative;
  } else {
    rep.verdict = Verdict::indefinite;
  }
  std::ostringstream note;
  note << "positivity checked on " << directions.size()
       << " sampled unit directions per point; a sampled verdict can miss negative directions";
  rep.sampling_note = note.str();
  return rep;
}

// ---------------------------------------------------------------------------

GlobalGeneration global_generation_check(const forms::Field0& e,
                                         const std::vector<ChartPoint>& points,
                                         const Domain& dom, double cr_tol,
                                         const FdOptions& opts) {
  if (points.empty()) throw StructuralError("global_generation_check: no points");
  GlobalGeneration out;
  out.cr_residual = forms::cauchy_riemann_residual(e, points, dom, opts);
  if (out.cr_residual > cr_tol) {
    std::ostringstream msg;
    msg << "section matrix is not holomorphic (Cauchy-Riemann residual " << out.cr_residual << ")";
    throw NotHolomorphicError(msg.str());
  }
  out.generated = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Matrix ez = e(points[i]);
    double smin = 0.0;
    double norm = 0.0;
    if (ez.rows() <= ez.cols()) {
      Eigen::JacobiSVD<Matrix> svd(ez);
      const auto& s = svd.singularValues();
      norm = s(0);
      smin = s(s.size() - 1);
    }
    if (i == 0 || smin < out.min_rank_margin) out.min_rank_margin = smin;
    const bool ok = norm > 0.0 && smin >= 1e-10 * norm;
    if (!ok && out.generated) {
      out.generated = false;
      out.failing_point = i;
    }
  }
  const Matrix e0 = e(points.front());
  out.kernel = kernels::KernelSpec::from_sections(e, Matrix::Identity(e0.cols(), e0.cols()),
                                                  points.front().dim(), e0.rows());
  return out;
}

}  // namespace bck::positivity
