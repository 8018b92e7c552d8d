#include "bck/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <type_traits>

namespace bck::kernels {

namespace {

Index svd_rank(const Matrix& m, double tau) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > tau * s(0)) ++r;
  }
  return r;
}

void require_point(const KernelSpec& spec, const ChartPoint& z) {
  if (z.dim() != spec.base_dim()) {
    throw StructuralError("kernel " + spec.name() + ": point has dimension " +
                          std::to_string(z.dim()) + ", expected " +
                          std::to_string(spec.base_dim()));
  }
  spec.domain().require(z, "kernel evaluation");
}

Matrix grassmann_frame(const ChartPoint& p, int ambient, int rank) {
  const Matrix z = grassmann_chart(p, ambient, rank);
  Matrix f(ambient, rank);
  f.topRows(rank) = Matrix::Identity(rank, rank);
  f.bottomRows(ambient - rank) = z;
  return gram_schmidt(f, Matrix::Identity(ambient, ambient)).q;
}

}  // namespace

// ---------------------------------------------------------------------------

QrFactors gram_schmidt(const Matrix& columns, const Matrix& metric) {
  const Index n = columns.rows();
  const Index k = columns.cols();
  if (metric.rows() != n || metric.cols() != n) {
    throw StructuralError("gram_schmidt: metric shape does not match the columns");
  }
  QrFactors out{Matrix::Zero(n, k), Matrix::Zero(k, k)};
  auto inner = [&](const Vector& x, const Vector& y) { return (y.adjoint() * metric * x)(0, 0); };
  for (Index c = 0; c < k; ++c) {
    Vector v = columns.col(c);
    const double original = std::sqrt(std::max(0.0, inner(v, v).real()));
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < c; ++i) {
        const Complex r = inner(v, out.q.col(i));
        v -= r * out.q.col(i);
        out.r(i, c) += r;
      }
    }
    const double norm = std::sqrt(std::max(0.0, inner(v, v).real()));
    if (!(norm > 1e-12 * std::max(original, 1e-300))) {
      throw StructuralError("gram_schmidt: columns are linearly dependent (column " +
                            std::to_string(c) + ")");
    }
    out.q.col(c) = v / norm;
    out.r(c, c) = norm;
  }
  return out;
}

Subspace::Subspace(const Matrix& basis) {
  if (basis.cols() < 1 || basis.rows() < basis.cols()) {
    throw StructuralError("subspace basis must have 1 <= k <= N columns");
  }
  u_ = gram_schmidt(basis, Matrix::Identity(basis.rows(), basis.rows())).q;
}

Subspace Subspace::from_chart(const Matrix& z) {
  const Index k = z.cols();
  Matrix f(z.rows() + k, k);
  f.topRows(k) = Matrix::Identity(k, k);
  f.bottomRows(z.rows()) = z;
  return Subspace(f);
}

Matrix universal_kernel(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim() || s1.rank() != s2.rank()) {
    throw StructuralError("universal_kernel: subspaces differ in ambient dimension or rank");
  }
  return s1.basis().adjoint() * s2.basis();
}

ChartPoint grassmann_point(const Matrix& z) {
  return ChartPoint(Vector(Eigen::Map<const Vector>(z.data(), z.size())));
}

Matrix grassmann_chart(const ChartPoint& p, int ambient, int rank) {
  if (p.dim() != (ambient - rank) * rank) {
    throw StructuralError("Grassmann chart point has the wrong dimension");
  }
  return Eigen::Map<const Matrix>(p.coords().data(), ambient - rank, rank);
}

// ---------------------------------------------------------------------------

KernelSpec::KernelSpec(Variant v, std::string name, int dim, Index n, Domain domain)
    : variant_(std::move(v)), name_(std::move(name)), dim_(dim), n_(n), domain_(std::move(domain)) {
  if (dim_ < 1 || n_ < 1) throw StructuralError("kernel base and fiber dimensions must be >= 1");
}

KernelSpec KernelSpec::disc_power(double nu) {
  if (!std::isfinite(nu) || nu < 1.0) {
    throw StructuralError("disc_power exponent must satisfy nu >= 1");
  }
  Domain disc(1, [](const ChartPoint& z) { return std::norm(z[0]) < 1.0; }, "unit disc");
  std::ostringstream name;
  name << "disc_power(nu=" << nu << ")";
  return KernelSpec(DiscPower{nu}, name.str(), 1, 1, disc);
}

KernelSpec KernelSpec::from_sections(SectionField e, Matrix gram, int dim, Index fiber_dim,
                                     std::optional<Polynomial> poly) {
  if (!e) throw StructuralError("from_sections needs a section field");
  if (gram.rows() != gram.cols() || gram.rows() < 1) {
    throw StructuralError("from_sections: Gram matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, max_abs(gram));
  if (hermiticity_defect(gram) > 1e-12 * scale) {
    throw StructuralError("from_sections: Gram matrix is not Hermitian");
  }
  gram = hermitian_part(gram);
  if (smallest_eigenvalue(gram) <= 1e-14 * scale) {
    throw StructuralError("from_sections: Gram matrix is not positive definite");
  }
  FromSections fs{std::move(e), std::move(gram), std::move(poly)};
  return KernelSpec(std::move(fs), "from_sections", dim, fiber_dim, Domain::whole(dim));
}

KernelSpec KernelSpec::from_sections(const Polynomial& e, Matrix gram) {
  if (e.cols() != gram.rows()) {
    throw StructuralError("from_sections: section count differs from Gram size");
  }
  Polynomial copy = e;
  return from_sections([copy](const ChartPoint& z) { return copy(z); }, std::move(gram), e.dim(),
                       e.rows(), e);
}

KernelSpec KernelSpec::universal_grassmann(int ambient, int rank) {
  if (rank < 1 || rank >= ambient) {
    throw StructuralError("universal_grassmann needs 1 <= k < N");
  }
  const int d = (ambient - rank) * rank;
  std::ostringstream name;
  name << "universal_grassmann(N=" << ambient << ",k=" << rank << ")";
  return KernelSpec(UniversalGrassmann{ambient, rank}, name.str(), d, rank, Domain::whole(d));
}

KernelSpec KernelSpec::constant(Matrix m, int dim) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw StructuralError("constant kernel needs a square non-empty matrix");
  }
  if (!m.allFinite()) throw EvaluationError("constant kernel matrix is not finite");
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > 1e-12 * scale) {
    throw StructuralError("constant kernel matrix is not Hermitian");
  }
  const Index n = m.rows();
  const bool pseudo = smallest_eigenvalue(m) < -1e-12 * scale;
  KernelSpec k(Constant{hermitian_part(m)}, pseudo ? "constant(pseudo)" : "constant", dim, n,
               Domain::whole(dim));
  k.pseudo_ = pseudo;
  return k;
}

KernelSpec KernelSpec::user_hook(KernelFn fn, int dim, Index fiber_dim, Domain domain,
                                 std::string name) {
  if (!fn) throw StructuralError("user_hook needs a kernel function");
  if (domain.dim() != dim) throw StructuralError("user_hook domain dimension mismatch");
  return KernelSpec(UserHook{std::move(fn)}, std::move(name), dim, fiber_dim, std::move(domain));
}

Matrix KernelSpec::eval(const ChartPoint& z, const ChartPoint& w) const {
  require_point(*this, z);
  require_point(*this, w);
  Matrix out = std::visit(
      [&](const auto& v) -> Matrix {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiscPower>) {
          const Complex base = 1.0 - z[0] * std::conj(w[0]);
          return Matrix::Constant(1, 1, std::pow(base, -v.nu));
        } else if constexpr (std::is_same_v<T, FromSections>) {
          const Matrix ez = v.sections(z);
          const Matrix ew = v.sections(w);
          if (ez.rows() != n_ || ez.cols() != v.gram.rows() || ew.rows() != n_ ||
              ew.cols() != v.gram.rows()) {
            throw StructuralError("from_sections: section matrix has the wrong shape");
          }
          return ez * v.gram.llt().solve(Matrix(ew.adjoint()));
        } else if constexpr (std::is_same_v<T, UniversalGrassmann>) {
          return grassmann_frame(z, v.ambient, v.rank).adjoint() *
                 grassmann_frame(w, v.ambient, v.rank);
        } else if constexpr (std::is_same_v<T, Constant>) {
          return v.value;
        } else {
          return v.fn(z, w);
        }
      },
      variant_);
  if (out.rows() != n_ || out.cols() != n_) {
    throw StructuralError("kernel " + name_ + " returned a matrix of the wrong shape");
  }
  if (!out.allFinite()) throw EvaluationError("kernel " + name_ + " returned non-finite values");
  return out;
}

KernelSpec dual_kernel(const KernelSpec& spec) {
  const int d = spec.base_dim();
  const Index n = spec.fiber_dim();
  return std::visit(
      [&](const auto& v) -> KernelSpec {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiscPower>) {
          // Real Taylor coefficients: the closed form is its own conjugate.
          return KernelSpec::disc_power(v.nu);
        } else if constexpr (std::is_same_v<T, FromSections>) {
          if (v.polynomial) return KernelSpec::from_sections(v.polynomial->conjugated(), v.gram.conjugate());
          SectionField e = v.sections;
          return KernelSpec::from_sections(
              [e](const ChartPoint& z) { return Matrix(e(z.conjugated()).conjugate()); },
              v.gram.conjugate(), d, n);
        } else if constexpr (std::is_same_v<T, UniversalGrassmann>) {
          // Orthonormalization commutes with conjugation, so U(conj Z) = conj U(Z).
          return KernelSpec::universal_grassmann(v.ambient, v.rank);
        } else if constexpr (std::is_same_v<T, Constant>) {
          return KernelSpec::constant(v.value.conjugate(), d);
        } else {
          KernelFn f = v.fn;
          return KernelSpec::user_hook(
              [f](const ChartPoint& z, const ChartPoint& w) {
                return Matrix(f(z.conjugated(), w.conjugated()).conjugate());
              },
              d, n, spec.domain().conjugated(), "dual(" + spec.name() + ")");
        }
      },
      spec.variant());
}

std::vector<ChartPoint> sample_points(const KernelSpec& spec, std::size_t count,
                                      std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  const int d = spec.base_dim();
  std::vector<ChartPoint> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) {
      throw DomainError("sample_points: could not draw points inside " + spec.domain().name());
    }
    Vector z(d);
    for (int j = 0; j < d; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      z(j) = Complex(re, im);
    }
    ChartPoint p(z);
    if (spec.domain().contains(p)) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------

Matrix GramMatrix::block(std::size_t l, std::size_t j) const {
  return assembled.block(static_cast<Index>(l) * fiber_dim, static_cast<Index>(j) * fiber_dim,
                         fiber_dim, fiber_dim);
}

GramMatrix gram(const KernelSpec& spec, const std::vector<ChartPoint>& points) {
  if (points.empty()) throw StructuralError("gram: no points");
  const Index n = spec.fiber_dim();
  const auto count = static_cast<Index>(points.size());
  GramMatrix g{points, n, Matrix(count * n, count * n)};
  for (Index l = 0; l < count; ++l) {
    for (Index j = 0; j < count; ++j) {
      g.assembled.block(l * n, j * n, n, n) =
          spec.eval(points[static_cast<std::size_t>(l)], points[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

PsdResult psd_check(const GramMatrix& g, double tol) {
  PsdResult r;
  r.hermiticity = hermiticity_defect(g.assembled);
  if (r.hermiticity > 1e-10 * std::max(1.0, max_abs(g.assembled))) {
    std::ostringstream msg;
    msg << "psd_check: Gram assembly is not Hermitian (defect " << r.hermiticity << ")";
    throw StructuralError(msg.str());
  }
  r.margin = smallest_eigenvalue(g.assembled);
  r.psd = r.margin >= -tol;
  return r;
}

// ---------------------------------------------------------------------------

Complex rkhs_inner(const KernelSpec& spec, const Generator& a, const Generator& b) {
  if (a.xi.size() != spec.fiber_dim() || b.xi.size() != spec.fiber_dim()) {
    throw StructuralError("rkhs_inner: fiber vector has the wrong length");
  }
  return b.xi.dot(spec.eval(b.s, a.s) * a.xi);
}

RkhsModel::RkhsModel(KernelSpec spec, std::vector<Generator> generators, double rank_tol)
    : spec_(std::move(spec)), gens_(std::move(generators)) {
  if (gens_.empty()) throw StructuralError("RkhsModel needs at least one generator");
  const auto count = static_cast<Index>(gens_.size());
  w_.resize(count, count);
  for (Index i = 0; i < count; ++i) {
    for (Index l = 0; l < count; ++l) {
      w_(i, l) = rkhs_inner(spec_, gens_[static_cast<std::size_t>(l)],
                            gens_[static_cast<std::size_t>(i)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(w_));
  const auto& lambda = es.eigenvalues();
  const double top = std::max(lambda.maxCoeff(), 0.0);
  std::vector<Index> keep;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > rank_tol * top && lambda(i) > 0.0) keep.push_back(i);
  }
  features_.resize(static_cast<Index>(keep.size()), count);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const Index i = keep[r];
    features_.row(static_cast<Index>(r)) = std::sqrt(lambda(i)) * es.eigenvectors().col(i).adjoint();
  }
}

Vector RkhsModel::features(const Vector& c) const {
  if (c.size() != static_cast<Index>(gens_.size())) {
    throw StructuralError("RkhsModel: coefficient vector has the wrong length");
  }
  return features_ * c;
}

Complex RkhsModel::inner(const Vector& c, const Vector& d) const {
  return features(d).dot(features(c));
}

Vector RkhsModel::value(const Vector& c, const ChartPoint& t) const {
  if (c.size() != static_cast<Index>(gens_.size())) {
    throw StructuralError("RkhsModel: coefficient vector has the wrong length");
  }
  Vector out = Vector::Zero(spec_.fiber_dim());
  for (std::size_t l = 0; l < gens_.size(); ++l) {
    out += c(static_cast<Index>(l)) * (spec_.eval(t, gens_[l].s) * gens_[l].xi);
  }
  return out;
}

double reproducing_check(const RkhsModel& model, const Vector& c, const Generator& probe) {
  std::vector<Generator> gens = model.generators();
  gens.push_back(probe);
  const RkhsModel augmented(model.spec(), gens);
  const auto count = static_cast<Index>(gens.size());
  Vector c_ext = Vector::Zero(count);
  c_ext.head(count - 1) = c;
  Vector e = Vector::Zero(count);
  e(count - 1) = 1.0;
  const Complex lhs = augmented.inner(c_ext, e);
  const Complex rhs = probe.xi.dot(model.value(c, probe.s));
  return std::abs(lhs - rhs);
}

double evaluation_adjoint_check(const KernelSpec& spec, const ChartPoint& s, const ChartPoint& t,
                                const Vector& xi, const Vector& eta) {
  const Complex lhs = rkhs_inner(spec, Generator{xi, s}, Generator{eta, t});
  const Vector ev = spec.eval(s, t) * eta;  // ev_s(K_eta)
  const Complex rhs = ev.dot(xi);
  return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------

Admissibility admissibility(const KernelSpec& spec, const ChartPoint& s, double tau) {
  const Matrix k = spec.eval(s, s);
  Eigen::JacobiSVD<Matrix> svd(k);
  const auto& sv = svd.singularValues();
  Admissibility a;
  a.norm = sv(0);
  a.smallest_singular_value = sv(sv.size() - 1);
  a.invertible = a.norm > 0.0 && a.smallest_singular_value >= tau * a.norm;
  return a;
}

Lemma51Report lemma51_consistency(const KernelSpec& spec, const ChartPoint& s,
                                  std::size_t sample_count, std::uint64_t seed, double tau) {
  spec.domain().require(s, "lemma51_consistency");
  const Index n = spec.fiber_dim();
  std::vector<ChartPoint> sample{s};
  for (auto& p : sample_points(spec, sample_count, seed)) sample.push_back(p);
  const auto m = static_cast<Index>(sample.size());

  Lemma51Report r;
  Matrix stacked(m * n, n);
  Matrix evals(n, m * n);
  for (Index i = 0; i < m; ++i) {
    const ChartPoint& t = sample[static_cast<std::size_t>(i)];
    stacked.block(i * n, 0, n, n) = spec.eval(t, s);
    evals.block(0, i * n, n, n) = spec.eval(s, t);
  }
  r.injective_rank = svd_rank(stacked, tau);
  r.injective = r.injective_rank == n;

  const Admissibility a = admissibility(spec, s, tau);
  r.invertible = a.invertible;
  r.smallest_singular_value = a.smallest_singular_value;

  Eigen::ColPivHouseholderQR<Matrix> qr(spec.eval(s, s));
  qr.setThreshold(tau);
  r.qr_rank = qr.rank();
  r.surjective = r.qr_rank == n;

  r.evaluation_rank = svd_rank(evals, tau);
  r.evaluation_onto = r.evaluation_rank == n;
  return r;
}

}  // namespace bck::kernels
