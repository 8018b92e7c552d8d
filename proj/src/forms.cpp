#include "bck/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bck/fd.hpp"

namespace bck::forms {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError(std::string(what) + ": coefficient shapes differ");
  }
}

// i * u_a expressed as (sign, axis) on the real basis (e_1, i e_1, e_2, ...).
std::pair<double, int> rotate(int a) {
  if (a % 2 == 0) return {1.0, a + 1};
  return {-1.0, a - 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// Form1

Form1::Form1(std::vector<Matrix> dz, std::vector<Matrix> dzbar)
    : dz_(std::move(dz)), dzbar_(std::move(dzbar)) {
  if (dz_.size() != dzbar_.size() || dz_.empty()) {
    throw StructuralError("1-form needs d >= 1 dz and dzbar coefficients");
  }
  for (std::size_t j = 0; j < dz_.size(); ++j) {
    require_same_shape(dz_[0], dz_[j], "1-form");
    require_same_shape(dz_[0], dzbar_[j], "1-form");
  }
}

Form1 Form1::zero(int dim, Index rows, Index cols) {
  if (dim < 1 || rows < 1 || cols < 1) throw StructuralError("1-form dimensions must be >= 1");
  std::vector<Matrix> z(static_cast<std::size_t>(dim), Matrix::Zero(rows, cols));
  return Form1(z, z);
}

Matrix Form1::operator()(const Vector& v) const {
  if (v.size() != dim()) throw StructuralError("1-form evaluated on vector of wrong dimension");
  Matrix out = Matrix::Zero(rows(), cols());
  for (int j = 0; j < dim(); ++j) {
    out += v(j) * dz(j) + std::conj(v(j)) * dzbar(j);
  }
  return out;
}

Form1 Form1::type10() const {
  Form1 out = *this;
  for (auto& q : out.dzbar_) q.setZero();
  return out;
}

Form1 Form1::type01() const {
  Form1 out = *this;
  for (auto& p : out.dz_) p.setZero();
  return out;
}

Form1 Form1::adjoint() const {
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  for (int j = 0; j < dim(); ++j) {
    p.push_back(dzbar(j).adjoint());
    q.push_back(dz(j).adjoint());
  }
  return Form1(std::move(p), std::move(q));
}

Form1 Form1::map(const std::function<Matrix(const Matrix&)>& f) const {
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  for (int j = 0; j < dim(); ++j) {
    p.push_back(f(dz(j)));
    q.push_back(f(dzbar(j)));
  }
  return Form1(std::move(p), std::move(q));
}

double Form1::norm() const {
  double n = 0.0;
  for (int j = 0; j < dim(); ++j) n = std::max({n, dz(j).norm(), dzbar(j).norm()});
  return n;
}

Form1& Form1::operator+=(const Form1& o) {
  if (o.dim() != dim()) throw StructuralError("1-form sum: dimension mismatch");
  for (int j = 0; j < dim(); ++j) {
    dz(j) += o.dz(j);
    dzbar(j) += o.dzbar(j);
  }
  return *this;
}

Form1& Form1::operator-=(const Form1& o) {
  if (o.dim() != dim()) throw StructuralError("1-form difference: dimension mismatch");
  for (int j = 0; j < dim(); ++j) {
    dz(j) -= o.dz(j);
    dzbar(j) -= o.dzbar(j);
  }
  return *this;
}

Form1& Form1::operator*=(Complex c) {
  for (auto& p : dz_) p *= c;
  for (auto& q : dzbar_) q *= c;
  return *this;
}

Form1 operator+(Form1 a, const Form1& b) { return a += b; }
Form1 operator-(Form1 a, const Form1& b) { return a -= b; }
Form1 operator*(Complex c, Form1 a) { return a *= c; }
Form1 operator*(double c, Form1 a) { return a *= Complex(c, 0.0); }

// ---------------------------------------------------------------------------
// Form2

Form2 Form2::zero(int dim, Index rows, Index cols) {
  if (dim < 1 || rows < 1 || cols < 1) throw StructuralError("2-form dimensions must be >= 1");
  Form2 f;
  f.dim_ = dim;
  const auto n = static_cast<std::size_t>(dim * dim);
  f.c20_.assign(n, Matrix::Zero(rows, cols));
  f.r11_.assign(n, Matrix::Zero(rows, cols));
  f.c02_.assign(n, Matrix::Zero(rows, cols));
  return f;
}

void Form2::set_c20(int j, int k, const Matrix& m) {
  if (j == k) {
    if (max_abs(m) != 0.0) throw StructuralError("dz_j ^ dz_j coefficient must vanish");
    return;
  }
  c20_[at(j, k)] = m;
  c20_[at(k, j)] = -m;
}

void Form2::set_c02(int j, int k, const Matrix& m) {
  if (j == k) {
    if (max_abs(m) != 0.0) throw StructuralError("dzbar_j ^ dzbar_j coefficient must vanish");
    return;
  }
  c02_[at(j, k)] = m;
  c02_[at(k, j)] = -m;
}

Matrix Form2::operator()(const Vector& v, const Vector& w) const {
  if (v.size() != dim_ || w.size() != dim_) {
    throw StructuralError("2-form evaluated on vectors of wrong dimension");
  }
  Matrix out = Matrix::Zero(rows(), cols());
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) {
      const Complex vk = std::conj(v(k));
      const Complex wk = std::conj(w(k));
      out += (vk * w(j) - wk * v(j)) * r11(k, j);
      if (j < k) {
        out += (v(j) * w(k) - w(j) * v(k)) * c20(j, k);
        out += (std::conj(v(j)) * wk - std::conj(w(j)) * vk) * c02(j, k);
      }
    }
  }
  return out;
}

Form2 Form2::type11() const {
  Form2 out = *this;
  for (auto& m : out.c20_) m.setZero();
  for (auto& m : out.c02_) m.setZero();
  return out;
}

Form2 Form2::map(const std::function<Matrix(const Matrix&)>& f) const {
  Form2 out;
  out.dim_ = dim_;
  for (const auto& m : c20_) out.c20_.push_back(f(m));
  for (const auto& m : r11_) out.r11_.push_back(f(m));
  for (const auto& m : c02_) out.c02_.push_back(f(m));
  return out;
}

double Form2::norm() const {
  double n = 0.0;
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      n = std::max(n, r11(a, b).norm());
      if (a < b) n = std::max({n, c20(a, b).norm(), c02(a, b).norm()});
    }
  }
  return n;
}

double Form2::pure_norm() const {
  double n20 = 0.0;
  double n02 = 0.0;
  for (int a = 0; a < dim_; ++a) {
    for (int b = a + 1; b < dim_; ++b) {
      n20 = std::max(n20, c20(a, b).norm());
      n02 = std::max(n02, c02(a, b).norm());
    }
  }
  return n20 + n02;
}

Form2& Form2::operator+=(const Form2& o) {
  if (o.dim_ != dim_) throw StructuralError("2-form sum: dimension mismatch");
  for (std::size_t i = 0; i < r11_.size(); ++i) {
    c20_[i] += o.c20_[i];
    r11_[i] += o.r11_[i];
    c02_[i] += o.c02_[i];
  }
  return *this;
}

Form2& Form2::operator-=(const Form2& o) {
  if (o.dim_ != dim_) throw StructuralError("2-form difference: dimension mismatch");
  for (std::size_t i = 0; i < r11_.size(); ++i) {
    c20_[i] -= o.c20_[i];
    r11_[i] -= o.r11_[i];
    c02_[i] -= o.c02_[i];
  }
  return *this;
}

Form2& Form2::operator*=(Complex c) {
  for (auto& m : c20_) m *= c;
  for (auto& m : r11_) m *= c;
  for (auto& m : c02_) m *= c;
  return *this;
}

Form2 operator+(Form2 a, const Form2& b) { return a += b; }
Form2 operator-(Form2 a, const Form2& b) { return a -= b; }
Form2 operator*(Complex c, Form2 a) { return a *= c; }
Form2 operator*(double c, Form2 a) { return a *= Complex(c, 0.0); }

int degree(const PointForm& f) { return static_cast<int>(f.index()); }

// ---------------------------------------------------------------------------
// Wedge products

Matrix compose(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("wedge: operator shapes do not compose");
  return a * b;
}

Form1 wedge(const Matrix& a, const Form1& b, const Multiply& mul) {
  return b.map([&](const Matrix& m) { return mul(a, m); });
}

Form1 wedge(const Form1& a, const Matrix& b, const Multiply& mul) {
  return a.map([&](const Matrix& m) { return mul(m, b); });
}

Form2 wedge(const Matrix& a, const Form2& b, const Multiply& mul) {
  return b.map([&](const Matrix& m) { return mul(a, m); });
}

Form2 wedge(const Form2& a, const Matrix& b, const Multiply& mul) {
  return a.map([&](const Matrix& m) { return mul(m, b); });
}

namespace detail {

Form2 wedge11(const Form1& a, const Form1& b, const Multiply& mul, double cross_sign) {
  if (a.dim() != b.dim()) throw StructuralError("wedge: chart dimensions differ");
  const int d = a.dim();
  const Matrix probe = mul(a.dz(0), b.dz(0));
  Form2 out = Form2::zero(d, probe.rows(), probe.cols());
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      out.r11(k, j) = mul(a.dzbar(k), b.dz(j)) + cross_sign * mul(a.dz(j), b.dzbar(k));
      if (j < k) {
        out.set_c20(j, k, mul(a.dz(j), b.dz(k)) - mul(a.dz(k), b.dz(j)));
        out.set_c02(j, k, mul(a.dzbar(j), b.dzbar(k)) - mul(a.dzbar(k), b.dzbar(j)));
      }
    }
  }
  return out;
}

}  // namespace detail

Form2 wedge(const Form1& a, const Form1& b, const Multiply& mul) {
  return detail::wedge11(a, b, mul, -1.0);
}

PointForm wedge(const PointForm& a, const PointForm& b, const Multiply& mul) {
  const int p1 = degree(a);
  const int p2 = degree(b);
  if (p1 + p2 > 2) {
    throw StructuralError("wedge: degree " + std::to_string(p1) + " + " + std::to_string(p2) +
                          " exceeds 2");
  }
  if (p1 == 0 && p2 == 0) return mul(std::get<Matrix>(a), std::get<Matrix>(b));
  if (p1 == 0 && p2 == 1) return wedge(std::get<Matrix>(a), std::get<Form1>(b), mul);
  if (p1 == 1 && p2 == 0) return wedge(std::get<Form1>(a), std::get<Matrix>(b), mul);
  if (p1 == 1 && p2 == 1) return wedge(std::get<Form1>(a), std::get<Form1>(b), mul);
  if (p1 == 0) return wedge(std::get<Matrix>(a), std::get<Form2>(b), mul);
  return wedge(std::get<Form2>(a), std::get<Matrix>(b), mul);
}

// ---------------------------------------------------------------------------
// Splitting

LinearSplit split_linear(const RealLinearMap& t, int dim) {
  if (dim < 1) throw StructuralError("split_linear: dimension must be >= 1");
  auto eval = [&](const Vector& v) {
    Matrix m = t(v);
    if (!all_finite(m)) throw EvaluationError("split_linear: map returned non-finite values");
    return m;
  };
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  for (int j = 0; j < dim; ++j) {
    const Matrix te = eval(real_axis(dim, 2 * j));
    const Matrix tie = eval(real_axis(dim, 2 * j + 1));
    p.push_back(0.5 * (te - kI * tie));
    q.push_back(0.5 * (te + kI * tie));
  }
  LinearSplit out;
  out.holomorphic = Form1(p, std::vector<Matrix>(p.size(), Matrix::Zero(p[0].rows(), p[0].cols())));
  out.antiholomorphic = Form1(std::vector<Matrix>(q.size(), Matrix::Zero(q[0].rows(), q[0].cols())), q);

  // Reassembly on mixed probes (exact for real-linear maps).
  std::vector<Vector> probes;
  for (int j = 0; j < dim; ++j) probes.push_back(Complex(0.6, 0.8) * real_axis(dim, 2 * j));
  probes.push_back(Vector::Constant(dim, Complex(1.0, -0.5)));
  for (const Vector& v : probes) {
    const Matrix tv = eval(v);
    const double r = (out.holomorphic(v) + out.antiholomorphic(v) - tv).norm();
    out.reassembly_residual = std::max(out.reassembly_residual, r / std::max(1.0, tv.norm()));
  }
  return out;
}

Form2 split_bilinear(const RealBilinearMap& phi, int dim, double skew_tol) {
  if (dim < 1) throw StructuralError("split_bilinear: dimension must be >= 1");
  const int n = 2 * dim;
  std::vector<Matrix> table(static_cast<std::size_t>(n * n));
  auto at = [n](int a, int b) { return static_cast<std::size_t>(a * n + b); };
  double scale = 1.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[at(a, b)] = phi(real_axis(dim, a), real_axis(dim, b));
      if (!all_finite(table[at(a, b)])) {
        throw EvaluationError("split_bilinear: map returned non-finite values");
      }
      scale = std::max(scale, table[at(a, b)].norm());
    }
  }
  double asym = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) asym = std::max(asym, (table[at(a, b)] + table[at(b, a)]).norm());
  }
  if (asym > skew_tol * scale) {
    std::ostringstream msg;
    msg << "split_bilinear: map is not skew, measured asymmetry " << asym;
    throw StructuralError(msg.str());
  }

  // Q(Phi)(u, w) = Phi(i u, i w); mixed = (Phi + Q Phi)/2, pure = (Phi - Q Phi)/2.
  auto q_phi = [&](int a, int b) {
    const auto [sa, ra] = rotate(a);
    const auto [sb, rb] = rotate(b);
    return Matrix(sa * sb * table[at(ra, rb)]);
  };
  auto mixed = [&](int a, int b) { return Matrix(0.5 * (table[at(a, b)] + q_phi(a, b))); };
  auto pure = [&](int a, int b) { return Matrix(0.5 * (table[at(a, b)] - q_phi(a, b))); };

  const Matrix& probe = table[0];
  Form2 out = Form2::zero(dim, probe.rows(), probe.cols());
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      // Pure part split by C-linearity in the first argument.
      if (j < k) {
        const Matrix nn = pure(2 * j, 2 * k);
        const Matrix in = pure(2 * j + 1, 2 * k);
        out.set_c20(j, k, 0.5 * (nn - kI * in));
        out.set_c02(j, k, 0.5 * (nn + kI * in));
      }
      out.r11(j, k) = 0.5 * (mixed(2 * j, 2 * k) - kI * mixed(2 * j, 2 * k + 1));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivatives

Form1 exterior_derivative(const Field0& f, const ChartPoint& z, const Domain& dom,
                          const FdOptions& opts) {
  const auto dd = del_delbar(f, z, dom, opts);
  return dd.del + dd.delbar;
}

DelDelbar del_delbar(const Field0& f, const ChartPoint& z, const Domain& dom,
                     const FdOptions& opts) {
  dom.require(z, "del_delbar");
  const int d = z.dim();
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  for (int j = 0; j < d; ++j) {
    auto [dj, dbj] = fd::wirtinger(f, z, j, opts, dom);
    p.push_back(std::move(dj));
    q.push_back(std::move(dbj));
  }
  const Matrix zero = Matrix::Zero(p[0].rows(), p[0].cols());
  DelDelbar out;
  out.del = Form1(p, std::vector<Matrix>(p.size(), zero));
  out.delbar = Form1(std::vector<Matrix>(q.size(), zero), q);
  return out;
}

namespace {

struct CoefficientDerivatives {
  std::vector<Form1> del;    // d/dz_l of the whole 1-form field
  std::vector<Form1> delbar; // d/dzbar_l
};

CoefficientDerivatives differentiate(const Field1& sigma, const ChartPoint& z, const Domain& dom,
                                     const FdOptions& opts) {
  dom.require(z, "exterior derivative");
  CoefficientDerivatives out;
  for (int l = 0; l < z.dim(); ++l) {
    auto [dl, dbl] = fd::wirtinger(sigma, z, l, opts, dom);
    out.del.push_back(std::move(dl));
    out.delbar.push_back(std::move(dbl));
  }
  if (out.del.front().dim() != z.dim()) {
    throw StructuralError("1-form field dimension differs from chart dimension");
  }
  return out;
}

// include_del / include_delbar select the d/dz and d/dzbar contributions.
Form2 assemble(const CoefficientDerivatives& cd, int d, bool include_del, bool include_delbar) {
  const Form1& probe = cd.del.front();
  Form2 out = Form2::zero(d, probe.rows(), probe.cols());
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      Matrix r = Matrix::Zero(probe.rows(), probe.cols());
      if (include_delbar) r += cd.delbar[k].dz(j);
      if (include_del) r -= cd.del[j].dzbar(k);
      out.r11(k, j) = r;
      if (j < k) {
        if (include_del) out.set_c20(j, k, cd.del[j].dz(k) - cd.del[k].dz(j));
        if (include_delbar) out.set_c02(j, k, cd.delbar[j].dzbar(k) - cd.delbar[k].dzbar(j));
      }
    }
  }
  return out;
}

}  // namespace

Form2 exterior_derivative(const Field1& sigma, const ChartPoint& z, const Domain& dom,
                          const FdOptions& opts) {
  return assemble(differentiate(sigma, z, dom, opts), z.dim(), true, true);
}

Form2 del(const Field1& sigma, const ChartPoint& z, const Domain& dom, const FdOptions& opts) {
  return assemble(differentiate(sigma, z, dom, opts), z.dim(), true, false);
}

Form2 delbar(const Field1& sigma, const ChartPoint& z, const Domain& dom, const FdOptions& opts) {
  return assemble(differentiate(sigma, z, dom, opts), z.dim(), false, true);
}

Matrix exterior_derivative_direct(const Field1& sigma, const ChartPoint& z, const Vector& v,
                                  const Vector& w, const Domain& dom, const FdOptions& opts) {
  dom.require(z, "exterior derivative");
  double s = 1.0;
  for (int j = 0; j < z.dim(); ++j) s = std::max(s, opts.axis_scale(j));
  const double h = opts.first_step * s;
  auto directional = [&](const Vector& u) {
    auto diff = [&](double step) {
      const ChartPoint zp = z.shifted(step * u);
      const ChartPoint zm = z.shifted(-step * u);
      dom.require(zp, "finite-difference stencil");
      dom.require(zm, "finite-difference stencil");
      return Form1((1.0 / (2.0 * step)) * (sigma(zp) - sigma(zm)));
    };
    if (!opts.richardson) return diff(h);
    return Form1((4.0 / 3.0) * diff(h) - (1.0 / 3.0) * diff(2.0 * h));
  };
  return directional(v)(w) - directional(w)(v);
}

double cauchy_riemann_residual(const Field0& f, const std::vector<ChartPoint>& points,
                               const Domain& dom, const FdOptions& opts) {
  if (points.empty()) throw StructuralError("cauchy_riemann_residual: empty point set");
  double r = 0.0;
  for (const auto& z : points) r = std::max(r, del_delbar(f, z, dom, opts).delbar.norm());
  return r;
}

double cauchy_riemann_residual(const Field0& f, const ChartGrid& grid, const Domain& dom,
                               const FdOptions& opts) {
  return cauchy_riemann_residual(f, grid.points(), dom, opts);
}

}  // namespace bck::forms
