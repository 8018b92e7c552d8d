#include "bck/chern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bck/fd.hpp"

namespace bck::chern {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Domain intersect(const Domain& a, const Domain& b) {
  if (a.dim() != b.dim()) throw StructuralError("metrics live on charts of different dimension");
  return Domain(
      a.dim(), [a, b](const ChartPoint& z) { return a.contains(z) && b.contains(z); },
      a.name() + " & " + b.name());
}

forms::Field0 as_field(const MetricField& h) {
  return [h](const ChartPoint& w) { return h(w); };
}

}  // namespace

// ---------------------------------------------------------------------------

MetricField::MetricField(Fn h, Domain domain, Index fiber_dim)
    : h_(std::move(h)), domain_(std::move(domain)), n_(fiber_dim) {
  if (!h_) throw StructuralError("metric field needs a function");
  if (n_ < 1) throw StructuralError("metric fiber dimension must be >= 1");
}

Matrix MetricField::operator()(const ChartPoint& z) const {
  domain_.require(z, "metric evaluation");
  const Matrix m = h_(z);
  if (m.rows() != n_ || m.cols() != n_) {
    throw StructuralError("metric returned a matrix of the wrong shape");
  }
  if (!m.allFinite()) throw EvaluationError("metric returned non-finite values");
  const double scale = std::max(1e-300, max_abs(m));
  if (hermiticity_defect(m) > 1e-12 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "metric is not Hermitian (defect " << hermiticity_defect(m) << ")";
    throw StructuralError(msg.str());
  }
  const Matrix herm = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > 1e-12 * std::abs(ev(ev.size() - 1)))) {
    std::ostringstream msg;
    msg << "metric is singular or indefinite (smallest eigenvalue " << ev(0) << ")";
    throw SingularMetricError(msg.str());
  }
  return herm;
}

MetricField metric_from_kernel(const kernels::KernelSpec& spec) {
  return MetricField(
      [spec](const ChartPoint& z) {
        const auto a = kernels::admissibility(spec, z);
        if (!a.invertible) {
          std::ostringstream msg;
          msg << "K(z,z) is not invertible (sigma_min " << a.smallest_singular_value << ")";
          throw SingularMetricError(msg.str());
        }
        return spec.eval(z, z);
      },
      spec.domain(), spec.fiber_dim());
}

MetricField evaluation_dual_metric(const kernels::KernelSpec& spec) {
  const MetricField h = metric_from_kernel(spec);
  return MetricField([h](const ChartPoint& z) { return Matrix(h(z).conjugate()); }, spec.domain(),
                     spec.fiber_dim());
}

// ---------------------------------------------------------------------------

Form1 chern_connection(const MetricField& h, const ChartPoint& z, const FdOptions& opts) {
  const auto hz = h(z).llt();
  const auto hf = as_field(h);
  const int d = z.dim();
  Form1 a = Form1::zero(d, h.fiber_dim(), h.fiber_dim());
  for (int j = 0; j < d; ++j) {
    a.dz(j) = hz.solve(fd::wirtinger(hf, z, j, opts, h.domain()).first);
  }
  return a;
}

forms::Field1 connection_field(const MetricField& h, const FdOptions& opts) {
  return [h, opts](const ChartPoint& w) { return chern_connection(h, w, opts); };
}

std::string to_string(CurvatureMethod m) {
  return m == CurvatureMethod::nested_fd ? "nested_fd" : "analytic_expansion";
}

CurvatureMethod curvature_method_from_string(const std::string& s) {
  if (s == "nested_fd") return CurvatureMethod::nested_fd;
  if (s == "analytic_expansion") return CurvatureMethod::analytic_expansion;
  throw ConfigError("unknown curvature method '" + s + "'");
}

Form2 connection_curvature(const forms::Field1& a, const ChartPoint& z, const Domain& dom,
                           const FdOptions& opts) {
  const Form1 az = a(z);
  return forms::exterior_derivative(a, z, dom, fd::outer_layer(opts)) + forms::wedge(az, az);
}

Curvature curvature(const MetricField& h, const ChartPoint& z, const FdOptions& opts,
                    CurvatureMethod method) {
  Curvature out;
  if (method == CurvatureMethod::nested_fd) {
    out.theta = connection_curvature(connection_field(h, opts), z, h.domain(), opts);
    out.purity = out.theta.pure_norm();
    return out;
  }
  const Matrix hz = h(z);
  const auto llt = hz.llt();
  const auto hf = as_field(h);
  const int d = z.dim();
  std::vector<Matrix> del(static_cast<std::size_t>(d));
  std::vector<Matrix> delbar(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    auto [dj, dbj] = fd::wirtinger(hf, z, j, opts, h.domain());
    del[static_cast<std::size_t>(j)] = llt.solve(dj);
    delbar[static_cast<std::size_t>(j)] = llt.solve(dbj);
  }
  out.theta = Form2::zero(d, h.fiber_dim(), h.fiber_dim());
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const Matrix mixed = llt.solve(fd::dbar_d(hf, z, k, j, opts, h.domain()));
      out.theta.r11(k, j) =
          mixed - delbar[static_cast<std::size_t>(k)] * del[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Compatibility compatibility_residuals(const MetricField& h, const forms::Field1& a,
                                      const ChartPoint& z, const FdOptions& opts) {
  Compatibility r;
  const Form1 az = a(z);
  const Matrix hz = h(z);
  const auto hf = as_field(h);
  for (int ax = 0; ax < 2 * z.dim(); ++ax) {
    const Matrix dh = fd::real_partial(hf, z, ax, fd::axis_step(opts, opts.first_step, ax),
                                       opts.richardson, h.domain());
    const Matrix au = az(real_axis(z.dim(), ax));
    r.metric = std::max(r.metric, (dh - hz * au - au.adjoint() * hz).norm());
  }
  r.holo = az.type01().norm();
  const Form2 structure =
      forms::del(a, z, h.domain(), fd::outer_layer(opts)) + forms::wedge(az, az);
  r.structure = structure.norm();
  return r;
}

Compatibility compatibility_residuals(const MetricField& h, const ChartPoint& z,
                                      const FdOptions& opts) {
  return compatibility_residuals(h, connection_field(h, opts), z, opts);
}

CovariantDerivative covariant_derivative(const forms::Field1& a, const forms::Field0& sigma,
                                         const ChartPoint& z, const Domain& dom,
                                         const FdOptions& opts) {
  const forms::Field1 nabla_field = [&](const ChartPoint& w) {
    return forms::exterior_derivative(sigma, w, dom, opts) + forms::wedge(a(w), sigma(w));
  };
  CovariantDerivative out;
  out.nabla = nabla_field(z);
  out.holo_section_residual = out.nabla.type01().norm();

  const Form2 nabla2 = forms::exterior_derivative(nabla_field, z, dom, fd::outer_layer(opts)) +
                       forms::wedge(a(z), out.nabla);
  const Form2 theta = connection_curvature(a, z, dom, opts);
  out.nabla2_residual = (nabla2 - forms::wedge(theta, sigma(z))).norm();
  return out;
}

double hs_connection_check(const MetricField& h1, const MetricField& h2, const ChartPoint& z,
                           const FdOptions& opts) {
  const Index n1 = h1.fiber_dim();
  const Index n2 = h2.fiber_dim();
  const Domain dom = intersect(h1.domain(), h2.domain());
  // vec(h2 S h1^{-1}) = (h1^{-T} kron h2) vec(S), column-major vec.
  const MetricField big(
      [h1, h2](const ChartPoint& w) {
        const Matrix inv1 = h1(w).inverse();
        return kron(Matrix(inv1.transpose()), h2(w));
      },
      dom, n1 * n2);
  const Form1 direct = chern_connection(big, z, opts);
  const Form1 a1 = chern_connection(h1, z, opts);
  const Form1 a2 = chern_connection(h2, z, opts);
  const Matrix i1 = Matrix::Identity(n1, n1);
  const Matrix i2 = Matrix::Identity(n2, n2);
  double r = 0.0;
  for (int j = 0; j < z.dim(); ++j) {
    const Matrix expected = kron(i1, a2.dz(j)) - kron(Matrix(a1.dz(j).transpose()), i2);
    r = std::max(r, (direct.dz(j) - expected).norm());
  }
  return r;
}

MetricField transform_metric(const MetricField& h, const forms::Field0& g) {
  return MetricField(
      [h, g](const ChartPoint& w) {
        const Matrix gw = g(w);
        return Matrix(gw.adjoint() * h(w) * gw);
      },
      h.domain(), h.fiber_dim());
}

// ---------------------------------------------------------------------------

SubbundleSplit subbundle_split(const MetricField& h, const forms::Field0& frame,
                               const ChartPoint& z, const FdOptions& opts,
                               CurvatureMethod method) {
  const Index n = h.fiber_dim();
  const Matrix hz = h(z);
  const Matrix fz = frame(z);
  const Index k = fz.cols();
  if (fz.rows() != n || k < 1) throw StructuralError("subbundle frame must be n x k with k >= 1");
  const int d = z.dim();
  const Domain& dom = h.domain();

  SubbundleSplit out;
  // Greedy completion by standard basis vectors, fixed once at the centre.
  Matrix q = kernels::gram_schmidt(fz, hz).q;
  for (Index step = k; step < n; ++step) {
    int best = -1;
    double best_norm = -1.0;
    Vector best_r;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const Vector e = Matrix::Identity(n, n).col(i);
      const Vector r = e - q * (q.adjoint() * hz * e);
      const double nr = std::sqrt(std::max(0.0, (r.adjoint() * hz * r)(0, 0).real()));
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
        best_r = r;
      }
    }
    out.complement.push_back(best);
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = best_r / best_norm;
  }
  const std::vector<int> complement = out.complement;
  auto adapted = [&, complement](const ChartPoint& w) {
    const Matrix fw = frame(w);
    Matrix cols(n, n);
    cols.leftCols(k) = fw;
    for (std::size_t c = 0; c < complement.size(); ++c) {
      cols.col(k + static_cast<Index>(c)) = Matrix::Identity(n, n).col(complement[c]);
    }
    return kernels::gram_schmidt(cols, h(w));
  };
  const forms::Field0 unitary = [&](const ChartPoint& w) { return adapted(w).q; };

  // omega = U^{-1}(dU + A U) with U^{-1} = U^* h.
  const forms::Field1 omega_field = [&](const ChartPoint& w) {
    const Matrix uw = unitary(w);
    const Matrix left = uw.adjoint() * h(w);
    const Form1 aw = chern_connection(h, w, opts);
    Form1 om = Form1::zero(d, n, n);
    for (int j = 0; j < d; ++j) {
      auto [du, dbu] = fd::wirtinger(unitary, w, j, opts, dom);
      om.dz(j) = left * (du + aw.dz(j) * uw);
      om.dzbar(j) = left * dbu;
    }
    return om;
  };
  const auto factors = adapted(z);
  out.frame = factors.q;
  out.omega = omega_field(z);
  out.beta = out.omega.map([&](const Matrix& m) { return Matrix(m.bottomLeftCorner(n - k, k)); });
  out.beta_antiholomorphic = out.beta.type01().norm();

  const Matrix uz = out.frame;
  const Matrix left = uz.adjoint() * hz;
  out.theta_ambient =
      curvature(h, z, opts, method).theta.map([&](const Matrix& m) { return Matrix(left * m * uz); });

  const MetricField induced(
      [h, frame](const ChartPoint& w) {
        const Matrix fw = frame(w);
        return Matrix(fw.adjoint() * h(w) * fw);
      },
      dom, k);
  const Matrix r1 = factors.r.topLeftCorner(k, k);
  const Matrix r1inv = r1.inverse();
  out.theta1 = curvature(induced, z, opts, method).theta.map([&](const Matrix& m) {
    return Matrix(r1 * m * r1inv);
  });

  const Form1 beta_star = out.beta.adjoint();
  const Form2 block11 =
      out.theta_ambient.map([&](const Matrix& m) { return Matrix(m.topLeftCorner(k, k)); });
  out.residual11 = (block11 - (out.theta1 - forms::wedge(beta_star, out.beta))).norm();

  if (k < n) {
    const Index m2 = n - k;
    const forms::Field1 omega22 = [&](const ChartPoint& w) {
      return omega_field(w).map([&](const Matrix& m) { return Matrix(m.bottomRightCorner(m2, m2)); });
    };
    out.theta2 = connection_curvature(omega22, z, dom, opts);
    const Form2 block22 =
        out.theta_ambient.map([&](const Matrix& m) { return Matrix(m.bottomRightCorner(m2, m2)); });
    out.residual22 = (block22 - (out.theta2 - forms::wedge(out.beta, beta_star))).norm();
  }
  return out;
}

// ---------------------------------------------------------------------------

DualCurvature dual_curvature_check(const kernels::KernelSpec& spec, const ChartPoint& z,
                                   const FdOptions& opts, CurvatureMethod method) {
  const MetricField h = metric_from_kernel(spec);
  const MetricField hd = metric_from_kernel(kernels::dual_kernel(spec));
  DualCurvature out;
  out.theta = curvature(h, z, opts, method).theta;
  const Form2 at_conj = curvature(hd, z.conjugated(), opts, method).theta;

  // zeta = conj(z): dzeta_j = dzbar_j, so dzetabar_k ^ dzeta_j = -dzbar_j ^ dz_k.
  const int d = z.dim();
  out.theta_dual = Form2::zero(d, spec.fiber_dim(), spec.fiber_dim());
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      out.theta_dual.r11(j, k) = -at_conj.r11(k, j);
      if (j < k) {
        out.theta_dual.set_c20(j, k, at_conj.c02(j, k));
        out.theta_dual.set_c02(j, k, at_conj.c20(j, k));
      }
    }
  }

  const Matrix hz = h(z);
  const Matrix hinv = hz.inverse();
  const Form2 expected =
      -1.0 * out.theta.map([&](const Matrix& m) { return Matrix((hz * m * hinv).transpose()); });
  out.residual = (out.theta_dual - expected).norm();
  return out;
}

}  // namespace bck::chern
