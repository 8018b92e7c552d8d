// Acceptance run: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bck/chern.hpp"
#include "bck/cli.hpp"
#include "bck/kernels.hpp"
#include "bck/positivity.hpp"

using namespace bck;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Matrix scalar(Complex c) { return Matrix::Constant(1, 1, c); }

FdOptions richardson() {
  FdOptions o;
  o.richardson = true;
  return o;
}

// 21 x 21 grid over [-0.8, 0.8]^2, keeping the points where the disc stencil fits.
std::vector<ChartPoint> disc_grid() {
  Vector lo(1), hi(1);
  lo(0) = Complex(-0.8, -0.8);
  hi(0) = Complex(0.8, 0.8);
  const ChartGrid g(lo, hi, {21, 21});
  const Domain disc = kernels::KernelSpec::disc_power(1.0).domain();
  std::vector<ChartPoint> pts;
  for (const auto& p : g.points())
    if (disc.contains_with_margin(p, 1e-3)) pts.push_back(p);
  return pts;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome disc_curvature() {
  const auto pts = disc_grid();
  double worst = 0.0, slowest = 0.0;
  for (auto method : {chern::CurvatureMethod::nested_fd, chern::CurvatureMethod::analytic_expansion}) {
    for (double nu : {1.0, 2.0, 3.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto h = chern::metric_from_kernel(kernels::KernelSpec::disc_power(nu));
      for (const auto& z : pts) {
        const Complex r = chern::curvature(h, z, richardson(), method).theta.r11(0, 0)(0, 0);
        const double exact = nu / std::pow(1.0 - std::norm(z[0]), 2);
        worst = std::max(worst, std::abs(r - exact) / exact);
      }
      slowest = std::max(slowest, elapsed(t0));
    }
  }
  return {worst <= 1e-5 && slowest <= 5.0,
          fmt("max rel err %.3e over %g points (both methods), slowest nu %.3f s", worst,
              static_cast<double>(pts.size()), slowest)};
}

Outcome disc_connection() {
  const auto pts = disc_grid();
  double worst = 0.0;
  for (double nu : {1.0, 2.0, 3.0}) {
    const auto h = chern::metric_from_kernel(kernels::KernelSpec::disc_power(nu));
    for (const auto& z : pts) {
      const Complex a = chern::chern_connection(h, z, richardson()).dz(0)(0, 0);
      const Complex exact = nu * std::conj(z[0]) / (1.0 - z[0] * std::conj(z[0]));
      worst = std::max(worst, std::abs(a - exact));
    }
  }
  return {worst <= 1e-8, fmt("max abs err %.3e", worst)};
}

Outcome linearity() {
  const auto pts = disc_grid();
  const auto h1 = chern::metric_from_kernel(kernels::KernelSpec::disc_power(1.0));
  double worst = 0.0;
  for (double nu : {2.0, 3.0}) {
    const auto h = chern::metric_from_kernel(kernels::KernelSpec::disc_power(nu));
    for (const auto& z : pts) {
      const auto t = chern::curvature(h, z, richardson()).theta;
      const auto t1 = chern::curvature(h1, z, richardson()).theta;
      worst = std::max(worst, (t - nu * t1).norm() / t.norm());
    }
  }
  return {worst <= 1e-5, fmt("max rel defect %.3e", worst)};
}

Outcome griffiths() {
  const auto pts = disc_grid();
  const auto dirs = positivity::sample_directions(1, 64, 0);
  bool ok = true;
  std::string detail;
  for (double nu : {1.0, 2.0}) {
    const auto h = chern::metric_from_kernel(kernels::KernelSpec::disc_power(nu));
    const positivity::CurvatureField theta = [h](const ChartPoint& z) {
      return chern::curvature(h, z, richardson()).theta;
    };
    const auto r = positivity::griffiths_verdict(h, theta, pts, dirs);
    ok = ok && r.verdict == positivity::Verdict::positive && r.min_margin >= 2.0 * nu - 1e-3;
    detail += "nu=" + fmt("%g", nu) + " " + positivity::to_string(r.verdict) + fmt(" min %.6f at |z|=%.2g; ", r.min_margin, std::abs(r.witness.z(0)));
  }
  return {ok, detail};
}

Outcome gram_positivity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ChartPoint> pts;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.9 * std::sqrt(u(rng));
    pts.push_back(ChartPoint{std::polar(r, 2.0 * M_PI * u(rng))});
  }
  double worst = INFINITY;
  for (double nu : {1.0, 2.0}) {
    worst = std::min(worst, kernels::psd_check(kernels::gram(kernels::KernelSpec::disc_power(nu), pts)).margin);
  }
  return {worst >= -1e-8, fmt("min margin %.3e", worst)};
}

Outcome duality() {
  const auto pts = disc_grid();
  double worst = 0.0;
  for (double nu : {1.0, 2.0, 3.0}) {
    const auto k = kernels::KernelSpec::disc_power(nu);
    for (const auto& z : pts) worst = std::max(worst, chern::dual_curvature_check(k, z, richardson()).residual);
  }
  return {worst <= 1e-5, fmt("max ||Theta* + Theta|| %.3e", worst)};
}

Outcome reproducing() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  auto rvec = [&](Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
    return v;
  };
  std::vector<kernels::KernelSpec> ks = {
      kernels::KernelSpec::disc_power(1.0), kernels::KernelSpec::disc_power(2.0),
      kernels::KernelSpec::from_sections(Polynomial::random(1, 2, 3, 2, true, rng, 0.7), Matrix::Identity(3, 3)),
      kernels::KernelSpec::from_sections(Polynomial::random(2, 2, 4, 2, true, rng, 0.7), Matrix::Identity(4, 4)),
      kernels::KernelSpec::universal_grassmann(4, 2)};
  double eq22 = 0.0, repro = 0.0, adjoint = 0.0;
  for (int c = 0; c < 100; ++c) {
    const auto& k = ks[static_cast<std::size_t>(c) % ks.size()];
    const auto pts = kernels::sample_points(k, 4, 1000 + static_cast<std::uint64_t>(c), 0.6);
    std::vector<kernels::Generator> gens;
    for (std::size_t i = 0; i < 3; ++i) gens.push_back({rvec(k.fiber_dim()), pts[i]});
    const kernels::RkhsModel model(k, gens);
    // Inner product of two generators: spectral-feature route vs the defining formula.
    Vector e0 = Vector::Zero(3), e1 = Vector::Zero(3);
    e0(0) = 1.0;
    e1(1) = 1.0;
    const Complex direct = rkhs_inner(k, gens[0], gens[1]);
    eq22 = std::max(eq22, std::abs(model.inner(e0, e1) - direct) / std::max(1.0, std::abs(direct)));
    const kernels::Generator probe{rvec(k.fiber_dim()), pts[3]};
    repro = std::max(repro, kernels::reproducing_check(model, rvec(3), probe));
    adjoint = std::max(adjoint, kernels::evaluation_adjoint_check(k, pts[0], pts[3], rvec(k.fiber_dim()),
                                                                  rvec(k.fiber_dim())));
  }
  const double worst = std::max({eq22, repro, adjoint});
  return {worst <= 1e-9, fmt("inner %.2e, reproducing %.2e, adjoint %.2e", eq22, repro, adjoint)};
}

Outcome hilbert_schmidt() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    const Eigen::Index n1 = c % 2 == 0 ? 1 : 2;
    const Eigen::Index n2 = c % 4 < 2 ? 1 : 2;
    auto metric = [&](Eigen::Index n) {
      Polynomial p(1, n, n);
      p.add(Matrix::Identity(n, n));
      const Matrix a = random_matrix(n, n, rng, 0.4);
      const Matrix b = random_matrix(n, n, rng, 0.3);
      p.add(a * a.adjoint(), {1}, {1});
      p.add(b, {1}).add(b.adjoint(), {}, {1});
      return chern::MetricField([p](const ChartPoint& z) { return p(z); }, Domain::whole(1), n);
    };
    const auto h1 = metric(n1);
    const auto h2 = metric(n2);
    const ChartPoint z{Complex(u(rng), u(rng))};
    worst = std::max(worst, chern::hs_connection_check(h1, h2, z));
  }
  return {worst <= 1e-6, fmt("max residual %.3e", worst)};
}

Outcome subbundle() {
  const chern::MetricField flat([](const ChartPoint&) { return Matrix(Matrix::Identity(2, 2)); }, Domain::whole(1), 2);
  const forms::Field0 frame = [](const ChartPoint& z) { return (Matrix(2, 1) << 1.0, z[0]).finished(); };
  Vector lo(1), hi(1);
  lo(0) = Complex(-0.8, -0.8);
  hi(0) = Complex(0.8, 0.8);
  double res = 0.0, theta1 = 0.0;
  std::size_t count = 0;
  for (const auto& z : ChartGrid(lo, hi, {17, 17}).points()) {
    if (std::abs(z[0]) > 0.8) continue;
    const auto s = chern::subbundle_split(flat, frame, z, richardson());
    res = std::max(res, s.residual11);
    theta1 = std::max(theta1, std::abs(s.theta1.r11(0, 0)(0, 0) - 1.0 / std::pow(1.0 + std::norm(z[0]), 2)));
    ++count;
  }
  return {res <= 1e-4 && theta1 <= 1e-5,
          fmt("block11 residual %.3e, Theta1 err %.3e over %g points", res, theta1, static_cast<double>(count))};
}

Outcome forms_suite() {
  const auto r = cli::run_selftest();
  double worst_ratio = 0.0;
  std::string failing;
  for (const auto& e : r.entries) {
    worst_ratio = std::max(worst_ratio, e.residual / e.tolerance);
    if (!e.pass) failing += " " + e.name;
  }
  return {r.all_pass(), fmt("%g entries, worst residual/tolerance %.3g", static_cast<double>(r.entries.size()), worst_ratio) +
                            (failing.empty() ? "" : "; failing:" + failing)};
}

Outcome kernel_metric_positivity() {
  std::mt19937_64 rng(55);
  bool ok = true;
  double worst = INFINITY;
  double literal_worst = INFINITY;
  int literal_indefinite = 0;
  int higher_rank = 0;
  for (int c = 0; c < 10; ++c) {
    const int d = c % 2 == 0 ? 1 : 2;
    const Eigen::Index n = 1 + c % 3;
    const Eigen::Index m = n + 1 + c % 2;
    Polynomial e = Polynomial::random(d, n, m, 2, true, rng, 0.5);
    Matrix lead = Matrix::Zero(n, m);
    lead.leftCols(n) = Matrix::Identity(n, n);
    e.add(lead);  // keeps E(z) of full rank near the origin
    const auto k = kernels::KernelSpec::from_sections(e, Matrix::Identity(m, m));
    cli::AnalysisConfig cfg;
    cfg.kernel = k;
    cfg.fd = richardson();
    cfg.fd.second_step = 1e-3;  // rank-deficient Griffiths forms: keep round-off well under neg_tol
    Vector lo(d), hi(d);
    lo.setConstant(Complex(-0.4, -0.4));
    hi.setConstant(Complex(0.4, 0.4));
    const auto pts = ChartGrid(lo, hi, {d == 1 ? 7 : 3}).points();
    const auto r = cli::run_verify_theorem55(cfg, pts);
    if (r["status"] != "pass") {
      ok = false;
      continue;
    }
    worst = std::min(worst, r["conclusion"]["min_margin"].get<double>());
    const double lit = r["kernel_metric"]["min_margin"].get<double>();
    if (n == 1) {
      ok = ok && lit == r["conclusion"]["min_margin"].get<double>();
    } else {
      ++higher_rank;
      literal_worst = std::min(literal_worst, lit);
      if (!r["kernel_metric"]["not_indefinite"].get<bool>()) ++literal_indefinite;
    }
  }
  bool disc_ok = true;
  for (double nu : {1.0, 2.0, 3.0}) {
    cli::AnalysisConfig cfg;
    cfg.kernel = kernels::KernelSpec::disc_power(nu);
    cfg.fd = richardson();
    const auto r = cli::run_verify_theorem55(cfg, disc_grid());
    disc_ok = disc_ok && r["status"] == "pass" && r["conclusion"]["verdict"] == "positive";
  }
  ok = ok && worst >= -1e-6 && disc_ok;
  return {ok, fmt("sections min margin %.3e; disc strictly positive: %s; "
                  "literal K(z,z) metric indefinite on %d/%d rank>1 kernels (min %.3g)",
                  worst, disc_ok ? "yes" : "no", literal_indefinite, higher_rank, literal_worst)};
}

Outcome admissibility_equivalences() {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  struct Case {
    kernels::KernelSpec k;
    ChartPoint s;
    bool expected;
  };
  std::vector<Case> cases;
  for (int c = 0; c < 20; ++c) {
    const ChartPoint s1{Complex(u(rng), u(rng))};
    switch (c % 5) {
      case 0:
        cases.push_back({kernels::KernelSpec::disc_power(1.0 + c / 5), s1, true});
        break;
      case 1: {
        Polynomial e(1, 1, 1);
        e.add(scalar(1.0), {1 + c / 5});
        cases.push_back({kernels::KernelSpec::from_sections(e, Matrix::Identity(1, 1)), ChartPoint{0.0}, false});
        break;
      }
      case 2: {
        // Rank-one 2 x 2 kernel: second row is a multiple of the first.
        Polynomial e(1, 2, 2);
        const Matrix a = random_matrix(1, 2, rng);
        Matrix c0(2, 2);
        c0 << a, 2.0 * a;
        e.add(c0);
        Matrix c1(2, 2);
        const Matrix b = random_matrix(1, 2, rng);
        c1 << b, 2.0 * b;
        e.add(c1, {1});
        cases.push_back({kernels::KernelSpec::from_sections(e, Matrix::Identity(2, 2)), s1, false});
        break;
      }
      case 3: {
        Polynomial e = Polynomial::random(1, 2, 3, 2, true, rng, 0.3);
        Matrix lead = Matrix::Zero(2, 3);
        lead.leftCols(2) = Matrix::Identity(2, 2);
        e.add(lead);
        cases.push_back({kernels::KernelSpec::from_sections(e, Matrix::Identity(3, 3)), s1, true});
        break;
      }
      default: {
        const bool singular = c % 2 == 0;
        Matrix m = Matrix::Identity(2, 2);
        if (singular) m(1, 1) = 0.0;
        cases.push_back({kernels::KernelSpec::constant(m, 1), s1, !singular});
        break;
      }
    }
  }
  int agree = 0, as_expected = 0, failures = 0;
  for (const auto& c : cases) {
    const auto r = kernels::lemma51_consistency(c.k, c.s);
    agree += r.consistent();
    as_expected += r.consistent() && r.invertible == c.expected;
    failures += !c.expected;
  }
  const int n = static_cast<int>(cases.size());
  return {agree == n && as_expected == n,
          fmt("%d/%d consistent, %d matching construction", agree, n, as_expected) + fmt(" (%d failure cases)", failures)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"disc curvature closed form", disc_curvature},
      {"disc connection closed form", disc_connection},
      {"curvature linear in nu", linearity},
      {"Griffiths verdict on the disc", griffiths},
      {"Gram positivity", gram_positivity},
      {"dual curvature", duality},
      {"reproducing and adjoint identities", reproducing},
      {"Hilbert-Schmidt connection", hilbert_schmidt},
      {"subbundle curvature identity", subbundle},
      {"differential form suite", forms_suite},
      {"kernel metrics are Griffiths positive", kernel_metric_positivity},
      {"admissibility equivalences", admissibility_equivalences},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
