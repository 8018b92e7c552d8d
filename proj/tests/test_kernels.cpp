#include <gtest/gtest.h>

#include <random>

#include "bck/forms.hpp"
#include "bck/kernels.hpp"
#include "support.hpp"

using namespace bck;
using namespace bck::kernels;
using test::scalar;
using test::vec;

namespace {

// E(z) = [z^e_0, z^e_1, ...] as a 1 x m polynomial on C^1.
Polynomial monomial_row(const std::vector<int>& exps) {
  Polynomial p(1, 1, static_cast<Eigen::Index>(exps.size()));
  for (std::size_t i = 0; i < exps.size(); ++i) {
    Matrix c = Matrix::Zero(1, static_cast<Eigen::Index>(exps.size()));
    c(0, static_cast<Eigen::Index>(i)) = 1.0;
    p.add(c, {exps[i]});
  }
  return p;
}

KernelSpec sections_kernel(const std::vector<int>& exps) {
  const auto m = static_cast<Eigen::Index>(exps.size());
  return KernelSpec::from_sections(monomial_row(exps), Matrix::Identity(m, m));
}

std::vector<KernelSpec> builtins() {
  std::mt19937_64 rng(4);
  return {KernelSpec::disc_power(1.0), KernelSpec::disc_power(2.5),
          sections_kernel({0, 1, 2}),
          KernelSpec::from_sections(Polynomial::random(2, 2, 3, 2, true, rng), test::random_hpd(3, rng)),
          KernelSpec::universal_grassmann(4, 2),
          KernelSpec::constant(test::random_hpd(2, rng), 1)};
}

}  // namespace

TEST(EvalKernel, DiscPowerClosedForm) {
  const KernelSpec k = KernelSpec::disc_power(2.0);
  EXPECT_NEAR(std::abs(k.eval(ChartPoint{0.5}, ChartPoint{0.5})(0, 0) - 16.0 / 9.0), 0.0, 1e-14);
  for (double nu : {1.0, 2.0, 3.7}) {
    EXPECT_NEAR(std::abs(KernelSpec::disc_power(nu).eval(ChartPoint{0.0}, ChartPoint{Complex(0.3, 0.6)})(0, 0) - 1.0),
                0.0, 1e-15);
  }
}

TEST(EvalKernel, FromSectionsExpands) {
  const KernelSpec k = sections_kernel({0, 1});
  const Complex z(0.3, -0.2), w(-0.5, 0.7);
  EXPECT_NEAR(std::abs(k.eval(ChartPoint{z}, ChartPoint{w})(0, 0) - (1.0 + z * std::conj(w))), 0.0, 1e-15);
}

TEST(EvalKernel, OutsideDomainIsDomainError) {
  EXPECT_THROW(KernelSpec::disc_power(1.0).eval(ChartPoint{1.0}, ChartPoint{0.0}), DomainError);
  EXPECT_THROW(KernelSpec::disc_power(1.0).eval(ChartPoint{0.0}, ChartPoint{Complex(0.8, 0.8)}), DomainError);
}

TEST(KernelSpec, RejectsInvalidParameters) {
  EXPECT_THROW(KernelSpec::disc_power(0.5), Error);
  EXPECT_THROW(KernelSpec::from_sections(monomial_row({0, 1}), Matrix::Identity(3, 3)), Error);
  Matrix g(2, 2);
  g << 1.0, 2.0, 2.0, 1.0;  // indefinite
  EXPECT_THROW(KernelSpec::from_sections(monomial_row({0, 1}), g), StructuralError);
  EXPECT_THROW(KernelSpec::universal_grassmann(2, 2), Error);
}

TEST(KernelProperties, HermitianSymmetryOnRandomPairs) {
  for (const auto& k : builtins()) {
    const auto pts = sample_points(k, 200, 31, 0.6);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const Matrix a = k.eval(pts[i], pts[i + 1]);
      const Matrix b = k.eval(pts[i + 1], pts[i]);
      EXPECT_LE(max_abs(a.adjoint() - b), 1e-12 * std::max(1.0, max_abs(a))) << k.name();
    }
  }
}

TEST(Gram, SinglePointAndDiscPair) {
  const KernelSpec k = KernelSpec::disc_power(1.0);
  const GramMatrix one = gram(k, {ChartPoint{0.3}});
  EXPECT_EQ(one.assembled.rows(), 1);
  EXPECT_NEAR(one.assembled(0, 0).real(), 1.0 / 0.91, 1e-14);

  const GramMatrix g = gram(k, {ChartPoint{0.0}, ChartPoint{0.5}});
  Matrix expected(2, 2);
  expected << 1.0, 1.0, 1.0, 4.0 / 3.0;
  EXPECT_LT(max_abs(g.assembled - expected), 1e-14);
  EXPECT_LT(max_abs(g.block(0, 1) - g.block(1, 0).adjoint()), 1e-15);
}

TEST(Gram, ConstantKernelRepeatsBlock) {
  std::mt19937_64 rng(1);
  const Matrix m = test::random_hpd(2, rng);
  const KernelSpec k = KernelSpec::constant(m, 1);
  const GramMatrix g = gram(k, {ChartPoint{0.0}, ChartPoint{1.0}, ChartPoint{kI}});
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(max_abs(g.block(l, j) - m), 1e-15);
}

TEST(PsdCheck, DiscKernelAndPseudoKernel) {
  const KernelSpec k = KernelSpec::disc_power(1.0);
  const auto r = psd_check(gram(k, sample_points(k, 10, 3, 0.9)));
  EXPECT_GE(r.margin, -1e-10);
  EXPECT_TRUE(r.psd);

  const KernelSpec neg = KernelSpec::constant(scalar(-1.0), 1);
  EXPECT_TRUE(neg.pseudo());
  const auto rn = psd_check(gram(neg, {ChartPoint{0.0}, ChartPoint{1.0}, ChartPoint{2.0}}));
  EXPECT_NEAR(rn.margin, -3.0, 1e-12);
  EXPECT_FALSE(rn.psd);

  const auto single = psd_check(gram(k, {ChartPoint{0.6}}));
  EXPECT_NEAR(single.margin, 1.0 / 0.64, 1e-12);
}

TEST(PsdCheck, NonHermitianAssemblyIsStructuralError) {
  const KernelSpec bad = KernelSpec::user_hook(
      [](const ChartPoint& z, const ChartPoint&) { return scalar(1.0 + z[0]); }, 1, 1,
      Domain::whole(1));
  EXPECT_THROW(psd_check(gram(bad, {ChartPoint{0.0}, ChartPoint{kI}})), StructuralError);
}

TEST(PsdProperties, BuiltinsStayPsdOnRandomSets) {
  for (const auto& k : builtins()) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = psd_check(gram(k, sample_points(k, 50, seed, 0.9)));
      EXPECT_GE(r.margin, -1e-8) << k.name();
    }
  }
}

TEST(RkhsInner, ExamplesAndConjugateSymmetry) {
  const KernelSpec k = KernelSpec::disc_power(1.0);
  const Generator a{vec({1.0}), ChartPoint{0.0}};
  const Generator b{vec({1.0}), ChartPoint{0.7}};
  EXPECT_NEAR(std::abs(rkhs_inner(k, a, b) - 1.0), 0.0, 1e-15);
  EXPECT_GE(rkhs_inner(k, b, b).real(), 0.0);

  std::mt19937_64 rng(8);
  const KernelSpec k2 = KernelSpec::from_sections(Polynomial::random(1, 2, 3, 2, true, rng), Matrix::Identity(3, 3));
  const Generator c{test::random_vector(2, rng), ChartPoint{Complex(0.1, 0.2)}};
  const Generator d{test::random_vector(2, rng), ChartPoint{Complex(-0.4, 0.3)}};
  EXPECT_NEAR(std::abs(rkhs_inner(k2, c, d) - std::conj(rkhs_inner(k2, d, c))), 0.0, 1e-12);
}

TEST(RkhsInner, GrassmannOrthogonalGenerators) {
  const KernelSpec k = KernelSpec::universal_grassmann(4, 2);
  const ChartPoint s = grassmann_point(Matrix::Constant(2, 2, Complex(0.2, -0.1)));
  const Generator a{vec({1.0, 0.0}), s};
  const Generator b{vec({0.0, 1.0}), s};
  EXPECT_NEAR(std::abs(rkhs_inner(k, a, b)), 0.0, 1e-14);
}

TEST(RkhsModel, InnerProductMatchesGramQuadraticForm) {
  std::mt19937_64 rng(12);
  const KernelSpec k = KernelSpec::disc_power(2.0);
  std::vector<Generator> gens;
  for (const auto& p : sample_points(k, 4, 5, 0.7)) gens.push_back({test::random_vector(1, rng), p});
  const RkhsModel m(k, gens);
  const Vector c = test::random_vector(4, rng);
  const Vector d = test::random_vector(4, rng);
  Complex direct = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int l = 0; l < 4; ++l)
      direct += c(l) * std::conj(d(i)) * rkhs_inner(k, gens[static_cast<std::size_t>(l)], gens[static_cast<std::size_t>(i)]);
  EXPECT_NEAR(std::abs(m.inner(c, d) - direct), 0.0, 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST(ReproducingCheck, GeneratorsAndCombinations) {
  const KernelSpec k1 = KernelSpec::disc_power(1.0);
  const RkhsModel one(k1, {{vec({1.0}), ChartPoint{0.0}}});
  EXPECT_LE(reproducing_check(one, vec({1.0}), {vec({1.0}), ChartPoint{Complex(0.3, 0.5)}}), 1e-12);
  EXPECT_NEAR(std::abs(one.value(vec({1.0}), ChartPoint{0.6})(0) - 1.0), 0.0, 1e-15);

  std::mt19937_64 rng(14);
  const KernelSpec k2 = KernelSpec::disc_power(2.0);
  std::vector<Generator> gens;
  for (const auto& p : sample_points(k2, 3, 9, 0.8)) gens.push_back({test::random_vector(1, rng), p});
  const RkhsModel m(k2, gens);
  EXPECT_LE(reproducing_check(m, test::random_vector(3, rng), {vec({Complex(0.3, 1.0)}), ChartPoint{-0.2}}), 1e-9);
}

TEST(EvaluationAdjoint, ClosedFormAndOrthogonalSubspaces) {
  const KernelSpec k = KernelSpec::disc_power(2.0);
  EXPECT_LE(evaluation_adjoint_check(k, ChartPoint{0.2}, ChartPoint{Complex(0.0, -0.4)}, vec({1.0}), vec({1.0})), 1e-12);
  EXPECT_LE(evaluation_adjoint_check(k, ChartPoint{0.2}, ChartPoint{0.2}, vec({2.0}), vec({2.0})), 1e-12);

  const KernelSpec g = KernelSpec::universal_grassmann(2, 1);
  // Chart coordinate 0 is span(e1); coordinate -1/1 spans (1,-1), orthogonal to (1,1).
  const Matrix q = g.eval(ChartPoint{1.0}, ChartPoint{-1.0});
  EXPECT_NEAR(std::abs(q(0, 0)), 0.0, 1e-15);
  EXPECT_LE(evaluation_adjoint_check(g, ChartPoint{1.0}, ChartPoint{-1.0}, vec({1.0}), vec({1.0})), 1e-12);
}

TEST(UniversalKernel, IdentityOrthogonalAndDiagonal) {
  const Subspace s1(vec({1.0, 0.0}));
  const Subspace s2(vec({1.0, 1.0}));
  const Subspace s3(vec({0.0, 2.0}));
  EXPECT_NEAR(std::abs(universal_kernel(s1, s1)(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(universal_kernel(s1, s3)(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(universal_kernel(s1, s2)(0, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_THROW(universal_kernel(s1, Subspace(vec({1.0, 0.0, 0.0}))), Error);
}

TEST(Subspace, OrthonormalBasisAndRankCheck) {
  std::mt19937_64 rng(6);
  const Subspace s(random_matrix(6, 3, rng));
  EXPECT_LT(max_abs(s.basis().adjoint() * s.basis() - Matrix::Identity(3, 3)), 1e-12);
  Matrix dep = random_matrix(4, 2, rng);
  dep.col(1) = 2.0 * dep.col(0);
  EXPECT_THROW(Subspace{dep}, StructuralError);
}

TEST(Admissibility, Examples) {
  const auto a = admissibility(KernelSpec::disc_power(3.0), ChartPoint{0.5});
  EXPECT_TRUE(a.invertible);
  EXPECT_NEAR(a.smallest_singular_value, std::pow(0.75, -3.0), 1e-12);
  EXPECT_FALSE(admissibility(sections_kernel({1}), ChartPoint{0.0}).invertible);
  const KernelSpec g = KernelSpec::universal_grassmann(5, 2);
  const ChartPoint s = grassmann_point(Matrix::Constant(3, 2, Complex(0.3, 0.1)));
  EXPECT_LT(max_abs(g.eval(s, s) - Matrix::Identity(2, 2)), 1e-12);
  EXPECT_TRUE(admissibility(g, s).invertible);
}

TEST(AdmissibilityEquivalences, ExamplesAgree) {
  const auto disc = lemma51_consistency(KernelSpec::disc_power(1.0), ChartPoint{0.3});
  EXPECT_TRUE(disc.injective && disc.invertible && disc.surjective && disc.evaluation_onto);
  const auto zero = lemma51_consistency(sections_kernel({1}), ChartPoint{0.0});
  EXPECT_TRUE(zero.consistent());
  EXPECT_FALSE(zero.invertible);
  const auto id = lemma51_consistency(KernelSpec::constant(Matrix::Identity(2, 2), 2), ChartPoint{0.7, -3.0});
  EXPECT_TRUE(id.consistent() && id.invertible);
}

TEST(DualKernel, ConjugationRules) {
  const KernelSpec k = KernelSpec::disc_power(2.0);
  const KernelSpec kd = dual_kernel(k);
  const ChartPoint z{Complex(0.3, 0.4)}, w{Complex(-0.1, 0.6)};
  EXPECT_LT(max_abs(kd.eval(z, w) - k.eval(z, w)), 1e-14);
  for (const auto& p : sample_points(k, 10, 2, 0.9)) {
    EXPECT_EQ(admissibility(k, p).invertible, admissibility(kd, p.conjugated()).invertible);
  }

  std::mt19937_64 rng(3);
  const Matrix m = test::random_hpd(2, rng);
  const KernelSpec c = dual_kernel(KernelSpec::constant(m, 1));
  EXPECT_LT(max_abs(c.eval(z, w) - m.transpose()), 1e-15);

  const Polynomial e = Polynomial::random(1, 1, 2, 2, true, rng);
  const KernelSpec s = KernelSpec::from_sections(e, Matrix::Identity(2, 2));
  const KernelSpec sd = dual_kernel(s);
  EXPECT_LT(max_abs(sd.eval(z, w) - s.eval(z.conjugated(), w.conjugated()).conjugate()), 1e-13);
}

TEST(KernelProperties, FromSectionsHolomorphicInFirstArgument) {
  std::mt19937_64 rng(19);
  const KernelSpec k = KernelSpec::from_sections(Polynomial::random(1, 2, 3, 3, true, rng), test::random_hpd(3, rng));
  const ChartPoint w{Complex(0.2, -0.3)};
  const Vector xi = test::random_vector(2, rng);
  const ChartGrid grid(vec({Complex(-0.5, -0.5)}), vec({Complex(0.5, 0.5)}), {5, 5});
  const double r = forms::cauchy_riemann_residual([&](const ChartPoint& z) -> Matrix { return k.eval(z, w) * xi; },
                                                  grid, k.domain());
  EXPECT_LE(r, 1e-8);
}

TEST(KernelProperties, TruncationConvergesToDisc) {
  const KernelSpec disc = KernelSpec::disc_power(1.0);
  const double zmax = 0.6;
  for (int m : {3, 6, 10}) {
    std::vector<int> exps;
    for (int i = 0; i <= m; ++i) exps.push_back(i);
    const KernelSpec k = sections_kernel(exps);
    const double bound = std::pow(zmax, m + 1) / (1.0 - zmax);
    double err = 0.0;
    for (const auto& z : sample_points(disc, 30, static_cast<std::uint64_t>(m), zmax / std::sqrt(2.0))) {
      for (const auto& w : sample_points(disc, 5, 99, zmax / std::sqrt(2.0))) {
        err = std::max(err, std::abs(k.eval(z, w)(0, 0) - disc.eval(z, w)(0, 0)));
      }
    }
    EXPECT_LE(err, bound);
  }
}

TEST(SamplePoints, DeterministicAndInsideDomain) {
  const KernelSpec k = KernelSpec::disc_power(1.0);
  const auto a = sample_points(k, 20, 42);
  const auto b = sample_points(k, 20, 42);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].coords(), b[i].coords());
    EXPECT_LT(std::abs(a[i][0]), 1.0);
  }
}
