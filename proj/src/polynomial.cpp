#include "bck/polynomial.hpp"

#include <functional>

namespace bck {

Polynomial::Polynomial(int dim, Eigen::Index rows, Eigen::Index cols)
    : dim_(dim), rows_(rows), cols_(cols) {
  if (dim < 1 || rows < 1 || cols < 1) {
    throw StructuralError("polynomial dimensions must be >= 1");
  }
}

Polynomial& Polynomial::add(Matrix coeff, std::vector<int> z_exp, std::vector<int> zbar_exp) {
  if (coeff.rows() != rows_ || coeff.cols() != cols_) {
    throw StructuralError("polynomial term has the wrong coefficient shape");
  }
  if (z_exp.empty()) z_exp.assign(static_cast<std::size_t>(dim_), 0);
  if (zbar_exp.empty()) zbar_exp.assign(static_cast<std::size_t>(dim_), 0);
  if (static_cast<int>(z_exp.size()) != dim_ || static_cast<int>(zbar_exp.size()) != dim_) {
    throw StructuralError("polynomial exponent vectors need one entry per chart axis");
  }
  for (std::size_t j = 0; j < z_exp.size(); ++j) {
    if (z_exp[j] < 0 || zbar_exp[j] < 0) throw StructuralError("negative polynomial exponent");
  }
  if (!coeff.allFinite()) throw EvaluationError("polynomial coefficient is not finite");
  terms_.push_back({std::move(z_exp), std::move(zbar_exp), std::move(coeff)});
  return *this;
}

Matrix Polynomial::operator()(const ChartPoint& z) const {
  if (z.dim() != dim_) throw StructuralError("polynomial evaluated at a point of wrong dimension");
  Matrix out = Matrix::Zero(rows_, cols_);
  for (const Term& t : terms_) {
    Complex m(1.0, 0.0);
    for (int j = 0; j < dim_; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      for (int p = 0; p < t.z[ju]; ++p) m *= z[j];
      for (int p = 0; p < t.zbar[ju]; ++p) m *= std::conj(z[j]);
    }
    out += m * t.coeff;
  }
  return out;
}

bool Polynomial::holomorphic() const {
  for (const Term& t : terms_) {
    for (int e : t.zbar) {
      if (e > 0) return false;
    }
  }
  return true;
}

Polynomial Polynomial::conjugated() const {
  Polynomial out(dim_, rows_, cols_);
  for (const Term& t : terms_) out.terms_.push_back({t.z, t.zbar, t.coeff.conjugate()});
  return out;
}

Polynomial Polynomial::random(int dim, Eigen::Index rows, Eigen::Index cols, int degree,
                              bool holomorphic_only, std::mt19937_64& rng, double scale) {
  Polynomial out(dim, rows, cols);
  const int vars = holomorphic_only ? dim : 2 * dim;
  std::vector<int> exps(static_cast<std::size_t>(vars), 0);
  // Enumerate all exponent vectors with total degree <= degree.
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == vars) {
      std::vector<int> ze(exps.begin(), exps.begin() + dim);
      std::vector<int> zb(static_cast<std::size_t>(dim), 0);
      if (!holomorphic_only) zb.assign(exps.begin() + dim, exps.end());
      out.add(random_matrix(rows, cols, rng, scale), ze, zb);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      exps[static_cast<std::size_t>(v)] = e;
      rec(v + 1, left - e);
    }
    exps[static_cast<std::size_t>(v)] = 0;
  };
  rec(0, degree);
  return out;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace bck
