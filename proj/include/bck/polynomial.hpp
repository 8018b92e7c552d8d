#pragma once

// Matrix-valued polynomials in (z, zbar) on C^d. Used for section matrices of
// from_sections kernels, holomorphic frames, and the random form corpus.

#include <cstdint>
#include <random>
#include <vector>

#include "bck/core.hpp"

namespace bck {

class Polynomial {
 public:
  struct Term {
    std::vector<int> z;     // exponent of z_j
    std::vector<int> zbar;  // exponent of conj(z_j)
    Matrix coeff;
  };

  Polynomial(int dim, Eigen::Index rows, Eigen::Index cols);

  int dim() const { return dim_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Adds coeff * z^z_exp * conj(z)^zbar_exp. Empty exponent vectors mean 0.
  Polynomial& add(Matrix coeff, std::vector<int> z_exp = {}, std::vector<int> zbar_exp = {});

  Matrix operator()(const ChartPoint& z) const;

  /// True when no term carries a positive zbar exponent.
  bool holomorphic() const;
  /// Polynomial with conjugated coefficients: p*(z) = conj(p(conj z)).
  Polynomial conjugated() const;

  /// Random polynomial with Gaussian coefficients (scaled by `scale`) and every
  /// monomial of total degree <= degree (in z only when holomorphic_only).
  static Polynomial random(int dim, Eigen::Index rows, Eigen::Index cols, int degree,
                           bool holomorphic_only, std::mt19937_64& rng, double scale = 1.0);

 private:
  int dim_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Term> terms_;
};

/// Gaussian complex matrix with independent N(0, scale^2) real and imaginary parts.
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                     double scale = 1.0);

}  // namespace bck
