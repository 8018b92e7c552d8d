#pragma once

#include <cmath>
#include <random>

#include "bck/core.hpp"

namespace bck::test {

inline Matrix scalar(Complex c) { return Matrix::Constant(1, 1, c); }

inline Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline Matrix random_hpd(int n, std::mt19937_64& rng, double shift = 1.0) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a * a.adjoint() + shift * Matrix::Identity(n, n);
}

inline FdOptions richardson() {
  FdOptions o;
  o.richardson = true;
  return o;
}

}  // namespace bck::test
