#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aao/toeplitz.hpp"

namespace aao {

/// Convolution-quadrature weights for a Caputo derivative of order alpha,
/// piecewise-linear (L1) flavor. With b_j = ((j+1)^{1-a} - j^{1-a}) / G(2-a):
///   l[0] = b_0,  l[k] = b_k - b_{k-1},  init_weight[n-1] = -b_{n-1}.
/// l[0] > 0, l[k] < 0 for k >= 1, and the weights of each row sum to zero,
/// so constant histories differentiate to exactly zero. The quadrature is
/// exact on piecewise-linear functions.
///
/// Other quadratures of the same convolution form can be dropped in by
/// constructing this struct from a different weight generator; everything
/// downstream consumes only the stored coefficients.
struct L1Weights {
  double alpha = 0.0;
  std::vector<double> l;            // convolution coefficients l_k
  std::vector<double> init_weight;  // init_weight[n-1] multiplies psi at step n
};

inline L1Weights l1_weights(double alpha, std::size_t n_steps) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("l1_weights: alpha must lie in (0,1)");
  if (n_steps == 0)
    throw std::invalid_argument("l1_weights: need at least one time step");

  const double inv_gamma = 1.0 / std::tgamma(2.0 - alpha);
  std::vector<double> b(n_steps);
  for (std::size_t j = 0; j < n_steps; ++j) {
    b[j] = (std::pow(static_cast<double>(j + 1), 1.0 - alpha) -
            std::pow(static_cast<double>(j), 1.0 - alpha)) *
           inv_gamma;
  }

  L1Weights w;
  w.alpha = alpha;
  w.l.resize(n_steps);
  w.init_weight.resize(n_steps);
  w.l[0] = b[0];
  for (std::size_t k = 1; k < n_steps; ++k) w.l[k] = b[k] - b[k - 1];
  for (std::size_t n = 1; n <= n_steps; ++n) w.init_weight[n - 1] = -b[n - 1];
  return w;
}

/// Time discretization matrix: lower-triangular Toeplitz with first column
/// tau^{-alpha} l_k.
inline LowerTriangularToeplitz build_time_matrix(const L1Weights& w,
                                                 double tau) {
  if (!(tau > 0.0))
    throw std::invalid_argument("build_time_matrix: tau must be positive");
  const double scale = std::pow(tau, -w.alpha);
  LowerTriangularToeplitz t;
  t.first_col.resize(w.l.size());
  for (std::size_t k = 0; k < w.l.size(); ++k) t.first_col[k] = scale * w.l[k];
  return t;
}

}  // namespace aao
