#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aao/fft.hpp"

namespace aao {

/// Lower-triangular Toeplitz operator, stored as its first column.
/// Invertible iff first_col[0] != 0; the inverse is again of the same form.
struct LowerTriangularToeplitz {
  std::vector<double> first_col;

  std::size_t size() const { return first_col.size(); }
};

/// Half spectrum of the circulant embedding of a lower-triangular Toeplitz
/// matrix. The transposed (upper-triangular) action uses the conjugate
/// spectrum, so one object serves both orientations.
struct ToeplitzSpectrum {
  std::size_t n = 0;       // Toeplitz dimension
  std::size_t padded = 1;  // circulant size, >= 2n-1
  std::vector<std::complex<double>> spec;
};

inline ToeplitzSpectrum toeplitz_spectrum(const std::vector<double>& first_col) {
  const std::size_t n = first_col.size();
  if (n == 0) throw std::invalid_argument("toeplitz_spectrum: empty column");
  ToeplitzSpectrum s;
  s.n = n;
  s.padded = fft::next_fast_size(2 * n - 1);
  std::vector<double> embedded(s.padded, 0.0);
  std::copy(first_col.begin(), first_col.end(), embedded.begin());
  s.spec.resize(s.padded / 2 + 1);
  fft::real_forward(embedded.data(), s.spec.data(), s.padded);
  return s;
}

/// y = T v (transpose=false) or y = T^T v (transpose=true) from a precomputed
/// spectrum. Strided access lets callers transform slices in place.
inline void toeplitz_apply(const ToeplitzSpectrum& s, const double* v,
                           std::ptrdiff_t stride_in, double* y,
                           std::ptrdiff_t stride_out, bool transpose) {
  const std::size_t n = s.n;
  if (n == 1) {
    y[0] = s.spec[0].real() * v[0];
    return;
  }
  std::vector<double> padded(s.padded, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    padded[k] = v[static_cast<std::ptrdiff_t>(k) * stride_in];
  std::vector<std::complex<double>> vspec(s.padded / 2 + 1);
  fft::real_forward(padded.data(), vspec.data(), s.padded);
  if (transpose) {
    for (std::size_t k = 0; k < vspec.size(); ++k)
      vspec[k] *= std::conj(s.spec[k]);
  } else {
    for (std::size_t k = 0; k < vspec.size(); ++k) vspec[k] *= s.spec[k];
  }
  fft::real_inverse(vspec.data(), padded.data(), s.padded);
  for (std::size_t k = 0; k < n; ++k)
    y[static_cast<std::ptrdiff_t>(k) * stride_out] = padded[k];
}

inline std::vector<double> toeplitz_apply(const ToeplitzSpectrum& s,
                                          const std::vector<double>& v,
                                          bool transpose) {
  if (v.size() != s.n)
    throw std::invalid_argument("toeplitz_apply: dimension mismatch");
  std::vector<double> y(v.size());
  toeplitz_apply(s, v.data(), 1, y.data(), 1, transpose);
  return y;
}

/// T v in O(n log n) via circulant embedding.
inline std::vector<double> toeplitz_matvec_lower(
    const LowerTriangularToeplitz& t, const std::vector<double>& v) {
  if (v.size() != t.size())
    throw std::invalid_argument("toeplitz_matvec_lower: dimension mismatch");
  return toeplitz_apply(toeplitz_spectrum(t.first_col), v, false);
}

/// T^T v (upper-triangular action of the same stored column).
inline std::vector<double> toeplitz_matvec_upper(
    const LowerTriangularToeplitz& t, const std::vector<double>& v) {
  if (v.size() != t.size())
    throw std::invalid_argument("toeplitz_matvec_upper: dimension mismatch");
  return toeplitz_apply(toeplitz_spectrum(t.first_col), v, true);
}

namespace detail {

// First trunc coefficients of the product of two polynomials given by their
// leading coefficients. Schoolbook below a small cutoff, FFT above it.
inline std::vector<double> poly_mul_trunc(const double* a, std::size_t la,
                                          const double* b, std::size_t lb,
                                          std::size_t trunc) {
  la = std::min(la, trunc);
  lb = std::min(lb, trunc);
  std::vector<double> out(trunc, 0.0);
  if (la == 0 || lb == 0) return out;
  if (la * lb <= 1024) {
    for (std::size_t i = 0; i < la; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const std::size_t jmax = std::min(lb, trunc - i);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ai * b[j];
    }
    return out;
  }
  const std::size_t full = la + lb - 1;
  const std::size_t padded = fft::next_fast_size(full);
  std::vector<double> buf(padded, 0.0);
  std::copy(a, a + la, buf.begin());
  std::vector<std::complex<double>> fa(padded / 2 + 1);
  fft::real_forward(buf.data(), fa.data(), padded);
  std::fill(buf.begin(), buf.end(), 0.0);
  std::copy(b, b + lb, buf.begin());
  std::vector<std::complex<double>> fb(padded / 2 + 1);
  fft::real_forward(buf.data(), fb.data(), padded);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  fft::real_inverse(fa.data(), buf.data(), padded);
  const std::size_t count = std::min(trunc, full);
  std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(count),
            out.begin());
  return out;
}

}  // namespace detail

/// First column of T^{-1}, computed by Newton iteration on the reciprocal
/// power series (length doubles each step, one polish pass at full length).
/// O(n log n) total.
inline std::vector<double> iltt_inverse_first_column(
    const LowerTriangularToeplitz& t) {
  const auto& g = t.first_col;
  const std::size_t n = g.size();
  if (n == 0)
    throw std::invalid_argument("iltt_inverse_first_column: empty matrix");
  if (g[0] == 0.0)
    throw std::invalid_argument(
        "iltt_inverse_first_column: singular matrix (zero diagonal)");

  std::vector<double> x{1.0 / g[0]};
  std::size_t len = 1;
  auto refine = [&](std::size_t target) {
    // x <- x (2 - g x) mod z^target
    std::vector<double> gx =
        detail::poly_mul_trunc(g.data(), g.size(), x.data(), x.size(), target);
    std::vector<double> xgx =
        detail::poly_mul_trunc(x.data(), x.size(), gx.data(), gx.size(), target);
    std::vector<double> next(target, 0.0);
    for (std::size_t k = 0; k < x.size() && k < target; ++k)
      next[k] = 2.0 * x[k];
    for (std::size_t k = 0; k < target; ++k) next[k] -= xgx[k];
    x = std::move(next);
  };
  while (len < n) {
    len = std::min(2 * len, n);
    refine(len);
  }
  refine(n);
  return x;
}

}  // namespace aao
