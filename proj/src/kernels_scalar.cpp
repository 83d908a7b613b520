// Scalar reference kernels. These define the arithmetic contract: every other
// variant must reproduce them bit for bit. Keep operation order fixed and do
// not introduce fused multiply-adds (the build sets -ffp-contract=off).
#include "lattice/kernels.hpp"

#include <cmath>
#include <vector>

namespace lattice {
namespace {

void axpy_s(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_s(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void wrap_torus_s(double* x, double period, std::size_t n) {
  const double inv = 1.0 / period;
  for (std::size_t i = 0; i < n; ++i) {
    double w = x[i] - period * std::floor(x[i] * inv);
    // floor rounding can land exactly on period; fold it back.
    if (w >= period) w -= period;
    x[i] = w;
  }
}

void horner_s(double* out, const double* x, const double* coeffs, int deg,
              bool accumulate, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = coeffs[0];
    for (int k = 1; k <= deg; ++k) v = v * x[i] + coeffs[k];
    out[i] = accumulate ? out[i] + v : v;
  }
}

inline double ipow_fixed(double d, int power) {
  // power in {1,..,4}: fixed multiply chains shared with the vector variants
  switch (power) {
    case 1: return d;
    case 2: return d * d;
    case 3: return (d * d) * d;
    default: return (d * d) * (d * d);
  }
}

void bond_force_pow_s(double* fi, double* fj, const double* qi, const double* qj,
                      double c, int power, std::size_t n) {
  const double cp = c * static_cast<double>(power);
  for (std::size_t s = 0; s < n; ++s) {
    const double d = qi[s] - qj[s];
    const double g = cp * ipow_fixed(d, power - 1);
    fi[s] -= g;
    fj[s] += g;
  }
}

void bond_energy_pow_s(double* acc, const double* qi, const double* qj,
                       double c, int power, std::size_t n) {
  for (std::size_t s = 0; s < n; ++s) {
    const double d = qi[s] - qj[s];
    acc[s] += c * ipow_fixed(d, power);
  }
}

void accum_half_sq_s(double* acc, const double* p, std::size_t n) {
  for (std::size_t s = 0; s < n; ++s) acc[s] += 0.5 * (p[s] * p[s]);
}

void sqdist_block_s(double* out, const double* query, const double* pts,
                    std::size_t dim, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) out[j] = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double qd = query[d];
    const double* row = pts + d * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double diff = row[j] - qd;
      out[j] += diff * diff;
    }
  }
}

// Pairwise reduction with a fixed tree: one halving level at a time, odd tail
// element carried through unchanged. Every variant implements this exact tree.
double sum_pairwise_s(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> buf(x, x + n);
  std::size_t len = n;
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len & 1) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

double max_abs_s(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

double max_abs_diff_s(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table = {
      "scalar",     axpy_s,          scale_s,          wrap_torus_s,
      horner_s,     bond_force_pow_s, bond_energy_pow_s, accum_half_sq_s,
      sqdist_block_s, sum_pairwise_s, max_abs_s,       max_abs_diff_s,
  };
  return table;
}

}  // namespace lattice
