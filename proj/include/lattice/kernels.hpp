// Runtime-dispatched arithmetic kernels: scalar reference implementations plus
// AVX2 variants selected at startup. Both paths perform the same operations in
// the same order (no FMA contraction), so results are bit-identical; the
// equivalence suite asserts this on random inputs.
#pragma once

#include <cstddef>
#include <string>

namespace lattice {

struct KernelTable {
  const char* name;

  // y[i] += a * x[i]
  void (*axpy)(double* y, const double* x, double a, std::size_t n);
  // x[i] *= a
  void (*scale)(double* x, double a, std::size_t n);
  // wrap x[i] into [0, period)
  void (*wrap_torus)(double* x, double period, std::size_t n);
  // out[i] (+)= Horner(coeffs, x[i]); coeffs[0] is the leading coefficient,
  // coeffs[deg] the constant term. accumulate=false overwrites.
  void (*horner)(double* out, const double* x, const double* coeffs, int deg,
                 bool accumulate, std::size_t n);
  // Pair-power bond update: d = qi[s]-qj[s]; fi[s] -= c*p*d^(p-1); fj[s] += same.
  void (*bond_force_pow)(double* fi, double* fj, const double* qi, const double* qj,
                         double c, int power, std::size_t n);
  // acc[s] += c * (qi[s]-qj[s])^power
  void (*bond_energy_pow)(double* acc, const double* qi, const double* qj,
                          double c, int power, std::size_t n);
  // acc[s] += 0.5 * p[s]*p[s]
  void (*accum_half_sq)(double* acc, const double* p, std::size_t n);
  // out[j] = sum_d (pts[d*m+j] - query[d])^2  (pts transposed: dim rows of m)
  void (*sqdist_block)(double* out, const double* query, const double* pts,
                       std::size_t dim, std::size_t m);
  // Fixed-tree pairwise reduction; identical association in every variant.
  double (*sum_pairwise)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

// Active table (AVX2 when the CPU supports it, unless overridden).
const KernelTable& kernels();

// Force a specific variant ("scalar" or "avx2"); returns false if unavailable.
// Also honors the LATTICE_KERNELS environment variable at first use.
bool set_kernel_variant(const std::string& name);

const KernelTable& scalar_kernels();
const KernelTable* avx2_kernels();  // nullptr when not compiled in / unsupported

}  // namespace lattice
