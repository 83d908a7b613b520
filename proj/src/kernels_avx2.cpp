// AVX2 kernel variants. Same operation order as the scalar reference, mul+add
// only (no FMA intrinsics), so outputs are bit-identical to scalar.
#include "lattice/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define LATTICE_HAVE_AVX2_BUILD 1
#include <immintrin.h>

#include <cmath>
#include <vector>

namespace lattice {
namespace {

#define LATTICE_TARGET __attribute__((target("avx2")))

LATTICE_TARGET void axpy_v(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

LATTICE_TARGET void scale_v(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= a;
}

LATTICE_TARGET void wrap_torus_v(double* x, double period, std::size_t n) {
  const __m256d vp = _mm256_set1_pd(period);
  const __m256d vinv = _mm256_set1_pd(1.0 / period);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d f = _mm256_floor_pd(_mm256_mul_pd(v, vinv));
    __m256d w = _mm256_sub_pd(v, _mm256_mul_pd(vp, f));
    __m256d mask = _mm256_cmp_pd(w, vp, _CMP_GE_OQ);
    w = _mm256_sub_pd(w, _mm256_and_pd(mask, vp));
    _mm256_storeu_pd(x + i, w);
  }
  const double inv = 1.0 / period;
  for (; i < n; ++i) {
    double w = x[i] - period * std::floor(x[i] * inv);
    if (w >= period) w -= period;
    x[i] = w;
  }
}

LATTICE_TARGET void horner_v(double* out, const double* x, const double* coeffs,
                             int deg, bool accumulate, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    __m256d v = _mm256_set1_pd(coeffs[0]);
    for (int k = 1; k <= deg; ++k)
      v = _mm256_add_pd(_mm256_mul_pd(v, vx), _mm256_set1_pd(coeffs[k]));
    if (accumulate) v = _mm256_add_pd(_mm256_loadu_pd(out + i), v);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    double v = coeffs[0];
    for (int k = 1; k <= deg; ++k) v = v * x[i] + coeffs[k];
    out[i] = accumulate ? out[i] + v : v;
  }
}

LATTICE_TARGET inline __m256d ipow_fixed_v(__m256d d, int power) {
  switch (power) {
    case 1: return d;
    case 2: return _mm256_mul_pd(d, d);
    case 3: return _mm256_mul_pd(_mm256_mul_pd(d, d), d);
    default: {
      __m256d d2 = _mm256_mul_pd(d, d);
      return _mm256_mul_pd(d2, d2);
    }
  }
}

inline double ipow_fixed(double d, int power) {
  switch (power) {
    case 1: return d;
    case 2: return d * d;
    case 3: return (d * d) * d;
    default: return (d * d) * (d * d);
  }
}

LATTICE_TARGET void bond_force_pow_v(double* fi, double* fj, const double* qi,
                                     const double* qj, double c, int power,
                                     std::size_t n) {
  const double cp = c * static_cast<double>(power);
  const __m256d vcp = _mm256_set1_pd(cp);
  std::size_t s = 0;
  for (; s + 4 <= n; s += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(qi + s), _mm256_loadu_pd(qj + s));
    const __m256d g = _mm256_mul_pd(vcp, ipow_fixed_v(d, power - 1));
    _mm256_storeu_pd(fi + s, _mm256_sub_pd(_mm256_loadu_pd(fi + s), g));
    _mm256_storeu_pd(fj + s, _mm256_add_pd(_mm256_loadu_pd(fj + s), g));
  }
  for (; s < n; ++s) {
    const double d = qi[s] - qj[s];
    const double g = cp * ipow_fixed(d, power - 1);
    fi[s] -= g;
    fj[s] += g;
  }
}

LATTICE_TARGET void bond_energy_pow_v(double* acc, const double* qi,
                                      const double* qj, double c, int power,
                                      std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t s = 0;
  for (; s + 4 <= n; s += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(qi + s), _mm256_loadu_pd(qj + s));
    const __m256d e = _mm256_mul_pd(vc, ipow_fixed_v(d, power));
    _mm256_storeu_pd(acc + s, _mm256_add_pd(_mm256_loadu_pd(acc + s), e));
  }
  for (; s < n; ++s) {
    const double d = qi[s] - qj[s];
    acc[s] += c * ipow_fixed(d, power);
  }
}

LATTICE_TARGET void accum_half_sq_v(double* acc, const double* p, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t s = 0;
  for (; s + 4 <= n; s += 4) {
    const __m256d v = _mm256_loadu_pd(p + s);
    const __m256d e = _mm256_mul_pd(half, _mm256_mul_pd(v, v));
    _mm256_storeu_pd(acc + s, _mm256_add_pd(_mm256_loadu_pd(acc + s), e));
  }
  for (; s < n; ++s) acc[s] += 0.5 * (p[s] * p[s]);
}

LATTICE_TARGET void sqdist_block_v(double* out, const double* query,
                                   const double* pts, std::size_t dim,
                                   std::size_t m) {
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) _mm256_storeu_pd(out + j, _mm256_setzero_pd());
  for (; j < m; ++j) out[j] = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const __m256d qd = _mm256_set1_pd(query[d]);
    const double* row = pts + d * m;
    j = 0;
    for (; j + 4 <= m; j += 4) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(row + j), qd);
      const __m256d acc =
          _mm256_add_pd(_mm256_loadu_pd(out + j), _mm256_mul_pd(diff, diff));
      _mm256_storeu_pd(out + j, acc);
    }
    const double qs = query[d];
    for (; j < m; ++j) {
      const double diff = row[j] - qs;
      out[j] += diff * diff;
    }
  }
}

// Same halving tree as the scalar reference: level k adds (buf[2i], buf[2i+1]).
LATTICE_TARGET double sum_pairwise_v(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> buf(x, x + n);
  std::size_t len = n;
  while (len > 1) {
    const std::size_t half = len / 2;
    std::size_t i = 0;
    for (; i + 4 <= half; i += 4) {
      const __m256d a = _mm256_loadu_pd(buf.data() + 2 * i);      // pairs 0,1
      const __m256d b = _mm256_loadu_pd(buf.data() + 2 * i + 4);  // pairs 2,3
      const __m256d even = _mm256_unpacklo_pd(a, b);  // a0 b0 a2 b2
      const __m256d odd = _mm256_unpackhi_pd(a, b);   // a1 b1 a3 b3
      __m256d s = _mm256_add_pd(even, odd);  // a0+a1, b0+b1, a2+a3, b2+b3
      s = _mm256_permute4x64_pd(s, _MM_SHUFFLE(3, 1, 2, 0));
      _mm256_storeu_pd(buf.data() + i, s);
    }
    for (; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len & 1) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

LATTICE_TARGET double max_abs_v(const double* x, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vm = _mm256_max_pd(vm, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, vm);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

LATTICE_TARGET double max_abs_diff_v(const double* a, const double* b, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vm = _mm256_max_pd(vm, _mm256_and_pd(absmask, d));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, vm);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    if (v > m) m = v;
  }
  return m;
}

const KernelTable avx2_table = {
    "avx2",       axpy_v,          scale_v,          wrap_torus_v,
    horner_v,     bond_force_pow_v, bond_energy_pow_v, accum_half_sq_v,
    sqdist_block_v, sum_pairwise_v, max_abs_v,       max_abs_diff_v,
};

}  // namespace

const KernelTable* avx2_kernels() {
  if (__builtin_cpu_supports("avx2")) return &avx2_table;
  return nullptr;
}

}  // namespace lattice

#else  // non-x86 build: no AVX2 variant

namespace lattice {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace lattice

#endif
