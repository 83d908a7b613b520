#include "lattice/potential.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace lattice {

double PotentialSpec::value(double q) const {
  if (kind == Kind::Polynomial) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * q + coeffs[k];
    return v;
  }
  double v = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    v += coeffs[k] * (1.0 - std::cos((k + 1) * q));
  return v;
}

double PotentialSpec::grad(double q) const {
  if (kind == Kind::Polynomial) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
      v = v * q + coeffs[k] * static_cast<double>(k);
    return v;
  }
  double v = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    v += coeffs[k] * (k + 1) * std::sin((k + 1) * q);
  return v;
}

double PotentialSpec::hess(double q) const {
  if (kind == Kind::Polynomial) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 2;)
      v = v * q + coeffs[k] * static_cast<double>(k) * static_cast<double>(k - 1);
    return v;
  }
  double v = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    v += coeffs[k] * (k + 1) * (k + 1) * std::cos((k + 1) * q);
  return v;
}

int PotentialSpec::degree() const {
  if (kind != Kind::Polynomial) return 0;
  for (std::size_t k = coeffs.size(); k-- > 0;)
    if (coeffs[k] != 0.0) return static_cast<int>(k);
  return 0;
}

std::vector<double> PotentialSpec::horner_value_coeffs() const {
  std::vector<double> out(coeffs.rbegin(), coeffs.rend());
  if (out.empty()) out.push_back(0.0);
  return out;
}

std::vector<double> PotentialSpec::horner_neg_grad_coeffs() const {
  // d/dq of ascending coeffs, negated, in descending order
  std::vector<double> out;
  for (std::size_t k = coeffs.size(); k-- > 1;)
    out.push_back(-coeffs[k] * static_cast<double>(k));
  if (out.empty()) out.push_back(0.0);
  return out;
}

namespace {

inline double ipow(double x, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= x;
  return v;
}

}  // namespace

double BodySpec::value(const double* q) const {
  switch (kind) {
    case Kind::PairPower: {
      double v = 0.0;
      for (int c = 0; c < site_dim; ++c) {
        const double d = q[c] - q[site_dim + c];
        v += coeff * ipow(d, power);
      }
      return v;
    }
    case Kind::PairCosine:
      return coeff * (1.0 - std::cos(q[0] - q[1]));
    case Kind::Multinomial: {
      double v = 0.0;
      for (const auto& t : mono) {
        double m = t.coeff;
        for (int i = 0; i < arity; ++i) m *= ipow(q[i], t.powers[i]);
        v += m;
      }
      return v;
    }
  }
  return 0.0;
}

void BodySpec::grad(const double* q, double* out) const {
  const int n = n_coords();
  std::memset(out, 0, sizeof(double) * n);
  switch (kind) {
    case Kind::PairPower: {
      for (int c = 0; c < site_dim; ++c) {
        const double d = q[c] - q[site_dim + c];
        const double g = coeff * power * ipow(d, power - 1);
        out[c] += g;
        out[site_dim + c] -= g;
      }
      return;
    }
    case Kind::PairCosine: {
      const double g = coeff * std::sin(q[0] - q[1]);
      out[0] += g;
      out[1] -= g;
      return;
    }
    case Kind::Multinomial: {
      for (const auto& t : mono) {
        for (int i = 0; i < arity; ++i) {
          if (t.powers[i] == 0) continue;
          double m = t.coeff * t.powers[i] * ipow(q[i], t.powers[i] - 1);
          for (int j = 0; j < arity; ++j)
            if (j != i) m *= ipow(q[j], t.powers[j]);
          out[i] += m;
        }
      }
      return;
    }
  }
}

void BodySpec::hessian(const double* q, double* out) const {
  const int n = n_coords();
  std::memset(out, 0, sizeof(double) * n * n);
  switch (kind) {
    case Kind::PairPower: {
      for (int c = 0; c < site_dim; ++c) {
        const double d = q[c] - q[site_dim + c];
        const double h = coeff * power * (power - 1) * ipow(d, power - 2);
        const int u = c, v = site_dim + c;
        out[u * n + u] += h;
        out[v * n + v] += h;
        out[u * n + v] -= h;
        out[v * n + u] -= h;
      }
      return;
    }
    case Kind::PairCosine: {
      const double h = coeff * std::cos(q[0] - q[1]);
      out[0] += h;
      out[3] += h;
      out[1] -= h;
      out[2] -= h;
      return;
    }
    case Kind::Multinomial: {
      for (const auto& t : mono) {
        for (int i = 0; i < arity; ++i) {
          for (int j = 0; j < arity; ++j) {
            double m = t.coeff;
            bool zero = false;
            for (int k = 0; k < arity; ++k) {
              int e = t.powers[k];
              if (k == i) {
                if (e == 0) { zero = true; break; }
                m *= e;
                --e;
              }
              if (k == j) {
                if (e == 0) { zero = true; break; }
                m *= e;
                --e;
              }
              m *= ipow(q[k], e);
            }
            if (!zero) out[i * n + j] += m;
          }
        }
      }
      return;
    }
  }
}

int BodySpec::max_degree() const {
  switch (kind) {
    case Kind::PairPower: return power;
    case Kind::PairCosine: return 0;
    case Kind::Multinomial: {
      int d = 0;
      for (const auto& t : mono) {
        int s = 0;
        for (int e : t.powers) s += e;
        d = std::max(d, s);
      }
      return d;
    }
  }
  return 0;
}

}  // namespace lattice
