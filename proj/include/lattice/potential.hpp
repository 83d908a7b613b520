// Smooth potential families: on-site polynomials / cosine series, and
// interaction bodies (pair powers, pair cosines, small multinomials).
#pragma once

#include <string>
#include <vector>

namespace lattice {

// On-site potential W_0, applied per coordinate and summed when site_dim > 1.
struct PotentialSpec {
  enum class Kind { Polynomial, Cosine };
  Kind kind = Kind::Polynomial;

  // Polynomial: ascending coefficients c0 + c1 q + c2 q^2 + ...
  // Cosine: harmonics[k-1] = amplitude of (1 - cos(k q)).
  std::vector<double> coeffs;

  double value(double q) const;
  double grad(double q) const;
  double hess(double q) const;
  int degree() const;  // polynomial degree (0 for cosine)

  // Descending coefficient arrays for the horner kernel.
  std::vector<double> horner_value_coeffs() const;
  std::vector<double> horner_neg_grad_coeffs() const;
};

// Interaction body on `arity` sites (2 or 3), site coordinates flattened as
// arity * site_dim values ordered by the term's sorted offsets.
struct BodySpec {
  enum class Kind { PairPower, PairCosine, Multinomial };
  Kind kind = Kind::PairPower;
  int arity = 2;
  int site_dim = 1;

  // PairPower: coeff * (q_u - q_v)^power, summed per coordinate.
  // PairCosine: coeff * (1 - cos(q_u - q_v)), site_dim 1.
  double coeff = 0.0;
  int power = 2;

  struct MonoTerm {
    double coeff;
    std::vector<int> powers;  // one exponent per involved site (site_dim 1)
  };
  std::vector<MonoTerm> mono;

  int n_coords() const { return arity * site_dim; }
  double value(const double* q) const;
  void grad(const double* q, double* out) const;           // n_coords values
  void hessian(const double* q, double* out) const;        // n_coords^2 row-major
  int max_degree() const;
};

}  // namespace lattice
