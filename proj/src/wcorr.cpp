#include "bellstruct/wcorr.hpp"

#include <cmath>
#include <stdexcept>

namespace bellstruct {

namespace {

double pow_nonneg(double base, int exp) { return exp < 0 ? 0.0 : std::pow(base, exp); }

}  // namespace

double w_full_correlator(int n, int k, const SymmetricAngles& angles) {
  // n = 1 is a valid recursion base: <1|A|1> = -cos(theta).
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("setting count out of range");
  double c0 = std::cos(angles.theta0), s0 = std::sin(angles.theta0);
  double c1 = std::cos(angles.theta1), s1 = std::sin(angles.theta1);
  double value = -pow_nonneg(c0, n - k) * pow_nonneg(c1, k);
  double bracket = 0;
  if (k >= 2)
    bracket += binomial(k, 2) * pow_nonneg(c0, n - k) * s1 * s1 * pow_nonneg(c1, k - 2);
  if (k >= 1 && k <= n - 1)
    bracket += static_cast<double>(k) * (n - k) * pow_nonneg(c0, n - k - 1) * s0 * s1 *
               pow_nonneg(c1, k - 1);
  if (n - k >= 2)
    bracket += binomial(n - k, 2) * pow_nonneg(c0, n - k - 2) * s0 * s0 * pow_nonneg(c1, k);
  return value + 2.0 / n * bracket;
}

double w_subcorrelator(int n, int k, const SymmetricAngles& angles) {
  if (k < 0 || k > n - 1) throw std::invalid_argument("setting count out of range");
  return w_correlator(n, n - 1, k, angles);
}

double w_correlator(int n, int order, int k, const SymmetricAngles& angles) {
  if (order < 1 || order > n || k < 0 || k > order)
    throw std::invalid_argument("correlator shape out of range");
  if (order == n) return w_full_correlator(n, k, angles);
  // One loss step: rho_Wn = (1/n)|0..0><0..0| + (1 - 1/n) rho_W(n-1) on the
  // remaining parties; <0|A_j|0> = cos(theta_j).
  double c0 = std::cos(angles.theta0), c1 = std::cos(angles.theta1);
  double product = pow_nonneg(c0, order - k) * pow_nonneg(c1, k);
  return product / n + (1.0 - 1.0 / n) * w_correlator(n - 1, order, k, angles);
}

double evaluate_w_symmetric(const SymmetricBellPolynomial& poly, int n,
                            const SymmetricAngles& angles) {
  if (poly.n_parties != n) throw std::invalid_argument("party-count mismatch");
  double value = 0;
  for (const auto& [key, coeff] : poly.coeffs) {
    auto [k, m] = key;
    double terms = static_cast<double>(binomial(n, k)) * static_cast<double>(binomial(k, m));
    value += boost::rational_cast<double>(coeff) * terms * w_correlator(n, k, m, angles);
  }
  return value;
}

}  // namespace bellstruct
