#pragma once

#include "bellstruct/bellpoly.hpp"

namespace bellstruct {

// The two shared XZ-plane measurement angles, A_j = cos(theta_j) Z + sin(theta_j) X.
struct SymmetricAngles {
  double theta0 = 0;
  double theta1 = 0;
};

// tr(rho_WN * T), T a full N-party correlator with k setting-1 factors.
double w_full_correlator(int n, int k, const SymmetricAngles& angles);

// tr(rho_WN * T), T an (N-1)-party correlator with k setting-1 factors,
// via the loss decomposition of rho_WN.
double w_subcorrelator(int n, int k, const SymmetricAngles& angles);

// General order <= N correlator on W_N, iterating the loss decomposition.
double w_correlator(int n, int order, int k, const SymmetricAngles& angles);

// Value of a symmetric polynomial on W_N with identical XZ measurements,
// closed form in the two angles (usable far beyond the dense limit).
double evaluate_w_symmetric(const SymmetricBellPolynomial& poly, int n,
                            const SymmetricAngles& angles);

}  // namespace bellstruct
