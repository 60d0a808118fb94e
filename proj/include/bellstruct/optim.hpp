#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "bellstruct/bellpoly.hpp"
#include "bellstruct/qstate.hpp"
#include "bellstruct/wcorr.hpp"

namespace bellstruct {

struct OptimizationConfig {
  int restarts = 20;
  int grid_resolution = 180;
  double convergence_tol = 1e-10;
  int max_iterations = 400;
  unsigned rng_seed = 1;
};

enum class StateFamily { W, GHZ };

struct OptimumReport {
  double value = 0;
  std::vector<double> angles;        // (theta0, theta1) for symmetric searches
  Eigen::VectorXcd state;            // filled when the state was optimized
  std::vector<std::array<Eigen::Vector3d, 2>> scenario;  // see-saw observables
  int history_length = 0;
};

// Grid scan over (theta0, theta1) followed by simplex polish from the best
// config.restarts cells.  W states use the closed form; GHZ states the dense
// path.  Deterministic given the seed; the result is a lower bound on the
// true optimum.
OptimumReport optimize_angles_symmetric(const SymmetricBellPolynomial& poly,
                                        StateFamily family, int n,
                                        const OptimizationConfig& config);

OptimumReport optimize_angles_fixed_state(const SymmetricBellPolynomial& poly,
                                          const PureState& state,
                                          const OptimizationConfig& config);

// Best value over `restarts` random-start simplex polishes of the symmetric
// W-state objective.  Used for bound-consistency sweeps.
double random_restart_max_w(const SymmetricBellPolynomial& poly, int n, int restarts,
                            unsigned seed);

struct Table1Row {
  int n = 0;
  Rational bound;
  double quantum = 0;
  double w = 0;
  double theta0 = 0;
  double theta1 = 0;
};

// Noise resistance of B_N on W_N via the closed-form path.
std::vector<Table1Row> table1(const std::vector<int>& n_list, const OptimizationConfig& config);

// Alternating optimization over state (top Bell-operator eigenvector) and
// per-party observables (closed-form single-qubit update).  Measurements are
// kept in the XZ plane, which is optimal for the polynomials studied here and
// keeps reported states real.
OptimumReport seesaw_max(const SymmetricBellPolynomial& poly, int n,
                         const OptimizationConfig& config);

// Falsification probe: maximize tr(rho(theta) * BellOp) over the
// generalized-GHZ angle and six arbitrary Bloch observables (3 parties).
double ghz_bound_probe(const SymmetricBellPolynomial& poly, int restarts, unsigned seed);

// Objective of the probe at explicit parameters: state c |000> + s |111>,
// observables given as Bloch vectors per party and setting.
double gghz_value(const SymmetricBellPolynomial& poly, double theta,
                  const std::array<std::array<Eigen::Vector3d, 2>, 3>& bloch);

// (a, b, c, d) of the no-violation proof; a^2+b^2+c^2+d^2 <= 8 always.
std::array<double, 4> appendix_c_quantities(double t2_0, double t2_1, double t3_0,
                                            double t3_1);

// Derivative-free simplex minimizer; returns the minimum, x holds the argmin.
double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double>& x, double step, double tol, int max_iter);

}  // namespace bellstruct
