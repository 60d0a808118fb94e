#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bellstruct/bellpoly.hpp"

namespace bellstruct {

using Complex = std::complex<double>;

// Dense pure state on n_parties factors of local dimension d.  Party 0 owns
// the most significant digit of the basis index.
struct PureState {
  int local_dim = 2;
  int n_parties = 0;
  Eigen::VectorXcd amplitudes;
};

struct DensityOperator {
  int local_dim = 2;
  int n_parties = 0;
  Eigen::MatrixXcd entries;
};

// Binary-outcome qubit measurement as a unit Bloch vector.
struct Observable {
  double x = 0, y = 0, z = 1;

  Eigen::Matrix2cd matrix() const;  // x X + y Y + z Z
};

struct MeasurementScenario {
  bool symmetric = false;
  std::vector<std::array<Observable, 2>> parties;  // [party][setting]

  int n_parties() const { return static_cast<int>(parties.size()); }
  // All parties share the XZ-plane pair cos(t) Z + sin(t) X.
  static MeasurementScenario symmetric_xz(int n, double theta0, double theta1);
};

PureState w_state(int n);
PureState ghz_state(int n);
// Schmidt state sum_j amps[j] |j>^(x)N with d = amps.size().
PureState generalized_ghz(const std::vector<Complex>& amps, int n);
PureState dicke_state(int n, int k);
PureState spin_flip(const PureState& state);  // X^(x)N, qubits only

Observable observable_from_xz_angle(double theta);          // cos t Z + sin t X
Observable observable_xy_with_z(double t, double phi);      // cos t (cos phi X + sin phi Y) + sin t Z

DensityOperator density(const PureState& state);

// Dense Bell operator with the scenario's observables substituted and
// identity on omitted parties.  Qubits only; n_parties <= 14.
Eigen::MatrixXcd bell_operator(const SymmetricBellPolynomial& poly,
                               const MeasurementScenario& scenario);

double expectation(const PureState& state, const Eigen::MatrixXcd& op);
double expectation(const DensityOperator& rho, const Eigen::MatrixXcd& op);

// <psi| (x)_i ops_i |psi> with identity on unlisted parties; matrix-free.
Complex product_expectation(const PureState& state,
                            const std::vector<std::pair<int, Eigen::Matrix2cd>>& ops);

// tr(rho * BellOp), evaluated term by term without building the operator.
double quantum_value(const SymmetricBellPolynomial& poly, const PureState& state,
                     const MeasurementScenario& scenario);

DensityOperator partial_trace(const DensityOperator& rho, int party);
DensityOperator partial_trace(const PureState& state, int party);

// Pauli-basis expansion of the W_N density matrix.  Each entry is a letter
// multiset over {I, X, Y, Z}; the reconstruction assigns the coefficient to
// every distinct arrangement of the pattern.
std::vector<std::pair<std::string, double>> pauli_expansion_w(int n);

// sigma_N = sum_j |amps[j]|^2 |j..j><j..j|.
DensityOperator separable_surrogate(const std::vector<Complex>& amps, int n);

struct CertificateReport {
  bool certified = false;
  double max_reduced_deviation = 0;
};

// Certified iff tr_k(rho) == tr_k(sigma) for every party k within 1e-10;
// certified implies no sub-correlation Bell inequality can be violated.
CertificateReport scbi_certificate(const PureState& target, const DensityOperator& candidate);
CertificateReport scbi_certificate(const std::vector<Complex>& gghz_amps, int n);

}  // namespace bellstruct
