#include "bellstruct/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace bellstruct {

namespace {

constexpr Complex kI(0, 1);

long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

void check_normalized(const Eigen::VectorXcd& amps) {
  if (std::abs(amps.squaredNorm() - 1.0) > 1e-12)
    throw std::invalid_argument("state is not normalized");
}

// v <- (M on `party`) v, qubits.
void apply_single_qubit(Eigen::VectorXcd& v, int party, int n, const Eigen::Matrix2cd& m) {
  long long stride = 1LL << (n - 1 - party);
  for (long long base = 0; base < v.size(); base += 2 * stride)
    for (long long low = 0; low < stride; ++low) {
      long long i0 = base + low;
      long long i1 = i0 + stride;
      Complex a = v[i0], b = v[i1];
      v[i0] = m(0, 0) * a + m(0, 1) * b;
      v[i1] = m(1, 0) * a + m(1, 1) * b;
    }
}

}  // namespace

Eigen::Matrix2cd Observable::matrix() const {
  Eigen::Matrix2cd m;
  m << Complex(z, 0), Complex(x, -y), Complex(x, y), Complex(-z, 0);
  return m;
}

MeasurementScenario MeasurementScenario::symmetric_xz(int n, double theta0, double theta1) {
  MeasurementScenario scenario;
  scenario.symmetric = true;
  scenario.parties.assign(
      n, {observable_from_xz_angle(theta0), observable_from_xz_angle(theta1)});
  return scenario;
}

PureState w_state(int n) {
  if (n < 2) throw std::invalid_argument("W state needs N >= 2");
  PureState state{2, n, Eigen::VectorXcd::Zero(1LL << n)};
  double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int p = 0; p < n; ++p) state.amplitudes[1LL << (n - 1 - p)] = amp;
  return state;
}

PureState ghz_state(int n) {
  double inv = 1.0 / std::sqrt(2.0);
  return generalized_ghz({Complex(inv, 0), Complex(inv, 0)}, n);
}

PureState generalized_ghz(const std::vector<Complex>& amps, int n) {
  int d = static_cast<int>(amps.size());
  if (d < 1 || n < 1) throw std::invalid_argument("bad generalized GHZ shape");
  double norm = 0;
  for (const auto& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("generalized GHZ amplitudes not normalized");
  PureState state{d, n, Eigen::VectorXcd::Zero(ipow(d, n))};
  for (int j = 0; j < d; ++j) {
    long long index = 0;
    for (int p = 0; p < n; ++p) index = index * d + j;
    state.amplitudes[index] = amps[j];
  }
  return state;
}

PureState dicke_state(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("Dicke excitation count out of range");
  PureState state{2, n, Eigen::VectorXcd::Zero(1LL << n)};
  double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  for (long long i = 0; i < state.amplitudes.size(); ++i)
    if (__builtin_popcountll(i) == k) state.amplitudes[i] = amp;
  return state;
}

PureState spin_flip(const PureState& state) {
  if (state.local_dim != 2) throw std::invalid_argument("spin flip is qubit-only");
  PureState flipped = state;
  long long mask = (1LL << state.n_parties) - 1;
  for (long long i = 0; i < state.amplitudes.size(); ++i)
    flipped.amplitudes[mask ^ i] = state.amplitudes[i];
  return flipped;
}

Observable observable_from_xz_angle(double theta) {
  return {std::sin(theta), 0.0, std::cos(theta)};
}

Observable observable_xy_with_z(double t, double phi) {
  return {std::cos(t) * std::cos(phi), std::cos(t) * std::sin(phi), std::sin(t)};
}

DensityOperator density(const PureState& state) {
  check_normalized(state.amplitudes);
  return {state.local_dim, state.n_parties,
          state.amplitudes * state.amplitudes.adjoint()};
}

namespace {

// Visits every correlator term with a nonzero coefficient: ops holds the
// (party, setting) picks, k = |ops|, m = #setting-1 picks.
void for_each_term(const SymmetricBellPolynomial& poly,
                   const std::function<void(const std::vector<std::pair<int, int>>&, int, int,
                                            const Rational&)>& visit) {
  int n = poly.n_parties;
  int k_max = poly.max_order();
  std::vector<std::pair<int, int>> picks;
  std::function<void(int, int)> rec = [&](int party, int m) {
    int k = static_cast<int>(picks.size());
    if (k > k_max) return;
    if (party == n) {
      if (k == 0) return;
      Rational c = poly.coeff(k, m);
      if (c != Rational(0)) visit(picks, k, m, c);
      return;
    }
    rec(party + 1, m);  // party omitted
    picks.emplace_back(party, 0);
    rec(party + 1, m);
    picks.back().second = 1;
    rec(party + 1, m + 1);
    picks.pop_back();
  };
  rec(0, 0);
}

}  // namespace

Eigen::MatrixXcd bell_operator(const SymmetricBellPolynomial& poly,
                               const MeasurementScenario& scenario) {
  int n = poly.n_parties;
  if (scenario.n_parties() != n) throw std::invalid_argument("scenario party-count mismatch");
  if (n > 14) throw std::invalid_argument("dense Bell operator limited to N <= 14");
  long long dim = 1LL << n;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::Matrix2cd> obs(2 * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s) obs[2 * p + s] = scenario.parties[p][s].matrix();

  for_each_term(poly, [&](const std::vector<std::pair<int, int>>& picks, int, int,
                          const Rational& c) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
    std::size_t next = 0;
    for (int p = 0; p < n; ++p) {
      if (next < picks.size() && picks[next].first == p) {
        term = Eigen::kroneckerProduct(term, obs[2 * p + picks[next].second]).eval();
        ++next;
      } else {
        term = Eigen::kroneckerProduct(term, Eigen::Matrix2cd::Identity()).eval();
      }
    }
    op += boost::rational_cast<double>(c) * term;
  });
  return op;
}

double expectation(const PureState& state, const Eigen::MatrixXcd& op) {
  if (op.rows() != state.amplitudes.size()) throw std::invalid_argument("dimension mismatch");
  Complex value = state.amplitudes.dot(op * state.amplitudes);
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("expectation has a large imaginary residue");
  return value.real();
}

double expectation(const DensityOperator& rho, const Eigen::MatrixXcd& op) {
  if (op.rows() != rho.entries.rows()) throw std::invalid_argument("dimension mismatch");
  Complex value = (rho.entries * op).trace();
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("expectation has a large imaginary residue");
  return value.real();
}

Complex product_expectation(const PureState& state,
                            const std::vector<std::pair<int, Eigen::Matrix2cd>>& ops) {
  if (state.local_dim != 2) throw std::invalid_argument("product expectation is qubit-only");
  Eigen::VectorXcd v = state.amplitudes;
  for (const auto& [party, m] : ops) apply_single_qubit(v, party, state.n_parties, m);
  return state.amplitudes.dot(v);
}

double quantum_value(const SymmetricBellPolynomial& poly, const PureState& state,
                     const MeasurementScenario& scenario) {
  int n = poly.n_parties;
  if (state.n_parties != n || scenario.n_parties() != n)
    throw std::invalid_argument("party-count mismatch");
  std::vector<Eigen::Matrix2cd> obs(2 * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s) obs[2 * p + s] = scenario.parties[p][s].matrix();

  Complex total(0, 0);
  for_each_term(poly, [&](const std::vector<std::pair<int, int>>& picks, int, int,
                          const Rational& c) {
    std::vector<std::pair<int, Eigen::Matrix2cd>> term;
    term.reserve(picks.size());
    for (const auto& [p, s] : picks) term.emplace_back(p, obs[2 * p + s]);
    total += boost::rational_cast<double>(c) * product_expectation(state, term);
  });
  if (std::abs(total.imag()) > 1e-10)
    throw std::runtime_error("quantum value has a large imaginary residue");
  return total.real();
}

DensityOperator partial_trace(const DensityOperator& rho, int party) {
  int n = rho.n_parties;
  int d = rho.local_dim;
  if (party < 0 || party >= n) throw std::invalid_argument("bad party index");
  long long keep_dim = ipow(d, n - 1);
  long long low = ipow(d, n - 1 - party);  // index weight below the traced digit
  DensityOperator reduced{d, n - 1, Eigen::MatrixXcd::Zero(keep_dim, keep_dim)};
  for (long long r = 0; r < keep_dim; ++r) {
    long long rh = r / low, rl = r % low;
    for (long long c = 0; c < keep_dim; ++c) {
      long long ch = c / low, cl = c % low;
      Complex sum(0, 0);
      for (int t = 0; t < d; ++t) {
        long long row = (rh * d + t) * low + rl;
        long long col = (ch * d + t) * low + cl;
        sum += rho.entries(row, col);
      }
      reduced.entries(r, c) = sum;
    }
  }
  return reduced;
}

DensityOperator partial_trace(const PureState& state, int party) {
  return partial_trace(density(state), party);
}

std::vector<std::pair<std::string, double>> pauli_expansion_w(int n) {
  if (n < 2) throw std::invalid_argument("W expansion needs N >= 2");
  double scale = 1.0 / (n * std::pow(2.0, n));
  std::vector<std::pair<std::string, double>> terms;
  for (int k = 0; k <= n; ++k) {
    double c = (n - 2 * k) * scale;
    if (c == 0) continue;
    terms.emplace_back(std::string(k, 'Z') + std::string(n - k, 'I'), c);
  }
  for (int j = 0; j <= n - 2; ++j) {
    std::string tail = std::string(j, 'Z') + std::string(n - 2 - j, 'I');
    terms.emplace_back("XX" + tail, 2 * scale);
    terms.emplace_back("YY" + tail, 2 * scale);
  }
  return terms;
}

DensityOperator separable_surrogate(const std::vector<Complex>& amps, int n) {
  int d = static_cast<int>(amps.size());
  double norm = 0;
  for (const auto& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("surrogate amplitudes not normalized");
  long long dim = ipow(d, n);
  DensityOperator sigma{d, n, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int j = 0; j < d; ++j) {
    long long index = 0;
    for (int p = 0; p < n; ++p) index = index * d + j;
    sigma.entries(index, index) = std::norm(amps[j]);
  }
  return sigma;
}

CertificateReport scbi_certificate(const PureState& target, const DensityOperator& candidate) {
  if (target.local_dim != candidate.local_dim || target.n_parties != candidate.n_parties)
    throw std::invalid_argument("dimension mismatch");
  DensityOperator rho = density(target);
  double worst = 0;
  for (int p = 0; p < target.n_parties; ++p) {
    DensityOperator a = partial_trace(rho, p);
    DensityOperator b = partial_trace(candidate, p);
    worst = std::max(worst, (a.entries - b.entries).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10, worst};
}

CertificateReport scbi_certificate(const std::vector<Complex>& gghz_amps, int n) {
  return scbi_certificate(generalized_ghz(gghz_amps, n), separable_surrogate(gghz_amps, n));
}

}  // namespace bellstruct
