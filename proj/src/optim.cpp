#include "bellstruct/optim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "bellstruct/threads.hpp"

namespace bellstruct {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Eigen::Vector3d random_bloch(std::mt19937& rng, bool xz_only) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (xz_only) {
    double t = kTwoPi * uni(rng);
    return {std::sin(t), 0.0, std::cos(t)};
  }
  double z = 2 * uni(rng) - 1;
  double phi = kTwoPi * uni(rng);
  double r = std::sqrt(std::max(0.0, 1 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Eigen::Matrix2cd bloch_matrix(const Eigen::Vector3d& v) {
  Eigen::Matrix2cd m;
  m << Complex(v.z(), 0), Complex(v.x(), -v.y()), Complex(v.x(), v.y()), Complex(-v.z(), 0);
  return m;
}

// Correlator term walker shared by the see-saw evaluators.
void for_each_term(const SymmetricBellPolynomial& poly,
                   const std::function<void(const std::vector<std::pair<int, int>>&,
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
      if (c != Rational(0)) visit(picks, c);
      return;
    }
    rec(party + 1, m);
    picks.emplace_back(party, 0);
    rec(party + 1, m);
    picks.back().second = 1;
    rec(party + 1, m + 1);
    picks.pop_back();
  };
  rec(0, 0);
}

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

using BlochScenario = std::vector<std::array<Eigen::Vector3d, 2>>;

double seesaw_value(const SymmetricBellPolynomial& poly, const Eigen::VectorXcd& psi,
                    const BlochScenario& bloch) {
  int n = poly.n_parties;
  std::vector<Eigen::Matrix2cd> obs(2 * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s) obs[2 * p + s] = bloch_matrix(bloch[p][s]);
  Complex total(0, 0);
  for_each_term(poly, [&](const std::vector<std::pair<int, int>>& picks, const Rational& c) {
    Eigen::VectorXcd v = psi;
    for (const auto& [p, s] : picks) apply_single_qubit(v, p, n, obs[2 * p + s]);
    total += boost::rational_cast<double>(c) * psi.dot(v);
  });
  return total.real();
}

// Linear coefficient of the (party, setting) Bloch vector in the Bell value,
// everything else held fixed.
Eigen::Vector3d seesaw_gradient(const SymmetricBellPolynomial& poly,
                                const Eigen::VectorXcd& psi, const BlochScenario& bloch,
                                int party, int setting) {
  int n = poly.n_parties;
  std::vector<Eigen::Matrix2cd> obs(2 * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s) obs[2 * p + s] = bloch_matrix(bloch[p][s]);
  const Eigen::Matrix2cd pauli[3] = {bloch_matrix({1, 0, 0}), bloch_matrix({0, 1, 0}),
                                     bloch_matrix({0, 0, 1})};
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  for_each_term(poly, [&](const std::vector<std::pair<int, int>>& picks, const Rational& c) {
    auto hit = std::find(picks.begin(), picks.end(), std::make_pair(party, setting));
    if (hit == picks.end()) return;
    Eigen::VectorXcd v = psi;
    for (const auto& [p, s] : picks)
      if (p != party || s != setting) apply_single_qubit(v, p, n, obs[2 * p + s]);
    double coeff = boost::rational_cast<double>(c);
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXcd w = v;
      apply_single_qubit(w, party, n, pauli[i]);
      grad[i] += coeff * psi.dot(w).real();
    }
  });
  return grad;
}

Eigen::MatrixXcd seesaw_operator(const SymmetricBellPolynomial& poly,
                                 const BlochScenario& bloch) {
  MeasurementScenario scenario;
  scenario.symmetric = false;
  for (const auto& pair : bloch) {
    Observable o0{pair[0].x(), pair[0].y(), pair[0].z()};
    Observable o1{pair[1].x(), pair[1].y(), pair[1].z()};
    scenario.parties.push_back({o0, o1});
  }
  return bell_operator(poly, scenario);
}

}  // namespace

double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double>& x, double step, double tol, int max_iter) {
  const std::size_t dim = x.size();
  std::vector<std::vector<double>> simplex(dim + 1, x);
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (values[order.back()] - values[order.front()] < tol) break;

    std::size_t worst = order.back();
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
    }
    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t j = 0; j < dim; ++j)
        p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return p;
    };
    auto reflected = blend(-1.0);
    double fr = f(reflected);
    if (fr < values[order.front()]) {
      auto expanded = blend(-2.0);
      double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[order[dim - 1]]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      auto contracted = blend(0.5);
      double fc = f(contracted);
      if (fc < values[worst]) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == order.front()) continue;
          for (std::size_t j = 0; j < dim; ++j)
            simplex[i][j] = 0.5 * (simplex[i][j] + simplex[order.front()][j]);
          values[i] = f(simplex[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i)
    if (values[i] < values[best]) best = i;
  x = simplex[best];
  return values[best];
}

namespace {

OptimumReport grid_polish(const std::function<double(double, double)>& objective,
                          const OptimizationConfig& config) {
  int res = std::max(2, config.grid_resolution);
  struct Cell {
    double value, t0, t1;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(res) * res);
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      double t0 = kTwoPi * i / res, t1 = kTwoPi * j / res;
      cells.push_back({objective(t0, t1), t0, t1});
    }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.value > b.value; });

  int starts = std::min<int>(std::max(1, config.restarts), static_cast<int>(cells.size()));
  OptimumReport report;
  report.value = cells.front().value;
  report.angles = {cells.front().t0, cells.front().t1};
  auto negated = [&](const std::vector<double>& x) { return -objective(x[0], x[1]); };
  for (int i = 0; i < starts; ++i) {
    std::vector<double> x = {cells[i].t0, cells[i].t1};
    double value = -nelder_mead(negated, x, kTwoPi / res, config.convergence_tol,
                                config.max_iterations);
    ++report.history_length;
    if (value > report.value) {
      report.value = value;
      report.angles = x;
    }
  }
  return report;
}

}  // namespace

OptimumReport optimize_angles_symmetric(const SymmetricBellPolynomial& poly,
                                        StateFamily family, int n,
                                        const OptimizationConfig& config) {
  if (family == StateFamily::W) {
    auto objective = [&](double t0, double t1) {
      return evaluate_w_symmetric(poly, n, {t0, t1});
    };
    return grid_polish(objective, config);
  }
  PureState state = ghz_state(n);
  return optimize_angles_fixed_state(poly, state, config);
}

OptimumReport optimize_angles_fixed_state(const SymmetricBellPolynomial& poly,
                                          const PureState& state,
                                          const OptimizationConfig& config) {
  auto objective = [&](double t0, double t1) {
    return quantum_value(poly, state, MeasurementScenario::symmetric_xz(poly.n_parties, t0, t1));
  };
  return grid_polish(objective, config);
}

double random_restart_max_w(const SymmetricBellPolynomial& poly, int n, int restarts,
                            unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  auto negated = [&](const std::vector<double>& x) {
    return -evaluate_w_symmetric(poly, n, {x[0], x[1]});
  };
  double best = -1e300;
  for (int i = 0; i < restarts; ++i) {
    std::vector<double> x = {uni(rng), uni(rng)};
    best = std::max(best, -nelder_mead(negated, x, 0.3, 1e-12, 300));
  }
  return best;
}

std::vector<Table1Row> table1(const std::vector<int>& n_list,
                              const OptimizationConfig& config) {
  std::vector<Table1Row> rows;
  for (int n : n_list) {
    if (n < 3) throw std::invalid_argument("Table 1 needs N >= 3");
    SymmetricBellPolynomial poly = scbi_sum(n);
    Rational bound = scbi_sum_bound(n);
    OptimumReport opt = optimize_angles_symmetric(poly, StateFamily::W, n, config);
    Table1Row row;
    row.n = n;
    row.bound = bound;
    row.quantum = opt.value;
    row.w = noise_resistance(boost::rational_cast<double>(bound), opt.value);
    row.theta0 = opt.angles[0];
    row.theta1 = opt.angles[1];
    rows.push_back(row);
  }
  return rows;
}

OptimumReport seesaw_max(const SymmetricBellPolynomial& poly, int n,
                         const OptimizationConfig& config) {
  if (n != poly.n_parties) throw std::invalid_argument("party-count mismatch");
  if (n > 12) throw std::invalid_argument("see-saw limited to N <= 12");
  std::mt19937 rng(config.rng_seed);
  OptimumReport best;
  best.value = -1e300;

  for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
    BlochScenario bloch(n);
    for (int p = 0; p < n; ++p)
      for (int s = 0; s < 2; ++s) bloch[p][s] = random_bloch(rng, /*xz_only=*/true);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(seesaw_operator(poly, bloch));
    Eigen::VectorXcd psi = solver.eigenvectors().col(solver.eigenvalues().size() - 1);
    double value = seesaw_value(poly, psi, bloch);
    int iterations = 0;
    for (; iterations < config.max_iterations; ++iterations) {
      for (int p = 0; p < n; ++p)
        for (int s = 0; s < 2; ++s) {
          Eigen::Vector3d g = seesaw_gradient(poly, psi, bloch, p, s);
          g.y() = 0;  // measurements stay in the XZ plane
          if (g.norm() > 1e-14) bloch[p][s] = g.normalized();
        }
      solver.compute(seesaw_operator(poly, bloch));
      psi = solver.eigenvectors().col(solver.eigenvalues().size() - 1);
      double next = solver.eigenvalues()(solver.eigenvalues().size() - 1);
      if (next - value < config.convergence_tol) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    if (value > best.value) {
      best.value = value;
      best.state = psi;
      best.scenario.assign(bloch.begin(), bloch.end());
      best.history_length = iterations;
    }
  }
  return best;
}

double gghz_value(const SymmetricBellPolynomial& poly, double theta,
                  const std::array<std::array<Eigen::Vector3d, 2>, 3>& bloch) {
  if (poly.n_parties != 3) throw std::invalid_argument("probe objective is 3-party");
  double c = std::cos(theta), s = std::sin(theta);
  double total = 0;
  // Terms touching k parties: diagonal part (c^2 + (-1)^k s^2) prod z; only
  // full-order terms couple |000> to |111>.
  for_each_term(poly, [&](const std::vector<std::pair<int, int>>& picks, const Rational& w) {
    int k = static_cast<int>(picks.size());
    double zprod = 1;
    Complex cross(1, 0);
    for (const auto& [p, setting] : picks) {
      const Eigen::Vector3d& v = bloch[p][setting];
      zprod *= v.z();
      cross *= Complex(v.x(), -v.y());
    }
    double value = (c * c + (k % 2 == 0 ? 1.0 : -1.0) * s * s) * zprod;
    if (k == 3) value += 2 * c * s * cross.real();
    total += boost::rational_cast<double>(w) * value;
  });
  return total;
}

double ghz_bound_probe(const SymmetricBellPolynomial& poly, int restarts, unsigned seed) {
  auto unpack = [](const std::vector<double>& x) {
    std::array<std::array<Eigen::Vector3d, 2>, 3> bloch;
    for (int p = 0; p < 3; ++p)
      for (int s = 0; s < 2; ++s) {
        double polar = x[1 + 4 * p + 2 * s];
        double azim = x[2 + 4 * p + 2 * s];
        bloch[p][s] = {std::sin(polar) * std::cos(azim), std::sin(polar) * std::sin(azim),
                       std::cos(polar)};
      }
    return bloch;
  };
  auto negated = [&](const std::vector<double>& x) {
    return -gghz_value(poly, x[0], unpack(x));
  };
  auto run_restart = [&](int i) {
    std::mt19937 rng(seed + static_cast<unsigned>(i) * 0x9e3779b9u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> x(13);
    // Sweep the Schmidt angle across its full range; randomize the rest.
    x[0] = (i % 2 == 0) ? (std::numbers::pi / 2) * (double(i) / std::max(1, restarts))
                        : std::numbers::pi * uni(rng);
    for (int j = 1; j < 13; ++j) x[j] = kTwoPi * uni(rng);
    return -nelder_mead(negated, x, 0.4, 1e-12, 250);
  };

  std::vector<double> results(restarts, -1e300);
  int workers = std::min(worker_count(), std::max(1, restarts));
  std::vector<std::thread> pool;
  std::atomic<int> cursor{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = cursor.fetch_add(1); i < restarts; i = cursor.fetch_add(1))
        results[i] = run_restart(i);
    });
  for (auto& t : pool) t.join();
  // Deterministic reduction regardless of execution order.
  double best = -1e300;
  for (double v : results) best = std::max(best, v);
  return best;
}

std::array<double, 4> appendix_c_quantities(double t2_0, double t2_1, double t3_0,
                                            double t3_1) {
  double c20 = std::cos(t2_0), s20 = std::sin(t2_0);
  double c21 = std::cos(t2_1), s21 = std::sin(t2_1);
  double c30 = std::cos(t3_0), s30 = std::sin(t3_0);
  double c31 = std::cos(t3_1), s31 = std::sin(t3_1);
  double a = s21 + s31;
  double b = c20 * c30 + c20 * c31 + c21 * c30 - c21 * c31;
  double c = s20 + s30;
  double d = c20 * c30 - c20 * c31 - c21 * c30 - c21 * c31;
  return {a, b, c, d};
}

}  // namespace bellstruct
