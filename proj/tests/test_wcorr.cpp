#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bellstruct/qstate.hpp"
#include "bellstruct/wcorr.hpp"

using namespace bellstruct;

namespace {

// Dense oracle: pick the first `order` parties, give the first k of them
// setting 1 and the rest setting 0.  Symmetry of W makes the choice of
// parties irrelevant, which the closed form relies on.
double dense_correlator(int n, int order, int k, const SymmetricAngles& angles) {
  PureState w = w_state(n);
  Eigen::Matrix2cd a0 = observable_from_xz_angle(angles.theta0).matrix();
  Eigen::Matrix2cd a1 = observable_from_xz_angle(angles.theta1).matrix();
  std::vector<std::pair<int, Eigen::Matrix2cd>> ops;
  for (int p = 0; p < order; ++p) ops.emplace_back(p, p < k ? a1 : a0);
  Complex value = product_expectation(w, ops);
  REQUIRE(std::abs(value.imag()) < 1e-12);
  return value.real();
}

}  // namespace

TEST_CASE("hand-checked correlator values") {
  SymmetricAngles z{0.0, 0.0};
  // <Z> on W3 = 1/3, <ZZZ> on W3 = -1, <XX> on W2 = 1.
  CHECK(w_correlator(3, 1, 0, z) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(w_full_correlator(3, 0, z) == doctest::Approx(-1.0).epsilon(1e-14));
  SymmetricAngles x{M_PI / 2, M_PI / 2};
  CHECK(w_full_correlator(2, 0, x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w_full_correlator(2, 2, x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed form matches the dense oracle") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (int n = 2; n <= 10; ++n) {
    SymmetricAngles angles{angle(rng), angle(rng)};
    for (int order = 1; order <= n; ++order)
      for (int k = 0; k <= order; ++k) {
        double closed = w_correlator(n, order, k, angles);
        double dense = dense_correlator(n, order, k, angles);
        CHECK(closed == doctest::Approx(dense).epsilon(1e-10));
      }
  }
}

TEST_CASE("subcorrelator is the order N-1 case") {
  SymmetricAngles angles{0.37, 1.91};
  for (int n = 3; n <= 8; ++n)
    for (int k = 0; k < n; ++k)
      CHECK(w_subcorrelator(n, k, angles) ==
            doctest::Approx(w_correlator(n, n - 1, k, angles)).epsilon(1e-14));
}

TEST_CASE("correlators survive to large N") {
  SymmetricAngles angles{0.8, 2.1};
  for (int k : {0, 1, 20, 39, 40}) {
    double value = w_full_correlator(40, k, angles);
    CHECK(std::isfinite(value));
    CHECK(std::abs(value) <= 1.0 + 1e-12);
  }
  double sub = w_subcorrelator(40, 17, angles);
  CHECK(std::isfinite(sub));
  CHECK(std::abs(sub) <= 1.0 + 1e-12);
}

TEST_CASE("symmetric polynomial evaluation matches dense") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  std::uniform_int_distribution<int> numer(-3, 3);

  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + trial % 5;
    SymmetricBellPolynomial poly;
    poly.n_parties = n;
    for (int k = 1; k <= n; ++k)
      for (int m = 0; m <= k; ++m) poly.set(k, m, Rational(numer(rng)));
    SymmetricAngles angles{angle(rng), angle(rng)};
    MeasurementScenario sc = MeasurementScenario::symmetric_xz(n, angles.theta0, angles.theta1);
    double dense = quantum_value(poly, w_state(n), sc);
    CHECK(evaluate_w_symmetric(poly, n, angles) == doctest::Approx(dense).epsilon(1e-9));
  }
}

TEST_CASE("I5 on W5 with Z and X settings gives 28") {
  SymmetricBellPolynomial i5 = known_inequality("I5").poly;
  SymmetricAngles angles{0.0, M_PI / 2};
  CHECK(evaluate_w_symmetric(i5, 5, angles) == doctest::Approx(28.0).epsilon(1e-9));
}

TEST_CASE("argument validation") {
  SymmetricAngles angles{0.1, 0.2};
  CHECK_THROWS_AS(w_correlator(3, 4, 0, angles), std::invalid_argument);
  CHECK_THROWS_AS(w_correlator(3, 2, 3, angles), std::invalid_argument);
  CHECK_THROWS_AS(w_full_correlator(0, 0, angles), std::invalid_argument);
  CHECK_THROWS_AS(w_full_correlator(3, -1, angles), std::invalid_argument);
  // Single-qubit base case of the loss recursion: <1|A|1> = -cos(theta).
  CHECK(w_full_correlator(1, 0, angles) == doctest::Approx(-std::cos(0.1)).epsilon(1e-14));
}
