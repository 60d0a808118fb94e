#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bellstruct/bellpoly.hpp"

using namespace bellstruct;

namespace {

// Independent oracle: S(k, m) by explicit enumeration over party subsets and
// setting choices, for a concrete per-party assignment.
Rational brute_force_value(const SymmetricBellPolynomial& poly,
                           const std::vector<int>& assignment) {
  int n = poly.n_parties;
  const int out0[4] = {+1, +1, -1, -1};
  const int out1[4] = {+1, -1, +1, -1};
  Rational total(0);
  // type per party: 0 = skip, 1 = setting 0, 2 = setting 1
  std::vector<int> type(n, 0);
  while (true) {
    int k = 0, m = 0, product = 1;
    for (int p = 0; p < n; ++p) {
      if (type[p] == 1) {
        ++k;
        product *= out0[assignment[p]];
      } else if (type[p] == 2) {
        ++k;
        ++m;
        product *= out1[assignment[p]];
      }
    }
    if (k > 0) total += poly.coeff(k, m) * Rational(product);
    int p = 0;
    while (p < n && type[p] == 2) type[p++] = 0;
    if (p == n) break;
    ++type[p];
  }
  return total;
}

SymmetricBellPolynomial random_poly(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> numer(-4, 4);
  std::uniform_int_distribution<int> denom(1, 3);
  std::uniform_int_distribution<int> keep(0, 2);
  SymmetricBellPolynomial poly;
  poly.n_parties = n;
  for (int k = 1; k <= n; ++k)
    for (int m = 0; m <= k; ++m)
      if (keep(rng) != 0) poly.set(k, m, Rational(numer(rng), denom(rng)));
  return poly;
}

}  // namespace

TEST_CASE("bracket parsing") {
  SymmetricBellPolynomial m3 = parse_bracket("[0 0; 0 0 0; 1 0 -1 0]");
  CHECK(m3.n_parties == 3);
  CHECK(m3.coeff(3, 0) == Rational(1));
  CHECK(m3.coeff(3, 2) == Rational(-1));
  CHECK(m3.coeff(3, 1) == Rational(0));
  CHECK(m3.coeff(2, 1) == Rational(0));

  SymmetricBellPolynomial i4 = parse_bracket("[-1 -1; -2 0 -2; -2 1 1 -2]");
  CHECK(i4.n_parties == 3);
  CHECK(i4.coeff(1, 0) == Rational(-1));
  CHECK(i4.coeff(3, 1) == Rational(1));

  CHECK(parse_bracket("1/2 -3/4; 0 0 0").coeff(1, 1) == Rational(-3, 4));

  CHECK_THROWS_AS(parse_bracket("[0 0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bracket(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_bracket("[0 0; 0 0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bracket("[0 x; 0 0 0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bracket("[0 1/0; 0 0 0]"), std::invalid_argument);
}

TEST_CASE("bracket formatting round trip") {
  CHECK(format_bracket(known_inequality("M3").poly) == "[0 0; 0 0 0; 1 0 -1 0]");

  SymmetricBellPolynomial zero;
  zero.n_parties = 3;
  CHECK(format_bracket(zero) == "[0 0; 0 0 0; 0 0 0 0]");

  std::string i5 = "[0 0; -2 0 -1; 0 0 0 0; -4 0 2 0 1; 0 0 0 0 0 0]";
  CHECK(format_bracket(parse_bracket(i5)) == i5);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SymmetricBellPolynomial poly = random_poly(2 + trial % 5, rng);
    CHECK(parse_bracket(format_bracket(poly)) == poly);
  }
}

TEST_CASE("MABK generators") {
  SymmetricBellPolynomial m3 = mabk(3);
  CHECK(m3 == known_inequality("M3").poly);
  CHECK(mabk_bound(3) == Rational(2));

  SymmetricBellPolynomial chsh = mabk(2);
  CHECK(chsh.coeff(2, 0) == Rational(1));
  CHECK(chsh.coeff(2, 1) == Rational(1));
  CHECK(chsh.coeff(2, 2) == Rational(-1));
  CHECK(mabk_bound(2) == Rational(2));

  SymmetricBellPolynomial m5 = mabk(5);
  CHECK(m5.coeff(5, 0) == Rational(1));
  CHECK(m5.coeff(5, 2) == Rational(-1));
  CHECK(m5.coeff(5, 4) == Rational(1));
  CHECK(m5.coeff(5, 1) == Rational(0));
  CHECK(mabk_bound(5) == Rational(4));

  CHECK_THROWS_AS(mabk(1), std::invalid_argument);
}

TEST_CASE("MABK local bounds match the closed form") {
  for (int n = 2; n <= 10; ++n)
    CHECK(local_bound(mabk(n)).bound == mabk_bound(n));
}

TEST_CASE("B_N construction") {
  SymmetricBellPolynomial b4 = scbi_sum(4);
  CHECK(b4.n_parties == 4);
  CHECK(b4.coeff(3, 0) == Rational(1));
  CHECK(b4.coeff(3, 2) == Rational(-1));
  CHECK(b4.max_order() == 3);
  CHECK(scbi_sum_bound(4) == Rational(8));
  CHECK(scbi_sum_bound(5) == Rational(20));
  CHECK(scbi_sum_bound(3) == Rational(6));
  CHECK_THROWS_AS(scbi_sum(2), std::invalid_argument);

  // N=3 case is the symmetrized CHSH sum; its bound is checked exactly.
  CHECK(local_bound(scbi_sum(3)).bound == Rational(6));
}

TEST_CASE("known inequalities") {
  CHECK(known_inequality("S3").poly == parse_bracket("[0 0; 0 0 0; 1 1 -1 -1]"));
  CHECK(known_inequality("S3").bound == Rational(4));
  CHECK(known_inequality("B").bound == Rational(6));
  CHECK(known_inequality("I4").bound == Rational(8));
  CHECK(known_inequality("I5").poly.coeff(4, 0) == Rational(-4));
  CHECK(known_inequality("I5").poly.n_parties == 5);
  CHECK(known_inequality("MABK_6").bound == Rational(8));
  CHECK(known_inequality("BN_7").bound == scbi_sum_bound(7));
  CHECK_THROWS_AS(known_inequality("nope"), std::invalid_argument);
}

TEST_CASE("deterministic evaluation") {
  StrategyMultiset all_plus;
  all_plus.counts = {3, 0, 0, 0};
  CHECK(evaluate_deterministic(known_inequality("M3").poly, all_plus) == Rational(-2));
  // All-plus makes every correlator +1: R2 contributes 6 and S3 vanishes.
  CHECK(evaluate_deterministic(known_inequality("B").poly, all_plus) == Rational(6));

  StrategyMultiset wrong;
  wrong.counts = {2, 0, 0, 0};
  CHECK_THROWS_AS(evaluate_deterministic(known_inequality("M3").poly, wrong),
                  std::invalid_argument);

  // S3 only takes values in {-4, 0, 4} over all 64 assignments.
  SymmetricBellPolynomial s3 = known_inequality("S3").poly;
  for (int code = 0; code < 64; ++code) {
    std::vector<int> assignment = {code & 3, (code >> 2) & 3, (code >> 4) & 3};
    Rational value = brute_force_value(s3, assignment);
    CHECK((value == Rational(-4) || value == Rational(0) || value == Rational(4)));
  }
}

TEST_CASE("multiset evaluation matches per-party brute force") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> strategy(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 5;  // up to 6 parties
    SymmetricBellPolynomial poly = random_poly(n, rng);
    std::vector<int> assignment(n);
    StrategyMultiset ms;
    for (int p = 0; p < n; ++p) {
      assignment[p] = strategy(rng);
      ++ms.counts[assignment[p]];
    }
    Rational direct = brute_force_value(poly, assignment);
    CHECK(evaluate_deterministic(poly, ms) == direct);
    // Permuting who holds which strategy cannot change the value.
    std::shuffle(assignment.begin(), assignment.end(), rng);
    CHECK(brute_force_value(poly, assignment) == direct);
  }
}

TEST_CASE("local bounds of the published inequalities") {
  CHECK(local_bound(known_inequality("M3").poly).bound == Rational(2));
  CHECK(local_bound(known_inequality("S3").poly).bound == Rational(4));
  CHECK(local_bound(known_inequality("B").poly).bound == Rational(6));
  CHECK(local_bound(known_inequality("I4").poly).bound == Rational(8));
  CHECK(local_bound(known_inequality("I5").poly).bound == Rational(15));
}

TEST_CASE("local bound witness attains the bound") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    SymmetricBellPolynomial poly = random_poly(2 + trial % 6, rng);
    LocalBoundResult result = local_bound(poly);
    CHECK(evaluate_deterministic(poly, result.witness) == result.bound);
  }
}

TEST_CASE("B_N bound is tight for N up to 40") {
  for (int n = 3; n <= 40; ++n)
    CHECK(local_bound(scbi_sum(n)).bound == scbi_sum_bound(n));
}

TEST_CASE("multiset bound equals the exhaustive oracle") {
  CHECK(local_bound_exhaustive(known_inequality("M3").poly) == Rational(2));
  CHECK(local_bound_exhaustive(known_inequality("I4").poly) == Rational(8));
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + trial % 6;  // up to 7 parties
    SymmetricBellPolynomial poly = random_poly(n, rng);
    CHECK(local_bound(poly).bound == local_bound_exhaustive(poly));
  }
  SymmetricBellPolynomial big;
  big.n_parties = 9;
  big.set(9, 0, Rational(1));
  CHECK_THROWS_AS(local_bound_exhaustive(big), std::invalid_argument);
}

TEST_CASE("frustration") {
  for (int n = 3; n <= 10; ++n)
    CHECK(frustration(scbi_sum(n), scbi_sum_bound(n)).F == Rational(1));

  auto [i4, i4_bound] = known_inequality("I4");
  FrustrationReport f4 = frustration(i4, i4_bound);
  CHECK(f4.F == Rational(11, 3));
  CHECK(f4.sub_bound_l == Rational(22, 3));

  auto [i5, i5_bound] = known_inequality("I5");
  CHECK(frustration(i5, i5_bound).F == Rational(11, 3));

  CHECK_THROWS_AS(frustration(known_inequality("M3").poly, Rational(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(frustration(i4, Rational(0)), std::invalid_argument);
}

TEST_CASE("noise resistance") {
  CHECK(noise_resistance(6.0, 7.2593) == doctest::Approx(0.8265).epsilon(1e-3));
  CHECK(noise_resistance(3.0792, 4.0) == doctest::Approx(0.7698).epsilon(1e-3));
  CHECK(noise_resistance(5.0, 5.0) == 1.0);
  CHECK_THROWS_AS(noise_resistance(2.0, 0.0), std::invalid_argument);
}
