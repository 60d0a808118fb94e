#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bellstruct/rational.hpp"

namespace bellstruct {

// Permutation-symmetric two-setting binary-outcome Bell polynomial.
//
// The polynomial is sum over (k, m) of coeff(k, m) * S(k, m), where S(k, m)
// sums all products of k distinct parties' observables with exactly m parties
// using setting 1.  Absent keys mean zero.
struct SymmetricBellPolynomial {
  int n_parties = 0;
  std::map<std::pair<int, int>, Rational> coeffs;

  Rational coeff(int k, int m) const;
  void set(int k, int m, const Rational& value);  // erases zero entries
  int max_order() const;                          // 0 for the zero polynomial

  bool operator==(const SymmetricBellPolynomial&) const = default;
};

// Counts of the four single-party deterministic strategies
// (a0, a1) in {(+,+), (+,-), (-,+), (-,-)}, in that order.
struct StrategyMultiset {
  std::array<int, 4> counts{};

  int n_parties() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
  bool operator==(const StrategyMultiset&) const = default;
};

struct LocalBoundResult {
  Rational bound;
  StrategyMultiset witness;
};

struct FrustrationReport {
  Rational F;
  Rational sub_bound_l;   // local bound of the (N-1)-party polynomial j
  Rational total_bound_L;
};

struct KnownInequality {
  SymmetricBellPolynomial poly;
  Rational bound;  // published bound
};

// Bracket text format: semicolon-separated segments, segment k holding the
// k+1 coefficients for correlator order k.  Tokens are integers or "p/q";
// surrounding brackets optional; whitespace-insensitive.
SymmetricBellPolynomial parse_bracket(const std::string& text);
std::string format_bracket(const SymmetricBellPolynomial& poly);

// Mermin-Ardehali-Belinskii-Klyshko polynomial on N parties.
SymmetricBellPolynomial mabk(int n);
Rational mabk_bound(int n);  // 2^((N-1)/2) odd N, 2^(N/2) even N

// B_N: the symmetrized sum of MABK(N-1) over all N omit-one-party subsets.
SymmetricBellPolynomial scbi_sum(int n);
Rational scbi_sum_bound(int n);  // N * 2^ceil((N-2)/2)

// Recognized names: M3, S3, B, I4, I5, MABK_<N>, BN_<N>.
KnownInequality known_inequality(const std::string& name);

// Exact value of the polynomial at a local deterministic point, computed by
// a DP convolution over parties (no 2^N blowup).
Rational evaluate_deterministic(const SymmetricBellPolynomial& poly,
                                const StrategyMultiset& strategies);

// Exact local bound via enumeration of the C(N+3, 3) strategy multisets
// (valid by permutation symmetry).  Witness tie-break: lexicographically
// smallest count vector.
LocalBoundResult local_bound(const SymmetricBellPolynomial& poly);

// Oracle path: maximum over all 4^N per-party assignments.  Requires N <= 8.
Rational local_bound_exhaustive(const SymmetricBellPolynomial& poly);

// Raw S(k, m) values at a deterministic point, k = 0..k_max.  Exposed for the
// polytope projection.
std::vector<std::vector<long long>> correlator_sums(const StrategyMultiset& strategies,
                                                    int k_max);

// Frustration parameter of a sub-correlation inequality with bound L.
// The per-summand polynomial j on N-1 parties has coefficients
// coeff(k, m) / (N - k); F = N * local_bound(j) / L.
FrustrationReport frustration(const SymmetricBellPolynomial& poly, const Rational& total_bound);

// w = L / Q; requires Q > 0.
double noise_resistance(double local_bound_value, double quantum_value);

}  // namespace bellstruct
