#include "bellstruct/bellpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bellstruct {

Rational parse_rational(const std::string& token) {
  auto parse_int = [](const std::string& s) -> long long {
    if (s.empty()) throw std::invalid_argument("empty rational token");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational token: " + s);
    }
    if (pos != s.size()) throw std::invalid_argument("malformed rational token: " + s);
    return v;
  };
  auto slash = token.find('/');
  if (slash == std::string::npos) return Rational(parse_int(token));
  long long num = parse_int(token.substr(0, slash));
  long long den = parse_int(token.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + token);
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  std::ostringstream out;
  out << r.numerator();
  if (r.denominator() != 1) out << '/' << r.denominator();
  return out.str();
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

Rational SymmetricBellPolynomial::coeff(int k, int m) const {
  auto it = coeffs.find({k, m});
  return it == coeffs.end() ? Rational(0) : it->second;
}

void SymmetricBellPolynomial::set(int k, int m, const Rational& value) {
  if (k < 1 || k > n_parties || m < 0 || m > k)
    throw std::invalid_argument("coefficient key out of range");
  if (value == Rational(0))
    coeffs.erase({k, m});
  else
    coeffs[{k, m}] = value;
}

int SymmetricBellPolynomial::max_order() const {
  return coeffs.empty() ? 0 : coeffs.rbegin()->first.first;
}

SymmetricBellPolynomial parse_bracket(const std::string& text) {
  std::string body = text;
  auto trim = [](std::string& s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  };
  trim(body);
  if (!body.empty() && body.front() == '[') body.erase(body.begin());
  if (!body.empty() && body.back() == ']') body.pop_back();
  trim(body);
  if (body.empty()) throw std::invalid_argument("empty bracket string");

  std::vector<std::vector<std::string>> segments;
  std::stringstream seg_stream(body);
  std::string segment;
  while (std::getline(seg_stream, segment, ';')) {
    std::vector<std::string> tokens;
    std::stringstream tok_stream(segment);
    std::string tok;
    while (tok_stream >> tok) tokens.push_back(tok);
    segments.push_back(std::move(tokens));
  }

  int n = static_cast<int>(segments.size());
  if (n < 2) throw std::invalid_argument("a bracket needs at least 2 segments");
  SymmetricBellPolynomial poly;
  poly.n_parties = n;
  for (int k = 1; k <= n; ++k) {
    const auto& tokens = segments[k - 1];
    if (static_cast<int>(tokens.size()) != k + 1)
      throw std::invalid_argument("segment " + std::to_string(k) + " needs " +
                                  std::to_string(k + 1) + " tokens");
    for (int m = 0; m <= k; ++m) poly.set(k, m, parse_rational(tokens[m]));
  }
  return poly;
}

std::string format_bracket(const SymmetricBellPolynomial& poly) {
  std::ostringstream out;
  out << '[';
  for (int k = 1; k <= poly.n_parties; ++k) {
    if (k > 1) out << "; ";
    for (int m = 0; m <= k; ++m) {
      if (m > 0) out << ' ';
      out << format_rational(poly.coeff(k, m));
    }
  }
  out << ']';
  return out.str();
}

SymmetricBellPolynomial mabk(int n) {
  if (n < 2) throw std::invalid_argument("MABK needs N >= 2");
  SymmetricBellPolynomial poly;
  poly.n_parties = n;
  for (int m = 0; m <= n; ++m) {
    int c;
    if (n % 2 == 1)
      c = (m % 4 == 0) ? 1 : (m % 4 == 2) ? -1 : 0;  // 1, 0, -1, 0, ...
    else
      c = (m % 4 <= 1) ? 1 : -1;                     // 1, 1, -1, -1, ...
    poly.set(n, m, Rational(c));
  }
  return poly;
}

Rational mabk_bound(int n) {
  if (n < 2) throw std::invalid_argument("MABK needs N >= 2");
  int exponent = (n % 2 == 1) ? (n - 1) / 2 : n / 2;
  return Rational(1LL << exponent);
}

SymmetricBellPolynomial scbi_sum(int n) {
  if (n < 3) throw std::invalid_argument("B_N needs N >= 3");
  SymmetricBellPolynomial sub = mabk(n - 1);
  SymmetricBellPolynomial poly;
  poly.n_parties = n;
  // Each (N-1)-party correlator type appears in exactly one omit-one summand.
  for (const auto& [key, value] : sub.coeffs) poly.set(key.first, key.second, value);
  return poly;
}

Rational scbi_sum_bound(int n) {
  if (n < 3) throw std::invalid_argument("B_N needs N >= 3");
  return Rational(n) * Rational(1LL << ((n - 1) / 2));  // N * 2^ceil((N-2)/2)
}

KnownInequality known_inequality(const std::string& name) {
  if (name == "M3") return {parse_bracket("[0 0; 0 0 0; 1 0 -1 0]"), Rational(2)};
  if (name == "S3") return {parse_bracket("[0 0; 0 0 0; 1 1 -1 -1]"), Rational(4)};
  if (name == "B") return {parse_bracket("[0 0; 0 1 0; 1 1 -1 -1]"), Rational(6)};
  if (name == "I4")
    return {parse_bracket("[-1 -1; -2 0 -2; -2 1 1 -2; 0 0 0 0 0]"), Rational(8)};
  if (name == "I5")
    return {parse_bracket("[0 0; -2 0 -1; 0 0 0 0; -4 0 2 0 1; 0 0 0 0 0 0]"), Rational(15)};
  auto numeric_suffix = [&](const std::string& prefix) -> int {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(name.substr(prefix.size()), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown inequality name: " + name);
    }
    if (pos != name.size() - prefix.size())
      throw std::invalid_argument("unknown inequality name: " + name);
    return v;
  };
  if (name.rfind("MABK_", 0) == 0) {
    int n = numeric_suffix("MABK_");
    return {mabk(n), mabk_bound(n)};
  }
  if (name.rfind("BN_", 0) == 0) {
    int n = numeric_suffix("BN_");
    return {scbi_sum(n), scbi_sum_bound(n)};
  }
  throw std::invalid_argument("unknown inequality name: " + name);
}

// Outputs (a0, a1) of the four strategy classes.
static constexpr int kOut0[4] = {+1, +1, -1, -1};
static constexpr int kOut1[4] = {+1, -1, +1, -1};

std::vector<std::vector<long long>> correlator_sums(const StrategyMultiset& strategies,
                                                    int k_max) {
  // dp[k][m] accumulates the generating-function coefficient of x^k y^m in
  // prod_parties (1 + x a0 + x y a1); that coefficient is S(k, m).
  std::vector<std::vector<long long>> dp(k_max + 1);
  for (int k = 0; k <= k_max; ++k) dp[k].assign(k + 1, 0);
  dp[0][0] = 1;
  for (int cls = 0; cls < 4; ++cls) {
    for (int rep = 0; rep < strategies.counts[cls]; ++rep) {
      for (int k = k_max; k >= 1; --k) {
        for (int m = k; m >= 0; --m) {
          long long v = dp[k][m];
          if (m <= k - 1) v += kOut0[cls] * dp[k - 1][m];
          if (m >= 1) v += kOut1[cls] * dp[k - 1][m - 1];
          dp[k][m] = v;
        }
      }
    }
  }
  return dp;
}

Rational evaluate_deterministic(const SymmetricBellPolynomial& poly,
                                const StrategyMultiset& strategies) {
  if (strategies.n_parties() != poly.n_parties)
    throw std::invalid_argument("party-count mismatch");
  auto sums = correlator_sums(strategies, poly.max_order());
  Rational value(0);
  for (const auto& [key, coeff] : poly.coeffs)
    value += coeff * Rational(sums[key.first][key.second]);
  return value;
}

LocalBoundResult local_bound(const SymmetricBellPolynomial& poly) {
  int n = poly.n_parties;
  LocalBoundResult best;
  bool first = true;
  StrategyMultiset ms;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n - a; ++b)
      for (int c = 0; c <= n - a - b; ++c) {
        ms.counts = {a, b, c, n - a - b - c};
        Rational value = evaluate_deterministic(poly, ms);
        if (first || value > best.bound) {
          best = {value, ms};
          first = false;
        }
      }
  return best;
}

Rational local_bound_exhaustive(const SymmetricBellPolynomial& poly) {
  int n = poly.n_parties;
  if (n > 8) throw std::invalid_argument("exhaustive path limited to N <= 8");
  int k_max = poly.max_order();
  Rational best;
  bool first = true;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (long long code = 0; code < total; ++code) {
    // Per-party DP, one strategy digit at a time.
    std::vector<std::vector<long long>> dp(k_max + 1);
    for (int k = 0; k <= k_max; ++k) dp[k].assign(k + 1, 0);
    dp[0][0] = 1;
    long long rest = code;
    for (int p = 0; p < n; ++p) {
      int cls = static_cast<int>(rest % 4);
      rest /= 4;
      for (int k = k_max; k >= 1; --k)
        for (int m = k; m >= 0; --m) {
          long long v = dp[k][m];
          if (m <= k - 1) v += kOut0[cls] * dp[k - 1][m];
          if (m >= 1) v += kOut1[cls] * dp[k - 1][m - 1];
          dp[k][m] = v;
        }
    }
    Rational value(0);
    for (const auto& [key, coeff] : poly.coeffs)
      value += coeff * Rational(dp[key.first][key.second]);
    if (first || value > best) {
      best = value;
      first = false;
    }
  }
  return best;
}

FrustrationReport frustration(const SymmetricBellPolynomial& poly, const Rational& total_bound) {
  int n = poly.n_parties;
  if (poly.max_order() >= n)
    throw std::invalid_argument("frustration requires a sub-correlation polynomial");
  if (total_bound == Rational(0)) throw std::invalid_argument("zero total bound");
  // Each k-party correlator type survives in N-k of the N omit-one summands.
  SymmetricBellPolynomial sub;
  sub.n_parties = n - 1;
  for (const auto& [key, coeff] : poly.coeffs)
    sub.set(key.first, key.second, coeff / Rational(n - key.first));
  Rational l = local_bound(sub).bound;
  return {Rational(n) * l / total_bound, l, total_bound};
}

double noise_resistance(double local_bound_value, double quantum_value) {
  if (quantum_value <= 0) throw std::invalid_argument("quantum value must be positive");
  return local_bound_value / quantum_value;
}

}  // namespace bellstruct
