#include "bellstruct/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "bellstruct/threads.hpp"

namespace bellstruct {

int projected_dim(int n) { return (n - 1) * (n + 2) / 2; }

int coord_index(int k, int m) { return k * (k + 1) / 2 - 1 + m; }

std::vector<ProjectedVertex> project_vertices(int n) {
  if (n < 3 || n > 7) throw std::invalid_argument("projection limited to 3 <= N <= 7");
  int dim = projected_dim(n);
  std::map<std::vector<long long>, StrategyMultiset> seen;
  StrategyMultiset ms;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n - a; ++b)
      for (int c = 0; c <= n - a - b; ++c) {
        ms.counts = {a, b, c, n - a - b - c};
        auto sums = correlator_sums(ms, n - 1);
        std::vector<long long> coords(dim);
        for (int k = 1; k <= n - 1; ++k)
          for (int m = 0; m <= k; ++m) coords[coord_index(k, m)] = sums[k][m];
        seen.try_emplace(std::move(coords), ms);
      }
  std::vector<ProjectedVertex> vertices;
  vertices.reserve(seen.size());
  for (const auto& [coords, source] : seen) vertices.push_back({coords, source});
  return vertices;
}

namespace {

using Row = std::vector<BigRational>;

int exact_rank(std::vector<Row> rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows.size() && col < cols; ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      BigRational factor = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) rank over integers; much cheaper than the rational
// path for the small-entry matrices handled here.
int exact_rank_int(std::vector<std::vector<BigInt>> rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t col = 0;
  BigInt prev = 1;
  for (std::size_t r = 0; r < rows.size() && col < cols; ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        rows[i][j] = (rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j]) / prev;
      rows[i][col] = 0;
    }
    prev = rows[r][col];
    ++r;
    ++rank;
  }
  return rank;
}

std::vector<BigInt> primitive(std::vector<BigRational> v) {
  BigInt lcm_den = 1;
  for (const auto& x : v)
    lcm_den = boost::multiprecision::lcm(lcm_den, BigInt(boost::multiprecision::denominator(x)));
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = BigInt(boost::multiprecision::numerator(v[i])) * lcm_den /
             BigInt(boost::multiprecision::denominator(v[i]));
    g = boost::multiprecision::gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace

int polytope_dimension(const std::vector<ProjectedVertex>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("empty vertex set");
  std::vector<std::vector<BigInt>> diffs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::vector<BigInt> row(vertices[i].coords.size());
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = vertices[i].coords[j] - vertices[0].coords[j];
    diffs.push_back(std::move(row));
  }
  return exact_rank_int(std::move(diffs));
}

ValidityReport verify_valid(const SymmetricBellPolynomial& poly, const Rational& bound,
                            const std::vector<ProjectedVertex>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("empty vertex set");
  int dim = static_cast<int>(vertices[0].coords.size());
  for (const auto& [key, coeff] : poly.coeffs) {
    (void)coeff;
    if (coord_index(key.first, key.second) >= dim)
      throw std::invalid_argument("polynomial order exceeds the projected space");
  }
  Rational best;
  bool first = true;
  for (const auto& vertex : vertices) {
    Rational value(0);
    for (const auto& [key, coeff] : poly.coeffs)
      value += coeff * Rational(vertex.coords[coord_index(key.first, key.second)]);
    if (first || value > best) {
      best = value;
      first = false;
    }
  }
  return {best == bound, best};
}

FacetReport verify_facet(const SymmetricBellPolynomial& poly, const Rational& bound,
                         const std::vector<ProjectedVertex>& vertices) {
  return verify_facet(poly, bound, vertices, polytope_dimension(vertices));
}

FacetReport verify_facet(const SymmetricBellPolynomial& poly, const Rational& bound,
                         const std::vector<ProjectedVertex>& vertices, int polytope_dim) {
  ValidityReport validity = verify_valid(poly, bound, vertices);
  if (!validity.valid) throw std::invalid_argument("inequality is not valid at the bound");
  std::vector<const ProjectedVertex*> saturating;
  for (const auto& vertex : vertices) {
    Rational value(0);
    for (const auto& [key, coeff] : poly.coeffs)
      value += coeff * Rational(vertex.coords[coord_index(key.first, key.second)]);
    if (value == bound) saturating.push_back(&vertex);
  }
  std::vector<std::vector<BigInt>> diffs;
  for (std::size_t i = 1; i < saturating.size(); ++i) {
    std::vector<BigInt> row(saturating[i]->coords.size());
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = saturating[i]->coords[j] - saturating[0]->coords[j];
    diffs.push_back(std::move(row));
  }
  FacetReport report;
  report.saturating_count = static_cast<int>(saturating.size());
  report.affine_rank = saturating.empty() ? -1 : exact_rank_int(std::move(diffs));
  report.polytope_dim = polytope_dim;
  report.facet = report.affine_rank == report.polytope_dim - 1;
  return report;
}

SymmetricBellPolynomial FacetCandidate::to_polynomial(int n) const {
  SymmetricBellPolynomial poly;
  poly.n_parties = n;
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k; ++m) {
      const BigInt& c = coeffs[coord_index(k, m)];
      if (c != 0) poly.set(k, m, Rational(c.convert_to<long long>()));
    }
  return poly;
}

namespace {

// Signed-permutation action on the coordinate space: optional setting swap
// (m -> k - m) composed with per-setting global outcome flips, which scale
// coordinate (k, m) by (-1)^(k-m) (setting 0) and (-1)^m (setting 1).
FacetCandidate apply_symmetry(const FacetCandidate& f, int n, bool swap, bool flip0,
                              bool flip1) {
  FacetCandidate out;
  out.bound = f.bound;
  out.coeffs.assign(f.coeffs.size(), 0);
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k; ++m) {
      int src_m = swap ? k - m : m;
      BigInt c = f.coeffs[coord_index(k, src_m)];
      if (flip0 && (k - m) % 2 == 1) c = -c;
      if (flip1 && m % 2 == 1) c = -c;
      out.coeffs[coord_index(k, m)] = c;
    }
  return out;
}

bool lex_less(const FacetCandidate& a, const FacetCandidate& b) {
  if (a.bound != b.bound) return a.bound < b.bound;
  return a.coeffs < b.coeffs;
}

FacetCandidate normalize_primitive(FacetCandidate f) {
  BigInt g = boost::multiprecision::abs(f.bound);
  for (const auto& c : f.coeffs) g = boost::multiprecision::gcd(g, c);
  if (g > 1) {
    f.bound /= g;
    for (auto& c : f.coeffs) c /= g;
  }
  return f;
}

}  // namespace

FacetCandidate canonical_form(const FacetCandidate& facet, int n) {
  FacetCandidate best = normalize_primitive(facet);
  bool first = true;
  for (int mask = 0; mask < 8; ++mask) {
    FacetCandidate image = normalize_primitive(
        apply_symmetry(facet, n, mask & 1, mask & 2, mask & 4));
    if (first || lex_less(image, best)) {
      best = image;
      first = false;
    }
  }
  return best;
}

namespace {

// Double description: extreme rays of {y : A y >= 0} for a full-rank A.
// Machine-word ray directions with 128-bit intermediates; the row entries and
// reduced directions stay far below the checked limits for the sizes here.
struct Ray {
  std::vector<long long> dir;
  std::uint64_t tight = 0;  // processed rows with a_i . dir == 0
};

using I128 = __int128;

I128 dot_i128(const std::vector<long long>& a, const std::vector<long long>& b) {
  I128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += I128(a[i]) * b[i];
  return s;
}

I128 gcd_i128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long checked_narrow(I128 v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("ray coordinate exceeds 64 bits after reduction");
  return static_cast<long long>(v);
}

std::vector<Ray> double_description(const std::vector<std::vector<BigInt>>& big_rows) {
  std::size_t dim = big_rows[0].size();
  std::size_t n_rows = big_rows.size();
  if (n_rows > 64) throw std::invalid_argument("double description limited to 64 rows");
  std::vector<std::vector<long long>> a_rows(n_rows, std::vector<long long>(dim));
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < dim; ++j) a_rows[i][j] = big_rows[i][j].convert_to<long long>();

  // Initial simplicial cone from `dim` independent rows: rays are the
  // columns of the inverse of that row block.
  std::vector<std::size_t> basis;
  {
    std::vector<Row> reduced;
    std::vector<Row> pending;
    for (std::size_t i = 0; i < n_rows && basis.size() < dim; ++i) {
      Row candidate(dim);
      for (std::size_t j = 0; j < dim; ++j) candidate[j] = BigRational(a_rows[i][j]);
      std::vector<Row> trial = reduced;
      trial.push_back(candidate);
      if (exact_rank(trial) > static_cast<int>(basis.size())) {
        reduced.push_back(candidate);
        basis.push_back(i);
      }
    }
    if (basis.size() < dim) throw std::invalid_argument("cone is not pointed");
  }

  // Invert the basis block by Gauss-Jordan on [B | I].
  std::vector<Row> aug(dim, Row(2 * dim, BigRational(0)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) aug[i][j] = BigRational(a_rows[basis[i]][j]);
    aug[i][dim + i] = 1;
  }
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (aug[pivot][col] == 0) ++pivot;
    std::swap(aug[col], aug[pivot]);
    BigRational inv = aug[col][col];
    for (auto& x : aug[col]) x /= inv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      BigRational factor = aug[i][col];
      for (std::size_t j = 0; j < 2 * dim; ++j) aug[i][j] -= factor * aug[col][j];
    }
  }

  std::vector<Ray> rays(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<BigRational> column(dim);
    for (std::size_t i = 0; i < dim; ++i) column[i] = aug[i][dim + j];
    std::vector<BigInt> big = primitive(column);
    rays[j].dir.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) rays[j].dir[i] = big[i].convert_to<long long>();
  }

  std::uint64_t processed = 0;
  for (std::size_t b : basis) processed |= 1ULL << b;

  // Exact tight mask over the processed rows, computed once per ray.
  auto exact_tight = [&](const std::vector<long long>& dir) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n_rows; ++i)
      if ((processed & (1ULL << i)) && dot_i128(a_rows[i], dir) == 0) mask |= 1ULL << i;
    return mask;
  };
  for (auto& ray : rays) ray.tight = exact_tight(ray.dir);

  for (std::size_t row = 0; row < n_rows; ++row) {
    if (processed & (1ULL << row)) continue;
    std::vector<std::size_t> pos, neg;
    std::vector<I128> slack(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      slack[i] = dot_i128(a_rows[row], rays[i].dir);
      if (slack[i] > 0)
        pos.push_back(i);
      else if (slack[i] < 0)
        neg.push_back(i);
    }
    processed |= 1ULL << row;
    std::vector<Ray> next;
    std::size_t kept_count = 0;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (slack[i] >= 0) {
        Ray kept = rays[i];
        if (slack[i] == 0) kept.tight |= 1ULL << row;
        next.push_back(std::move(kept));
        ++kept_count;
      }
    // Flat copy of the masks keeps the adjacency scan cache-friendly.
    std::vector<std::uint64_t> masks(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) masks[i] = rays[i].tight;
    const std::uint64_t* mask_data = masks.data();
    int needed = static_cast<int>(dim) - 2;
    // Per-row index of tight rays: a witness against adjacency of (p, q) is
    // tight on every row of their common set, so scanning the shortest of
    // those rows' lists suffices instead of scanning all rays.
    std::vector<std::vector<std::uint32_t>> tight_on(n_rows);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::uint64_t m = masks[i];
      while (m != 0) {
        int r = std::countr_zero(m);
        m &= m - 1;
        tight_on[r].push_back(static_cast<std::uint32_t>(i));
      }
    }
    // Pairs are split across workers by positive ray; per-p buckets are
    // concatenated in order afterwards, so the result is deterministic.
    std::vector<std::vector<Ray>> fresh_by_p(pos.size());
    std::atomic<std::size_t> cursor{0};
    auto pair_work = [&] {
      std::vector<I128> fresh_dir(dim);
      for (std::size_t pi = cursor.fetch_add(1); pi < pos.size(); pi = cursor.fetch_add(1)) {
        std::size_t p = pos[pi];
        for (std::size_t q : neg) {
          // Adjacency: the common tight set has at least dim-2 rows and no
          // third ray is tight on all of it.
          std::uint64_t common = mask_data[p] & mask_data[q];
          if (std::popcount(common) < needed) continue;
          std::size_t best_row = 0, best_size = std::numeric_limits<std::size_t>::max();
          std::uint64_t m = common;
          while (m != 0) {
            std::size_t r = static_cast<std::size_t>(std::countr_zero(m));
            m &= m - 1;
            if (tight_on[r].size() < best_size) {
              best_size = tight_on[r].size();
              best_row = r;
            }
          }
          bool adjacent = true;
          for (std::uint32_t i : tight_on[best_row])
            if ((common & ~mask_data[i]) == 0 && i != p && i != q) {
              adjacent = false;
              break;
            }
          if (!adjacent) continue;
          I128 g = 0;
          for (std::size_t j = 0; j < dim; ++j) {
            fresh_dir[j] = slack[p] * rays[q].dir[j] - slack[q] * rays[p].dir[j];
            g = gcd_i128(g, fresh_dir[j]);
          }
          Ray fresh;
          fresh.dir.resize(dim);
          for (std::size_t j = 0; j < dim; ++j)
            fresh.dir[j] = checked_narrow(g > 1 ? fresh_dir[j] / g : fresh_dir[j]);
          fresh.tight = exact_tight(fresh.dir);
          fresh_by_p[pi].push_back(std::move(fresh));
        }
      }
    };
    int workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(pos.size(), 1));
    if (workers <= 1) {
      pair_work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(pair_work);
      for (auto& t : pool) t.join();
    }
    for (auto& bucket : fresh_by_p)
      for (auto& fresh : bucket) next.push_back(std::move(fresh));
    // Duplicate new rays can arise in degenerate cones; drop them early.
    std::sort(next.begin() + kept_count, next.end(),
              [](const Ray& a, const Ray& b) { return a.dir < b.dir; });
    next.erase(std::unique(next.begin() + kept_count, next.end(),
                           [](const Ray& a, const Ray& b) { return a.dir == b.dir; }),
               next.end());
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

std::vector<FacetCandidate> enumerate_facets(int n) {
  if (n < 3 || n > 5) throw std::invalid_argument("facet enumeration limited to N in {3,4,5}");
  auto vertices = project_vertices(n);
  int dim = projected_dim(n);
  if (polytope_dimension(vertices) != dim)
    throw std::runtime_error("projected polytope is not full-dimensional");

  // Homogenized rows (1, v); extreme rays of the dual cone are the facets.
  std::vector<std::vector<BigInt>> rows;
  for (const auto& vertex : vertices) {
    std::vector<BigInt> row(dim + 1);
    row[0] = 1;
    for (int j = 0; j < dim; ++j) row[j + 1] = vertex.coords[j];
    rows.push_back(std::move(row));
  }
  auto rays = double_description(rows);

  std::vector<FacetCandidate> facets;
  for (const auto& ray : rays) {
    // Ray (c0, c): c0 + c . x >= 0, i.e. (-c) . x <= c0.
    FacetCandidate facet;
    facet.bound = ray.dir[0];
    facet.coeffs.resize(dim);
    for (int j = 0; j < dim; ++j) facet.coeffs[j] = -ray.dir[j + 1];
    facets.push_back(canonical_form(normalize_primitive(std::move(facet)), n));
  }
  // One representative per orbit of the setting-swap / outcome-flip group.
  std::sort(facets.begin(), facets.end(), lex_less);
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  return facets;
}

bool facet_matches(const FacetCandidate& facet, const SymmetricBellPolynomial& poly,
                   const Rational& bound, int n) {
  if (bound.denominator() != 1) throw std::invalid_argument("expected an integer bound");
  FacetCandidate reference;
  reference.bound = BigInt(bound.numerator());
  reference.coeffs.assign(projected_dim(n), 0);
  for (const auto& [key, coeff] : poly.coeffs) {
    if (coeff.denominator() != 1)
      throw std::invalid_argument("expected integer coefficients");
    if (key.first > n - 1) throw std::invalid_argument("not a sub-correlation polynomial");
    reference.coeffs[coord_index(key.first, key.second)] = BigInt(coeff.numerator());
  }
  return canonical_form(facet, n) == canonical_form(reference, n);
}

}  // namespace bellstruct
