#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "bellstruct/bellpoly.hpp"

namespace bellstruct {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Coordinates of a deterministic strategy in the symmetric sub-correlation
// subspace: one integer per (k, m), 1 <= k <= N-1, 0 <= m <= k, in
// lexicographic (k, m) order.  Length (N-1)(N+2)/2.
struct ProjectedVertex {
  std::vector<long long> coords;
  StrategyMultiset source;
};

int projected_dim(int n);
int coord_index(int k, int m);  // position of (k, m) in the coordinate order

// One vertex per distinct coordinate vector over all strategy multisets.
// Requires 3 <= N <= 7.
std::vector<ProjectedVertex> project_vertices(int n);

// Affine dimension of the vertex set (exact rank of difference vectors).
int polytope_dimension(const std::vector<ProjectedVertex>& vertices);

struct ValidityReport {
  bool valid = false;       // max over vertices equals the bound exactly
  Rational max_value;
};

ValidityReport verify_valid(const SymmetricBellPolynomial& poly, const Rational& bound,
                            const std::vector<ProjectedVertex>& vertices);

struct FacetReport {
  bool facet = false;
  int saturating_count = 0;
  int affine_rank = 0;     // affine rank of the saturating vertex set
  int polytope_dim = 0;
};

FacetReport verify_facet(const SymmetricBellPolynomial& poly, const Rational& bound,
                         const std::vector<ProjectedVertex>& vertices);

// Variant with the affine dimension of the vertex set precomputed, for
// callers checking many inequalities against the same polytope.
FacetReport verify_facet(const SymmetricBellPolynomial& poly, const Rational& bound,
                         const std::vector<ProjectedVertex>& vertices, int polytope_dim);

// Inequality coeffs . x <= bound with primitive integer data.
struct FacetCandidate {
  std::vector<BigInt> coeffs;
  BigInt bound;

  SymmetricBellPolynomial to_polynomial(int n) const;
  bool operator==(const FacetCandidate&) const = default;
};

// Canonical representative under simultaneous setting swap, per-setting
// global outcome flips, and positive rescaling.
FacetCandidate canonical_form(const FacetCandidate& facet, int n);

// Complete facet list of the projected symmetric polytope via exact double
// description (vertices -> facets).  Requires N in {3, 4, 5}.
std::vector<FacetCandidate> enumerate_facets(int n);

// True iff the two inequalities coincide up to the symmetry group.
bool facet_matches(const FacetCandidate& facet, const SymmetricBellPolynomial& poly,
                   const Rational& bound, int n);

}  // namespace bellstruct
