#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellstruct/polytope.hpp"

using namespace bellstruct;

TEST_CASE("coordinate layout") {
  CHECK(projected_dim(3) == 5);
  CHECK(projected_dim(4) == 9);
  CHECK(projected_dim(5) == 14);
  CHECK(coord_index(1, 0) == 0);
  CHECK(coord_index(1, 1) == 1);
  CHECK(coord_index(2, 0) == 2);
  CHECK(coord_index(2, 2) == 4);
  CHECK(coord_index(4, 1) == 10);
}

TEST_CASE("vertex projection for three parties") {
  auto vertices = project_vertices(3);
  CHECK(!vertices.empty());
  CHECK(vertices.size() <= 20);  // C(6,3) multisets before dedup

  // All-plus strategy: S(1,0)=S(1,1)=3, S(2,0)=S(2,2)=3, S(2,1)=6.
  bool found = false;
  for (const auto& v : vertices) {
    if (v.source.counts == std::array<int, 4>{3, 0, 0, 0}) {
      found = true;
      CHECK(v.coords[coord_index(1, 0)] == 3);
      CHECK(v.coords[coord_index(1, 1)] == 3);
      CHECK(v.coords[coord_index(2, 0)] == 3);
      CHECK(v.coords[coord_index(2, 1)] == 6);
      CHECK(v.coords[coord_index(2, 2)] == 3);
    }
    // Box constraint: |S(k,m)| <= C(N,k) C(k,m).
    for (int k = 1; k <= 2; ++k)
      for (int m = 0; m <= k; ++m) {
        long long cap = binomial(3, k) * binomial(k, m);
        CHECK(std::abs(v.coords[coord_index(k, m)]) <= cap);
      }
  }
  CHECK(found);

  CHECK_THROWS_AS(project_vertices(2), std::invalid_argument);
  CHECK_THROWS_AS(project_vertices(8), std::invalid_argument);
}

TEST_CASE("polytope is full dimensional") {
  CHECK(polytope_dimension(project_vertices(3)) == 5);
  CHECK(polytope_dimension(project_vertices(4)) == 9);
  CHECK(polytope_dimension(project_vertices(5)) == 14);
}

TEST_CASE("vertex maximum agrees with the local bound") {
  auto v4 = project_vertices(4);
  auto [i4, i4_bound] = known_inequality("I4");
  ValidityReport rep = verify_valid(i4, i4_bound, v4);
  CHECK(rep.valid);
  CHECK(rep.max_value == Rational(8));

  // A loose bound is still valid but not tight at the stated value.
  ValidityReport loose = verify_valid(i4, Rational(9), v4);
  CHECK(!loose.valid);
  CHECK(loose.max_value == Rational(8));
}

TEST_CASE("published inequalities are facets") {
  auto v4 = project_vertices(4);
  auto [i4, i4_bound] = known_inequality("I4");
  FacetReport f4 = verify_facet(i4, i4_bound, v4);
  CHECK(f4.facet);
  CHECK(f4.polytope_dim == 9);
  CHECK(f4.affine_rank == 8);

  auto v5 = project_vertices(5);
  auto [i5, i5_bound] = known_inequality("I5");
  FacetReport f5 = verify_facet(i5, i5_bound, v5);
  CHECK(f5.facet);
  CHECK(f5.affine_rank == 13);

  // B_5 is valid at its exact bound; its facet status is reported, not assumed.
  CHECK(verify_valid(scbi_sum(5), scbi_sum_bound(5), v5).valid);
  FacetReport b4 = verify_facet(scbi_sum(4), scbi_sum_bound(4), v4);
  CHECK(b4.polytope_dim == 9);
  CHECK(b4.affine_rank <= 8);
}

TEST_CASE("canonical form collapses the symmetry orbit") {
  auto [i4, i4_bound] = known_inequality("I4");
  int n = 4;
  FacetCandidate base;
  base.coeffs.assign(projected_dim(n), 0);
  for (int k = 1; k < n; ++k)
    for (int m = 0; m <= k; ++m)
      base.coeffs[coord_index(k, m)] =
          BigInt(boost::rational_cast<long long>(i4.coeff(k, m)));
  base.bound = 8;

  FacetCandidate canon = canonical_form(base, n);

  // Setting swap image: m -> k - m.
  FacetCandidate swapped = base;
  for (int k = 1; k < n; ++k)
    for (int m = 0; m <= k; ++m)
      swapped.coeffs[coord_index(k, m)] = base.coeffs[coord_index(k, k - m)];
  CHECK(canonical_form(swapped, n) == canon);

  // Rescaling is quotiented out.
  FacetCandidate doubled = base;
  for (auto& c : doubled.coeffs) c *= 2;
  doubled.bound *= 2;
  CHECK(canonical_form(doubled, n) == canon);

  CHECK(facet_matches(swapped, i4, i4_bound, n));
  CHECK(!facet_matches(swapped, scbi_sum(4), scbi_sum_bound(4), n));
}

TEST_CASE("facet enumeration for three parties") {
  auto facets = enumerate_facets(3);
  CHECK(!facets.empty());
  auto vertices = project_vertices(3);
  for (const auto& f : facets) {
    SymmetricBellPolynomial poly = f.to_polynomial(3);
    Rational bound(f.bound.convert_to<long long>());
    FacetReport rep = verify_facet(poly, bound, vertices);
    CHECK(rep.facet);
  }
  CHECK_THROWS_AS(enumerate_facets(6), std::invalid_argument);
}

TEST_CASE("facet enumeration recovers the published four-party inequality") {
  auto facets = enumerate_facets(4);
  auto [i4, i4_bound] = known_inequality("I4");
  bool found = false;
  for (const auto& f : facets)
    if (facet_matches(f, i4, i4_bound, 4)) found = true;
  CHECK(found);
}
