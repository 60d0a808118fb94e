#include "bellstruct/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <numbers>
#include <random>
#include <sstream>

#include "bellstruct/optim.hpp"
#include "bellstruct/polytope.hpp"
#include "bellstruct/threads.hpp"

namespace bellstruct::verify {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult make(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

std::vector<Complex> random_amplitudes(int d, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(d);
  double norm = 0;
  for (auto& a : amps) {
    a = Complex(gauss(rng), gauss(rng));
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  // Renormalize exactly enough for the 1e-12 constructor tolerance.
  double check = 0;
  for (const auto& a : amps) check += std::norm(a);
  for (auto& a : amps) a /= std::sqrt(check);
  return amps;
}

// Largest overlap with the reference state over the gauge freedom a see-saw
// run with XZ-plane measurements leaves: an arbitrary O(2) rotation of each
// party's XZ plane (continuous angle plus optional reflection).
double best_overlap(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& reference, int n) {
  long long dim = 1LL << n;

  auto overlap_at = [&](const std::vector<double>& beta, int reflect_mask) {
    Eigen::VectorXcd rotated = psi;
    for (int p = 0; p < n; ++p) {
      double c = std::cos(beta[p]), s = std::sin(beta[p]);
      Eigen::Matrix2d rot;
      rot << c, -s, s, c;
      if (reflect_mask & (1 << p)) {
        rot.col(1) *= -1;  // Z-basis reflection, det -1
      }
      long long bit = 1LL << (n - 1 - p);
      Eigen::VectorXcd next(dim);
      for (long long i = 0; i < dim; ++i) {
        int row = (i & bit) ? 1 : 0;
        next[i] = rot(row, 0) * rotated[i & ~bit] + rot(row, 1) * rotated[i | bit];
      }
      rotated = std::move(next);
    }
    return std::abs(reference.dot(rotated));
  };

  double best = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    for (int start = 0; start < 4; ++start) {
      std::vector<double> beta(n, start * kPi / 2);
      double value = -nelder_mead(
          [&](const std::vector<double>& x) { return -overlap_at(x, mask); }, beta, 0.4,
          1e-12, 400);
      best = std::max(best, value);
    }
  }
  return best;
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<CheckResult> appendix_a(unsigned seed, int consistency_restarts) {
  std::vector<CheckResult> out;
  auto [m3, m3_bound] = known_inequality("M3");

  OptimizationConfig config;
  config.rng_seed = seed;
  OptimumReport opt = optimize_angles_symmetric(m3, StateFamily::W, 3, config);
  out.push_back(make("M3 on W3 optimum 3.0460", std::abs(opt.value - 3.0460) <= 5e-4,
                     "found " + num(opt.value)));

  double at_published =
      evaluate_w_symmetric(m3, 3, {0.3002 * kPi, 0.8673 * kPi});
  out.push_back(make("M3 on W3 at published angles",
                     std::abs(at_published - 3.0460) <= 5e-4,
                     "value " + num(at_published)));

  MeasurementScenario xy;
  xy.symmetric = true;
  xy.parties.assign(3, {Observable{1, 0, 0}, Observable{0, 1, 0}});
  double ghz_value = quantum_value(m3, ghz_state(3), xy);
  out.push_back(make("M3 on GHZ3 with X/Y settings = 4",
                     std::abs(ghz_value - 4.0) <= 1e-9, "value " + num(ghz_value)));

  double sweep = random_restart_max_w(m3, 3, consistency_restarts, seed + 1);
  out.push_back(make("no W3 restart exceeds the 3.0792 relaxation bound", sweep <= 3.0792,
                     "max " + num(sweep) + " over " + std::to_string(consistency_restarts) +
                         " restarts"));

  double w_w3 = noise_resistance(2.0, opt.value);
  out.push_back(make("W3/M3 noise resistance 0.6566", std::abs(w_w3 - 0.6566) <= 1e-3,
                     "w " + num(w_w3)));
  double w_ghz = noise_resistance(3.0792, 4.0);
  out.push_back(make("GHZ3 noise threshold 0.7698", std::abs(w_ghz - 0.7698) <= 1e-3,
                     "w " + num(w_ghz)));
  return out;
}

std::vector<CheckResult> appendix_b(unsigned seed) {
  std::vector<CheckResult> out;
  OptimizationConfig config;
  config.rng_seed = seed;

  auto [b_poly, b_bound] = known_inequality("B");
  double b_at = evaluate_w_symmetric(b_poly, 3, {0.2677 * kPi, kPi - 0.2677 * kPi});
  out.push_back(make("B on W3 = 7.2593 at published angles", std::abs(b_at - 7.2593) <= 5e-4,
                     "value " + num(b_at)));
  OptimumReport b_opt = optimize_angles_symmetric(b_poly, StateFamily::W, 3, config);
  out.push_back(make("B on W3 optimizer reaches 7.2593",
                     std::abs(b_opt.value - 7.2593) <= 5e-4, "found " + num(b_opt.value)));

  OptimumReport b_max = seesaw_max(b_poly, 3, config);
  out.push_back(make("see-saw B max = 7.3084", std::abs(b_max.value - 7.3084) <= 1e-3,
                     "found " + num(b_max.value)));
  Eigen::VectorXcd reference = 0.9971 * w_state(3).amplitudes;
  reference[7] -= 0.07597;
  reference.normalize();
  double overlap = best_overlap(b_max.state, reference, 3);
  out.push_back(make("see-saw B optimal state overlap > 0.999", overlap > 0.999,
                     "overlap " + num(overlap)));

  auto [i4, i4_bound] = known_inequality("I4");
  double i4_at = evaluate_w_symmetric(i4, 4, {0.7861 * kPi, 2 * kPi - 0.7861 * kPi});
  out.push_back(make("I4 on W4 = 11.3155 at published angles",
                     std::abs(i4_at - 11.3155) <= 1e-3, "value " + num(i4_at)));
  OptimumReport i4_max = seesaw_max(i4, 4, config);
  out.push_back(make("see-saw I4 max = 12.0680", std::abs(i4_max.value - 12.0680) <= 1e-3,
                     "found " + num(i4_max.value)));

  auto [i5, i5_bound] = known_inequality("I5");
  double i5_at = evaluate_w_symmetric(i5, 5, {0.0, kPi / 2});
  out.push_back(
      make("I5 on W5 = 28 at (0, pi/2)", std::abs(i5_at - 28.0) <= 1e-9, "value " + num(i5_at)));
  OptimumReport i5_max = seesaw_max(i5, 5, config);
  out.push_back(make("see-saw I5 max = 30.1918", std::abs(i5_max.value - 30.1918) <= 1e-3,
                     "found " + num(i5_max.value)));
  return out;
}

std::vector<CheckResult> appendix_c(unsigned seed, int probe_restarts, int property_draws) {
  std::vector<CheckResult> out;
  auto [b_poly, b_bound] = known_inequality("B");

  double probe = ghz_bound_probe(b_poly, probe_restarts, seed);
  out.push_back(make("generalized-GHZ probe never beats 6", probe <= 6.0 + 1e-7,
                     "max " + num(probe) + " over " + std::to_string(probe_restarts) +
                         " restarts"));

  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
  double worst = 0;
  for (int i = 0; i < property_draws; ++i) {
    auto [a, b, c, d] = appendix_c_quantities(uni(rng), uni(rng), uni(rng), uni(rng));
    worst = std::max(worst, a * a + b * b + c * c + d * d);
  }
  out.push_back(make("a^2+b^2+c^2+d^2 <= 8", worst <= 8.0 + 1e-12, "max " + num(worst)));

  auto [a0, b0, c0, d0] = appendix_c_quantities(0, 0, 0, 0);
  double corner = a0 * a0 + b0 * b0 + c0 * c0 + d0 * d0;
  out.push_back(make("equality case at zero angles", std::abs(corner - 8.0) <= 1e-12,
                     "sum " + num(corner)));

  SymmetricBellPolynomial s3 = known_inequality("S3").poly;
  SymmetricBellPolynomial r2 = parse_bracket("[0 0; 0 1 0; 0 0 0 0]");
  std::array<std::array<Eigen::Vector3d, 2>, 3> all_z;
  for (auto& pair : all_z) pair = {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0, 0, 1)};
  double z_r2 = gghz_value(r2, kPi / 4, all_z);
  double z_s3 = gghz_value(s3, kPi / 4, all_z);
  out.push_back(make("Z settings: R2 = 6, S3 = 0",
                     std::abs(z_r2 - 6.0) <= 1e-12 && std::abs(z_s3) <= 1e-12,
                     "R2 " + num(z_r2) + ", S3 " + num(z_s3)));

  auto equator = [](double phi) {
    return Eigen::Vector3d(std::cos(phi), std::sin(phi), 0);
  };
  std::array<std::array<Eigen::Vector3d, 2>, 3> xy;
  for (auto& pair : xy) pair = {equator(-kPi / 12), equator(5 * kPi / 12)};
  double xy_s3 = gghz_value(s3, kPi / 4, xy);
  double xy_r2 = gghz_value(r2, kPi / 4, xy);
  out.push_back(make("XY settings: S3 = 4*sqrt(2), R2 = 0",
                     std::abs(xy_s3 - 4 * std::sqrt(2.0)) <= 1e-9 && std::abs(xy_r2) <= 1e-12,
                     "S3 " + num(xy_s3) + ", R2 " + num(xy_r2)));
  return out;
}

std::vector<CheckResult> scbi_certificate_suite(unsigned seed, int scenario_draws) {
  std::vector<CheckResult> out;
  std::mt19937 rng(seed);

  bool all_certified = true;
  double worst_dev = 0;
  for (int d = 2; d <= 4; ++d)
    for (int n = 3; n <= 6; ++n) {
      CertificateReport report = scbi_certificate(random_amplitudes(d, rng), n);
      all_certified = all_certified && report.certified;
      worst_dev = std::max(worst_dev, report.max_reduced_deviation);
    }
  out.push_back(make("generalized GHZ certified for d=2..4, N=3..6",
                     all_certified && worst_dev <= 1e-12,
                     "max reduced-state deviation " + num(worst_dev)));

  PureState w3 = w_state(3);
  std::vector<Complex> w3_diag = {Complex(std::sqrt(2.0 / 3.0), 0),
                                  Complex(std::sqrt(1.0 / 3.0), 0)};
  CertificateReport w3_report = scbi_certificate(w3, separable_surrogate(w3_diag, 3));
  out.push_back(make("W3 is not certified", !w3_report.certified,
                     "deviation " + num(w3_report.max_reduced_deviation)));

  CertificateReport product = scbi_certificate({Complex(1, 0)}, 3);
  out.push_back(make("product state certified with zero deviation",
                     product.certified && product.max_reduced_deviation == 0.0,
                     "deviation " + num(product.max_reduced_deviation)));

  // Consequence: certified states never violate an SCBI, over random
  // symmetric scenarios.
  struct Case {
    SymmetricBellPolynomial poly;
    double bound;
    int n;
  };
  std::vector<Case> cases = {
      {scbi_sum(3), 6.0, 3},
      {known_inequality("I4").poly, 8.0, 4},
      {known_inequality("I5").poly, 15.0, 5},
  };
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  double worst_excess = -1e300;
  for (int i = 0; i < scenario_draws; ++i) {
    const Case& c = cases[i % cases.size()];
    PureState state = generalized_ghz(random_amplitudes(2, rng), c.n);
    MeasurementScenario scenario;
    scenario.symmetric = true;
    std::array<Observable, 2> pair;
    for (int s = 0; s < 2; ++s) {
      double z = cosine(rng), phi = angle(rng);
      double r = std::sqrt(std::max(0.0, 1 - z * z));
      pair[s] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    scenario.parties.assign(c.n, pair);
    worst_excess = std::max(worst_excess, quantum_value(c.poly, state, scenario) - c.bound);
  }
  out.push_back(make("no SCBI violation by certified states", worst_excess <= 1e-9,
                     "max value minus bound " + num(worst_excess) + " over " +
                         std::to_string(scenario_draws) + " scenarios"));
  return out;
}

std::vector<CheckResult> frustration_suite() {
  std::vector<CheckResult> out;
  bool construction_ok = true;
  std::string detail;
  for (int n = 3; n <= 10; ++n) {
    FrustrationReport report = frustration(scbi_sum(n), scbi_sum_bound(n));
    if (report.F != Rational(1)) {
      construction_ok = false;
      detail += "N=" + std::to_string(n) + " F=" + format_rational(report.F) + " ";
    }
  }
  out.push_back(make("F(B_N) = 1 for N = 3..10", construction_ok,
                     construction_ok ? "exact" : detail));

  auto [i4, i4_bound] = known_inequality("I4");
  FrustrationReport f4 = frustration(i4, i4_bound);
  out.push_back(make("F(I4) = 11/3", f4.F == Rational(11, 3), "F = " + format_rational(f4.F)));

  auto [i5, i5_bound] = known_inequality("I5");
  FrustrationReport f5 = frustration(i5, i5_bound);
  out.push_back(make("F(I5) = 11/3", f5.F == Rational(11, 3), "F = " + format_rational(f5.F)));
  return out;
}

std::vector<CheckResult> facet_suite() {
  std::vector<CheckResult> out;

  auto vertices4 = project_vertices(4);
  auto vertices5 = project_vertices(5);
  auto [i4, i4_bound] = known_inequality("I4");
  auto [i5, i5_bound] = known_inequality("I5");

  ValidityReport v4 = verify_valid(i4, i4_bound, vertices4);
  ValidityReport v5 = verify_valid(i5, i5_bound, vertices5);
  ValidityReport vb5 = verify_valid(scbi_sum(5), scbi_sum_bound(5), vertices5);
  out.push_back(make("I4, I5, B_5 valid with exact max = bound",
                     v4.valid && v5.valid && vb5.valid,
                     "max values " + format_rational(v4.max_value) + ", " +
                         format_rational(v5.max_value) + ", " +
                         format_rational(vb5.max_value)));

  FacetReport f4 = verify_facet(i4, i4_bound, vertices4);
  out.push_back(make("I4 is a facet (rank dim-1)", f4.facet,
                     "rank " + std::to_string(f4.affine_rank) + " of dim " +
                         std::to_string(f4.polytope_dim)));
  FacetReport f5 = verify_facet(i5, i5_bound, vertices5);
  out.push_back(make("I5 is a facet (rank dim-1)", f5.facet,
                     "rank " + std::to_string(f5.affine_rank) + " of dim " +
                         std::to_string(f5.polytope_dim)));

  // Check every enumerated facet and look for a symmetry match of `target`;
  // facets are independent, so the loop is split across workers.
  auto check_enumeration = [](const std::vector<FacetCandidate>& facets, int n,
                              const std::vector<ProjectedVertex>& vertices,
                              const SymmetricBellPolynomial* target, const Rational& target_bound,
                              bool& found, bool& all_ok) {
    int dim = polytope_dimension(vertices);
    std::vector<char> ok(facets.size(), 0);
    std::vector<char> match(facets.size(), 0);
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
      for (std::size_t i = cursor.fetch_add(1); i < facets.size(); i = cursor.fetch_add(1)) {
        if (target != nullptr) match[i] = facet_matches(facets[i], *target, target_bound, n);
        ok[i] = verify_facet(facets[i].to_polynomial(n),
                             Rational(facets[i].bound.convert_to<long long>()), vertices, dim)
                    .facet;
      }
    };
    int workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(facets.size(), 1));
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    found = std::find(match.begin(), match.end(), 1) != match.end();
    all_ok = std::find(ok.begin(), ok.end(), 0) == ok.end();
  };

  bool found_i4 = false;
  bool facets4_ok = true;
  auto facets4 = enumerate_facets(4);
  check_enumeration(facets4, 4, vertices4, &i4, i4_bound, found_i4, facets4_ok);
  out.push_back(make("enumerate_facets(4) recovers I4", found_i4,
                     std::to_string(facets4.size()) + " facets"));

  bool found_i5 = false;
  bool facets5_ok = true;
  auto facets5 = enumerate_facets(5);
  check_enumeration(facets5, 5, vertices5, &i5, i5_bound, found_i5, facets5_ok);
  out.push_back(make("enumerate_facets(5) recovers I5", found_i5,
                     std::to_string(facets5.size()) + " facets"));

  bool facets3_ok = true;
  bool found_unused = false;
  auto vertices3 = project_vertices(3);
  auto facets3 = enumerate_facets(3);
  check_enumeration(facets3, 3, vertices3, nullptr, Rational(0), found_unused, facets3_ok);
  out.push_back(make("every enumerated facet passes verify_facet",
                     facets3_ok && facets4_ok && facets5_ok, "N = 3, 4, 5"));
  return out;
}

}  // namespace bellstruct::verify
