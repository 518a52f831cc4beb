#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <latgerbe/dirac.hpp>

using namespace latgerbe;
using namespace latgerbe::dirac;

namespace {

CurvatureSample sum_fields(const CurvatureSample& x, const CurvatureSample& y) {
  CurvatureSample out;
  out.point = x.point;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) out.omega[j][k] = x.omega[j][k] + y.omega[j][k];
  return out;
}

std::vector<double> window_values(const std::vector<Level>& spectrum, double lo, double hi) {
  std::vector<double> vals;
  for (const auto& lvl : spectrum)
    if (lvl.value >= lo && lvl.value <= hi) vals.push_back(lvl.value);
  return vals;
}

}  // namespace

TEST_CASE("one-dimensional spectra are sorted and lattice-periodic") {
  vec3 a = {0.3, 0.4, 0.5};
  auto spec = spectrum_1d(a, 2);
  REQUIRE(spec.size() == 15);
  CHECK(std::is_sorted(spec.begin(), spec.end(),
                       [](const Level& x, const Level& y) { return x.value < y.value; }));
  CHECK(spec.front().value == Catch::Approx(-2.5));
  CHECK(spec.front().dir == 2);
  CHECK(spec.back().value == Catch::Approx(1.7));
  CHECK(spec.back().dir == 0);

  // shifting the potential by a lattice vector relabels the levels but keeps
  // the same set of values; compare away from the truncation edges
  auto shifted = spectrum_1d(a + ivec3{1, 0, 0}, 6);
  auto base = spectrum_1d(a, 6);
  auto w1 = window_values(base, -3.0, 3.0);
  auto w2 = window_values(shifted, -3.0, 3.0);
  REQUIRE(w1.size() == w2.size());
  for (size_t i = 0; i < w1.size(); ++i) CHECK(w1[i] == Catch::Approx(w2[i]).margin(1e-12));
}

TEST_CASE("spectral flow counts level crossings exactly") {
  vec3 a0 = {0.3, 0.4, 0.5};
  auto line = [&](const vec3& step, int samples) {
    std::vector<vec3> path;
    for (int i = 0; i <= samples; ++i) path.push_back(a0 + (double(i) / samples) * step);
    return path;
  };

  CHECK(spectral_flow_1d(line({1, 0, 0}, 10)) == ivec3{-1, 0, 0});
  CHECK(spectral_flow_1d(line({2, 0, 0}, 10)) == ivec3{-2, 0, 0});
  CHECK(spectral_flow_1d(line({0, 0, 0}, 4)) == ivec3{0, 0, 0});
  CHECK(spectral_flow_1d(line({-1, 2, 1}, 10)) == ivec3{1, -2, -1});

  // resolution independence
  CHECK(spectral_flow_1d(line({1, 0, 0}, 10)) == spectral_flow_1d(line({1, 0, 0}, 100)));
  CHECK(spectral_flow_1d(line({3, -1, 2}, 7)) == spectral_flow_1d(line({3, -1, 2}, 91)));

  // unit shift in each direction moves exactly one level through zero
  for (int j = 0; j < 3; ++j) {
    vec3 step{};
    step[j] = 1.0;
    ivec3 flow = spectral_flow_1d(line(step, 16));
    for (int k = 0; k < 3; ++k) CHECK(flow[k] == (k == j ? -1 : 0));
  }

  // nonzero level
  CHECK(spectral_flow_1d(line({0, 1, 0}, 10), 0.25) == ivec3{0, -1, 0});

  // a path that starts on the lattice has an eigenvalue pinned at zero
  std::vector<vec3> bad;
  for (int i = 0; i <= 10; ++i) bad.push_back({double(i) / 10, 0.0, 0.0});
  CHECK_THROWS_AS(spectral_flow_1d(bad), guard_error);
  CHECK_THROWS_AS(spectral_flow_1d({}), config_error);
}

TEST_CASE("conditional trace reproduces the winding cocycle") {
  auto r = conditional_trace_1d(1, -1, 5);
  CHECK(r.value == -1);
  CHECK(r.raw == -2);

  CHECK(conditional_trace_1d(2, 3, 7).value == 0);
  CHECK(conditional_trace_1d(0, 0, 2).value == 0);

  for (long long n = -3; n <= 3; ++n)
    for (long long m = -3; m <= 3; ++m) {
      long long lambda = std::llabs(n) + std::llabs(m) + 1;
      auto t = conditional_trace_1d(n, m, lambda);
      long long expected = (n + m == 0) ? m : 0;
      CHECK(t.value == expected);
      CHECK(t.raw == 2 * expected);
      // cutoff independence above the support of the commutator
      CHECK(conditional_trace_1d(n, m, lambda + 6).value == expected);
    }

  CHECK(conditional_trace_cocycle(3, -3, 9) == complexd(-3.0, 0.0));
  CHECK_THROWS_AS(conditional_trace_1d(2, -2, 4), config_error);
}

TEST_CASE("weyl sign matrices square to the identity off the lattice") {
  Mat2 s3 = weyl_sign({0, 0, 1});
  CHECK(s3(0, 0) == complexd(1, 0));
  CHECK(s3(1, 1) == complexd(-1, 0));
  CHECK(s3(0, 1) == complexd(0, 0));

  Mat2 z = weyl_sign({0, 0, 0});
  for (int i = 0; i < 4; ++i) CHECK(z.m[i] == complexd(0, 0));

  Mat2 s = weyl_sign({3, 4, 0});
  CHECK(std::abs(s(0, 1) - complexd(0.6, -0.8)) < 1e-15);
  CHECK(std::abs(s(1, 0) - complexd(0.6, 0.8)) < 1e-15);

  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    vec3 b = {coord(rng), coord(rng), coord(rng)};
    Mat2 sq = weyl_sign(b) * weyl_sign(b);
    CHECK(std::abs(sq(0, 0) - complexd(1, 0)) < 1e-12);
    CHECK(std::abs(sq(1, 1) - complexd(1, 0)) < 1e-12);
    CHECK(std::abs(sq(0, 1)) < 1e-12);
    CHECK(std::abs(sq(1, 0)) < 1e-12);
  }
}

TEST_CASE("gap membership is exact") {
  CHECK(gap_membership({0.3, 0.4, 0.5}, 0.0));
  CHECK_FALSE(gap_membership({1, -2, 0}, 0.0));
  CHECK_FALSE(gap_membership({0.5, 0, 0}, 0.5));
  CHECK_FALSE(gap_membership({0.25, 0, 0}, -0.25));
  CHECK(gap_membership({0.3, 0.4, 0.5}, 1.0 / 3.0));

  // every point of the coarse grid lies in one of the two gap neighbourhoods
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        vec3 a = {i / 20.0, j / 20.0, k / 20.0};
        CHECK((gap_membership(a, 0.0) || gap_membership(a, 1.0 / 3.0)));
      }
}

TEST_CASE("monopole curvature closed form") {
  auto s = monopole_curvature({0, 0, 1});
  CHECK(s.omega[0][1] == complexd(0, 0.5));
  CHECK(s.omega[1][0] == complexd(0, -0.5));
  CHECK(s.omega[1][2] == complexd(0, 0));

  auto t = monopole_curvature({2, 0, 0});
  CHECK(std::abs(t.omega[1][2] - complexd(0, 0.125)) < 1e-15);

  CHECK_THROWS_AS(monopole_curvature({0, 0, 0}), guard_error);

  // antisymmetry at a generic point
  auto g = monopole_curvature({0.7, -0.3, 0.2});
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) CHECK(g.omega[j][k] == -g.omega[k][j]);
}

TEST_CASE("plaquette curvature matches the closed form at second order") {
  vec3 points[] = {{0, 0, 1}, {0.5, 0, 0}, {0, 0.7, 0}, {0.6, -0.4, 0.9}, {-1.2, 0.3, 0.4}};
  for (const vec3& b : points) {
    auto exact = monopole_curvature(b);
    auto num = berry_curvature_numeric(b, 1e-3);
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k)
        CHECK(std::abs(num.omega[j][k] - exact.omega[j][k]) < 1e-5);
  }

  // inversion antisymmetry of the field
  vec3 b = {0.6, -0.4, 0.9};
  auto plus = berry_curvature_numeric(b, 1e-3);
  auto minus = berry_curvature_numeric(-1.0 * b, 1e-3);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k)
      CHECK(std::abs(plus.omega[j][k] + minus.omega[j][k]) < 1e-5);

  // quadratic error decay in the cell size
  auto err = [](double delta) {
    return std::abs(berry_curvature_numeric({0, 0, 1}, delta).omega[0][1] - complexd(0, 0.5));
  };
  double e1 = err(1e-3), e4 = err(4e-3);
  CHECK(e4 > 4.0 * e1);
  CHECK(e4 < 64.0 * e1);

  CHECK_THROWS_AS(berry_curvature_numeric({1e-3, 0, 0}, 1e-3), guard_error);
}

TEST_CASE("flux quadrature resolves the monopole charge") {
  auto field = [](const vec3& b) { return monopole_curvature(b); };

  SphereMesh mesh;
  mesh.center = {0, 0, 0};
  mesh.radius = 0.4;
  complexd flux = flux_through_sphere(field, mesh);
  CHECK(std::abs(flux - complexd(0, two_pi)) < 1e-8);

  SphereMesh off;
  off.center = {0.5, 0.5, 0.5};
  off.radius = 0.4;
  CHECK(std::abs(flux_through_sphere(field, off)) < 1e-8);

  // two enclosed poles add their charges
  auto pair_field = [](const vec3& b) {
    return sum_fields(monopole_curvature(b), monopole_curvature(b - vec3{1, 0, 0}));
  };
  SphereMesh wide;
  wide.center = {0.5, 0, 0};
  wide.radius = 0.8;
  CHECK(std::abs(flux_through_sphere(pair_field, wide) - complexd(0, 2 * two_pi)) < 1e-6);
}

TEST_CASE("sphere chern numbers are integers and mesh-independent") {
  SphereMesh mesh;
  mesh.center = {0, 0, 0};
  mesh.radius = 0.4;
  mesh.n_theta = 100;
  mesh.n_phi = 200;
  CHECK(sphere_chern(mesh, SingleMomentum{{0, 0, 0}}) == 1);

  SphereMesh coarse = mesh;
  coarse.n_theta = 50;
  coarse.n_phi = 100;
  CHECK(sphere_chern(coarse, SingleMomentum{{0, 0, 0}}) == 1);

  for (double r : {0.3, 0.45}) {
    SphereMesh m = coarse;
    m.radius = r;
    CHECK(sphere_chern(m, SingleMomentum{{0, 0, 0}}) == 1);
  }

  SphereMesh off = coarse;
  off.center = {0.5, 0.5, 0.5};
  CHECK(sphere_chern(off, SingleMomentum{{0, 0, 0}}) == 0);
  CHECK(sphere_chern(off, SingleMomentum{{-1, 0, 0}}) == 0);

  // the renormalized total over a momentum box counts only the enclosed band
  SphereMesh total = coarse;
  total.n_theta = 40;
  total.n_phi = 80;
  CHECK(sphere_chern(total, TotalRenormalized{1}) == 1);

  // surface through a lattice point is rejected up front
  SphereMesh bad = coarse;
  bad.center = {0.5, 0, 0};
  bad.radius = 0.5;
  CHECK_THROWS_AS(sphere_chern(bad, SingleMomentum{{0, 0, 0}}), config_error);

  // a singular point skimming the surface drives a plaquette phase toward the
  // branch cut
  SphereMesh skim;
  skim.center = {0.3975, 0, 0};
  skim.radius = 0.4;
  skim.n_theta = 21;
  skim.n_phi = 43;
  CHECK_THROWS_AS(sphere_chern(skim, SingleMomentum{{0, 0, 0}}), guard_error);
}

TEST_CASE("renormalized curvature sums") {
  vec3 a = {0.3, 0.4, 0.5};

  SECTION("the momentum-zero term is the monopole form") {
    auto s = renormalized_curvature(a, {0}, 0, 1);
    auto mono = monopole_curvature(a);
    CHECK(std::abs(s.renorm[0] - mono.omega[0][1]) < 1e-15);
    CHECK(std::abs(s.bare[0] - mono.omega[0][1]) < 1e-15);
  }

  SECTION("subtracted series obeys a Cauchy criterion, unsubtracted terms do not shrink") {
    auto s = renormalized_curvature(a, {4, 6, 8, 10, 12, 14, 16}, 0, 1);
    REQUIRE(s.cutoffs.size() == 7);

    std::vector<double> inc;
    for (size_t i = 2; i < s.renorm.size(); ++i)
      inc.push_back(std::abs(s.renorm[i] - s.renorm[i - 1]));
    for (size_t i = 1; i < inc.size(); ++i) CHECK(inc[i] < 0.9 * inc[i - 1]);
    CHECK(inc.back() < 1e-5);

    // the term magnitudes keep arriving at a near-constant rate
    std::vector<double> l1;
    for (size_t i = 2; i < s.bare_abs.size(); ++i) l1.push_back(s.bare_abs[i] - s.bare_abs[i - 1]);
    for (double d : l1) CHECK(d > 1.0);
    CHECK(l1.back() / l1.front() > 0.95);
    CHECK(l1.back() / l1.front() < 1.05);
  }

  SECTION("input validation") {
    CHECK_THROWS_AS(renormalized_curvature(a, {4, 4}, 0, 1), config_error);
    CHECK_THROWS_AS(renormalized_curvature(a, {}, 0, 1), config_error);
    CHECK_THROWS_AS(renormalized_curvature(a, {4}, 1, 1), config_error);
    CHECK_THROWS_AS(renormalized_curvature({1, 0, -2}, {4}, 0, 1), config_error);
    CHECK_THROWS_AS(renormalized_sample({0, 0, 0}, 4), config_error);
  }

  SECTION("summation order is pinned") {
    auto s1 = renormalized_curvature(a, {6}, 0, 1);
    auto s2 = renormalized_curvature(a, {6}, 0, 1);
    CHECK(s1.renorm[0] == s2.renorm[0]);
    CHECK(s1.bare[0] == s2.bare[0]);
    auto sample = renormalized_sample(a, 6);
    CHECK(sample.omega[0][1] == s1.renorm[0]);
    CHECK(sample.omega[1][0] == -s1.renorm[0]);
  }

  SECTION("the subtracted field is closed") {
    double h = 1e-3;
    auto comp = [&](int dir, double d, int j, int k) {
      vec3 x = a;
      x[dir] += d;
      return renormalized_sample(x, 6).omega[j][k];
    };
    complexd div = (comp(0, h, 1, 2) - comp(0, -h, 1, 2)) / (2 * h) +
                   (comp(1, h, 2, 0) - comp(1, -h, 2, 0)) / (2 * h) +
                   (comp(2, h, 0, 1) - comp(2, -h, 0, 1)) / (2 * h);
    CHECK(std::abs(div) < 1e-4);
  }
}
