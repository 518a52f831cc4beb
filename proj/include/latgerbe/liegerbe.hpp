#pragma once

// The su(2) orbit construction: the invariant form, the matrix function
// h(ad_Z) = (sinh(z) - z)/z^2 applied to the adjoint action, the 2-form
// theta built from it, the quadrature of theta over the adjoint orbit, and
// sampled groupoid morphisms g(x) = e^{-xs} e^{xt}.
//
// Coordinates (z1, z2, z3) refer to the basis (h, x, y) with brackets
// [h,x] = 2y, [h,y] = -2x, [x,y] = 2h and invariant form <u,v> = 2 u.v,
// so <h,h> = 2. In the fundamental representation h = i*sigma_3,
// x = i*sigma_1, y = -i*sigma_2.

#include <array>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace latgerbe::lie {

using SuTwoVector = vec3;  // coefficients of (h, x, y)

inline ivec3 bracket(const ivec3& u, const ivec3& v) {
  return {2 * (u[1] * v[2] - u[2] * v[1]), 2 * (u[2] * v[0] - u[0] * v[2]),
          2 * (u[0] * v[1] - u[1] * v[0])};
}

inline long long invariant_form(const ivec3& u, const ivec3& v) { return 2 * dot(u, v); }
inline double invariant_form(const SuTwoVector& u, const SuTwoVector& v) { return 2 * dot(u, v); }

struct AdMatrix {
  std::array<std::array<double, 3>, 3> m{};

  SuTwoVector apply(const SuTwoVector& v) const {
    SuTwoVector out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
    return out;
  }
};

inline AdMatrix ad_matrix(const SuTwoVector& z) {
  AdMatrix a;
  a.m = {{{0, -2 * z[2], 2 * z[1]}, {2 * z[2], 0, -2 * z[0]}, {-2 * z[1], 2 * z[0], 0}}};
  return a;
}

namespace detail {

// scalar profile of h on a skew matrix with eigenvalues {0, +-i w}: since
// h is odd and vanishes at 0, h(ad_Z) = g(w) ad_Z with g(w) = h(iw)/(iw)
inline double h_profile(double w) {
  if (w < 1e-3) return 1.0 / 6.0 - w * w / 120.0 + w * w * w * w / 5040.0;
  return (w - std::sin(w)) / (w * w * w);
}

}  // namespace detail

inline AdMatrix h_of_ad(const SuTwoVector& z) {
  double w = 2.0 * norm2(z);
  double g = detail::h_profile(w);
  AdMatrix a = ad_matrix(z);
  for (auto& row : a.m)
    for (double& entry : row) entry *= g;
  return a;
}

inline double theta_form(const SuTwoVector& z, const SuTwoVector& x, const SuTwoVector& y,
                         long long k) {
  const double pi = two_pi / 2;
  return double(k) / (4 * pi * pi) * invariant_form(x, h_of_ad(z).apply(y));
}

// quadrature of theta over the adjoint orbit through 2*pi*h, which in
// coordinates is the euclidean sphere of radius 2*pi, oriented by the
// (phi, theta) tangent frame
inline double orbit_integral(long long k, int n_theta, int n_phi) {
  if (n_theta < 50 || n_phi < 100) throw config_error("orbit integral: mesh too coarse");
  const double pi = two_pi / 2;
  const double r = two_pi;
  double dt = pi / n_theta, dp = two_pi / n_phi;
  double total = 0;
  for (int i = 0; i < n_theta; ++i) {
    double theta = (i + 0.5) * dt;
    for (int j = 0; j < n_phi; ++j) {
      double phi = (j + 0.5) * dp;
      SuTwoVector z = {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                       r * std::cos(theta)};
      SuTwoVector tt = {r * std::cos(theta) * std::cos(phi), r * std::cos(theta) * std::sin(phi),
                        -r * std::sin(theta)};
      SuTwoVector tp = {-r * std::sin(theta) * std::sin(phi), r * std::sin(theta) * std::cos(phi),
                        0.0};
      total += theta_form(z, tp, tt, k) * dt * dp;
    }
  }
  return total;
}

// exponential in the fundamental representation: z1 h + z2 x + z3 y maps to
// i (z2, -z3, z1).sigma
inline Mat2 su2_exp(const SuTwoVector& z) {
  vec3 w = {z[1], -z[2], z[0]};
  double r = norm2(w);
  Mat2 out = Mat2::identity();
  if (r == 0.0) return out;
  double c = std::cos(r), s = std::sin(r) / r;
  out(0, 0) = complexd(c, s * w[2]);
  out(0, 1) = complexd(s * w[1], s * w[0]);
  out(1, 0) = complexd(-s * w[1], s * w[0]);
  out(1, 1) = complexd(c, -s * w[2]);
  return out;
}

struct GroupoidMorphism {
  SuTwoVector source{};
  SuTwoVector target{};
  std::vector<Mat2> loop;  // loop[i] = g(i / (loop.size() - 1))
};

inline GroupoidMorphism exp_morphism(const SuTwoVector& s, const SuTwoVector& t, int samples) {
  if (samples < 2) throw config_error("exp morphism: need at least two samples");
  if (frobenius(su2_exp(s) - su2_exp(t)) >= 1e-10)
    throw config_error("exp morphism: the endpoints do not share an exponential");
  GroupoidMorphism g;
  g.source = s;
  g.target = t;
  g.loop.reserve(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    double x = double(i) / samples;
    g.loop.push_back(su2_exp(-x * s) * su2_exp(x * t));
  }
  return g;
}

}  // namespace latgerbe::lie
