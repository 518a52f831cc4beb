#pragma once

// One-particle spectral computations: 1D Dirac spectra and spectral flow on
// the circle, the conditional-trace cocycle, 2x2 Weyl blocks, monopole Berry
// curvature with plaquette and flux cross-checks, sphere Chern numbers, and
// the renormalized lattice curvature sum.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "common.hpp"

namespace latgerbe::dirac {

inline Mat2 pauli_dot(const vec3& b) {
  Mat2 r;
  r(0, 0) = b[2];
  r(0, 1) = complexd(b[0], -b[1]);
  r(1, 0) = complexd(b[0], b[1]);
  r(1, 1) = -b[2];
  return r;
}

// --- 1D spectra and spectral flow ------------------------------------------------

struct Level {
  double value;
  int dir;
  long long p;
};

inline std::vector<Level> spectrum_1d(const vec3& a, long long lambda) {
  if (lambda < 0) throw config_error("spectrum: cutoff must be nonnegative");
  std::vector<Level> out;
  for (int j = 0; j < 3; ++j)
    for (long long p = -lambda; p <= lambda; ++p) out.push_back({double(p) - a[j], j, p});
  std::sort(out.begin(), out.end(), [](const Level& x, const Level& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.dir != y.dir) return x.dir < y.dir;
    return x.p < y.p;
  });
  return out;
}

// signed crossing count of the level by the eigenvalues p - a_j along the
// path; a crossing is downward as a_j grows, so each one counts -1.
// Counting by integer-floor differences telescopes over the path, which
// makes the result independent of the sampling resolution.
inline ivec3 spectral_flow_1d(const std::vector<vec3>& path, double level = 0.0) {
  if (path.empty()) throw config_error("spectral flow: empty path");
  for (const vec3* endpoint : {&path.front(), &path.back()})
    for (int j = 0; j < 3; ++j) {
      double x = (*endpoint)[j] - level;
      if (std::abs(x - std::nearbyint(x)) < 1e-9)
        throw guard_error("spectral flow: eigenvalue sits on the level at a path endpoint");
    }
  ivec3 flow{};
  for (int j = 0; j < 3; ++j) {
    double x0 = path.front()[j] - level;
    double x1 = path.back()[j] - level;
    flow[j] = -(long long)(std::floor(x1) - std::floor(x0));
  }
  return flow;
}

// --- conditional trace --------------------------------------------------------------

struct CondTrace {
  long long raw;    // tr_C X [eps, Y] on the truncated Fourier basis
  long long value;  // the 1D cocycle m * delta_{n+m,0}; equals raw / 2
};

inline CondTrace conditional_trace_1d(long long n, long long m, long long lambda) {
  if (lambda <= std::llabs(n) + std::llabs(m))
    throw config_error("conditional trace: cutoff must exceed |n| + |m|");
  long long dim = 2 * lambda + 1;
  auto idx = [&](long long p) { return p + lambda; };
  auto eps = [](long long p) { return p > 0 ? 1 : -1; };

  // Z = X [eps, Y] with X, Y the shifts by n and m
  std::vector<long long> diag(dim, 0);
  for (long long p = -lambda; p <= lambda; ++p) {
    // (Y v)_q picks up v_{q-m}; [eps,Y]_{q,p} = delta_{q,p+m} (eps_q - eps_p)
    long long q = p + m;        // row after [eps, Y]
    long long r = q + n;        // row after X
    if (std::llabs(q) > lambda || std::llabs(r) > lambda) continue;
    if (r == p) diag[idx(p)] += eps(q) - eps(p);
  }
  long long tr = 0, tr_eps = 0;
  for (long long p = -lambda; p <= lambda; ++p) {
    tr += diag[idx(p)];
    tr_eps += diag[idx(p)];  // eps Z eps leaves diagonal entries unchanged
  }
  long long cond = (tr + tr_eps) / 2;
  return {cond, cond / 2};
}

inline complexd conditional_trace_cocycle(long long n, long long m, long long lambda) {
  return complexd(double(conditional_trace_1d(n, m, lambda).value), 0.0);
}

// --- gap membership -----------------------------------------------------------------

// exact test of level^2 against |p+a|^2 over the finitely many candidate
// lattice momenta
inline bool gap_membership(const vec3& a, double level) {
  rational l2 = rational_from_double(level) * rational_from_double(level);
  std::array<rational, 3> ar = {rational_from_double(a[0]), rational_from_double(a[1]),
                                rational_from_double(a[2])};
  long long reach = (long long)std::ceil(std::abs(level)) + 1;
  for (long long p1 = -reach; p1 <= reach; ++p1)
    for (long long p2 = -reach; p2 <= reach; ++p2)
      for (long long p3 = -reach; p3 <= reach; ++p3) {
        // center the search box at the nearest lattice point to -a
        rational d2 = 0;
        long long c[3] = {llround(-a[0]), llround(-a[1]), llround(-a[2])};
        long long p[3] = {c[0] + p1, c[1] + p2, c[2] + p3};
        for (int i = 0; i < 3; ++i) {
          rational t = rational(p[i]) + ar[i];
          d2 += t * t;
        }
        if (d2 == l2) return false;
      }
  return true;
}

// --- Weyl blocks and monopole curvature ----------------------------------------------

inline Mat2 weyl_sign(const vec3& b) {
  double r = norm2(b);
  if (r == 0.0) return Mat2::zero();
  return (1.0 / r) * pauli_dot(b);
}

// analytic derivative of b.sigma/|b| in direction j
inline Mat2 weyl_sign_derivative(const vec3& b, int j) {
  double r = norm2(b);
  if (r == 0.0) throw guard_error("weyl sign derivative: singular at b = 0");
  vec3 unit{};
  unit[j] = 1.0;
  return (1.0 / r) * pauli_dot(unit) - (b[j] / (r * r * r)) * pauli_dot(b);
}

struct CurvatureSample {
  vec3 point{};
  std::array<std::array<complexd, 3>, 3> omega{};  // coefficient of da_j ^ da_k
};

inline CurvatureSample monopole_curvature(const vec3& b) {
  double r = norm2(b);
  if (r == 0.0) throw guard_error("monopole curvature: singular at the lattice point");
  CurvatureSample s;
  s.point = b;
  static const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                   {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                   {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      complexd v = 0;
      for (int l = 0; l < 3; ++l)
        if (eps[l][j][k]) v += complexd(0, 0.5) * double(eps[l][j][k]) * b[l] / (r * r * r);
      s.omega[j][k] = v;
    }
  return s;
}

// lower-band eigenvector of b.sigma, choosing the better-conditioned of the
// two closed-form candidates
inline std::array<complexd, 2> lower_eigenvector(const vec3& b) {
  double r = norm2(b);
  if (r == 0.0) throw guard_error("lower eigenvector: undefined at b = 0");
  complexd bm(b[0], -b[1]), bp(b[0], b[1]);
  std::array<complexd, 2> A = {-bm, complexd(b[2] + r, 0)};
  std::array<complexd, 2> B = {complexd(b[2] - r, 0), bp};
  double na = std::norm(A[0]) + std::norm(A[1]);
  double nb = std::norm(B[0]) + std::norm(B[1]);
  std::array<complexd, 2> v = na >= nb ? A : B;
  double n = std::sqrt(na >= nb ? na : nb);
  v[0] /= n;
  v[1] /= n;
  return v;
}

// plaquette-phase estimate of the lower-band curvature on centered 2-cells;
// only the phase of the loop product carries the curvature, its modulus is
// the quantum-metric contribution and is discarded
inline CurvatureSample berry_curvature_numeric(const vec3& b, double delta) {
  if (norm2(b) <= 2.0 * delta)
    throw guard_error("numeric curvature: point too close to the singularity");
  auto overlap = [](const std::array<complexd, 2>& u, const std::array<complexd, 2>& w) {
    return std::conj(u[0]) * w[0] + std::conj(u[1]) * w[1];
  };
  CurvatureSample s;
  s.point = b;
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      vec3 ej{}, ek{};
      ej[j] = delta / 2;
      ek[k] = delta / 2;
      std::array<vec3, 4> corners = {b - ej - ek, b + ej - ek, b + ej + ek, b - ej + ek};
      complexd loop = 1.0;
      for (int c = 0; c < 4; ++c)
        loop *= overlap(lower_eigenvector(corners[c]), lower_eigenvector(corners[(c + 1) % 4]));
      complexd val(0.0, -std::arg(loop) / (delta * delta));
      s.omega[j][k] = val;
      s.omega[k][j] = -val;
    }
  return s;
}

// --- sphere meshes, flux, Chern numbers ------------------------------------------------

struct SphereMesh {
  vec3 center{};
  double radius = 0.4;
  int n_theta = 100;
  int n_phi = 200;

  void validate() const {
    if (radius <= 0) throw config_error("sphere mesh: radius must be positive");
    if (n_theta < 2 || n_phi < 3) throw config_error("sphere mesh: resolution too small");
    long long reach = (long long)std::ceil(radius + norm2(center)) + 1;
    for (long long p1 = -reach; p1 <= reach; ++p1)
      for (long long p2 = -reach; p2 <= reach; ++p2)
        for (long long p3 = -reach; p3 <= reach; ++p3) {
          vec3 d = {center[0] - double(p1), center[1] - double(p2), center[2] - double(p3)};
          if (std::abs(norm2(d) - radius) < 1e-6)
            throw config_error("sphere mesh: surface passes through a lattice point");
        }
  }

  vec3 at(double theta, double phi) const {
    return {center[0] + radius * std::sin(theta) * std::cos(phi),
            center[1] + radius * std::sin(theta) * std::sin(phi),
            center[2] + radius * std::cos(theta)};
  }
};

using CurvatureField = std::function<CurvatureSample(const vec3&)>;

namespace detail {

inline complexd flux_midpoint(const CurvatureField& field, const SphereMesh& mesh, int nt,
                              int np) {
  const double pi = two_pi / 2;
  double dt = pi / nt, dp = two_pi / np;
  complexd total = 0;
  for (int i = 0; i < nt; ++i) {
    double theta = (i + 0.5) * dt;
    for (int j = 0; j < np; ++j) {
      double phi = (j + 0.5) * dp;
      vec3 b = mesh.at(theta, phi);
      double R = mesh.radius;
      vec3 bt = {R * std::cos(theta) * std::cos(phi), R * std::cos(theta) * std::sin(phi),
                 -R * std::sin(theta)};
      vec3 bp = {-R * std::sin(theta) * std::sin(phi), R * std::sin(theta) * std::cos(phi), 0.0};
      CurvatureSample w = field(b);
      complexd integrand = 0;
      for (int x = 0; x < 3; ++x)
        for (int y = x + 1; y < 3; ++y)
          integrand += w.omega[x][y] * (bt[x] * bp[y] - bt[y] * bp[x]);
      total += integrand * dt * dp;
    }
  }
  return total;
}

}  // namespace detail

// midpoint quadrature of the 2-form over the sphere with one Richardson
// extrapolation step; the quadrature alone is O(h^2)
inline complexd flux_through_sphere(const CurvatureField& field, const SphereMesh& mesh) {
  complexd coarse = detail::flux_midpoint(field, mesh, mesh.n_theta, mesh.n_phi);
  complexd fine = detail::flux_midpoint(field, mesh, 2 * mesh.n_theta, 2 * mesh.n_phi);
  return (4.0 * fine - coarse) / 3.0;
}

struct SingleMomentum {
  ivec3 p{};
};
struct TotalRenormalized {
  long long cutoff = 1;
};
using FieldKind = std::variant<SingleMomentum, TotalRenormalized>;

namespace detail {

inline long long chern_single(const SphereMesh& mesh, const ivec3& p) {
  const double pi = two_pi / 2;
  int nt = mesh.n_theta, np = mesh.n_phi;
  auto vertex = [&](int i, int j) {
    double theta = double(i) * pi / nt;
    double phi = double(j % np) * two_pi / np;
    return lower_eigenvector(mesh.at(theta, phi) + p);
  };
  auto overlap = [](const std::array<complexd, 2>& u, const std::array<complexd, 2>& w) {
    return std::conj(u[0]) * w[0] + std::conj(u[1]) * w[1];
  };
  std::vector<std::array<complexd, 2>> verts((nt + 1) * np);
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j < np; ++j) verts[i * np + j] = vertex(i, j);
  auto at = [&](int i, int j) -> const std::array<complexd, 2>& {
    return verts[i * np + (j % np)];
  };
  double total = 0;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      complexd loop = overlap(at(i, j), at(i + 1, j)) * overlap(at(i + 1, j), at(i + 1, j + 1)) *
                      overlap(at(i + 1, j + 1), at(i, j + 1)) * overlap(at(i, j + 1), at(i, j));
      double phase = std::arg(loop);
      if (std::abs(phase) > 3.0)
        throw guard_error("sphere chern: plaquette phase near the branch cut; refine the mesh");
      total += -phase;
    }
  double c = total / two_pi;
  long long rounded = llround(c);
  if (std::abs(c - double(rounded)) > 1e-6)
    throw guard_error("sphere chern: plaquette sum is not an integer");
  return rounded;
}

}  // namespace detail

inline long long sphere_chern(const SphereMesh& mesh, const FieldKind& field) {
  mesh.validate();
  if (std::holds_alternative<SingleMomentum>(field))
    return detail::chern_single(mesh, std::get<SingleMomentum>(field).p);
  long long cutoff = std::get<TotalRenormalized>(field).cutoff;
  long long total = 0;
  for (long long p1 = -cutoff; p1 <= cutoff; ++p1)
    for (long long p2 = -cutoff; p2 <= cutoff; ++p2)
      for (long long p3 = -cutoff; p3 <= cutoff; ++p3) total += detail::chern_single(mesh, {p1, p2, p3});
  return total;
}

// --- renormalized lattice curvature -----------------------------------------------------

namespace detail {

// per-momentum curvature component: (1/8) tr[(F - eps)(dF_j dF_k - dF_k dF_j)],
// normalized so the p = 0 term reproduces the monopole closed form exactly
inline void momentum_term(const vec3& a, const ivec3& p, int j, int k, complexd& bare,
                          complexd& renorm) {
  vec3 b = a + p;
  Mat2 F = weyl_sign(b);
  Mat2 eps = weyl_sign(vec3{double(p[0]), double(p[1]), double(p[2])});
  Mat2 dFj = weyl_sign_derivative(b, j);
  Mat2 dFk = weyl_sign_derivative(b, k);
  Mat2 comm = dFj * dFk - dFk * dFj;
  bare = 0.125 * (F * comm).trace();
  renorm = 0.125 * ((F - eps) * comm).trace();
}

template <class Visit>
inline void for_shell(long long s, Visit&& visit) {
  for (long long p1 = -s; p1 <= s; ++p1)
    for (long long p2 = -s; p2 <= s; ++p2)
      for (long long p3 = -s; p3 <= s; ++p3) {
        if (std::max({std::llabs(p1), std::llabs(p2), std::llabs(p3)}) != s) continue;
        visit(ivec3{p1, p2, p3});
      }
}

inline void require_off_lattice(const vec3& a) {
  bool on_lattice = true;
  for (int i = 0; i < 3; ++i)
    if (a[i] != std::nearbyint(a[i])) on_lattice = false;
  if (on_lattice) throw config_error("renormalized curvature: the potential sits on the lattice");
}

}  // namespace detail

struct PartialSumSeries {
  std::vector<long long> cutoffs;
  std::vector<complexd> bare;        // signed partial sums of the unsubtracted terms
  std::vector<complexd> renorm;      // signed partial sums after the eps subtraction
  std::vector<double> bare_abs;      // l1 partial sums (sum of |term|)
  std::vector<double> renorm_abs;
};

inline PartialSumSeries renormalized_curvature(const vec3& a, std::vector<long long> cutoffs,
                                               int j, int k) {
  if (j < 0 || j > 2 || k < 0 || k > 2 || j == k)
    throw config_error("renormalized curvature: component indices must be distinct in 0..2");
  if (cutoffs.empty()) throw config_error("renormalized curvature: no cutoffs given");
  for (size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i] <= cutoffs[i - 1])
      throw config_error("renormalized curvature: cutoffs must be strictly increasing");
  detail::require_off_lattice(a);

  PartialSumSeries series;
  complexd bare_sum = 0, renorm_sum = 0;
  double bare_abs = 0, renorm_abs = 0;
  size_t next = 0;
  for (long long s = 0; s <= cutoffs.back(); ++s) {
    detail::for_shell(s, [&](const ivec3& p) {
      complexd b, r;
      detail::momentum_term(a, p, j, k, b, r);
      bare_sum += b;
      renorm_sum += r;
      bare_abs += std::abs(b);
      renorm_abs += std::abs(r);
    });
    while (next < cutoffs.size() && cutoffs[next] == s) {
      series.cutoffs.push_back(s);
      series.bare.push_back(bare_sum);
      series.renorm.push_back(renorm_sum);
      series.bare_abs.push_back(bare_abs);
      series.renorm_abs.push_back(renorm_abs);
      ++next;
    }
  }
  return series;
}

// full renormalized curvature sample at one point, fixed cutoff
inline CurvatureSample renormalized_sample(const vec3& a, long long cutoff) {
  detail::require_off_lattice(a);
  CurvatureSample s;
  s.point = a;
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      complexd total = 0;
      for (long long sh = 0; sh <= cutoff; ++sh)
        detail::for_shell(sh, [&](const ivec3& p) {
          complexd b, r;
          detail::momentum_term(a, p, j, k, b, r);
          total += r;
        });
      s.omega[j][k] = total;
      s.omega[k][j] = -total;
    }
  return s;
}

}  // namespace latgerbe::dirac
