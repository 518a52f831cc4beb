#pragma once

// 2-cocycles on the transformation groupoid R^3 x| Z^3: evaluation of
// exponential (tensor) cocycles, randomized verification of the cocycle
// identity, coboundaries, class extraction by phase unwrapping, and the
// truncated l^2 model representation.
//
// Convention, fixed module-wide: the identity is
//   C(a;n,m) C(a;n+m,p) = C(a-n;m,p) C(a;n,m+p)
// matching operators that act as (g(n) psi)(a) = U_n(a-n) psi(a-n).

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"

namespace latgerbe::cocycle {

struct CocycleTensor {
  std::array<long long, 27> s{};

  long long& at(int j, int k, int l) { return s[9 * j + 3 * k + l]; }
  long long at(int j, int k, int l) const { return s[9 * j + 3 * k + l]; }

  static CocycleTensor levi_civita(long long scale = 1) {
    CocycleTensor t;
    t.at(0, 1, 2) = t.at(1, 2, 0) = t.at(2, 0, 1) = scale;
    t.at(0, 2, 1) = t.at(2, 1, 0) = t.at(1, 0, 2) = -scale;
    return t;
  }
};

// exponent sum(S_jkl a_j n_k m_l) as an exact rational; doubles are dyadic
// rationals, so nothing is lost here
inline rational exp_cocycle_exponent(const CocycleTensor& S, const vec3& a, const ivec3& n,
                                     const ivec3& m) {
  rational total = 0;
  for (int j = 0; j < 3; ++j) {
    if (a[j] == 0.0) continue;
    bigint inner = 0;
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) inner += bigint(S.at(j, k, l)) * n[k] * m[l];
    if (inner != 0) total += rational_from_double(a[j]) * rational(inner);
  }
  return total;
}

inline complexd eval_exp_cocycle(const CocycleTensor& S, const vec3& a, const ivec3& n,
                                 const ivec3& m) {
  return unit_phase(exp_cocycle_exponent(S, a, n, m));
}

struct SampledCocycle {
  std::function<complexd(const vec3&, const ivec3&, const ivec3&)> eval;
  std::string description;
};

inline SampledCocycle tensor_cocycle(const CocycleTensor& S) {
  return {[S](const vec3& a, const ivec3& n, const ivec3& m) { return eval_exp_cocycle(S, a, n, m); },
          "tensor"};
}

struct CheckResult {
  bool ok = false;
  double max_deviation = 0.0;
};

inline CheckResult check_cocycle(const SampledCocycle& C, int trials, uint64_t seed,
                                 double tol = 1e-12) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  std::uniform_int_distribution<long long> ui(-3, 3);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    vec3 a = {ua(rng), ua(rng), ua(rng)};
    ivec3 n = {ui(rng), ui(rng), ui(rng)};
    ivec3 m = {ui(rng), ui(rng), ui(rng)};
    ivec3 p = {ui(rng), ui(rng), ui(rng)};
    complexd lhs = C.eval(a, n, m) * C.eval(a, n + m, p);
    complexd rhs = C.eval(a - n, m, p) * C.eval(a, n, m + p);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst < tol, worst};
}

inline SampledCocycle coboundary(std::function<complexd(const vec3&, const ivec3&)> b) {
  return {[b](const vec3& a, const ivec3& n, const ivec3& m) {
            return b(a, n) * b(a - n, m) / b(a, n + m);
          },
          "coboundary"};
}

namespace detail {

// phase increment of f along [t0,t1], accepted only when both halves are
// individually small and consistent with the parent; otherwise bisect.
// Guards against branch slips for rapidly winding phases.
inline double phase_increment(const std::function<complexd(double)>& f, double t0, double t1,
                              const complexd& c0, const complexd& c1, int depth) {
  if (depth > 40) throw guard_error("phase unwrapping: bisection depth exceeded");
  double tm = 0.5 * (t0 + t1);
  complexd cm = f(tm);
  double d = std::arg(c1 * std::conj(c0));
  double d1 = std::arg(cm * std::conj(c0));
  double d2 = std::arg(c1 * std::conj(cm));
  if (std::abs(d1) < 1.0 && std::abs(d2) < 1.0 && std::abs(d1 + d2 - d) < 1e-9) return d1 + d2;
  return phase_increment(f, t0, tm, c0, cm, depth + 1) +
         phase_increment(f, tm, t1, cm, c1, depth + 1);
}

// continuous branch of (1/2pi) arg f(t) at t=1, continued from the principal
// value at t=0 along the straight path, base step 1/64
inline double unwrap_turns(const std::function<complexd(double)>& f) {
  constexpr int steps = 64;
  complexd prev = f(0.0);
  double total = std::arg(prev);
  for (int k = 0; k < steps; ++k) {
    double t0 = double(k) / steps;
    double t1 = double(k + 1) / steps;
    complexd next = f(t1);
    total += phase_increment(f, t0, t1, prev, next, 0);
    prev = next;
  }
  return total / two_pi;
}

inline double log_exponent(const SampledCocycle& C, const vec3& a, const ivec3& n, const ivec3& m) {
  return unwrap_turns([&](double t) { return C.eval(t * a, n, m); });
}

// delta s at base point a; integer-valued for exponential cocycles
inline double delta_s(const SampledCocycle& C, const vec3& a, const ivec3& n, const ivec3& m,
                      const ivec3& p) {
  return log_exponent(C, a, n, m) + log_exponent(C, a, n + m, p) -
         log_exponent(C, a - n, m, p) - log_exponent(C, a, n, m + p);
}

inline long long delta_s_int(const SampledCocycle& C, const ivec3& n, const ivec3& m,
                             const ivec3& p) {
  const vec3 samples[2] = {{0.17, 0.29, 0.41}, {0.63, 0.11, 0.53}};
  long long value = 0;
  for (int i = 0; i < 2; ++i) {
    double v = delta_s(C, samples[i], n, m, p);
    double r = std::nearbyint(v);
    if (std::abs(v - r) > 1e-6)
      throw guard_error("class extraction: delta log C is not an integer (deviation " +
                        std::to_string(std::abs(v - r)) + ")");
    if (i == 0)
      value = (long long)r;
    else if (value != (long long)r)
      throw guard_error("class extraction: delta log C depends on the base point; "
                        "cocycle is not of exponential type");
  }
  return value;
}

}  // namespace detail

struct DDReport {
  rational raw;
  std::optional<long long> class_int;
  std::string calibration;
};

// antisymmetrized pairing of the integer 3-cocycle delta s over unit vectors,
// normalized so the reference cocycle exp(2 pi i a^n^m) has class exactly 1
inline DDReport dd_class(const SampledCocycle& C) {
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  static const int signs[6] = {1, 1, 1, -1, -1, -1};
  auto unit = [](int i) {
    ivec3 e{};
    e[i] = 1;
    return e;
  };
  long long acc = 0;
  for (int s = 0; s < 6; ++s)
    acc += signs[s] *
           detail::delta_s_int(C, unit(perms[s][0]), unit(perms[s][1]), unit(perms[s][2]));
  DDReport rep;
  rep.raw = rational(acc) / 6;
  rep.class_int = rational_to_int(rep.raw);
  rep.calibration = "reference cocycle exp(2*pi*i a^n^m) has class +1";
  return rep;
}

// quadrature of the torus integral of a ^ dX ^ dY for the winding maps
// X = n.x, Y = m.x; the integrand is the constant det[a;n;m]
inline double continuum_reduction(const vec3& a, const ivec3& n, const ivec3& m, int grid) {
  if (grid < 2) throw config_error("continuum_reduction: grid must be at least 2");
  double cell = 1.0 / double(grid);
  double total = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        // the 1-form a is constant and dX, dY have constant coefficients,
        // so the midpoint value is the determinant itself
        double integrand = double(det3(a, n, m));
        total += integrand * cell * cell * cell;
      }
  return total;
}

struct ModelRepParams {
  ivec3 p{};
  ivec3 q{};
  long long n_max = 8;
  std::vector<long long> test_indices = {-2, -1, 0, 1, 2};
};

namespace detail {

inline rational wedge_turns(long long N, const vec3& a, const ivec3& p, const ivec3& n) {
  // N * det[a; p; n] with the double entries of a carried exactly
  rational det = 0;
  const int idx[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (int j = 0; j < 3; ++j) {
    long long minor = p[idx[j][0]] * n[idx[j][1]] - p[idx[j][1]] * n[idx[j][0]];
    if (minor != 0) det += rational_from_double(a[j]) * minor;
  }
  return rational(N) * det;
}

}  // namespace detail

// builds g(n)g(m) and g(n+m) on delta states of the truncated basis and
// returns the common ratio, verified independent of the basis label
inline complexd model_rep_cocycle(const ModelRepParams& par, const vec3& a, const ivec3& n,
                                  const ivec3& m) {
  if (par.test_indices.size() < 5)
    throw config_error("model representation: need at least 5 test indices");
  std::optional<complexd> ratio;
  for (long long N0 : par.test_indices) {
    if (std::llabs(N0) > par.n_max)
      throw truncation_error("model representation: test index outside basis");
    long long qn = dot(par.q, n);
    long long qm = dot(par.q, m);
    if (std::llabs(N0 + qm) > par.n_max || std::llabs(N0 + qn + qm) > par.n_max)
      throw truncation_error("model representation: shifted index outside basis");

    // g(m) then g(n): the nonzero component of g(n)g(m) delta_{N0} sits at
    // label N = N0 + q.n + q.m with phase
    //   exp(2 pi i N a^p^n) * exp(2 pi i (N - q.n) (a-n)^p^m)
    long long N = N0 + qn + qm;
    rational num_turns = detail::wedge_turns(N, a, par.p, n) +
                         detail::wedge_turns(N - qn, a - n, par.p, m);
    rational den_turns = detail::wedge_turns(N, a, par.p, n + m);
    complexd r = unit_phase(num_turns - den_turns);
    if (!ratio) {
      ratio = r;
    } else if (std::abs(*ratio - r) > 1e-10) {
      throw guard_error("model representation: ratio varies with basis label");
    }
  }
  return *ratio;
}

inline SampledCocycle model_rep_sampled(const ModelRepParams& par) {
  return {[par](const vec3& a, const ivec3& n, const ivec3& m) {
            return model_rep_cocycle(par, a, n, m);
          },
          "model representation"};
}

}  // namespace latgerbe::cocycle
