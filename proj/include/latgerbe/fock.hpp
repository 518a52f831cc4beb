#pragma once

// Truncated fermionic Fock space for 1D fermions valued in C^3, in the
// Dirac-sea picture: a basis state stores, per direction, the particle
// momenta above the sea and the hole momenta inside it. The three
// directions commute; all fermionic signs come from the occupied-above
// counting rule within a direction, with modes ordered by descending
// momentum.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "common.hpp"

namespace latgerbe::fock {

struct CutoffConfig {
  long long lambda = 8;
  long long margin = 3;

  void validate() const {
    if (lambda < 1) throw config_error("cutoff: lambda must be positive");
    if (margin < 1 || margin >= lambda)
      throw config_error("cutoff: margin must satisfy 1 <= margin < lambda");
  }
  long long band() const { return lambda - margin; }
};

struct ModeIndex {
  int dir;      // 0, 1, 2
  long long p;  // |p| <= lambda

  ModeIndex(int dir_, long long p_, const CutoffConfig& cfg) : dir(dir_), p(p_) {
    if (dir < 0 || dir > 2) throw config_error("mode: direction out of range");
    if (std::llabs(p) > cfg.lambda) throw config_error("mode: momentum outside cutoff");
  }
};

struct SeaState {
  // momenta sorted descending; particles in [1, lambda], holes in [-lambda, 0]
  std::array<std::vector<long long>, 3> particles;
  std::array<std::vector<long long>, 3> holes;

  auto operator<=>(const SeaState&) const = default;

  long long number(int j) const {
    return (long long)particles[j].size() - (long long)holes[j].size();
  }
  long long total_number() const { return number(0) + number(1) + number(2); }

  long long kinetic() const {
    long long k = 0;
    for (int j = 0; j < 3; ++j) {
      for (long long p : particles[j]) k += p;
      for (long long h : holes[j]) k -= h;
    }
    return k;
  }

  bool interior(const CutoffConfig& cfg) const {
    for (int j = 0; j < 3; ++j) {
      for (long long p : particles[j])
        if (p > cfg.band()) return false;
      for (long long h : holes[j])
        if (h < -cfg.band()) return false;
    }
    return true;
  }

  bool occupied(int dir, long long p) const {
    if (p > 0) return std::find(particles[dir].begin(), particles[dir].end(), p) != particles[dir].end();
    return std::find(holes[dir].begin(), holes[dir].end(), p) == holes[dir].end();
  }

  // occupied modes with momentum strictly above q in one direction
  long long count_above(int dir, long long q) const {
    long long c = 0;
    for (long long p : particles[dir])
      if (p > q) ++c;
    if (q < 0) {
      c += -q;  // sea slots q+1 .. 0
      for (long long h : holes[dir])
        if (h > q) --c;
    }
    return c;
  }
};

namespace detail {

inline void insert_desc(std::vector<long long>& v, long long x) {
  auto it = std::lower_bound(v.begin(), v.end(), x, std::greater<long long>());
  v.insert(it, x);
}

inline void remove_value(std::vector<long long>& v, long long x) {
  v.erase(std::find(v.begin(), v.end(), x));
}

}  // namespace detail

struct FockVector {
  std::map<SeaState, complexd> amps;

  static FockVector vacuum() {
    FockVector v;
    v.amps[SeaState{}] = 1.0;
    return v;
  }
  static FockVector basis(SeaState s) {
    FockVector v;
    v.amps[std::move(s)] = 1.0;
    return v;
  }

  void add(const SeaState& s, complexd c) {
    auto it = amps.find(s);
    if (it == amps.end()) {
      if (c != 0.0) amps.emplace(s, c);
    } else {
      it->second += c;
      if (std::abs(it->second) < 1e-14) amps.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [s, c] : o.amps) add(s, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [s, c] : o.amps) add(s, -c);
    return *this;
  }
  FockVector& operator*=(complexd c) {
    if (c == 0.0) {
      amps.clear();
      return *this;
    }
    for (auto& [s, a] : amps) a *= c;
    return *this;
  }

  double norm() const {
    double n2 = 0;
    for (const auto& [s, c] : amps) n2 += std::norm(c);
    return std::sqrt(n2);
  }
  bool is_zero() const { return amps.empty(); }
};

inline complexd inner(const FockVector& v, const FockVector& w) {
  complexd r = 0;
  for (const auto& [s, c] : v.amps) {
    auto it = w.amps.find(s);
    if (it != w.amps.end()) r += std::conj(c) * it->second;
  }
  return r;
}

// --- creation / annihilation --------------------------------------------------

inline FockVector create(const ModeIndex& mode, const FockVector& v, const CutoffConfig& cfg) {
  cfg.validate();
  FockVector out;
  for (const auto& [s, c] : v.amps) {
    if (s.occupied(mode.dir, mode.p)) continue;  // Pauli exclusion
    int sign = s.count_above(mode.dir, mode.p) % 2 ? -1 : 1;
    SeaState t = s;
    if (mode.p > 0)
      detail::insert_desc(t.particles[mode.dir], mode.p);
    else
      detail::remove_value(t.holes[mode.dir], mode.p);
    out.add(t, c * double(sign));
  }
  return out;
}

inline FockVector annihilate(const ModeIndex& mode, const FockVector& v, const CutoffConfig& cfg) {
  cfg.validate();
  FockVector out;
  for (const auto& [s, c] : v.amps) {
    if (!s.occupied(mode.dir, mode.p)) continue;
    int sign = s.count_above(mode.dir, mode.p) % 2 ? -1 : 1;
    SeaState t = s;
    if (mode.p > 0)
      detail::remove_value(t.particles[mode.dir], mode.p);
    else
      detail::insert_desc(t.holes[mode.dir], mode.p);
    out.add(t, c * double(sign));
  }
  return out;
}

inline FockVector number_op(int dir, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.amps) out.add(s, c * double(s.number(dir)));
  return out;
}

// --- quantized shift -----------------------------------------------------------

// occupation law n'(p) = n(p-k) in one direction, on the particle/hole sets;
// the amplitude is +1: shifting preserves the descending slot order
inline SeaState shifted_state(const SeaState& s, int dir, long long k, const CutoffConfig& cfg) {
  if (!s.interior(cfg)) throw truncation_error("shift: input state touches the margin band");
  std::set<long long> P(s.particles[dir].begin(), s.particles[dir].end());
  std::set<long long> H(s.holes[dir].begin(), s.holes[dir].end());
  std::set<long long> nP, nH;
  for (long long q : P) {
    long long t = q + k;
    if (t > 0) nP.insert(t);
  }
  for (long long h : H) {
    long long t = h + k;
    if (t <= 0) nH.insert(t);
  }
  if (k > 0) {
    // the sea rises: slots 1..k fill unless a hole lands there
    for (long long t = 1; t <= k; ++t)
      if (!H.count(t - k)) nP.insert(t);
  } else if (k < 0) {
    // the sea drops: slots k+1..0 empty unless a particle lands there
    for (long long t = k + 1; t <= 0; ++t)
      if (!P.count(t - k)) nH.insert(t);
  }
  SeaState r = s;
  r.particles[dir].assign(nP.rbegin(), nP.rend());
  r.holes[dir].assign(nH.rbegin(), nH.rend());
  if (!r.interior(cfg))
    throw truncation_error("shift: resulting occupation leaves the interior band");
  return r;
}

inline FockVector shift_op(int dir, long long k, const FockVector& v, const CutoffConfig& cfg) {
  cfg.validate();
  if (dir < 0 || dir > 2) throw config_error("shift: direction out of range");
  FockVector out;
  for (const auto& [s, c] : v.amps) out.add(shifted_state(s, dir, k, cfg), c);
  return out;
}

// --- large gauge operators ------------------------------------------------------

struct TwistParams {
  ivec3 alpha{};
  ivec3 beta{};
  vec3 a{};
};

namespace detail {

inline rational twist_turns(long long N, const vec3& a, const ivec3& beta, const ivec3& n) {
  return cocycle::detail::wedge_turns(N, a, beta, n);
}

}  // namespace detail

// g(n) = exp(2 pi i N (a^beta^n)) prod_i S_i^{alpha_i n_i}, N the fermion
// number of the input state
inline FockVector gauge_op(const ivec3& n, const TwistParams& par, const FockVector& v,
                           const CutoffConfig& cfg) {
  cfg.validate();
  FockVector out;
  for (const auto& [s, c] : v.amps) {
    complexd phase = unit_phase(detail::twist_turns(s.total_number(), par.a, par.beta, n));
    SeaState t = s;
    for (int i = 0; i < 3; ++i)
      if (par.alpha[i] * n[i] != 0) t = shifted_state(t, i, par.alpha[i] * n[i], cfg);
    out.add(t, c * phase);
  }
  return out;
}

inline FockVector gauge_op_inverse(const ivec3& n, const TwistParams& par, const FockVector& v,
                                   const CutoffConfig& cfg) {
  cfg.validate();
  FockVector out;
  for (const auto& [s, c] : v.amps) {
    long long pre_number = s.total_number() - dot(par.alpha, n);
    complexd phase = unit_phase(-detail::twist_turns(pre_number, par.a, par.beta, n));
    SeaState t = s;
    for (int i = 0; i < 3; ++i)
      if (par.alpha[i] * n[i] != 0) t = shifted_state(t, i, -par.alpha[i] * n[i], cfg);
    out.add(t, c * phase);
  }
  return out;
}

// --- cocycle extraction ----------------------------------------------------------

namespace detail {

inline std::vector<SeaState> extraction_states(const ivec3& alpha, const ivec3& n,
                                               const ivec3& m) {
  // pick single excitations that drift toward the interior under the
  // combined shift alpha_i (n_i + m_i)
  std::vector<SeaState> states;
  states.push_back(SeaState{});
  SeaState combined;
  for (int i = 0; i < 3; ++i) {
    long long sigma = alpha[i] * (n[i] + m[i]);
    SeaState s;
    if (sigma >= 0)
      s.holes[i] = {0};
    else
      s.particles[i] = {1};
    states.push_back(s);
    if (i < 2) {
      if (sigma >= 0)
        combined.holes[i] = {0};
      else
        combined.particles[i] = {1};
    }
  }
  states.push_back(combined);
  return states;
}

}  // namespace detail

// applies g(n)g(m) and g(n+m) to a spread of basis states, checks that the
// ratio is state independent, and returns it
inline complexd extract_fock_cocycle(const ivec3& alpha, const ivec3& beta,
                                     const CutoffConfig& cfg, const vec3& a, const ivec3& n,
                                     const ivec3& m) {
  cfg.validate();
  TwistParams par{alpha, beta, a};
  std::optional<complexd> ratio;
  for (const SeaState& t : detail::extraction_states(alpha, n, m)) {
    FockVector lhs = gauge_op(n, par, gauge_op(m, par, FockVector::basis(t), cfg), cfg);
    FockVector rhs = gauge_op(n + m, par, FockVector::basis(t), cfg);
    if (lhs.amps.size() != 1 || rhs.amps.size() != 1)
      throw guard_error("cocycle extraction: operator did not map a basis state to a basis state");
    if (lhs.amps.begin()->first != rhs.amps.begin()->first)
      throw guard_error("cocycle extraction: g(n)g(m) and g(n+m) reach different states");
    complexd r = lhs.amps.begin()->second / rhs.amps.begin()->second;
    if (!ratio) {
      ratio = r;
    } else if (std::abs(*ratio - r) > 1e-10) {
      throw guard_error("cocycle extraction: ratio depends on the test state");
    }
  }
  return *ratio;
}

inline cocycle::SampledCocycle fock_cocycle_sampled(const ivec3& alpha, const ivec3& beta,
                                                    const CutoffConfig& cfg) {
  return {[alpha, beta, cfg](const vec3& a, const ivec3& n, const ivec3& m) {
            return extract_fock_cocycle(alpha, beta, cfg, a, n, m);
          },
          "fock extension"};
}

// --- quantized Dirac operator ------------------------------------------------------

inline double dirac_eigenvalue(const vec3& a, const SeaState& s) {
  double e = double(s.kinetic());
  for (int i = 0; i < 3; ++i) {
    e -= a[i] * (double(s.number(i)) + 0.5);
    e += 0.5 * a[i] * a[i];
  }
  return e;
}

inline FockVector dirac_hamiltonian(const vec3& a, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.amps) out.add(s, c * dirac_eigenvalue(a, s));
  return out;
}

namespace detail {

// all interior basis states with at most `max_exc` excitations whose
// occupations stay within |p| <= band_limit
inline std::vector<SeaState> bounded_states(long long band_limit, int max_exc) {
  struct Slot {
    int dir;
    bool particle;
    long long p;
  };
  std::vector<Slot> slots;
  for (int dir = 0; dir < 3; ++dir) {
    for (long long p = 1; p <= band_limit; ++p) slots.push_back({dir, true, p});
    for (long long h = 0; h >= -band_limit; --h) slots.push_back({dir, false, h});
  }
  std::vector<SeaState> states;
  int n = int(slots.size());
  std::vector<int> pick;
  auto emit = [&]() {
    SeaState s;
    for (int idx : pick) {
      const Slot& sl = slots[idx];
      if (sl.particle)
        detail::insert_desc(s.particles[sl.dir], sl.p);
      else
        detail::insert_desc(s.holes[sl.dir], sl.p);
    }
    states.push_back(std::move(s));
  };
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      emit();
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (int size = 0; size <= max_exc; ++size) rec(0, size);
  return states;
}

}  // namespace detail

// max matrix-element deviation of g(n)^{-1} D_a g(n) from D_{a+n} over
// interior basis states with at most 3 excitations
inline double check_covariance(const vec3& a, const ivec3& n, const ivec3& alpha,
                               const ivec3& beta, const CutoffConfig& cfg) {
  cfg.validate();
  long long shift = 0;
  for (int i = 0; i < 3; ++i) shift = std::max(shift, std::llabs(alpha[i] * n[i]));
  long long band_limit = cfg.band() - shift;
  if (band_limit < 1) throw truncation_error("covariance check: no interior band left");

  TwistParams par{alpha, beta, a};
  double worst = 0.0;
  for (const SeaState& s : detail::bounded_states(band_limit, 3)) {
    FockVector v = FockVector::basis(s);
    FockVector lhs = gauge_op_inverse(n, par, dirac_hamiltonian(a, gauge_op(n, par, v, cfg)), cfg);
    FockVector rhs = dirac_hamiltonian(a + n, v);
    lhs -= rhs;
    for (const auto& [t, c] : lhs.amps) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

}  // namespace latgerbe::fock
