#pragma once

// Exact exterior algebra over a declared frame: degree-1 anticommuting
// generators, coefficients that are multivariate polynomials over Q in the
// frame's coordinate scalars plus one formal unit symbol u standing for
// 1/(2pi i). Powers of u are never evaluated numerically.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace latgerbe::exform {

struct Symbol {
  std::string name;
  bool is_unit = false;
};

struct Generator {
  std::string name;
  int paired_symbol = -1;  // index into Frame symbols, -1 when unpaired
};

class Frame {
 public:
  int add_scalar(const std::string& name) {
    check_fresh(name);
    symbols_.push_back({name, false});
    return int(symbols_.size()) - 1;
  }

  int add_unit(const std::string& name) {
    if (unit_ >= 0) throw frame_error("frame already has a formal unit symbol");
    check_fresh(name);
    symbols_.push_back({name, true});
    unit_ = int(symbols_.size()) - 1;
    return unit_;
  }

  int add_generator(const std::string& name, int paired_symbol = -1) {
    check_fresh(name);
    if (generators_.size() >= 64) throw frame_error("frame limited to 64 generators");
    if (paired_symbol >= int(symbols_.size()))
      throw frame_error("generator paired to unknown symbol");
    generators_.push_back({name, paired_symbol});
    return int(generators_.size()) - 1;
  }

  // coordinate + its exterior derivative in one step
  std::pair<int, int> add_pair(const std::string& coord, const std::string& gen) {
    int s = add_scalar(coord);
    int g = add_generator(gen, s);
    return {s, g};
  }

  int symbol_count() const { return int(symbols_.size()); }
  int generator_count() const { return int(generators_.size()); }
  const Symbol& symbol(int i) const { return symbols_[i]; }
  const Generator& generator(int i) const { return generators_[i]; }
  int unit_symbol() const { return unit_; }

  int find_symbol(const std::string& name) const {
    for (int i = 0; i < int(symbols_.size()); ++i)
      if (symbols_[i].name == name) return i;
    return -1;
  }
  int find_generator(const std::string& name) const {
    for (int i = 0; i < int(generators_.size()); ++i)
      if (generators_[i].name == name) return i;
    return -1;
  }

 private:
  void check_fresh(const std::string& name) const {
    if (name.empty()) throw frame_error("empty name");
    if (find_symbol(name) >= 0 || find_generator(name) >= 0)
      throw frame_error("duplicate name in frame: " + name);
  }

  std::vector<Symbol> symbols_;
  std::vector<Generator> generators_;
  int unit_ = -1;
};

using Exponents = std::vector<unsigned>;

class Poly {
 public:
  Poly() = default;
  explicit Poly(const rational& c) {
    if (c != 0) terms_[{}] = c;
  }

  static Poly monomial(const rational& c, Exponents e) {
    Poly p;
    while (!e.empty() && e.back() == 0) e.pop_back();
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }
  static Poly variable(int symbol_index) {
    Exponents e(symbol_index + 1, 0);
    e[symbol_index] = 1;
    return monomial(1, std::move(e));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, rational>& terms() const { return terms_; }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(std::max(ea.size(), eb.size()), 0);
        for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        while (!e.empty() && e.back() == 0) e.pop_back();
        auto it = r.terms_.find(e);
        if (it == r.terms_.end())
          r.terms_.emplace(std::move(e), ca * cb);
        else {
          it->second += ca * cb;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  bool mentions(int symbol_index) const {
    for (const auto& [e, c] : terms_)
      if (symbol_index < int(e.size()) && e[symbol_index] > 0) return true;
    return false;
  }

  Poly derivative(int symbol_index) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
      if (symbol_index >= int(e.size()) || e[symbol_index] == 0) continue;
      Exponents d = e;
      rational k(d[symbol_index]);
      d[symbol_index] -= 1;
      while (!d.empty() && d.back() == 0) d.pop_back();
      r += monomial(c * k, std::move(d));
    }
    return r;
  }

  // integral over the unit period of one coordinate: x^n -> 1/(n+1)
  Poly integrate_unit(int symbol_index) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
      unsigned n = symbol_index < int(e.size()) ? e[symbol_index] : 0;
      Exponents d = e;
      if (symbol_index < int(d.size())) d[symbol_index] = 0;
      while (!d.empty() && d.back() == 0) d.pop_back();
      r += monomial(c / rational(n + 1), std::move(d));
    }
    return r;
  }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

 private:
  std::map<Exponents, rational> terms_;
};

namespace detail {

// parity of moving each generator of mask b past the generators of mask a
// that sit above it; the sign of e_a ^ e_b relative to e_{a|b}
inline int wedge_sign(uint64_t a, uint64_t b) {
  int inversions = 0;
  for (int g = 0; g < 64; ++g) {
    if (!(b >> g & 1)) continue;
    uint64_t above = a >> (g + 1);
    inversions += std::popcount(above);
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace detail

class Form {
 public:
  Form() : frame_(nullptr) {}
  explicit Form(const Frame* frame) : frame_(frame) {}

  static Form scalar(const Frame* frame, const rational& c) {
    Form f(frame);
    if (c != 0) f.terms_[0] = Poly(c);
    return f;
  }
  static Form term(const Frame* frame, Poly coeff, std::initializer_list<int> gens) {
    uint64_t mask = 0;
    int sign_flips = 0;
    std::vector<int> seq(gens);
    // record the parity of sorting the listed generators
    for (size_t i = 0; i < seq.size(); ++i)
      for (size_t j = i + 1; j < seq.size(); ++j) {
        if (seq[i] == seq[j]) return Form(frame);  // repeated generator
        if (seq[i] > seq[j]) ++sign_flips;
      }
    for (int g : seq) {
      if (g < 0 || g >= frame->generator_count()) throw frame_error("generator index out of range");
      mask |= uint64_t(1) << g;
    }
    Form f(frame);
    if (sign_flips % 2) coeff *= rational(-1);
    if (!coeff.is_zero()) f.terms_[mask] = std::move(coeff);
    return f;
  }

  const Frame* frame() const { return frame_; }
  const std::map<uint64_t, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_homogeneous(int* degree_out = nullptr) const {
    int deg = -1;
    for (const auto& [m, p] : terms_) {
      int d = std::popcount(m);
      if (deg == -1) deg = d;
      if (d != deg) return false;
    }
    if (degree_out) *degree_out = deg < 0 ? 0 : deg;
    return true;
  }

  Form degree_part(int degree) const {
    Form r(frame_);
    for (const auto& [m, p] : terms_)
      if (std::popcount(m) == degree) r.terms_[m] = p;
    return r;
  }

  Form& operator+=(const Form& o) {
    require_same_frame(o);
    if (!frame_) frame_ = o.frame_;
    for (const auto& [m, p] : o.terms_) {
      auto it = terms_.find(m);
      if (it == terms_.end())
        terms_.emplace(m, p);
      else {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }

  Form operator-() const {
    Form r = *this;
    for (auto& [m, p] : r.terms_) p = -p;
    return r;
  }
  Form& operator-=(const Form& o) { return *this += -o; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }

  Form& operator*=(const rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, p] : terms_) p *= c;
    return *this;
  }
  Form& operator*=(const Poly& c) {
    std::map<uint64_t, Poly> out;
    for (auto& [m, p] : terms_) {
      Poly q = p * c;
      if (!q.is_zero()) out.emplace(m, std::move(q));
    }
    terms_ = std::move(out);
    return *this;
  }

  bool operator==(const Form& o) const {
    if (frame_ && o.frame_ && frame_ != o.frame_) return false;
    return terms_ == o.terms_;
  }

  friend Form wedge(const Form& a, const Form& b) {
    a.require_same_frame(b);
    Form r(a.frame_ ? a.frame_ : b.frame_);
    for (const auto& [ma, pa] : a.terms_)
      for (const auto& [mb, pb] : b.terms_) {
        if (ma & mb) continue;
        Poly q = pa * pb;
        if (detail::wedge_sign(ma, mb) < 0) q *= rational(-1);
        uint64_t m = ma | mb;
        auto it = r.terms_.find(m);
        if (it == r.terms_.end())
          r.terms_.emplace(m, std::move(q));
        else {
          it->second += q;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }

 private:
  void require_same_frame(const Form& o) const {
    if (frame_ && o.frame_ && frame_ != o.frame_)
      throw frame_error("forms belong to different frames");
  }

  const Frame* frame_;
  std::map<uint64_t, Poly> terms_;

  friend Form ext_d(const Form& f);
  friend Form exp_truncated(const Form& f);
  friend Form fiber_integrate(const Form& f, const std::vector<std::string>& fiber_gens);
};

inline Form ext_d(const Form& f) {
  const Frame* fr = f.frame();
  if (!fr) return Form();
  Form r(fr);
  for (const auto& [mask, poly] : f.terms()) {
    for (int s = 0; s < fr->symbol_count(); ++s) {
      if (fr->symbol(s).is_unit) continue;  // du = 0
      Poly d = poly.derivative(s);
      if (d.is_zero()) continue;
      int g = -1;
      for (int k = 0; k < fr->generator_count(); ++k)
        if (fr->generator(k).paired_symbol == s) {
          g = k;
          break;
        }
      if (g < 0)
        throw frame_error("ext_d: coefficient mentions coordinate '" + fr->symbol(s).name +
                          "' with no paired generator");
      if (mask >> g & 1) continue;  // dg ^ dg
      uint64_t below = mask & ((uint64_t(1) << g) - 1);
      if (std::popcount(below) % 2) d *= rational(-1);
      uint64_t m = mask | (uint64_t(1) << g);
      auto it = r.terms_.find(m);
      if (it == r.terms_.end())
        r.terms_.emplace(m, std::move(d));
      else {
        it->second += d;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

inline Form exp_truncated(const Form& f) {
  const Frame* fr = f.frame();
  for (const auto& [m, p] : f.terms())
    if (m == 0 && !p.is_zero())
      throw frame_error("exp_truncated: argument has a degree-0 component");
  Form result = Form::scalar(fr, 1);
  Form power = Form::scalar(fr, 1);
  for (int k = 1; k <= 64; ++k) {
    power = wedge(power, f);
    if (power.is_zero()) return result;
    power *= rational(1) / rational(k);
    result += power;
  }
  if (!power.is_zero()) throw guard_error("exp_truncated: series did not terminate");
  return result;
}

// Keeps only the terms containing every listed generator, strips those
// generators to the front in caller order, and integrates each coefficient
// over the unit period of the paired coordinates.
inline Form fiber_integrate(const Form& f, const std::vector<std::string>& fiber_gens) {
  const Frame* fr = f.frame();
  if (!fr) return Form();
  std::vector<int> fiber;
  uint64_t fiber_mask = 0;
  for (const auto& name : fiber_gens) {
    int g = fr->find_generator(name);
    if (g < 0) throw frame_error("fiber_integrate: generator '" + name + "' absent from frame");
    if (fiber_mask >> g & 1) throw frame_error("fiber_integrate: generator listed twice: " + name);
    fiber.push_back(g);
    fiber_mask |= uint64_t(1) << g;
  }

  Form r(fr);
  for (const auto& [mask, poly] : f.terms()) {
    if ((mask & fiber_mask) != fiber_mask) continue;

    // permutation sign between the stored order (ascending) and the order
    // [fiber generators as listed, remaining generators ascending]
    std::vector<int> stored;
    for (int g = 0; g < 64; ++g)
      if (mask >> g & 1) stored.push_back(g);
    std::vector<int> target = fiber;
    for (int g : stored)
      if (!(fiber_mask >> g & 1)) target.push_back(g);
    int inversions = 0;
    for (size_t i = 0; i < target.size(); ++i)
      for (size_t j = i + 1; j < target.size(); ++j)
        if (target[i] > target[j]) ++inversions;

    Poly q = poly;
    for (int g : fiber) {
      int s = fr->generator(g).paired_symbol;
      if (s >= 0) q = q.integrate_unit(s);
    }
    if (inversions % 2) q *= rational(-1);
    if (q.is_zero()) continue;

    uint64_t rest = mask & ~fiber_mask;
    auto it = r.terms_.find(rest);
    if (it == r.terms_.end())
      r.terms_.emplace(rest, std::move(q));
    else {
      it->second += q;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

inline Form d_of_coordinate(const Frame* fr, const std::string& coord) {
  int s = fr->find_symbol(coord);
  if (s < 0) throw frame_error("unknown coordinate: " + coord);
  return ext_d(Form::term(fr, Poly::variable(s), {}));
}

// --- canonical text serialization -------------------------------------------
//
//   term  := rational [ "* u^k" ] { "* name^k" } [ "* [g1^g2^...]" ]
//   form  := term { " + " term } | "0"
//
// terms are emitted sorted lexicographically as strings

inline std::string poly_monomial_text(const Frame* fr, const Exponents& e, bool& has_unit,
                                      unsigned& unit_pow) {
  std::string out;
  has_unit = false;
  unit_pow = 0;
  for (int s = 0; s < int(e.size()); ++s) {
    if (e[s] == 0) continue;
    if (fr->symbol(s).is_unit) {
      has_unit = true;
      unit_pow = e[s];
      continue;
    }
    out += " * " + fr->symbol(s).name;
    if (e[s] > 1) out += "^" + std::to_string(e[s]);
  }
  return out;
}

inline std::string to_text(const Form& f) {
  const Frame* fr = f.frame();
  if (f.is_zero()) return "0";
  std::vector<std::string> parts;
  for (const auto& [mask, poly] : f.terms()) {
    std::string genblock;
    if (mask) {
      genblock = " * [";
      bool first = true;
      for (int g = 0; g < 64; ++g)
        if (mask >> g & 1) {
          if (!first) genblock += "^";
          genblock += fr->generator(g).name;
          first = false;
        }
      genblock += "]";
    }
    for (const auto& [e, c] : poly.terms()) {
      bool has_unit;
      unsigned upow;
      std::string mono = poly_monomial_text(fr, e, has_unit, upow);
      std::string t = rational_to_string(c);
      if (has_unit) {
        t += " * " + fr->symbol(fr->unit_symbol()).name;
        if (upow > 1) t += "^" + std::to_string(upow);
      }
      t += mono + genblock;
      parts.push_back(std::move(t));
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

inline Form from_text(const Frame* fr, const std::string& text) {
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\n\r");
    size_t b = s.find_last_not_of(" \t\n\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string body = trim(text);
  Form result(fr);
  if (body.empty() || body == "0") return result;

  size_t pos = 0;
  while (pos != std::string::npos) {
    size_t next = body.find(" + ", pos);
    std::string termtext =
        trim(next == std::string::npos ? body.substr(pos) : body.substr(pos, next - pos));
    pos = next == std::string::npos ? next : next + 3;
    if (termtext.empty()) throw frame_error("form parse: empty term");

    // split on '*'
    std::vector<std::string> factors;
    size_t fpos = 0;
    while (true) {
      size_t star = termtext.find('*', fpos);
      factors.push_back(trim(star == std::string::npos ? termtext.substr(fpos)
                                                       : termtext.substr(fpos, star - fpos)));
      if (star == std::string::npos) break;
      fpos = star + 1;
    }

    rational coeff;
    try {
      coeff = rational(factors[0]);
    } catch (const std::exception&) {
      throw frame_error("form parse: bad coefficient '" + factors[0] + "'");
    }
    Exponents expo(fr->symbol_count(), 0);
    uint64_t mask = 0;
    std::vector<int> gen_seq;
    for (size_t i = 1; i < factors.size(); ++i) {
      const std::string& fac = factors[i];
      if (fac.empty()) throw frame_error("form parse: empty factor");
      if (fac.front() == '[') {
        if (fac.back() != ']') throw frame_error("form parse: unterminated generator block");
        std::string inner = fac.substr(1, fac.size() - 2);
        size_t gpos = 0;
        while (!inner.empty()) {
          size_t caret = inner.find('^', gpos);
          std::string gname =
              trim(caret == std::string::npos ? inner.substr(gpos) : inner.substr(gpos, caret - gpos));
          int g = fr->find_generator(gname);
          if (g < 0) throw frame_error("form parse: unknown generator '" + gname + "'");
          gen_seq.push_back(g);
          mask |= uint64_t(1) << g;
          if (caret == std::string::npos) break;
          gpos = caret + 1;
        }
        continue;
      }
      size_t caret = fac.find('^');
      std::string sname = trim(caret == std::string::npos ? fac : fac.substr(0, caret));
      unsigned power = 1;
      if (caret != std::string::npos) {
        try {
          power = unsigned(std::stoul(trim(fac.substr(caret + 1))));
        } catch (const std::exception&) {
          throw frame_error("form parse: bad exponent in '" + fac + "'");
        }
      }
      int s = fr->find_symbol(sname);
      if (s < 0) throw frame_error("form parse: unknown symbol '" + sname + "'");
      expo[s] += power;
    }
    if (gen_seq.size() != size_t(std::popcount(mask)))
      throw frame_error("form parse: repeated generator in block");

    Form t = Form::scalar(fr, 1);
    for (int g : gen_seq) t = wedge(t, Form::term(fr, Poly(rational(1)), {g}));
    t *= Poly::monomial(coeff, expo);
    result += t;
  }
  return result;
}

// --- canned computations for the index-form reproductions --------------------

struct IndexFrame {
  Frame frame;
  int u;                       // formal unit symbol
  std::array<int, 3> x, a;     // coordinate symbols
  std::array<int, 3> dx, da;   // generators, declaration order dx1,dx2,dx3,da1,da2,da3
};

inline IndexFrame make_index_frame() {
  IndexFrame f;
  f.u = f.frame.add_unit("u");
  for (int i = 0; i < 3; ++i) {
    auto [s, g] = f.frame.add_pair("x" + std::to_string(i + 1), "dx" + std::to_string(i + 1));
    f.x[i] = s;
    f.dx[i] = g;
  }
  for (int i = 0; i < 3; ++i) {
    auto [s, g] = f.frame.add_pair("a" + std::to_string(i + 1), "da" + std::to_string(i + 1));
    f.a[i] = s;
    f.da[i] = g;
  }
  return f;
}

inline Form standard_curvature(const IndexFrame& f) {
  Form F(&f.frame);
  for (int i = 0; i < 3; ++i)
    F += Form::term(&f.frame, Poly(rational(1)), {f.da[i], f.dx[i]});
  return F;
}

// fiber integral over T^3_x of exp(uF): the volume normalization that lands
// on da1^da2^da3 with coefficient exactly 1
inline Form index_form_volume_exp(const IndexFrame& f) {
  Form F = standard_curvature(f);
  Form uF = F;
  uF *= Poly::variable(f.u);
  Form e = exp_truncated(uF);
  return fiber_integrate(e, {"dx1", "dx2", "dx3"});
}

// the literal u^3 * F^3 route (no 1/6): coefficient 6
inline Form index_form_volume_cubed(const IndexFrame& f) {
  Form F = standard_curvature(f);
  Form F3 = wedge(F, wedge(F, F));
  Poly u3 = Poly::variable(f.u) * Poly::variable(f.u) * Poly::variable(f.u);
  F3 *= u3;
  return fiber_integrate(F3, {"dx1", "dx2", "dx3"});
}

// degree-1 part (in the remaining generators) of the fiber integral of
// exp(u(F + fhat)), fhat = f1 dx2^dx3 + f2 dx3^dx1 + f3 dx1^dx2;
// comes out as -u^2 (f1 da1 + f2 da2 + f3 da3) in this frame order
inline Form spectral_flow_form(const IndexFrame& f, const ivec3& fv) {
  Form F = standard_curvature(f);
  Form fhat(&f.frame);
  fhat += Form::term(&f.frame, Poly(rational(fv[0])), {f.dx[1], f.dx[2]});
  fhat += Form::term(&f.frame, Poly(rational(fv[1])), {f.dx[2], f.dx[0]});
  fhat += Form::term(&f.frame, Poly(rational(fv[2])), {f.dx[0], f.dx[1]});
  Form total = F + fhat;
  total *= Poly::variable(f.u);
  Form integrated = fiber_integrate(exp_truncated(total), {"dx1", "dx2", "dx3"});
  return integrated.degree_part(1);
}

struct CircleFrame {
  Frame frame;
  int u;
  int theta;
  int dtheta;
  std::array<int, 3> a, da;
};

inline CircleFrame make_circle_frame() {
  CircleFrame f;
  f.u = f.frame.add_unit("u");
  auto [ts, tg] = f.frame.add_pair("th", "dth");
  f.theta = ts;
  f.dtheta = tg;
  for (int i = 0; i < 3; ++i) {
    auto [s, g] = f.frame.add_pair("a" + std::to_string(i + 1), "da" + std::to_string(i + 1));
    f.a[i] = s;
    f.da[i] = g;
  }
  return f;
}

// fiber integral over the circle of exp(u(dth^alpha + beta)):
// u*alpha + u^2*(alpha.beta) da1^da2^da3
inline Form circle_character(const CircleFrame& f, const ivec3& alpha, const ivec3& beta) {
  Form ah(&f.frame);
  for (int i = 0; i < 3; ++i) ah += Form::term(&f.frame, Poly(rational(alpha[i])), {f.da[i]});
  Form bh(&f.frame);
  bh += Form::term(&f.frame, Poly(rational(beta[0])), {f.da[1], f.da[2]});
  bh += Form::term(&f.frame, Poly(rational(beta[1])), {f.da[2], f.da[0]});
  bh += Form::term(&f.frame, Poly(rational(beta[2])), {f.da[0], f.da[1]});
  Form dth = Form::term(&f.frame, Poly(rational(1)), {f.dtheta});
  Form total = wedge(dth, ah) + bh;
  total *= Poly::variable(f.u);
  return fiber_integrate(exp_truncated(total), {"dth"});
}

// --- Theorem 1D-3D gcd criterion ---------------------------------------------

struct GcdWitness {
  bool realizable = false;
  std::optional<ivec3> witness;
};

namespace detail {
inline long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}
}  // namespace detail

inline GcdWitness gcd_realizability(const ivec3& f) {
  GcdWitness r;
  if (f[0] == 0 && f[1] == 0 && f[2] == 0) return r;
  long long x1, x2;
  long long g1 = detail::egcd(f[0], f[1], x1, x2);
  long long y1, y3;
  long long g = detail::egcd(g1, f[2], y1, y3);
  if (g < 0) {
    g = -g;
    y1 = -y1;
    y3 = -y3;
  }
  if (g != 1) return r;
  r.realizable = true;
  r.witness = ivec3{y1 * x1, y1 * x2, y3};
  return r;
}

}  // namespace latgerbe::exform
