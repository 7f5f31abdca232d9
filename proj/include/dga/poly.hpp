#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dga/field.hpp"

namespace dga {

/// A polynomial ring descriptor: coefficient field plus an ordered list of
/// variable names. An empty variable list means the ring is the field itself.
struct PolyRing {
  Field field;
  std::vector<std::string> vars;

  PolyRing(Field f, std::vector<std::string> v)
      : field(f), vars(std::move(v)) {}

  std::size_t nvars() const { return vars.size(); }
  bool is_field() const { return vars.empty(); }

  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const PolyRing& o) const {
    return field == o.field && vars == o.vars;
  }
  bool operator!=(const PolyRing& o) const { return !(*this == o); }

  std::string name() const {
    if (is_field()) return field.name();
    std::string s = field.name() + "[";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) s += ",";
      s += vars[i];
    }
    return s + "]";
  }
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_ring(Field f, std::vector<std::string> vars) {
  return std::make_shared<const PolyRing>(f, std::move(vars));
}

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

/// Graded lexicographic order, arranged so that std::map iterates leading
/// term first (highest degree, then lexicographically largest).
struct GradedLexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(),
                                        a.end());
  }
};

/// Sparse multivariate polynomial with exact coefficients. Zero coefficients
/// are never stored; the term map is canonically ordered (graded lex).
class Poly {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedLexDesc>;

  Poly() = default;
  explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(PolyRingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(PolyRingPtr ring, const Scalar& c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_[Monomial(ring->nvars(), 0)] = c;
    return p;
  }
  static Poly constant(PolyRingPtr ring, std::int64_t c) {
    return constant(ring, Scalar(ring->field, c));
  }
  static Poly variable(PolyRingPtr ring, std::size_t i, std::uint32_t e = 1) {
    if (i >= ring->nvars()) throw std::out_of_range("variable index");
    Poly p(ring);
    Monomial m(ring->nvars(), 0);
    m[i] = e;
    p.terms_[m] = Scalar::one(ring->field);
    return p;
  }

  const PolyRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Scalar constant_value() const {
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.empty() ? Scalar::zero(ring_->field)
                          : terms_.begin()->second;
  }

  bool is_one() const { return is_constant() && constant_value().is_one(); }

  std::int64_t degree() const {
    if (terms_.empty()) return -1;
    return static_cast<std::int64_t>(total_degree(terms_.begin()->first));
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial");
    return terms_.begin()->first;
  }
  const Scalar& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial");
    return terms_.begin()->second;
  }

  Poly operator-() const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  Poly scaled(const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, cf] : terms_) r.terms_.emplace(m, cf * c);
    return r;
  }

  bool operator==(const Poly& o) const {
    return *ring_ == *o.ring_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Exact division: returns q with *this == q * d; throws if the division
  /// does not come out exact (the fraction-free callers guarantee it does).
  Poly divide_exact(const Poly& d) const {
    check_ring(d);
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = *this, q(ring_);
    const Monomial& dm = d.leading_monomial();
    const Scalar dc = d.leading_coefficient();
    while (!rem.is_zero()) {
      const Monomial& rm = rem.leading_monomial();
      Monomial t(rm.size());
      for (std::size_t i = 0; i < rm.size(); ++i) {
        if (rm[i] < dm[i]) throw std::domain_error("inexact division");
        t[i] = rm[i] - dm[i];
      }
      Scalar tc = rem.leading_coefficient() / dc;
      Poly mono(ring_);
      mono.terms_[t] = tc;
      q += mono;
      rem -= mono * d;
    }
    return q;
  }

  Poly derivative(std::size_t var) const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial mm(m);
      Scalar k(ring_->field, static_cast<std::int64_t>(mm[var]));
      mm[var] -= 1;
      r.add_term(mm, c * k);
    }
    return r;
  }

  Scalar eval(const std::vector<Scalar>& point) const {
    if (point.size() != ring_->nvars())
      throw std::invalid_argument("eval: wrong number of values");
    Scalar acc = Scalar::zero(ring_->field);
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  /// Substitutes polynomials (from a possibly different ring) for variables.
  Poly eval_poly(PolyRingPtr target,
                 const std::vector<Poly>& images) const {
    if (images.size() != ring_->nvars())
      throw std::invalid_argument("eval_poly: wrong number of images");
    Poly acc(target);
    for (const auto& [m, c] : terms_) {
      Poly t = Poly::constant(target, Scalar(target->field, c.is_zero()
                                                  ? Rational(0)
                                                  : scalar_to_rational(c)));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t = t * images[i];
      acc += t;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Scalar coeff = c;
      bool neg = false;
      if (ring_->field.is_rational() && coeff.rational() < 0) {
        neg = true;
        coeff = -coeff;
      }
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      std::string vars = monomial_str(m);
      if (vars.empty()) {
        os << coeff.str();
      } else if (coeff.is_one()) {
        os << vars;
      } else {
        os << coeff.str() << "*" << vars;
      }
    }
    return os.str();
  }

  /// Parses the plain ASCII grammar: terms like `c*x^2*y` joined by + / -.
  static Poly parse(PolyRingPtr ring, const std::string& text);

 private:
  static Rational scalar_to_rational(const Scalar& s) {
    return s.field().is_rational() ? s.rational() : Rational(s.fp_value());
  }

  void add_term(const Monomial& m, const Scalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::string monomial_str(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += ring_->vars[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  void check_ring(const Poly& o) const {
    if (!ring_ || !o.ring_ || *ring_ != *o.ring_)
      throw std::invalid_argument("polynomial ring mismatch");
  }

  PolyRingPtr ring_;
  TermMap terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(PolyRingPtr ring, const std::string& text)
      : ring_(std::move(ring)), s_(text) {}

  Poly parse() {
    Poly result(ring_);
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (get() == '-');
    result += parse_term(neg);
    skip_ws();
    while (pos_ < s_.size()) {
      char op = get();
      if (op != '+' && op != '-')
        throw std::invalid_argument("polynomial parse error near '" +
                                    std::string(1, op) + "' in: " + s_);
      result += parse_term(op == '-');
      skip_ws();
    }
    return result;
  }

 private:
  Poly parse_term(bool neg) {
    skip_ws();
    Scalar coeff = Scalar::one(ring_->field);
    Monomial mono(ring_->nvars(), 0);
    bool saw_factor = false;
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = coeff * parse_number();
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(peek())) ||
                 peek() == '_') {
        std::string name = parse_name();
        int vi = ring_->var_index(name);
        if (vi < 0)
          throw std::invalid_argument("unknown variable '" + name +
                                      "' in ring " + ring_->name());
        std::uint32_t e = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          skip_ws();
          e = static_cast<std::uint32_t>(parse_uint());
        }
        mono[static_cast<std::size_t>(vi)] += e;
        saw_factor = true;
      } else {
        break;
      }
      skip_ws();
      if (peek() == '*') {
        get();
        continue;
      }
      break;
    }
    if (!saw_factor) throw std::invalid_argument("empty term in: " + s_);
    if (neg) coeff = -coeff;
    Poly t = Poly::constant(ring_, coeff);
    Poly m = Poly::constant(ring_, Scalar::one(ring_->field));
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] > 0) m *= Poly::variable(ring_, i, mono[i]);
    return t * m;
  }

  Scalar parse_number() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    skip_ws();
    if (peek() == '/') {
      std::size_t save = pos_;
      get();
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::string den;
        while (std::isdigit(static_cast<unsigned char>(peek()))) den += get();
        return Scalar(ring_->field, Rational(digits + "/" + den));
      }
      pos_ = save;
    }
    return Scalar(ring_->field, Rational(digits));
  }

  std::uint64_t parse_uint() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    if (digits.empty()) throw std::invalid_argument("expected exponent");
    return std::stoull(digits);
  }

  std::string parse_name() {
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      name += get();
    return name;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  PolyRingPtr ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(PolyRingPtr ring, const std::string& text) {
  return detail::PolyParser(std::move(ring), text).parse();
}

}  // namespace dga
