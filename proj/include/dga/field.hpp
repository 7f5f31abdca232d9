#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace dga {

using Rational = boost::multiprecision::cpp_rational;

/// Coefficient field descriptor: the rationals or a prime field F_p.
struct Field {
  enum class Kind { Q, Fp };
  Kind kind = Kind::Q;
  std::int64_t prime = 0;

  static Field rationals() { return Field{Kind::Q, 0}; }
  static Field prime_field(std::int64_t p);

  bool is_rational() const { return kind == Kind::Q; }
  bool operator==(const Field& o) const {
    return kind == o.kind && prime == o.prime;
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string name() const {
    return is_rational() ? "Q" : "F" + std::to_string(prime);
  }
};

namespace detail {

inline bool is_prime_i64(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(
      static_cast<__int128>(a) * static_cast<__int128>(b) % p);
}

// Extended Euclid; requires gcd(a, p) = 1.
inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, newt = 1, r = p, newr = mod_norm(a, p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return mod_norm(t, p);
}

}  // namespace detail

inline Field Field::prime_field(std::int64_t p) {
  if (!detail::is_prime_i64(p))
    throw std::invalid_argument("prime_field: " + std::to_string(p) +
                                " is not prime");
  return Field{Kind::Fp, p};
}

/// Exact field element. Rationals are kept reduced with positive denominator
/// (cpp_rational maintains that form); prime-field values live in [0, p).
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), q_(0) {}

  Scalar(const Field& f, std::int64_t v) : field_(f) {
    if (f.is_rational())
      q_ = v;
    else
      fp_ = detail::mod_norm(v, f.prime);
  }

  Scalar(const Field& f, const Rational& v) : field_(f) {
    if (f.is_rational()) {
      q_ = v;
    } else {
      std::int64_t num = detail::mod_norm(
          static_cast<std::int64_t>(numerator(v) % f.prime), f.prime);
      std::int64_t den = detail::mod_norm(
          static_cast<std::int64_t>(denominator(v) % f.prime), f.prime);
      fp_ = detail::mod_mul(num, detail::mod_inv(den, f.prime), f.prime);
    }
  }

  static Scalar zero(const Field& f) { return Scalar(f, 0); }
  static Scalar one(const Field& f) { return Scalar(f, 1); }

  const Field& field() const { return field_; }
  bool is_zero() const {
    return field_.is_rational() ? q_.is_zero() : fp_ == 0;
  }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : fp_ == 1; }

  const Rational& rational() const {
    require(field_.is_rational(), "not a rational");
    return q_;
  }
  std::int64_t fp_value() const {
    require(!field_.is_rational(), "not a prime-field element");
    return fp_;
  }

  Scalar operator-() const {
    Scalar r(*this);
    if (field_.is_rational())
      r.q_ = -q_;
    else
      r.fp_ = fp_ == 0 ? 0 : field_.prime - fp_;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check_field(o);
    if (field_.is_rational())
      q_ += o.q_;
    else
      fp_ = detail::mod_norm(fp_ + o.fp_, field_.prime);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    check_field(o);
    if (field_.is_rational())
      q_ *= o.q_;
    else
      fp_ = detail::mod_mul(fp_, o.fp_, field_.prime);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Scalar r(*this);
    if (field_.is_rational())
      r.q_ = 1 / q_;
    else
      r.fp_ = detail::mod_inv(fp_, field_.prime);
    return r;
  }

  bool operator==(const Scalar& o) const {
    return field_ == o.field_ &&
           (field_.is_rational() ? q_ == o.q_ : fp_ == o.fp_);
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const {
    return field_.is_rational() ? q_.str() : std::to_string(fp_);
  }

  /// Parses an integer or "a/b" fraction in the given field.
  static Scalar parse(const Field& f, const std::string& s) {
    Rational q(s);
    return Scalar(f, q);
  }

 private:
  static void require(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(msg);
  }
  void check_field(const Scalar& o) const {
    if (field_ != o.field_)
      throw std::invalid_argument("scalar field mismatch: " + field_.name() +
                                  " vs " + o.field_.name());
  }

  Field field_;
  Rational q_;
  std::int64_t fp_ = 0;
};

}  // namespace dga
