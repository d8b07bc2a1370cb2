#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace spinsum {

using Rational = boost::multiprecision::cpp_rational;

// Exact coefficient field. p == 0 stands for the rationals.
struct Field {
  std::uint32_t p = 0;

  static Field rationals() { return {}; }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p == 0; }
  std::uint32_t characteristic() const { return p; }
  std::string name() const;

  friend bool operator==(Field, Field) = default;
};

bool is_prime(std::uint32_t n);

// A value in Q or in some F_p. Rational values coerce into F_p on contact,
// so integer literals work in every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}
  Scalar(long v) : q_(v) {}
  Scalar(long long v) : q_(v) {}
  Scalar(Rational q) : q_(std::move(q)) {}

  static Scalar residue(std::uint32_t p, long long v);
  static Scalar in(Field f, long long v) { return f.is_rational() ? Scalar(v) : residue(f.p, v); }
  // Parses "a", "-a" or "a/b".
  static Scalar parse(const std::string& text, Field f);

  Field field() const { return Field{p_}; }
  Scalar to(Field f) const;

  bool is_zero() const { return p_ ? r_ == 0 : q_.is_zero(); }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  std::uint32_t residue_value() const { return r_; }
  const Rational& rational_value() const { return q_; }

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string str() const;

 private:
  void unify(Scalar& o);

  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
  Rational q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace spinsum
