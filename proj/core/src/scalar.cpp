#include "spinsum/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace spinsum {

namespace {

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const boost::multiprecision::cpp_int& v, std::uint32_t p) {
  boost::multiprecision::cpp_int m = v % p;
  if (m < 0) m += p;
  return m.convert_to<std::uint32_t>();
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field order " + std::to_string(p) + " is not prime");
  return Field{p};
}

std::string Field::name() const { return p ? "F" + std::to_string(p) : "Q"; }

Scalar Scalar::residue(std::uint32_t p, long long v) {
  Scalar s;
  s.p_ = p;
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  s.r_ = static_cast<std::uint32_t>(m);
  return s;
}

Scalar Scalar::parse(const std::string& text, Field f) {
  Rational q;
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      q = Rational(boost::multiprecision::cpp_int(text));
    } else {
      boost::multiprecision::cpp_int num(text.substr(0, slash)), den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      q = Rational(num, den);
    }
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("cannot parse scalar '" + text + "'");
  }
  return Scalar(q).to(f);
}

Scalar Scalar::to(Field f) const {
  if (f.p == p_) return *this;
  if (p_ != 0) throw std::domain_error("cannot move a residue mod " + std::to_string(p_) + " into " + f.name());
  std::uint32_t den = reduce(boost::multiprecision::denominator(q_), f.p);
  if (den == 0) throw std::domain_error("denominator vanishes in " + f.name());
  Scalar s;
  s.p_ = f.p;
  std::uint64_t num = reduce(boost::multiprecision::numerator(q_), f.p);
  s.r_ = static_cast<std::uint32_t>(num * mod_pow(den, f.p - 2, f.p) % f.p);
  return s;
}

void Scalar::unify(Scalar& o) {
  if (p_ == o.p_) return;
  if (p_ == 0) *this = to(Field{o.p_});
  else o = o.to(Field{p_});
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (!p_) return Scalar(Rational(1) / q_);
  Scalar s = *this;
  s.r_ = mod_pow(r_, p_ - 2, p_);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_) s.r_ = r_ ? p_ - r_ : 0;
  else s.q_ = -q_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (p_ == o.p_) {
    if (p_) r_ = static_cast<std::uint32_t>((std::uint64_t(r_) + o.r_) % p_);
    else q_ += o.q_;
    return *this;
  }
  Scalar b = o;
  unify(b);
  return *this += b;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (p_ == o.p_) {
    if (p_) r_ = static_cast<std::uint32_t>(std::uint64_t(r_) * o.r_ % p_);
    else q_ *= o.q_;
    return *this;
  }
  Scalar b = o;
  unify(b);
  return *this *= b;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
  Scalar x = a, y = b;
  x.unify(y);
  return x == y;
}

std::string Scalar::str() const {
  if (p_) return std::to_string(r_);
  return q_.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace spinsum
