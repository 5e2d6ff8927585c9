#include "dgc/field.hpp"

#include <stdexcept>

namespace dgc {

namespace {

uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t reduce(const mpz_class& z, uint64_t p) {
  mpz_class m = z % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

[[noreturn]] void mismatch() { throw std::invalid_argument("scalar field mismatch"); }

std::string trim(std::string x) {
  size_t a = x.find_first_not_of(" \t");
  size_t b = x.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
}

}  // namespace

Field Field::prime(uint64_t p) {
  if (p >= (uint64_t{1} << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  return Field(p);
}

Field Field::from_spec(std::string_view spec) {
  std::string s = trim(std::string(spec));
  if (s == "q" || s == "Q") return rationals();
  if (s.rfind("fp:", 0) == 0) {
    std::string num = s.substr(3);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed field spec '" + s + "'");
    return prime(std::stoull(num));
  }
  throw std::invalid_argument("malformed field spec '" + s + "' (expected q or fp:<p>)");
}

std::string Field::name() const { return p_ ? "F_" + std::to_string(p_) : "Q"; }
std::string Field::spec() const { return p_ ? "fp:" + std::to_string(p_) : "q"; }

Scalar Field::zero() const {
  Scalar s;
  s.p_ = p_;
  return s;
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  Scalar s;
  s.p_ = p_;
  if (p_) {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    s.r_ = static_cast<uint64_t>(m);
  } else if (v != 0) {
    s.q_ = std::make_unique<mpq_class>(static_cast<long>(v));
  }
  return s;
}

Scalar Field::from_rational(const mpq_class& q) const {
  Scalar s;
  s.p_ = p_;
  if (!p_) {
    if (q != 0) {
      s.q_ = std::make_unique<mpq_class>(q);
      s.q_->canonicalize();
    }
    return s;
  }
  uint64_t den = reduce(q.get_den(), p_);
  if (den == 0) throw std::domain_error("denominator vanishes in " + name());
  s.r_ = reduce(q.get_num(), p_) * powmod(den, p_ - 2, p_) % p_;
  return s;
}

Scalar Field::parse(std::string_view text) const {
  std::string t = trim(std::string(text));
  size_t mod = t.find("mod");
  if (mod != std::string::npos) {
    std::string val = trim(t.substr(0, mod));
    std::string m = trim(t.substr(mod + 3));
    if (!p_ || m != std::to_string(p_))
      throw std::invalid_argument("element '" + t + "' does not belong to " + name());
    t = val;
  }
  mpq_class q;
  if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos || q.set_str(t, 10) != 0)
    throw std::invalid_argument("malformed field element '" + t + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  q.canonicalize();
  return from_rational(q);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  p_ = o.p_;
  r_ = o.r_;
  if (!o.q_)
    q_.reset();
  else if (q_)
    *q_ = *o.q_;
  else
    q_ = std::make_unique<mpq_class>(*o.q_);
  return *this;
}

Field Scalar::field() const { return p_ ? Field::prime(p_) : Field(); }

void Scalar::normalize() {
  if (q_ && *q_ == 0) q_.reset();
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s = *this;
  s += o;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s = *this;
  s -= o;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s = *this;
  s *= o;
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.negate();
  return s;
}

void Scalar::negate() {
  if (p_)
    r_ = r_ ? p_ - r_ : 0;
  else if (q_)
    *q_ = -*q_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (p_ != o.p_) mismatch();
  if (p_) {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  } else if (o.q_) {
    if (q_)
      *q_ += *o.q_;
    else
      q_ = std::make_unique<mpq_class>(*o.q_);
    normalize();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (p_ != o.p_) mismatch();
  if (p_) {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
  } else if (o.q_) {
    if (q_)
      *q_ -= *o.q_;
    else
      q_ = std::make_unique<mpq_class>(-*o.q_);
    normalize();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (p_ != o.p_) mismatch();
  if (p_) {
    r_ = r_ * o.r_ % p_;
  } else if (q_) {
    if (o.q_)
      *q_ *= *o.q_;
    else
      q_.reset();
  }
  return *this;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  if (p_ != a.p_ || p_ != b.p_) mismatch();
  if (p_) {
    r_ = (r_ + a.r_ * b.r_) % p_;
    return;
  }
  if (!a.q_ || !b.q_) return;
  if (q_) {
    mpq_class t = *a.q_ * *b.q_;
    *q_ += t;
    normalize();
  } else {
    q_ = std::make_unique<mpq_class>(*a.q_ * *b.q_);
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar s = *this;
  if (p_)
    s.r_ = powmod(r_, p_ - 2, p_);
  else
    *s.q_ = 1 / *q_;
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  if (p_) return r_ == o.r_;
  if (!q_ || !o.q_) return !q_ && !o.q_;
  return *q_ == *o.q_;
}

std::string Scalar::to_string() const {
  if (p_) return std::to_string(r_) + " mod " + std::to_string(p_);
  return q_ ? q_->get_str() : "0";
}

}  // namespace dgc
