#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace dgc {

class Scalar;

/// The active ground field: the rationals, or F_p for a prime p < 2^31.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  static Field prime(uint64_t p);
  /// "q" or "fp:<p>".
  static Field from_spec(std::string_view spec);

  bool is_rational() const { return p_ == 0; }
  uint64_t characteristic() const { return p_; }
  std::string name() const;
  std::string spec() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;

  /// Accepts "3/2", "-4", and "5 mod 7" (the modulus must match).
  Scalar parse(std::string_view text) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(uint64_t p) : p_(p) {}
  uint64_t p_ = 0;
};

/// Exact field element. Rational zero is stored without allocation.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Scalar& o) : p_(o.p_), r_(o.r_), q_(o.q_ ? std::make_unique<mpq_class>(*o.q_) : nullptr) {}
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&&) noexcept = default;

  Field field() const;
  uint64_t characteristic() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : !q_; }
  bool is_one() const { return p_ ? r_ == 1 : (q_ && *q_ == 1); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// this += a*b
  void add_mul(const Scalar& a, const Scalar& b);
  Scalar inverse() const;
  void negate();

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  uint64_t residue() const { return r_; }
  mpq_class rational() const { return q_ ? *q_ : mpq_class(0); }

  std::string to_string() const;

 private:
  friend class Field;
  void normalize();
  uint64_t p_ = 0;
  uint64_t r_ = 0;
  std::unique_ptr<mpq_class> q_;
};

inline bool odd(long long n) { return (n & 1) != 0; }

}  // namespace dgc
