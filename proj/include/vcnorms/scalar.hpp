#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace vcnorms {

/// Exact rational number, always canonically reduced with a positive denominator.
class Scalar {
 public:
  Scalar() = default;

  template <std::integral T>
  Scalar(T v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Scalar(long num, long den);
  explicit Scalar(mpq_class q);

  /// Parses "p/q" or "p" (optional leading '-'); throws DomainError otherwise.
  static Scalar parse(std::string_view text);

  /// Canonical "p/q" form; q = 1 is still written out.
  std::string str() const;
  double to_double() const { return q_.get_d(); }
  const mpq_class& value() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Scalar abs() const { return Scalar(mpq_class(::abs(q_))); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws DomainError on division by zero

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(mpq_class(-q_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class q_;
};

inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Exact midpoint.
inline Scalar midpoint(const Scalar& a, const Scalar& b) { return (a + b) / Scalar(2); }

}  // namespace vcnorms
