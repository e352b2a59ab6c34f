#include "vcnorms/scalar.hpp"

#include <cctype>
#include <utility>

#include "vcnorms/errors.hpp"

namespace vcnorms {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("Scalar: zero denominator");
  q_.canonicalize();
}

Scalar::Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw DomainError("Scalar: malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw DomainError("Scalar: zero denominator in '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Scalar(std::move(q));
}

std::string Scalar::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  q_ += o.q_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  q_ *= o.q_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("Scalar: division by zero");
  q_ /= o.q_;
  return *this;
}

}  // namespace vcnorms
