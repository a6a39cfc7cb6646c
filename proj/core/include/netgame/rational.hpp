#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace netgame {

// Exact rational arithmetic. Thin value wrapper over GMP's mpq_class that
// keeps every instance canonical (reduced, positive denominator) so that
// equality, hashing and printing never surprise anyone.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}  // NOLINT: implicit on purpose
  Rational(long num, long den);

  // strict "p" or "p/q" with optional leading '-', nothing else
  static Rational parse(const std::string& text);

  std::string str() const;      // canonical "p" or "p/q"
  double to_double() const { return v_.get_d(); }  // diagnostics only

  Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sign() const { return sgn(v_); }

  // floor(num/den) as a machine integer; caller guarantees it fits
  long floor_long() const;

  // numerator / denominator of the canonical form; throw when they don't
  // fit a machine long
  long num_long() const;
  long den_long() const;

 private:
  explicit Rational(mpq_class q) : v_(std::move(q)) {}
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational operator*(long k, const Rational& r) { return Rational(k) * r; }

}  // namespace netgame
