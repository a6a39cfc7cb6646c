#include "netgame/rational.hpp"

#include <cctype>
#include <ostream>

#include "netgame/errors.hpp"

namespace netgame {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
  if (o.v_ == 0) throw DomainError("rational division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  // accept exactly: [-]digits or [-]digits/digits
  std::string s = text;
  bool neg = false;
  if (!s.empty() && s[0] == '-') {
    neg = true;
    s = s.substr(1);
  }
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("bad rational: '" + text + "'");
  mpq_class q;
  // mpq parses "p/q" directly but tolerates junk we don't want, so feed it
  // the two validated pieces
  q = mpq_class(mpz_class(num), mpz_class(den));
  if (q.get_den() == 0) throw ParseError("bad rational (zero denominator): '" + text + "'");
  q.canonicalize();
  if (neg) q = -q;
  return Rational(std::move(q));
}

std::string Rational::str() const { return v_.get_str(); }

long Rational::floor_long() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return f.get_si();
}

long Rational::num_long() const {
  if (!v_.get_num().fits_slong_p()) throw DomainError("rational numerator out of range");
  return v_.get_num().get_si();
}

long Rational::den_long() const {
  if (!v_.get_den().fits_slong_p()) throw DomainError("rational denominator out of range");
  return v_.get_den().get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace netgame
