#include "saatsp/rational.hpp"

#include <ostream>

#include "saatsp/errors.hpp"

namespace saatsp {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  mpq_class q;
  // mpq_class::set_str accepts "p/q"; reject a zero denominator explicitly.
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "not a rational: '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + s + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::to_decimal(int places) const {
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  mpz_class num = abs(v_.get_num()) * scale * 2 + v_.get_den();
  mpz_class den = v_.get_den() * 2;
  mpz_class q = num / den;  // round half away from zero
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string out = sign() < 0 && q != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  const std::size_t a = mpz_get_ui(v_.get_num_mpz_t());
  const std::size_t b = mpz_get_ui(v_.get_den_mpz_t());
  const std::size_t s = static_cast<std::size_t>(sign() + 1);
  return (a * 0x9E3779B97F4A7C15ULL) ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)) ^ s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::AmbiguousCycles: return "AmbiguousCycles";
    case ErrorKind::NotFractional: return "NotFractional";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::OutOfLevel: return "OutOfLevel";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::ZeroLevel: return "ZeroLevel";
    case ErrorKind::WitnessTooSmall: return "WitnessTooSmall";
    case ErrorKind::NoGoodTours: return "NoGoodTours";
    case ErrorKind::NotUnitPath: return "NotUnitPath";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace saatsp
