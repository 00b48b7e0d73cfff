#include "laminal/rational.hpp"

#include <stdexcept>

#include "laminal/error.hpp"

namespace laminal {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RowSumError: return "RowSumError";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::DeadSamplePoint: return "DeadSamplePoint";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::ZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case ErrorCode::NotAncillary: return "NotAncillary";
    case ErrorCode::WeightArityMismatch: return "WeightArityMismatch";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::ThetaSpaceMismatch: return "ThetaSpaceMismatch";
    case ErrorCode::NotSCEquivalent: return "NotSCEquivalent";
    case ErrorCode::UnknownSampleLabel: return "UnknownSampleLabel";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "UnknownError";
}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  mpz_class num = abs(value_.get_num());
  const mpz_class den = value_.get_den();

  // exponent e with 10^e <= |v| < 10^(e+1)
  long e = 0;
  mpz_class p10 = 1;
  if (num >= den) {
    while (num >= den * p10 * 10) {
      p10 *= 10;
      ++e;
    }
  } else {
    while (num * p10 < den) {
      p10 *= 10;
      --e;
    }
  }

  // scaled = |v| * 10^(significant - 1 - e), rounded half to even
  const long shift = significant - 1 - e;
  mpz_class scale_num = num;
  mpz_class scale_den = den;
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
  if (shift >= 0) {
    scale_num *= pow;
  } else {
    scale_den *= pow;
  }
  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scale_num.get_mpz_t(), scale_den.get_mpz_t());
  const int half = cmp(r * 2, scale_den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  std::string digits = q.get_str();
  long point = static_cast<long>(digits.size()) - shift;  // digits before the decimal point
  if (static_cast<long>(digits.size()) > significant) {
    // rounding carried into a new leading digit
    digits.pop_back();
  }
  std::string out = sign() < 0 ? "-" : "";
  if (point <= 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-point), '0');
    out += digits;
  } else if (point >= static_cast<long>(digits.size())) {
    out += digits;
    out.append(static_cast<std::size_t>(point - static_cast<long>(digits.size())), '0');
  } else {
    out += digits.substr(0, static_cast<std::size_t>(point));
    out += ".";
    out += digits.substr(static_cast<std::size_t>(point));
  }
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace laminal
