#include "stableopt/rational.hpp"

#include <cctype>

namespace stableopt {

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  if (body.empty()) return std::nullopt;

  Rational value;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    value = Rational(BigInt(num), d);
  } else if (dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) return std::nullopt;
    BigInt scale = 1;
    for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
    value = Rational(BigInt(whole) * scale + (frac.empty() ? BigInt(0) : BigInt(frac)), scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    value = Rational(BigInt(body));
  }
  if (negative) value = -value;
  return value;
}

}  // namespace stableopt
