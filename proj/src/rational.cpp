#include "owcpon/rational.hpp"

#include <cctype>

#include "owcpon/error.hpp"

namespace owcpon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::BadAdjacency: return "BadAdjacency";
    case ErrorCode::MissingCatalogEntry: return "MissingCatalogEntry";
    case ErrorCode::MissingOlt: return "MissingOlt";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::NoRoute: return "NoRoute";
    case ErrorCode::PolicyExcluded: return "PolicyExcluded";
    case ErrorCode::UnknownRack: return "UnknownRack";
    case ErrorCode::UnknownServer: return "UnknownServer";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "?";
}

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int pow10(std::size_t n) {
  cpp_int p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    const cpp_int d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = Rational(cpp_int(std::string(num)), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    cpp_int scale = pow10(frac.size());
    value = Rational(cpp_int(std::string(whole)) * scale + cpp_int(std::string(frac)), scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(cpp_int(std::string(text)));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  const auto& num = boost::multiprecision::numerator(value);
  const auto& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_decimal(const Rational& value, unsigned fraction_digits) {
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const cpp_int scale = pow10(fraction_digits);
  const cpp_int num = boost::multiprecision::numerator(magnitude) * scale;
  const cpp_int den = boost::multiprecision::denominator(magnitude);
  cpp_int q = num / den;
  const cpp_int r = num % den;
  if (r * 2 >= den) ++q;

  std::string digits = q.str();
  if (digits.size() <= fraction_digits) {
    digits.insert(0, fraction_digits + 1 - digits.size(), '0');
  }
  std::string out;
  if (negative && q != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - fraction_digits);
  if (fraction_digits > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - fraction_digits);
  }
  return out;
}

std::optional<Milliwatts> parse_watts(std::string_view text) {
  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 3 || !all_digits(frac)) return std::nullopt;
  }
  if (!all_digits(whole) || whole.size() > 15) return std::nullopt;
  Milliwatts mw = std::stoll(std::string(whole)) * 1000;
  Milliwatts scale = 100;
  for (char c : frac) {
    mw += (c - '0') * scale;
    scale /= 10;
  }
  return mw;
}

std::string format_watts(Milliwatts mw) {
  const bool negative = mw < 0;
  std::uint64_t magnitude = negative ? 0 - static_cast<std::uint64_t>(mw) : mw;
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / 1000);
  if (auto frac = magnitude % 1000; frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace owcpon
