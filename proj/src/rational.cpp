#include "curvebound/rational.hpp"

#include <cctype>

#include "curvebound/error.hpp"

namespace curvebound {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptySource: return "EmptySource";
    case Errc::MassMismatch: return "MassMismatch";
    case Errc::SameVertex: return "SameVertex";
    case Errc::PowerTooLarge: return "PowerTooLarge";
    case Errc::EmptySigma: return "EmptySigma";
    case Errc::NonSeparating: return "NonSeparating";
    case Errc::NoPositiveRange: return "NoPositiveRange";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::TooLargeForDense: return "TooLargeForDense";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::EmptySide: return "EmptySide";
    case Errc::CountTooLarge: return "CountTooLarge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::AlphaTooLarge: return "AlphaTooLarge";
    case Errc::DominanceHypothesisFails: return "DominanceHypothesisFails";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos])))
      throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (s[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    BigInt num = parse_integer(digits, text);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(parse_integer(text, text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace curvebound
