#include "pdmspec/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace pdmspec {

namespace {

long long parse_integer(std::string_view text, std::string_view whole)
{
  long long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  if (text.empty()) {
    throw std::invalid_argument("malformed rational: empty string");
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const long long num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (den_text.empty()) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const long long den = parse_integer(den_text, text);
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r)
{
  if (r.denominator() == 1) {
    return std::to_string(r.numerator());
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace pdmspec
