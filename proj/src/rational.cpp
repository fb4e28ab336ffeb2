#include "comlearn/rational.hpp"

#include <stdexcept>

namespace comlearn {

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos)
    if (s[pos] < '0' || s[pos] > '9') return false;
  return true;
}

Integer to_integer(std::string_view s) {
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den))
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  Integer d = to_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(to_integer(num), d);
  r.canonicalize();
  return r;
}

} // namespace comlearn
