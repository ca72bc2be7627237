#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "iceqp/error.hpp"

namespace iceqp {

using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (optional sign, decimal integers). The result is
/// canonicalized; a zero denominator is rejected.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  if (!text.empty() && text.front() == '-') r = -r;
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace iceqp
