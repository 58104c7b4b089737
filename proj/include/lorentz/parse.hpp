#pragma once

// Parsing helpers for the CLI: complex literals in "re+imi" form, half
// integers, generator expressions, and flat key=value config files.

#include <cctype>
#include <istream>
#include <map>

#include "lorentz/algebra.hpp"

namespace lorentz {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace detail

// Accepts "1", "-2.5", "3i", "-i", "i", "1+2i", "0.5-0.25i", "1e-3+2e-4i".
inline cplx parse_complex(const std::string& input) {
  const std::string s = detail::trim(input);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty string");
  // locate a '+'/'-' separating the two parts (not leading, not after e/E)
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;  // keep the last candidate: handles "1e-3+2e-4i"
  }
  auto parse_real = [](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size())
      throw std::invalid_argument("parse_complex: bad number '" + t + "'");
    return v;
  };
  if (s.back() == 'i') {
    const std::string body = s.substr(0, s.size() - 1);
    if (split == std::string::npos)
      return cplx(0.0, parse_real(body));
    return cplx(parse_real(body.substr(0, split)),
                parse_real(body.substr(split)));
  }
  if (split != std::string::npos) {
    // a pure sum of two real parts is not a complex literal we accept
    const double v = parse_real(s);
    return cplx(v, 0.0);
  }
  return cplx(parse_real(s), 0.0);
}

// Accepts "1", "0.5", "1/2", "3/2".
inline HalfInt parse_half(const std::string& input) {
  const std::string s = detail::trim(input);
  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const int num = std::stoi(s.substr(0, slash));
    const int den = std::stoi(s.substr(slash + 1));
    if (den != 2) throw std::invalid_argument("parse_half: denominator must be 2");
    return HalfInt::from_twice(num);
  }
  const double v = std::stod(s);
  const int twice = static_cast<int>(std::lround(2.0 * v));
  if (std::abs(2.0 * v - twice) > 1e-9)
    throw std::invalid_argument("parse_half: not a half-integer: " + s);
  return HalfInt::from_twice(twice);
}

// Generator expression grammar:
//   expr   := term (('+' | '-') term)*
//   term   := [coeff '*'] symbol | coeff '*' symbol
//   coeff  := complex literal, optionally parenthesized
//   symbol := H1 H2 H3 F1 F2 F3 H+ H- F+ F- A1 A2 A3 B1 B2 B3
inline LieElement parse_generator_expr(const std::string& input) {
  const std::string s = input;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  };
  auto try_symbol = [&]() -> std::pair<bool, LieElement> {
    skip_ws();
    if (pos >= s.size()) return {false, LieElement::zero()};
    const char c = s[pos];
    if (c != 'H' && c != 'F' && c != 'A' && c != 'B')
      return {false, LieElement::zero()};
    if (pos + 1 >= s.size()) return {false, LieElement::zero()};
    const char d = s[pos + 1];
    LieElement e;
    if (d >= '1' && d <= '3') {
      const int j = d - '0';
      switch (c) {
        case 'H': e = LieElement::H(j); break;
        case 'F': e = LieElement::F(j); break;
        case 'A': e = LieElement::A(j); break;
        default: e = LieElement::B(j); break;
      }
    } else if ((d == '+' || d == '-') && (c == 'H' || c == 'F')) {
      if (c == 'H')
        e = d == '+' ? LieElement::H_plus() : LieElement::H_minus();
      else
        e = d == '+' ? LieElement::F_plus() : LieElement::F_minus();
    } else {
      return {false, LieElement::zero()};
    }
    pos += 2;
    return {true, e};
  };
  auto read_coeff_token = [&]() -> std::string {
    skip_ws();
    if (pos < s.size() && s[pos] == '(') {
      const std::size_t close = s.find(')', pos);
      if (close == std::string::npos)
        throw std::invalid_argument("parse_generator_expr: unbalanced '('");
      const std::string tok = s.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      return tok;
    }
    const std::size_t start = pos;
    while (pos < s.size()) {
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' ||
          c == 'e' || c == 'E') {
        ++pos;
      } else if ((c == '+' || c == '-') && pos > start &&
                 (s[pos - 1] == 'e' || s[pos - 1] == 'E')) {
        ++pos;  // exponent sign
      } else {
        break;
      }
    }
    return s.substr(start, pos - start);
  };

  LieElement total;
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= s.size()) {
      if (first)
        throw std::invalid_argument("parse_generator_expr: empty expression");
      break;
    }
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      throw std::invalid_argument(
          "parse_generator_expr: expected '+' or '-' between terms");
    }
    first = false;
    // symbol with implicit coefficient 1?
    auto [is_sym, sym] = try_symbol();
    if (is_sym) {
      total = total + cplx(sign) * sym;
      continue;
    }
    const std::string tok = read_coeff_token();
    if (tok.empty())
      throw std::invalid_argument("parse_generator_expr: expected coefficient");
    const cplx coeff = cplx(sign) * parse_complex(tok);
    skip_ws();
    if (pos < s.size() && s[pos] == '*') ++pos;
    auto [ok, sym2] = try_symbol();
    if (!ok)
      throw std::invalid_argument(
          "parse_generator_expr: expected generator symbol");
    total = total + coeff * sym2;
  }
  return total;
}

// Flat key=value lines; '#' starts a comment; blank lines ignored.
inline std::map<std::string, std::string> parse_config_stream(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    kv[detail::trim(t.substr(0, eq))] = detail::trim(t.substr(eq + 1));
  }
  return kv;
}

}  // namespace lorentz
