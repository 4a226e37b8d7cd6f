#pragma once

// Exact rational arithmetic used throughout the toolkit. All solver decisions
// rest on strict inequalities (strict dominance, strict Pareto improvement,
// m_i > 0), so there is no floating point anywhere: values are GMP rationals
// kept in lowest terms with positive denominator.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spikit {

using Rational = mpq_class;

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

class size_cap_error : public std::runtime_error {
 public:
  explicit size_cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// Default candidate cap for the exhaustive searches; SPIKIT_MAX_CANDIDATES
/// overrides it.
inline std::uint64_t default_search_cap() {
  if (const char* env = std::getenv("SPIKIT_MAX_CANDIDATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1u << 20;
}

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Formats in lowest terms: "p" when the denominator is 1, else "p/q".
inline std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// "-12.345e-2" -> exact rational. No rounding: the decimal expansion is taken
// literally, e.g. "3.2" -> 16/5.
inline Rational parse_decimal(std::string_view s, std::string_view original) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es)) throw parse_error("bad rational literal: '" + std::string(original) + "'");
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }
  std::string digits;
  long frac_len = 0;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    frac_len = static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw parse_error("bad rational literal: '" + std::string(original) + "'");
  mpz_class num(digits, 10);
  if (neg) num = -num;
  long shift = exp10 - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r;
  if (shift >= 0)
    r = Rational(num * pow10);
  else
    r = Rational(num, pow10);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Parses a rational literal: an integer ("-3"), a fraction "p/q" with q > 0,
/// or an exact decimal ("3.2", "-0.04", "25e-1").
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw parse_error("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = text.substr(0, slash);
    std::string_view ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw parse_error("bad rational literal: '" + std::string(text) + "'");
    std::string_view nd = ns;
    if (nd[0] == '+' || nd[0] == '-') nd.remove_prefix(1);
    if (!detail::all_digits(nd) || !detail::all_digits(ds))
      throw parse_error("bad rational literal: '" + std::string(text) + "'");
    mpz_class num(std::string(ns), 10), den(std::string(ds), 10);
    if (den <= 0) throw parse_error("rational denominator must be positive: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return detail::parse_decimal(text, text);
}

}  // namespace spikit
