#include "fraccut/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace fraccut {

Rational rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Integer part with optional leading sign; digit checks exclude the sign.
bool integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return all_digits(s.substr(start));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string err = "parse_rational: malformed rational '" + text + "'";
  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!integer_token(num) || !all_digits(den)) throw std::invalid_argument(err);
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    Rational q(mpz_class(num), d);
    q.canonicalize();
    return q;
  }
  std::size_t dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!integer_token(whole) || !all_digits(frac)) throw std::invalid_argument(err);
    bool negative = whole[0] == '-';
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class numer = mpz_class(whole) * scale;
    mpz_class frac_part(frac);
    numer += negative ? -frac_part : frac_part;
    Rational q(numer, scale);
    q.canonicalize();
    return q;
  }
  if (!integer_token(text)) throw std::invalid_argument(err);
  return Rational(mpz_class(text));
}

std::string to_fraction(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_short(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction(q);
}

std::string to_decimal(const Rational& q, int digits) {
  if (digits < 0) throw std::invalid_argument("to_decimal: negative digit count");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(|q| * 10^digits) with half away from zero, then reattach the sign
  mpq_class mag = abs(q) * scale;
  mpz_class scaled = (2 * mag.get_num() + mag.get_den()) / (2 * mag.get_den());
  std::string s = scaled.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  std::string out;
  if (sgn(q) < 0 && scaled != 0) out += "-";
  if (digits == 0) return out + s;
  out += s.substr(0, s.size() - digits);
  out += ".";
  out += s.substr(s.size() - digits);
  return out;
}

std::string to_annotated(const Rational& q, int digits) {
  return to_fraction(q) + " (" + to_decimal(q, digits) + ")";
}

Rational sum(const RationalVector& v) {
  Rational total = 0;
  for (const Rational& x : v) total += x;
  return total;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

std::string vector_str(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_short(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace fraccut
