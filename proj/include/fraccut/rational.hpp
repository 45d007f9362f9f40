#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace fraccut {

// Exact rational scalar. All polytope, LP and distance computations in this
// library are carried out over Q; no floating point enters any decision.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Canonicalized construction (mpq_class(num, den) does not reduce on its own).
Rational rational(long num, long den = 1);

// Accepts "a/b", an integer literal, or a finite decimal such as "0.05".
// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// "21/8"; integers render with an explicit denominator, e.g. "3/1".
std::string to_fraction(const Rational& q);

// Shortest exact form: "3" for integers, "2/3" otherwise.
std::string to_short(const Rational& q);

// Fixed-point decimal with round-half-away-from-zero, e.g. "2.625", "3.000".
std::string to_decimal(const Rational& q, int digits = 3);

// "21/8 (2.625)" — exact value first, decimal rendering is advisory.
std::string to_annotated(const Rational& q, int digits = 3);

Rational sum(const RationalVector& v);

// Lexicographic comparison, used wherever vertex lists need a stable order.
bool lex_less(const RationalVector& a, const RationalVector& b);

// "(0, 2/3, 2/3, 2/3, 0, 0, 0)" using the shortest exact form per entry.
std::string vector_str(const RationalVector& v);

}  // namespace fraccut
