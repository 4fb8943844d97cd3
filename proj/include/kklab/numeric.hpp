#pragma once

// Exact arithmetic used throughout kklab: arbitrary precision integers and
// rationals (GMP), k-th roots of rationals kept symbolically, and decimal
// enclosures of both.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kklab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "a/b", an integer, a decimal ("0.25") or scientific ("1e-3")
/// literal exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "a" when the denominator is 1, else "a/b" (canonical form).
std::string to_string(const Rational & value);
std::string to_string(const BigInt & value);

/// floor(value * 10^digits) / 10^digits rendered with exactly `digits` decimals.
std::string decimal_floor(const Rational & value, int digits);
std::string decimal_ceil(const Rational & value, int digits);

BigInt factorial(unsigned long n);
/// (n)_k = n (n-1) ... (n-k+1); zero when k > n.
BigInt falling_factorial(unsigned long n, unsigned long k);
BigInt binomial(unsigned long n, unsigned long k);
Rational power(const Rational & base, unsigned long exponent);

/// Natural log of a positive integer or rational, accurate for arbitrarily
/// large magnitudes.
double log_of(const BigInt & value);
double log_of(const Rational & value);

/// One factor base^exponent of a monomial; base must be positive.
struct PowerTerm {
    Rational base;
    long exponent;
};

/// Sign of (prod base_i^exponent_i) - 1. Decided in floating point when the
/// log-sum is clearly away from zero, otherwise exactly.
int compare_monomial_to_one(const std::vector<PowerTerm> & terms);

/// value = radicand^(1/index), radicand >= 0, index >= 1.
struct Root {
    Rational radicand{0};
    unsigned long index = 1;

    Root() = default;
    Root(Rational r, unsigned long k = 1);

    /// base^(-1/exponent); the form used for sparsity thresholds.
    static Root reciprocal(const Rational & base, unsigned long exponent);

    bool is_zero() const { return sgn(radicand) == 0; }
    double approx() const;
    /// Reduces the index as far as the radicand is a perfect power.
    Root simplified() const;
    std::optional<Rational> as_rational() const;
    std::string to_string() const;
};

int compare(const Root & a, const Root & b);
int compare(const Root & a, const Rational & b);
inline bool operator<(const Root & a, const Root & b) { return compare(a, b) < 0; }
inline bool operator==(const Root & a, const Root & b) { return compare(a, b) == 0; }

/// c * x for c >= 0.
Root scale(const Rational & c, const Root & x);
Root multiply(const Root & x, const Root & y);
Root power(const Root & x, unsigned long exponent);
/// x^(-1); x must be nonzero.
Root inverse(const Root & x);

/// A closed decimal interval [lower, upper] of width at most 10^-digits.
struct Enclosure {
    Rational lower;
    Rational upper;
    int digits = 12;

    std::string lower_string() const { return decimal_floor(lower, digits); }
    std::string upper_string() const { return decimal_ceil(upper, digits); }
    bool exact() const { return lower == upper; }
    bool contains(const Rational & x) const { return lower <= x && x <= upper; }
};

Enclosure enclose(const Root & value, int digits = 12);
Enclosure enclose(const Rational & value, int digits = 12);

/// Rational bounds on Euler's number with a gap below 10^-40.
const Rational & euler_lower();
const Rational & euler_upper();

/// Parses a real parameter: any rational literal, or "root:B:E" meaning
/// B^(-1/E) (the form thresholds are printed in).
Root parse_real(std::string_view text);

} // namespace kklab
