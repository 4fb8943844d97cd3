#include <kklab/numeric.hpp>

#include <kklab/errors.hpp>

#include <cmath>
#include <numeric>

namespace kklab {

namespace {

std::string_view trim(std::string_view s)
{
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (! s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (! all_digits(s))
        throw ParseError("not a number: '" + std::string(whole) + "'", 0);
    BigInt v(std::string(s), 10);
    return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned long k)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

BigInt pow_big(const BigInt & b, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Exact k-th root of a nonnegative integer, if it exists.
std::optional<BigInt> exact_root(const BigInt & v, unsigned long k)
{
    BigInt r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) != 0)
        return r;
    return std::nullopt;
}

std::string render_scaled(BigInt scaled, int digits)
{
    bool negative = sgn(scaled) < 0;
    if (negative)
        scaled = -scaled;
    std::string s = scaled.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto s = trim(text);
    if (s.empty())
        throw ParseError("empty number", 0);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(trim(s.substr(0, slash)), text);
        BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
        if (sgn(den) == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'", slash);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        BigInt ev = parse_integer(s.substr(e + 1), text);
        if (! ev.fits_slong_p() || abs(ev) > 100000)
            throw ParseError("exponent out of range in '" + std::string(text) + "'", e);
        exponent = ev.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    long frac = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((! ip.empty() && ! all_digits(ip)) || (! fp.empty() && ! all_digits(fp)) || (ip.empty() && fp.empty()))
            throw ParseError("not a number: '" + std::string(text) + "'", 0);
        digits = std::string(ip) + std::string(fp);
        frac = static_cast<long>(fp.size());
    }
    else {
        if (! all_digits(s))
            throw ParseError("not a number: '" + std::string(text) + "'", 0);
        digits = std::string(s);
    }
    Rational r{BigInt(digits, 10)};
    long scale = exponent - frac;
    if (scale > 0)
        r *= Rational(pow10(static_cast<unsigned long>(scale)));
    else if (scale < 0)
        r /= Rational(pow10(static_cast<unsigned long>(-scale)));
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational & value)
{
    Rational v = value;
    v.canonicalize();
    if (v.get_den() == 1)
        return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const BigInt & value) { return value.get_str(); }

std::string decimal_floor(const Rational & value, int digits)
{
    BigInt scaled;
    BigInt num = value.get_num() * pow10(static_cast<unsigned long>(digits));
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), value.get_den().get_mpz_t());
    return render_scaled(scaled, digits);
}

std::string decimal_ceil(const Rational & value, int digits)
{
    BigInt scaled;
    BigInt num = value.get_num() * pow10(static_cast<unsigned long>(digits));
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), value.get_den().get_mpz_t());
    return render_scaled(scaled, digits);
}

BigInt factorial(unsigned long n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt falling_factorial(unsigned long n, unsigned long k)
{
    if (k > n)
        return 0;
    BigInt r = 1;
    for (unsigned long i = 0; i < k; ++i)
        r *= n - i;
    return r;
}

BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational power(const Rational & base, unsigned long exponent)
{
    Rational r(pow_big(base.get_num(), exponent), pow_big(base.get_den(), exponent));
    r.canonicalize();
    return r;
}

double log_of(const BigInt & value)
{
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_of(const Rational & value) { return log_of(value.get_num()) - log_of(value.get_den()); }

int compare_monomial_to_one(const std::vector<PowerTerm> & terms)
{
    bool zero = false, infinite = false;
    double sum = 0, magnitude = 0;
    for (const auto & t : terms) {
        if (t.exponent == 0)
            continue;
        if (sgn(t.base) <= 0) {
            if (sgn(t.base) < 0)
                throw Error("compare_monomial_to_one: negative base");
            (t.exponent > 0 ? zero : infinite) = true;
            continue;
        }
        double part = static_cast<double>(t.exponent) * log_of(t.base);
        sum += part;
        magnitude += std::fabs(part);
    }
    if (zero && infinite)
        throw Error("compare_monomial_to_one: indeterminate 0 * inf");
    if (zero)
        return -1;
    if (infinite)
        return 1;
    if (std::fabs(sum) > 1e-9 * (magnitude + 1.0))
        return sum > 0 ? 1 : -1;

    BigInt lhs = 1, rhs = 1;
    for (const auto & t : terms) {
        if (t.exponent == 0)
            continue;
        auto e = static_cast<unsigned long>(t.exponent > 0 ? t.exponent : -t.exponent);
        const BigInt & num = t.base.get_num();
        const BigInt & den = t.base.get_den();
        if (t.exponent > 0) {
            lhs *= pow_big(num, e);
            rhs *= pow_big(den, e);
        }
        else {
            lhs *= pow_big(den, e);
            rhs *= pow_big(num, e);
        }
    }
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

Root::Root(Rational r, unsigned long k) : radicand(std::move(r)), index(k)
{
    radicand.canonicalize();
    if (sgn(radicand) < 0)
        throw Error("Root: negative radicand");
    if (index == 0)
        throw Error("Root: zero index");
}

Root Root::reciprocal(const Rational & base, unsigned long exponent)
{
    if (sgn(base) <= 0)
        throw Error("Root::reciprocal: base must be positive");
    return Root(Rational(1) / base, exponent);
}

double Root::approx() const
{
    if (is_zero())
        return 0.0;
    return std::exp(log_of(radicand) / static_cast<double>(index));
}

Root Root::simplified() const
{
    if (is_zero() || radicand == 1)
        return Root(radicand, 1);
    Rational r = radicand;
    unsigned long k = index;
    for (unsigned long p = 2; p <= k; ++p) {
        while (k % p == 0) {
            auto num = exact_root(r.get_num(), p);
            auto den = exact_root(r.get_den(), p);
            if (! num || ! den)
                break;
            r = Rational(*num, *den);
            k /= p;
        }
    }
    return Root(r, k);
}

std::optional<Rational> Root::as_rational() const
{
    Root s = simplified();
    if (s.index == 1)
        return s.radicand;
    return std::nullopt;
}

std::string Root::to_string() const
{
    if (index == 1)
        return kklab::to_string(radicand);
    return "(" + kklab::to_string(radicand) + ")^(1/" + std::to_string(index) + ")";
}

int compare(const Root & a, const Root & b)
{
    if (a.is_zero() || b.is_zero())
        return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
    return compare_monomial_to_one({{a.radicand, static_cast<long>(b.index)},
                                    {b.radicand, -static_cast<long>(a.index)}});
}

int compare(const Root & a, const Rational & b)
{
    if (sgn(b) < 0)
        return 1;
    return compare(a, Root(b));
}

Root scale(const Rational & c, const Root & x)
{
    if (sgn(c) < 0)
        throw Error("scale: negative factor");
    return Root(power(c, x.index) * x.radicand, x.index);
}

Root multiply(const Root & x, const Root & y)
{
    unsigned long l = std::lcm(x.index, y.index);
    return Root(power(x.radicand, l / x.index) * power(y.radicand, l / y.index), l).simplified();
}

Root power(const Root & x, unsigned long exponent)
{
    unsigned long g = std::gcd(exponent, x.index);
    if (g == 0)
        return Root(1);
    return Root(power(x.radicand, exponent / g), x.index / g);
}

Root inverse(const Root & x)
{
    if (x.is_zero())
        throw Error("inverse: zero");
    return Root(Rational(1) / x.radicand, x.index);
}

Enclosure enclose(const Root & value, int digits)
{
    Enclosure out;
    out.digits = digits;
    if (value.is_zero()) {
        out.lower = out.upper = 0;
        return out;
    }
    Root v = value.simplified();
    if (v.index == 1)
        return enclose(v.radicand, digits);
    BigInt scale10 = pow10(static_cast<unsigned long>(digits));
    BigInt scaled = v.radicand.get_num() * pow_big(scale10, v.index);
    BigInt quotient, remainder;
    mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled.get_mpz_t(),
                v.radicand.get_den().get_mpz_t());
    BigInt r;
    bool perfect = mpz_root(r.get_mpz_t(), quotient.get_mpz_t(), v.index) != 0;
    out.lower = Rational(r, scale10);
    out.upper = (perfect && sgn(remainder) == 0) ? out.lower : Rational(BigInt(r + 1), scale10);
    out.lower.canonicalize();
    out.upper.canonicalize();
    return out;
}

Enclosure enclose(const Rational & value, int digits)
{
    Enclosure out;
    out.digits = digits;
    BigInt scale10 = pow10(static_cast<unsigned long>(digits));
    BigInt num = value.get_num() * scale10, lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), value.get_den().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), num.get_mpz_t(), value.get_den().get_mpz_t());
    if (lo == hi) {
        out.lower = out.upper = value;
        return out;
    }
    out.lower = Rational(lo, scale10);
    out.upper = Rational(hi, scale10);
    out.lower.canonicalize();
    out.upper.canonicalize();
    return out;
}

namespace {

struct EulerBounds {
    Rational lower, upper;

    EulerBounds()
    {
        constexpr unsigned long terms = 45;
        Rational sum = 0;
        BigInt fact = 1;
        for (unsigned long k = 0; k <= terms; ++k) {
            if (k > 0)
                fact *= k;
            sum += Rational(1, fact);
        }
        sum.canonicalize();
        lower = sum;
        // tail sum_{k>N} 1/k! < 1/(N! N)
        upper = sum + Rational(1, BigInt(fact * terms));
        upper.canonicalize();
    }
};

const EulerBounds & euler_bounds()
{
    static const EulerBounds bounds;
    return bounds;
}

} // namespace

const Rational & euler_lower() { return euler_bounds().lower; }
const Rational & euler_upper() { return euler_bounds().upper; }

Root parse_real(std::string_view text)
{
    auto s = trim(text);
    if (s.starts_with("root:")) {
        auto rest = s.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected root:B:E, got '" + std::string(text) + "'", 0);
        Rational base = parse_rational(rest.substr(0, colon));
        BigInt e = parse_integer(trim(rest.substr(colon + 1)), text);
        if (sgn(base) <= 0 || sgn(e) <= 0 || ! e.fits_ulong_p())
            throw ParseError("root:B:E needs B > 0 and E >= 1", 0);
        return Root::reciprocal(base, e.get_ui());
    }
    Rational r = parse_rational(s);
    if (sgn(r) < 0)
        throw ParseError("negative value '" + std::string(text) + "'", 0);
    return Root(r);
}

} // namespace kklab
