#pragma once

/**
 * @file numeric.hpp
 * @brief Exact scalars: arbitrary-precision integers and rationals (GMP),
 *        elements a + b*sqrt(l) of a real quadratic field, and the small
 *        integer number theory the rest of the library leans on.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pellpoly {

using Integer = mpz_class;
/// Always canonical: gmpxx reduces after every arithmetic operation, and every
/// constructor path in this library calls canonicalize().
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Rational text form: "p/q" or "p"
// ---------------------------------------------------------------------------

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty())
            throw std::invalid_argument("malformed rational '" + s + "'");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size())
            throw std::invalid_argument("malformed rational '" + s + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("malformed rational '" + s + "'");
        return Integer(part[0] == '+' ? part.substr(1) : part, 10);
    };
    if (slash == std::string::npos)
        return Rational(parse_int(s));
    return make_rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

inline std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

inline std::string to_string(const Integer& z)
{
    return z.get_str(10);
}

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

inline bool is_perfect_square(const Integer& z)
{
    return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

/// sqrt(q) when q is the square of a rational; the non-negative root.
inline std::optional<Rational> rational_sqrt(const Rational& q)
{
    if (sgn(q) < 0)
        return std::nullopt;
    const Integer& n = q.get_num();
    const Integer& d = q.get_den();
    if (!is_perfect_square(n) || !is_perfect_square(d))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return make_rational(rn, rd);
}

inline Rational rational_pow(const Rational& base, unsigned long e)
{
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    return make_rational(n, d);
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// 2-adic valuation of a nonzero rational.
inline long valuation2(const Rational& q)
{
    if (q == 0)
        throw std::invalid_argument("valuation of zero");
    return static_cast<long>(mpz_scan1(q.get_num_mpz_t(), 0)) -
           static_cast<long>(mpz_scan1(q.get_den_mpz_t(), 0));
}

namespace detail {

inline Integer pollard_rho(const Integer& n, unsigned long seed)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    Integer x = 2 + seed, y = x, c = 1 + seed, d = 1;
    while (d == 1) {
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        Integer diff = abs(x - y);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d;
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out)
{
    if (n == 1)
        return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        ++out[n];
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        Integer d = pollard_rho(n, seed);
        if (d != n) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

} // namespace detail

/// Prime factorization of |n| (n != 0): trial division by small primes, then
/// Pollard rho on whatever cofactor is left.
inline std::map<Integer, int> factor_integer(Integer n)
{
    if (n == 0)
        throw std::invalid_argument("factor_integer(0)");
    n = abs(n);
    std::map<Integer, int> out;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            ++out[Integer(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    detail::factor_into(n, out);
    return out;
}

/// All positive divisors of |n|, ascending.
inline std::vector<Integer> divisors(const Integer& n)
{
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factor_integer(n)) {
        std::size_t base = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Factorization of a machine-sized integer, primes ascending.
inline std::vector<std::pair<std::uint64_t, int>> factor_small(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// QuadNum
// ---------------------------------------------------------------------------

inline bool is_squarefree(std::uint64_t n)
{
    for (const auto& [p, e] : factor_small(n))
        if (e > 1)
            return false;
    return n >= 1;
}

/// a + b*sqrt(l) with l squarefree, l >= 2. Radicands never mix: combining two
/// values with different l is a programming error and throws std::logic_error.
class QuadNum {
public:
    QuadNum(Rational a, Rational b, std::uint64_t l) : a_(std::move(a)), b_(std::move(b)), l_(l)
    {
        if (l < 2 || !is_squarefree(l))
            throw std::invalid_argument("QuadNum radicand must be squarefree and >= 2");
    }

    static QuadNum rational(Rational a, std::uint64_t l) { return QuadNum(std::move(a), 0, l); }
    static QuadNum root(std::uint64_t l) { return QuadNum(0, 1, l); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    std::uint64_t radicand() const noexcept { return l_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadNum conjugate() const { return QuadNum(a_, -b_, l_); }
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(l_); }
    Rational trace() const { return 2 * a_; }

    QuadNum& operator+=(const QuadNum& o)
    {
        check(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadNum& operator-=(const QuadNum& o)
    {
        check(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadNum& operator*=(const QuadNum& o)
    {
        check(o);
        Rational na = a_ * o.a_ + b_ * o.b_ * Rational(l_);
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    QuadNum& operator/=(const QuadNum& o)
    {
        check(o);
        Rational n = o.norm();
        if (n == 0)
            throw std::domain_error("QuadNum division by zero");
        *this *= o.conjugate();
        a_ /= n;
        b_ /= n;
        return *this;
    }
    QuadNum& operator+=(const Rational& r)
    {
        a_ += r;
        return *this;
    }
    QuadNum& operator*=(const Rational& r)
    {
        a_ *= r;
        b_ *= r;
        return *this;
    }

    friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
    friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
    friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
    friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }
    friend QuadNum operator+(QuadNum x, const Rational& r) { return x += r; }
    friend QuadNum operator-(QuadNum x, const Rational& r) { return x += Rational(-r); }
    friend QuadNum operator*(QuadNum x, const Rational& r) { return x *= r; }
    friend QuadNum operator*(const Rational& r, QuadNum x) { return x *= r; }
    friend QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a_, -x.b_, x.l_); }

    friend bool operator==(const QuadNum& x, const QuadNum& y)
    {
        x.check(y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadNum& q)
    {
        return os << q.a_ << (sgn(q.b_) < 0 ? " - " : " + ") << abs(q.b_) << "*sqrt(" << q.l_ << ")";
    }

private:
    void check(const QuadNum& o) const
    {
        if (o.l_ != l_)
            throw std::logic_error("QuadNum radicand mismatch");
    }

    Rational a_;
    Rational b_;
    std::uint64_t l_;
};

/// cos(pi*r/n) when it is rational (Niven: 0, +-1/2, +-1), otherwise empty.
/// Requires n >= 1, r >= 0 and gcd(r, n) = 1; (r, n) = (0, 1) means cos 0.
inline std::optional<Rational> rational_cos(std::uint64_t r, std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("rational_cos: n must be positive");
    if (std::gcd(r, n) != 1)
        throw std::invalid_argument("rational_cos: gcd(r, n) must be 1");
    const std::uint64_t k = r % (2 * n); // angle pi*k/n in [0, 2pi)
    switch (n) {
    case 1:
        return Rational(k == 0 ? 1 : -1);
    case 2:
        return Rational(0);
    case 3:
        return (k == 1 || k == 5) ? make_rational(1, 2) : make_rational(-1, 2);
    default:
        return std::nullopt;
    }
}

} // namespace pellpoly
