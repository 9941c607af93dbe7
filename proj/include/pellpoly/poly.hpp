#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over Q.
 *
 * Poly is the universal carrier of the library: Pell data D, u, v, the psi
 * polynomials, minimal polynomials and reconstructions all live here. The
 * integer-coefficient helpers in namespace zpoly back the primitive PRS gcd,
 * the subresultant resultant and the factorizer.
 */

#include "pellpoly/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pellpoly {

class Poly {
public:
    Poly() = default;

    /// coeffs[i] is the coefficient of t^i; trailing zeros are dropped.
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

    static Poly monomial(const Rational& c, std::size_t k)
    {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    static Poly variable() { return monomial(1, 1); }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    const Rational& lead() const
    {
        if (c_.empty())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    Poly& operator*=(const Rational& s)
    {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_)
            x *= s;
        return *this;
    }

    Poly& operator*=(const Poly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a)
    {
        for (auto& x : a.c_)
            x = -x;
        return a;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.c_.size() * b.c_.size() <= 16)
            return mul_rational(a, b);
        return mul_integer(a, b);
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    template <class Scalar>
    Scalar eval(const Scalar& x) const
    {
        Scalar acc = x * Rational(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    Rational eval(const Rational& x) const
    {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Rational(static_cast<unsigned long>(i));
        return Poly(std::move(d));
    }

    /// The antiderivative with zero constant term.
    Poly antiderivative() const
    {
        if (c_.empty())
            return {};
        std::vector<Rational> d(c_.size() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            d[i + 1] = c_[i] / Rational(static_cast<unsigned long>(i + 1));
        return Poly(std::move(d));
    }

    Poly monic() const
    {
        if (is_zero())
            return {};
        return *this * Rational(1 / lead());
    }

    /// Positive rational c such that *this / c has coprime integer coefficients,
    /// signed so that the primitive part has a positive leading coefficient.
    Rational content() const;

    /// *this / content(): integer coefficients, gcd 1, positive leading coefficient.
    Poly primitive_part() const
    {
        if (is_zero())
            return {};
        return *this * Rational(1 / content());
    }

private:
    static Poly mul_rational(const Poly& a, const Poly& b)
    {
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        Rational tmp;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
                r[i + j] += tmp;
            }
        }
        return Poly(std::move(r));
    }

    /// Scales both operands to integer vectors, convolves with mpz_addmul and
    /// divides the common denominator back out: one gcd per output coefficient
    /// instead of one per partial product.
    static Poly mul_integer(const Poly& a, const Poly& b)
    {
        auto scale = [](const std::vector<Rational>& c, Integer& den) {
            den = 1;
            for (const auto& x : c)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
            std::vector<Integer> z(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                mpz_divexact(z[i].get_mpz_t(), den.get_mpz_t(), c[i].get_den_mpz_t());
                z[i] *= c[i].get_num();
            }
            return z;
        };
        Integer da, db;
        std::vector<Integer> za = scale(a.c_, da), zb = scale(b.c_, db);
        std::vector<Integer> zr(za.size() + zb.size() - 1);
        for (std::size_t i = 0; i < za.size(); ++i) {
            if (za[i] == 0)
                continue;
            for (std::size_t j = 0; j < zb.size(); ++j)
                mpz_addmul(zr[i + j].get_mpz_t(), za[i].get_mpz_t(), zb[j].get_mpz_t());
        }
        const Integer den = da * db;
        std::vector<Rational> r(zr.size());
        for (std::size_t i = 0; i < zr.size(); ++i) {
            mpq_set_num(r[i].get_mpq_t(), zr[i].get_mpz_t());
            mpq_set_den(r[i].get_mpq_t(), den.get_mpz_t());
            r[i].canonicalize();
        }
        return Poly(std::move(r));
    }

    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Poly pow(const Poly& base, unsigned long e)
{
    Poly result = Poly::constant(1);
    Poly b = base;
    while (e > 0) {
        if (e & 1u)
            result *= b;
        e >>= 1u;
        if (e > 0)
            b = b * b;
    }
    return result;
}

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly(), a};
    std::vector<Rational> r = a.coefficients();
    const auto& bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    const Rational inv_lead = 1 / bc.back();
    std::vector<Rational> q(r.size() - db);
    Rational tmp;
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational f = r[k + db] * inv_lead;
        if (f != 0) {
            for (std::size_t j = 0; j <= db; ++j) {
                mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), bc[j].get_mpq_t());
                r[k + j] -= tmp;
            }
        }
        q[k] = std::move(f);
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly operator%(const Poly& a, const Poly& b)
{
    return divmod(a, b).second;
}

/// a / b when b divides a; throws std::domain_error otherwise.
inline Poly exact_div(const Poly& a, const Poly& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::domain_error("exact_div: nonzero remainder");
    return q;
}

inline bool divides(const Poly& d, const Poly& f)
{
    return divmod(f, d).second.is_zero();
}

/// Largest e with d^e | f (f nonzero, d nonconstant).
inline int multiplicity(const Poly& d, Poly f)
{
    if (f.is_zero() || d.is_constant())
        throw std::invalid_argument("multiplicity: need nonzero f and nonconstant d");
    int e = 0;
    for (;;) {
        auto [q, r] = divmod(f, d);
        if (!r.is_zero())
            return e;
        f = std::move(q);
        ++e;
    }
}

/// outer(inner(t)) by Horner's scheme.
inline Poly compose(const Poly& outer, const Poly& inner)
{
    Poly acc;
    const auto& c = outer.coefficients();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * inner + Poly::constant(c[i]);
    return acc;
}

/// Equality up to a nonzero rational scalar.
inline bool equal_up_to_scalar(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return a.is_zero() && b.is_zero();
    return a.monic() == b.monic();
}

/// Deterministic total order: degree first, then coefficient lists compared
/// lexicographically from the constant term up.
inline bool canonical_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i])
            return x[i] < y[i];
    return false;
}

// ---------------------------------------------------------------------------
// Integer-coefficient polynomials
// ---------------------------------------------------------------------------

/// Little-endian integer polynomial, no trailing zeros.
using ZPoly = std::vector<Integer>;

namespace zpoly {

inline void trim(ZPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline long degree(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

inline Integer content(const ZPoly& f)
{
    Integer g = 0;
    for (const auto& c : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive(ZPoly f)
{
    trim(f);
    if (f.empty())
        return f;
    Integer g = content(f);
    if (sgn(f.back()) < 0)
        g = -g;
    for (auto& c : f)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return f;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly prem(ZPoly a, const ZPoly& b)
{
    const long db = degree(b);
    if (db < 0)
        throw std::domain_error("prem by zero");
    long da = degree(a);
    if (da < db)
        return a;
    const Integer& lb = b.back();
    int steps = static_cast<int>(da - db + 1);
    while (da >= db && !a.empty()) {
        Integer la = a.back();
        for (auto& c : a)
            c *= lb;
        for (long j = 0; j <= db; ++j)
            mpz_submul(a[j + da - db].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
        trim(a);
        --steps;
        da = degree(a);
    }
    if (steps > 0) {
        Integer f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
        for (auto& c : a)
            c *= f;
    }
    return a;
}

/// Exact quotient a / b over Z, or empty optional when b does not divide a in Z[t].
inline std::optional<ZPoly> divide_exact(ZPoly a, const ZPoly& b)
{
    const long db = degree(b);
    if (db < 0)
        throw std::domain_error("division by zero polynomial");
    long da = degree(a);
    if (da < db)
        return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    ZPoly q(da - db + 1);
    const Integer& lb = b.back();
    while (da >= db) {
        if (!mpz_divisible_p(a.back().get_mpz_t(), lb.get_mpz_t()))
            return std::nullopt;
        Integer f;
        mpz_divexact(f.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
        for (long j = 0; j <= db; ++j)
            mpz_submul(a[j + da - db].get_mpz_t(), f.get_mpz_t(), b[j].get_mpz_t());
        q[da - db] = f;
        trim(a);
        if (a.empty())
            break;
        da = degree(a);
    }
    if (!a.empty())
        return std::nullopt;
    return q;
}

inline ZPoly derivative(const ZPoly& f)
{
    if (f.size() <= 1)
        return {};
    ZPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = f[i] * static_cast<unsigned long>(i);
    trim(d);
    return d;
}

/// Primitive integer polynomial proportional to f (positive leading coefficient).
inline ZPoly from_poly(const Poly& f)
{
    if (f.is_zero())
        return {};
    Integer l = 1;
    for (const auto& c : f.coefficients())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    z.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) {
        Integer n = c.get_num() * (l / c.get_den());
        z.push_back(std::move(n));
    }
    return primitive(std::move(z));
}

inline Poly to_poly(const ZPoly& f)
{
    std::vector<Rational> c;
    c.reserve(f.size());
    for (const auto& x : f)
        c.emplace_back(x);
    return Poly(std::move(c));
}

/// Resultant over Z by the subresultant PRS.
inline Integer resultant(ZPoly a, ZPoly b)
{
    trim(a);
    trim(b);
    if (a.empty() || b.empty())
        return 0;
    long da = degree(a), db = degree(b);
    auto ipow = [](const Integer& x, long e) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
        return r;
    };
    if (da == 0)
        return ipow(a[0], db);
    if (db == 0)
        return ipow(b[0], da);

    Integer ca = content(a), cb = content(b);
    for (auto& c : a)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ca.get_mpz_t());
    for (auto& c : b)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
    Integer t = ipow(ca, db) * ipow(cb, da);
    int s = 1;
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
        if ((da & 1) && (db & 1))
            s = -1;
    }
    Integer g = 1, h = 1;
    for (;;) {
        const long delta = da - db;
        if ((da & 1) && (db & 1))
            s = -s;
        ZPoly r = prem(a, b);
        a = std::move(b);
        Integer divisor = g * ipow(h, delta);
        for (auto& c : r)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
        b = std::move(r);
        g = a.back();
        if (delta > 0) {
            Integer num = ipow(g, delta);
            Integer den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.empty())
            return 0;
        da = degree(a);
        db = degree(b);
        if (db == 0)
            break;
    }
    Integer num = ipow(b.back(), da);
    Integer den = ipow(h, da - 1);
    Integer res;
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Integer(s) * t * res;
}

} // namespace zpoly

inline Rational Poly::content() const
{
    if (is_zero())
        throw std::domain_error("content of zero polynomial");
    Integer l = 1, g = 0;
    for (const auto& c : c_)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : c_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    Rational q = make_rational(g, l);
    return sgn(lead()) < 0 ? Rational(-q) : q;
}

// ---------------------------------------------------------------------------
// gcd, squarefree decomposition, resultant
// ---------------------------------------------------------------------------

/// Monic gcd over Q via the primitive PRS over Z.
inline Poly gcd(const Poly& f, const Poly& g)
{
    if (f.is_zero() && g.is_zero())
        throw std::invalid_argument("gcd(0, 0) is undefined");
    if (f.is_zero())
        return g.monic();
    if (g.is_zero())
        return f.monic();
    ZPoly a = zpoly::from_poly(f), b = zpoly::from_poly(g);
    if (a.size() < b.size())
        std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zpoly::primitive(zpoly::prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return zpoly::to_poly(a).monic();
}

/// content * prod(factor_i ^ multiplicity_i). Produced both by squarefree
/// decomposition (pairwise-coprime squarefree parts) and by full factorization
/// (monic irreducibles).
struct FactoredPoly {
    Rational content = 1;
    std::vector<std::pair<Poly, int>> factors;

    Poly expand() const
    {
        Poly r = Poly::constant(content);
        for (const auto& [f, e] : factors)
            r *= pow(f, static_cast<unsigned long>(e));
        return r;
    }

    /// Number of factors counted with multiplicity.
    int count_with_multiplicity() const
    {
        int n = 0;
        for (const auto& fe : factors)
            n += fe.second;
        return n;
    }
};

/// Yun's algorithm. Parts are monic, squarefree, pairwise coprime; content is
/// the leading coefficient of f.
inline FactoredPoly squarefree_decompose(const Poly& f)
{
    if (f.is_zero())
        throw std::invalid_argument("squarefree_decompose of zero polynomial");
    FactoredPoly out;
    out.content = f.lead();
    if (f.is_constant())
        return out;
    Poly m = f.monic();
    Poly d = m.derivative();
    Poly a0 = gcd(m, d);
    Poly b = exact_div(m, a0);
    Poly c = exact_div(d, a0);
    Poly e = c - b.derivative();
    for (int i = 1; !b.is_constant(); ++i) {
        Poly a = gcd(b, e);
        b = exact_div(b, a);
        c = exact_div(e, a);
        e = c - b.derivative();
        if (!a.is_constant())
            out.factors.emplace_back(a, i);
    }
    return out;
}

/// Product of the distinct monic irreducible factors of f (f nonconstant).
inline Poly squarefree_part(const Poly& f)
{
    if (f.is_zero())
        throw std::invalid_argument("squarefree_part of zero polynomial");
    if (f.is_constant())
        return Poly::constant(1);
    return exact_div(f, gcd(f, f.derivative())).monic();
}

/// Res(f, g) over Q; denominators are cleared and restored around the
/// subresultant PRS on Z[t].
inline Rational resultant(const Poly& f, const Poly& g)
{
    if (f.is_zero() || g.is_zero())
        return 0;
    // f = (cf) * F with F primitive integer, same for g.
    Rational cf = f.content(), cg = g.content();
    ZPoly F = zpoly::from_poly(f), G = zpoly::from_poly(g);
    Integer r = zpoly::resultant(F, G);
    return Rational(r) * rational_pow(cf, static_cast<unsigned long>(g.degree())) *
           rational_pow(cg, static_cast<unsigned long>(f.degree()));
}

/// Minimal polynomial (monic) of u(alpha) for alpha a root of the irreducible p.
///
/// R(x) = Res_t(p(t), x - u(t)) has degree deg p in x; it is sampled at
/// x = 0..deg p through univariate resultants and interpolated. Its monic
/// squarefree part is irreducible because R is a power of the minimal polynomial.
inline Poly min_poly_of_image(const Poly& p, const Poly& u)
{
    if (p.is_constant())
        throw std::invalid_argument("min_poly_of_image: p must be nonconstant");
    const long d = p.degree();
    std::vector<Rational> xs, ys;
    for (long i = 0; i <= d; ++i) {
        xs.emplace_back(i);
        ys.push_back(resultant(p, Poly::constant(Rational(i)) - u));
    }
    // Newton divided differences.
    std::vector<Rational> coef = ys;
    for (long j = 1; j <= d; ++j)
        for (long i = d; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    Poly r;
    for (long i = d; i >= 0; --i)
        r = r * Poly{-xs[i], 1} + Poly::constant(coef[i]);
    if (r.is_zero())
        throw std::logic_error("min_poly_of_image: vanishing resultant");
    return squarefree_part(r);
}

/// Monic minimal polynomial over Q of the quadratic number q.
/// For b = 0 the input is rational and the degree-1 polynomial t - a is returned.
inline Poly quad_min_poly(const QuadNum& q)
{
    if (q.is_rational())
        return Poly{-q.a(), 1};
    return Poly{q.norm(), -q.trace(), 1};
}

// ---------------------------------------------------------------------------
// Truncated Laurent square root
// ---------------------------------------------------------------------------

/// Truncated series sum_j coeffs[j] * t^(top_degree - j).
struct LaurentTail {
    long top_degree = 0;
    std::vector<Rational> coeffs;

    std::size_t precision() const noexcept { return coeffs.size(); }

    Rational at(long exponent) const
    {
        long j = top_degree - exponent;
        if (j < 0 || j >= static_cast<long>(coeffs.size()))
            return 0;
        return coeffs[static_cast<std::size_t>(j)];
    }

    /// Sum of the terms with non-negative exponent.
    Poly polynomial_part() const
    {
        if (top_degree < 0)
            return {};
        std::vector<Rational> c(static_cast<std::size_t>(top_degree) + 1);
        for (long e = 0; e <= top_degree; ++e)
            c[static_cast<std::size_t>(e)] = at(e);
        return Poly(std::move(c));
    }
};

class not_pellian_error : public std::domain_error {
public:
    enum class Kind { odd_degree, leading_coefficient, only_trivial_solutions };

    not_pellian_error(Kind kind, const std::string& what) : std::domain_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline void check_even_square_lead(const Poly& D)
{
    if (D.is_zero())
        throw std::invalid_argument("D must be nonzero");
    if (D.degree() % 2 != 0)
        throw not_pellian_error(not_pellian_error::Kind::odd_degree,
                                "D has odd degree; no nontrivial Pell solution exists");
    if (!rational_sqrt(D.lead()))
        throw not_pellian_error(not_pellian_error::Kind::leading_coefficient,
                                "leading coefficient of D is not a rational square");
}

/// Coefficients of s with s^2 = D, solved term by term from the top:
/// 2*s0*s_j = D_{2d-j} - sum_{0<i<j} s_i s_{j-i}.
inline LaurentTail sqrt_terms(const Poly& D, std::size_t precision)
{
    const long d = D.degree() / 2;
    LaurentTail s;
    s.top_degree = d;
    s.coeffs.reserve(precision);
    s.coeffs.push_back(*rational_sqrt(D.lead()));
    const Rational two_s0 = 2 * s.coeffs[0];
    for (std::size_t j = 1; j < precision; ++j) {
        long e = 2 * d - static_cast<long>(j);
        Rational acc = e >= 0 ? D.coeff(static_cast<std::size_t>(e)) : Rational(0);
        for (std::size_t i = 1; i < j; ++i)
            acc -= s.coeffs[i] * s.coeffs[j - i];
        s.coeffs.push_back(acc / two_s0);
    }
    return s;
}

/// s^2 agrees with D on every coefficient determined by the stored terms.
inline bool square_matches(const LaurentTail& s, const Poly& D)
{
    const std::size_t n = s.precision();
    const long top = 2 * s.top_degree;
    for (std::size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i <= j; ++i)
            acc += s.coeffs[i] * s.coeffs[j - i];
        long e = top - static_cast<long>(j);
        Rational want = e >= 0 ? D.coeff(static_cast<std::size_t>(e)) : Rational(0);
        if (acc != want)
            return false;
    }
    return true;
}

} // namespace detail

/// Square root of D as a truncated Laurent series in descending powers of t,
/// with `precision` stored terms. The result is square-checked; a failed check
/// is retried once at doubled precision, then reported as std::runtime_error.
inline LaurentTail laurent_sqrt(const Poly& D, std::size_t precision)
{
    if (precision == 0)
        throw std::invalid_argument("laurent_sqrt: precision must be positive");
    detail::check_even_square_lead(D);
    LaurentTail s = detail::sqrt_terms(D, precision);
    if (detail::square_matches(s, D))
        return s;
    s = detail::sqrt_terms(D, 2 * precision);
    if (detail::square_matches(s, D))
        return s;
    throw std::runtime_error("laurent_sqrt: square-back check failed at doubled precision");
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

class parse_error : public std::invalid_argument {
public:
    parse_error(std::size_t position, const std::string& message)
        : std::invalid_argument("at position " + std::to_string(position) + ": " + message),
          position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses sums of terms "c*t^k", "t^k", "c*t", "t", "c" with rational c, in any
/// order. Like terms are collected. Any single letter may serve as the variable
/// but only one letter per polynomial.
inline Poly parse_poly(std::string_view text)
{
    std::size_t i = 0;
    char var = 0;
    std::vector<Rational> coeffs;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            out.push_back(text[i++]);
        return i > start;
    };
    auto add = [&](std::size_t k, const Rational& c) {
        if (coeffs.size() <= k)
            coeffs.resize(k + 1);
        coeffs[k] += c;
    };

    skip();
    if (i == text.size())
        throw parse_error(i, "empty polynomial");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size())
            break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw parse_error(i, "expected '+' or '-'");
        }
        first = false;
        if (i == text.size())
            throw parse_error(i, "dangling sign");

        Rational c = 1;
        bool have_coeff = false;
        std::string num;
        if (digits(num)) {
            have_coeff = true;
            Integer n(num, 10), d = 1;
            skip();
            if (i < text.size() && text[i] == '/') {
                ++i;
                skip();
                std::string den;
                std::size_t at = i;
                if (!digits(den))
                    throw parse_error(at, "expected denominator");
                d = Integer(den, 10);
                if (d == 0)
                    throw parse_error(at, "zero denominator");
            }
            c = make_rational(n, d);
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
                if (i == text.size() || !std::isalpha(static_cast<unsigned char>(text[i])))
                    throw parse_error(i, "expected variable after '*'");
            }
        }
        std::size_t k = 0;
        if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
            if (var == 0)
                var = text[i];
            else if (var != text[i])
                throw parse_error(i, std::string("mixed variables '") + var + "' and '" + text[i] + "'");
            ++i;
            k = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                std::string e;
                std::size_t at = i;
                if (!digits(e))
                    throw parse_error(at, "expected exponent");
                if (e.size() > 6)
                    throw parse_error(at, "exponent too large");
                k = std::stoul(e);
            }
        } else if (!have_coeff) {
            throw parse_error(i, "expected coefficient or variable");
        }
        add(k, sign < 0 ? Rational(-c) : c);
    }
    return Poly(std::move(coeffs));
}

/// Descending powers, zero coefficients omitted, e.g. "t^4 + 1/2*t - 3".
inline std::string to_string(const Poly& f, char var = 't')
{
    if (f.is_zero())
        return "0";
    std::string out;
    const auto& c = f.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0)
            continue;
        Rational a = abs(c[k]);
        bool neg = sgn(c[k]) < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (k == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1)
            out += a.get_str() + "*";
        out += var;
        if (k > 1)
            out += "^" + std::to_string(k);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& f)
{
    return os << to_string(f);
}

} // namespace pellpoly
