#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace mixdisc {

/// Arbitrary-precision rational scalar, the EXACT backend.
/// Arithmetic is error-free; values are kept canonical (gcd-reduced,
/// positive denominator) at all times.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rational(int n) : v_(n) {}   // NOLINT
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (optional sign, decimal digits). Returns false on
    /// malformed input instead of throwing; CLI schema errors route through this.
    static bool parse(const std::string& text, Rational& out);

    /// Throwing convenience wrapper around parse().
    static Rational from_string(const std::string& text) {
        Rational r;
        if (!parse(text, r)) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        return r;
    }

    /// Canonical "p/q" form, q >= 1, no decimals.
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double to_double() const { return v_.get_d(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// The two scalar backends the library is built over.
template <class S>
concept ScalarBackend = std::same_as<S, Rational> || std::same_as<S, double>;

/// FLOAT-mode comparison policy: one relative tolerance plus an absolute
/// floor. EXACT-mode code paths ignore it.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    /// |x| small enough, relative to a problem scale, to be treated as zero.
    bool negligible(double x, double scale) const {
        return std::fabs(x) <= std::max(abs, rel * std::fabs(scale));
    }
    bool close(double a, double b, double scale) const {
        return negligible(a - b, std::max(scale, std::max(std::fabs(a), std::fabs(b))));
    }
    bool close(double a, double b) const { return close(a, b, 1.0); }
};

template <ScalarBackend S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x, const Tolerance&, double /*scale*/) { return x.is_zero(); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string to_string(const Rational& x) { return x.str(); }
    static double abs_double(const Rational& x) { return std::fabs(x.to_double()); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x, const Tolerance& tol, double scale) { return tol.negligible(x, scale); }
    static double to_double(double x) { return x; }
    static std::string to_string(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static double abs_double(double x) { return std::fabs(x); }
};

}  // namespace mixdisc
