#pragma once

// Exact rational and Gaussian-rational scalars.
//
// Rational keeps values that fit in int64 inline and only falls back to a
// GMP mpq_class when a result overflows. Every value is in lowest terms with
// a positive denominator, whichever representation holds it.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ck {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::uint64_t uabs64(std::int64_t v) {
    return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

inline u128 uabs128(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

// Symmetric range so negation never overflows.
inline bool fits64(i128 v) {
    return v <= i128(INT64_MAX) && v >= -i128(INT64_MAX);
}

inline mpz_class mpz_from_i128(i128 v) {
    bool neg = v < 0;
    u128 u = uabs128(v);
    mpz_class hi(static_cast<unsigned long>(std::uint64_t(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(std::uint64_t(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace detail

class Rational {
public:
    Rational() = default;
    Rational(int v) : n_(v) {}
    Rational(long v) : n_(v) { if (v == INT64_MIN) promote_int(v); }
    Rational(long long v) : n_(v) { if (v == INT64_MIN) promote_int(v); }
    Rational(long long num, long long den) { assign_i128(num, den); }
    explicit Rational(const mpq_class& q) { assign_big(mpq_class(q)); }
    explicit Rational(const mpz_class& z) { assign_big(mpq_class(z)); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
        return q;  // already canonical
    }
    mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
    mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }

    // Only meaningful for small values; used by fast integer paths.
    std::int64_t small_num() const { return n_; }
    std::int64_t small_den() const { return d_; }

    Rational operator-() const {
        Rational r(*this);
        if (r.big_) *r.big_ = -*r.big_;
        else r.n_ = -r.n_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return add_small(a.n_, a.d_, b.n_, b.d_);
        Rational r;
        r.assign_big(a.to_mpq() + b.to_mpq());
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return add_small(a.n_, a.d_, -b.n_, b.d_);
        Rational r;
        r.assign_big(a.to_mpq() - b.to_mpq());
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return mul_small(a.n_, a.d_, b.n_, b.d_);
        Rational r;
        r.assign_big(a.to_mpq() * b.to_mpq());
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        if (!a.big_ && !b.big_) {
            std::int64_t bn = b.n_, bd = b.d_;
            if (bn < 0) { bn = -bn; bd = -bd; }
            return mul_small(a.n_, a.d_, bd, bn);
        }
        Rational r;
        r.assign_big(a.to_mpq() / b.to_mpq());
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: big values never fit in int64
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_)
            return detail::i128(a.n_) * b.d_ < detail::i128(b.n_) * a.d_;
        return a.to_mpq() < b.to_mpq();
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational inverse() const { return Rational(1) / *this; }

    std::string str() const {
        if (big_) return big_->get_str();
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    // Accepts "p", "p/q", "-p/q" and finite decimals such as "1.25".
    static Rational parse(std::string_view s) {
        std::string t;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
        if (t.empty()) throw std::invalid_argument("empty number");
        if (t[0] == '+') t.erase(0, 1);
        auto dot = t.find('.');
        if (dot != std::string::npos) {
            std::string digits = t.substr(0, dot) + t.substr(dot + 1);
            std::size_t places = t.size() - dot - 1;
            check_digits(digits);
            mpz_class num(digits, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
            return Rational(mpq_class(num, den));
        }
        auto slash = t.find('/');
        if (slash == std::string::npos) {
            check_digits(t);
            return Rational(mpz_class(t, 10));
        }
        std::string a = t.substr(0, slash), b = t.substr(slash + 1);
        check_digits(a);
        check_digits(b);
        mpz_class num(a, 10), den(b, 10);
        if (den == 0) throw std::domain_error("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

private:
    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;

    static void check_digits(const std::string& s) {
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed number '" + s + "'");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("malformed number '" + s + "'");
    }

    void promote_int(long long v) {
        assign_big(mpq_class(mpz_class(static_cast<long>(v))));
    }

    void assign_big(mpq_class q) {
        q.canonicalize();
        if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
            long n = mpz_get_si(q.get_num_mpz_t());
            long d = mpz_get_si(q.get_den_mpz_t());
            if (n != INT64_MIN) {
                n_ = n;
                d_ = d;
                big_.reset();
                return;
            }
        }
        big_ = std::make_unique<mpq_class>(std::move(q));
        n_ = 0;
        d_ = 1;
    }

    // num/den already reduced, den > 0.
    static Rational from_reduced(detail::i128 num, detail::i128 den) {
        Rational r;
        if (detail::fits64(num) && detail::fits64(den)) {
            r.n_ = std::int64_t(num);
            r.d_ = std::int64_t(den);
        } else {
            r.big_ = std::make_unique<mpq_class>(detail::mpz_from_i128(num), detail::mpz_from_i128(den));
        }
        return r;
    }

    void assign_i128(detail::i128 num, detail::i128 den) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        detail::u128 a = detail::uabs128(num), b = detail::uabs128(den);
        while (b) { detail::u128 t = a % b; a = b; b = t; }
        if (a > 1) { num /= detail::i128(a); den /= detail::i128(a); }
        if (num == 0) den = 1;
        *this = from_reduced(num, den);
    }

    static Rational add_small(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd) {
        using detail::i128;
        if (ad == 1 && bd == 1) return from_reduced(i128(an) + bn, 1);
        std::uint64_t g = std::gcd(std::uint64_t(ad), std::uint64_t(bd));
        i128 t = i128(an) * (bd / std::int64_t(g)) + i128(bn) * (ad / std::int64_t(g));
        if (t == 0) return Rational();
        std::uint64_t g2 = g;
        if (g > 1) {
            std::uint64_t r = std::uint64_t(detail::uabs128(t) % g);
            g2 = std::gcd(r, g);
        }
        i128 num = t / i128(g2);
        i128 den = i128(ad / std::int64_t(g)) * (bd / std::int64_t(g2));
        return from_reduced(num, den);
    }

    static Rational mul_small(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd) {
        using detail::i128;
        if (an == 0 || bn == 0) return Rational();
        std::int64_t g1 = std::int64_t(std::gcd(detail::uabs64(an), std::uint64_t(bd)));
        std::int64_t g2 = std::int64_t(std::gcd(detail::uabs64(bn), std::uint64_t(ad)));
        i128 num = i128(an / g1) * (bn / g2);
        i128 den = i128(ad / g2) * (bd / g1);
        return from_reduced(num, den);
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// a + b*i with rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int v) : re_(v) {}
    GaussianRational(long v) : re_(v) {}
    GaussianRational(long long v) : re_(v) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return GaussianRational(a.re_ + b.re_);
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return GaussianRational(a.re_ - b.re_);
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero()) {
            if (b.im_.is_zero()) return GaussianRational(a.re_ * b.re_);
            return {a.re_ * b.re_, a.re_ * b.im_};
        }
        if (b.im_.is_zero()) return {a.re_ * b.re_, a.im_ * b.re_};
        if (a.re_.is_zero()) {
            if (b.re_.is_zero()) return GaussianRational(-(a.im_ * b.im_));
            return {-(a.im_ * b.im_), a.im_ * b.re_};
        }
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("gaussian division by zero");
        if (b.im_.is_zero()) return {a.re_ / b.re_, a.im_ / b.re_};
        Rational n = b.norm2();
        GaussianRational t = a * b.conj();
        return {t.re_ / n, t.im_ / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // "3/2", "-1/2*i", "(1/2+3*i)". Parenthesized whenever both parts are nonzero.
    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string imag = im_.is_one() ? "i" : (-im_).is_one() ? "-i" : im_.str() + "*i";
        if (re_.is_zero()) return "(" + imag + ")";
        std::string s = "(" + re_.str();
        if (im_.sign() > 0) s += "+";
        return s + imag + ")";
    }

    // Accepts the output of str() as well as bare "a+b*i", "b*i", "i", "-i".
    static GaussianRational parse(std::string_view s) {
        std::string t;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
        if (t.empty()) throw std::invalid_argument("empty number");
        if (t.back() != 'i') return GaussianRational(Rational::parse(t));
        // split at the last sign that is not the leading one
        std::size_t cut = std::string::npos;
        for (std::size_t k = t.size(); k-- > 1;)
            if (t[k] == '+' || t[k] == '-') { cut = k; break; }
        std::string re_part = cut == std::string::npos ? "" : t.substr(0, cut);
        std::string im_part = cut == std::string::npos ? t : t.substr(cut);
        im_part.pop_back();  // drop 'i'
        if (!im_part.empty() && im_part.back() == '*') im_part.pop_back();
        Rational im;
        if (im_part.empty() || im_part == "+") im = Rational(1);
        else if (im_part == "-") im = Rational(-1);
        else im = Rational::parse(im_part);
        Rational re = re_part.empty() ? Rational(0) : Rational::parse(re_part);
        return {re, im};
    }

private:
    Rational re_;
    Rational im_;
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

using GR = GaussianRational;

// a(a+1)...(a+k-1); 1 for k = 0.
inline Rational pochhammer(const Rational& a, int k) {
    if (k < 0) throw std::invalid_argument("pochhammer: negative length");
    Rational r(1);
    Rational f = a;
    for (int j = 0; j < k; ++j) {
        r *= f;
        f += Rational(1);
    }
    return r;
}

inline Rational factorial(int k) { return pochhammer(Rational(1), k); }

// Binomial coefficient for integer n, k; zero outside 0 <= k <= n.
inline Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int j = 1; j <= k; ++j) r = r * Rational(n - k + j) / Rational(j);
    return r;
}

inline Rational rpow(const Rational& a, int k) {
    Rational r(1);
    for (int j = 0; j < k; ++j) r *= a;
    return r;
}

}  // namespace ck
