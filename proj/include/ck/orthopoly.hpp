#pragma once

// Exact Jacobi and Gegenbauer polynomials and checks of their contiguous,
// derivative and special-parameter relations.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/exactnum.hpp"
#include "ck/report.hpp"

namespace ck {

// Univariate polynomial with rational coefficients in ascending powers.
// The empty coefficient list is the zero polynomial (degree -1).
class UPoly {
public:
    UPoly() = default;
    UPoly(Rational c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int j) const { return j >= 0 && j < int(c_.size()) ? c_[j] : Rational(0); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = a.coeff(int(j)) + b.coeff(int(j));
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const Rational& s, const UPoly& p) { return UPoly(s) * p; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    UPoly derivative() const {
        std::vector<Rational> r;
        for (std::size_t j = 1; j < c_.size(); ++j) r.push_back(Rational(long(j)) * c_[j]);
        return UPoly(std::move(r));
    }

    Rational operator()(const Rational& t) const {
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    // p(a*x + b)
    UPoly compose_affine(const Rational& a, const Rational& b) const {
        UPoly lin(std::vector<Rational>{b, a});
        UPoly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + UPoly(*it);
        return r;
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        for (int j = degree(); j >= 0; --j) {
            if (c_[j].is_zero()) continue;
            Rational v = c_[j];
            bool neg = v.sign() < 0;
            if (neg) v = -v;
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            bool unit = v.is_one() && j > 0;
            if (!unit) s += v.str();
            if (j > 0) s += (unit ? "" : "*") + var + (j > 1 ? "^" + std::to_string(j) : "");
        }
        return s;
    }

private:
    std::vector<Rational> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

struct OrthoPoly {
    enum class Family { Jacobi, Gegenbauer };
    Family family = Family::Jacobi;
    Rational a, b;  // Jacobi parameters
    Rational mu;    // Gegenbauer parameter
    int degree = -1;
    UPoly poly;
};

// P_k^{a,b}(x) = (1/k!) sum_j binom(k,j) (a+b+k+1)_j (a+j+1)_{k-j} ((x-1)/2)^j; zero for k < 0.
inline UPoly jacobi_poly(int k, const Rational& a, const Rational& b) {
    if (k < 0) return {};
    UPoly half_shift(std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});
    UPoly r, power(Rational(1));
    for (int j = 0; j <= k; ++j) {
        Rational c = binomial(k, j) * pochhammer(a + b + Rational(k + 1), j) *
                     pochhammer(a + Rational(j + 1), k - j);
        r = r + c * power;
        power = power * half_shift;
    }
    return factorial(k).inverse() * r;
}

// C_k^mu(t) = sum_j (-1)^j (mu)_{k-j} / (j! (k-2j)!) (2t)^{k-2j}; zero for k < 0.
inline UPoly gegenbauer_poly(int k, const Rational& mu) {
    if (k < 0) return {};
    std::vector<Rational> c(k + 1);
    for (int j = 0; 2 * j <= k; ++j) {
        Rational v = pochhammer(mu, k - j) / (factorial(j) * factorial(k - 2 * j)) * rpow(Rational(2), k - 2 * j);
        c[k - 2 * j] = (j % 2) ? -v : v;
    }
    return UPoly(std::move(c));
}

inline OrthoPoly jacobi(int k, const Rational& a, const Rational& b) {
    if (a <= Rational(-1) || b <= Rational(-1)) throw std::invalid_argument("jacobi: parameters must exceed -1");
    if (k < -1) throw std::invalid_argument("jacobi: degree must be at least -1");
    OrthoPoly p;
    p.family = OrthoPoly::Family::Jacobi;
    p.a = a;
    p.b = b;
    p.degree = k;
    p.poly = jacobi_poly(k, a, b);
    return p;
}

inline OrthoPoly gegenbauer(int k, const Rational& mu) {
    if (mu <= Rational(-1, 2)) throw std::invalid_argument("gegenbauer: mu must exceed -1/2");
    if (k < -1) throw std::invalid_argument("gegenbauer: degree must be at least -1");
    OrthoPoly p;
    p.family = OrthoPoly::Family::Gegenbauer;
    p.mu = mu;
    p.degree = k;
    p.poly = gegenbauer_poly(k, mu);
    return p;
}

namespace detail {

inline std::string tuple_str(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : ",") + std::string(k) + "=" + v;
    return s;
}

inline void check_zero(Report& r, const char* id, const char* anchor, std::string params, const UPoly& residual) {
    r.add(id, anchor, std::move(params), residual.is_zero(), residual.is_zero() ? "" : residual.str());
}

}  // namespace detail

// Contiguous relations, the expansion of P^{a+1,b} in P^{a,b}, and the
// derivative rule. Degrees run from -1 (formal) to k_max.
inline Report verify_jacobi_recurrences(int k_max, const std::vector<Rational>& params) {
    Report r;
    r.suite = "orthopoly";
    const char* anchor = "Lemma JacRec1";
    UPoly x = UPoly::x();
    UPoly one_minus_x = UPoly(Rational(1)) - x, one_plus_x = UPoly(Rational(1)) + x;
    for (const Rational& a : params)
        for (const Rational& b : params) {
            Rational one(1);
            for (int k = -1; k <= k_max; ++k) {
                std::string ps = detail::tuple_str({{"k", std::to_string(k)}, {"a", a.str()}, {"b", b.str()}});
                auto P = [](int kk, const Rational& aa, const Rational& bb) { return jacobi_poly(kk, aa, bb); };
                detail::check_zero(r, "jacobi1", anchor, ps,
                                   P(k + 1, a + one, b) - P(k + 1, a, b + one) - P(k, a + one, b + one));
                detail::check_zero(r, "jacobi2", anchor, ps,
                                   one_minus_x * P(k, a + one, b) + one_plus_x * P(k, a, b + one) -
                                       Rational(2) * P(k, a, b));
                Rational kk(k);
                detail::check_zero(r, "jacobi3", anchor, ps,
                                   (kk + a + b + Rational(2)) * P(k + 1, a, b + one) + (kk + a + one) * P(k, a, b + one) -
                                       (Rational(2) * kk + a + b + Rational(3)) * P(k + 1, a, b));
                if (k >= 0) {
                    UPoly sum;
                    for (int j = 0; j <= k; ++j) {
                        Rational c = (Rational(2 * j + 1) + a + b) * pochhammer(Rational(j + 1) + b, k - j) /
                                     pochhammer(Rational(j + 1) + a + b, k - j + 1);
                        sum = sum + c * P(j, a, b);
                    }
                    detail::check_zero(r, "jacobi4", anchor, ps, P(k, a + one, b) - sum);
                    detail::check_zero(r, "jacobi5", anchor, ps,
                                       P(k, a, b).derivative() -
                                           Rational(1, 2) * (kk + a + b + one) * P(k - 1, a + one, b + one));
                }
            }
        }
    return r;
}

// Relations at parameters (n-2, p-q) with x = 2s - 1, so 2s = x + 1 and the
// derivative is taken in x. q runs from -1 (formal) to q_max for the first
// two relations; the expansion relation needs q >= 0.
inline Report verify_jacobi_special(int q_max, const std::vector<int>& n_range, int p_max) {
    Report r;
    r.suite = "orthopoly";
    const char* anchor = "Lemma JacRec2";
    UPoly two_s = UPoly::x() + UPoly(Rational(1));
    for (int n : n_range)
        for (int p = 0; p <= p_max; ++p)
            for (int q = -1; q <= q_max && q < p; ++q) {
                std::string ps = detail::tuple_str(
                    {{"n", std::to_string(n)}, {"p", std::to_string(p)}, {"q", std::to_string(q)}});
                Rational a(n - 2), b(p - q);
                UPoly P = jacobi_poly(q + 1, a, b);
                UPoly dP = P.derivative();
                detail::check_zero(r, "jacobi6", anchor, ps,
                                   Rational(p - q) * P + two_s * dP -
                                       Rational(p + 1) * jacobi_poly(q + 1, Rational(n - 1), Rational(p - q - 1)));
                detail::check_zero(r, "jacobi7", anchor, ps,
                                   Rational(q + 1) * P - two_s * dP +
                                       Rational(p + 1) * jacobi_poly(q, Rational(n - 1), Rational(p - q)));
                if (q >= 0) {
                    UPoly sum;
                    for (int j = 0; j <= q; ++j) {
                        Rational kappa = Rational(n - 1 + p + q - 2 * j, n - 1) * binomial(n - 2 + p - j, p - j);
                        sum = sum + kappa * jacobi_poly(q - j, Rational(n - 2), Rational(p - q));
                    }
                    detail::check_zero(r, "jacobi8", anchor, ps,
                                       binomial(n - 1 + p, p) * jacobi_poly(q, Rational(n - 1), Rational(p - q)) - sum);
                }
            }
    return r;
}

// Three-term recurrence, parameter shift, the (1 - t^2) relation, the
// derivative rule and the Euler-type relation, for 0 <= k <= k_max.
inline Report verify_gegenbauer_relations(int k_max, const std::vector<Rational>& mus) {
    Report r;
    r.suite = "orthopoly";
    UPoly t = UPoly::x();
    UPoly one_minus_t2 = UPoly(Rational(1)) - t * t;
    for (const Rational& mu : mus) {
        Rational mu1 = mu + Rational(1);
        auto C = [](int k, const Rational& m) { return gegenbauer_poly(k, m); };
        for (int k = 0; k <= k_max; ++k) {
            std::string ps = detail::tuple_str({{"k", std::to_string(k)}, {"mu", mu.str()}});
            Rational kk(k);
            detail::check_zero(r, "GegenRec", "Gegenbauer recurrences", ps,
                               kk * C(k, mu) - Rational(2) * (kk + mu - Rational(1)) * t * C(k - 1, mu) +
                                   (kk + Rational(2) * mu - Rational(2)) * C(k - 2, mu));
            detail::check_zero(r, "Gegen1", "Gegenbauer recurrences", ps,
                               (kk + mu) * C(k, mu) - mu * (C(k, mu1) - C(k - 2, mu1)));
            detail::check_zero(r, "Gegen2", "Gegenbauer recurrences", ps,
                               Rational(4) * mu * (mu + kk + Rational(1)) * one_minus_t2 * C(k, mu1) -
                                   (kk + Rational(2) * mu) * (kk + Rational(2) * mu + Rational(1)) * C(k, mu) +
                                   Rational((k + 1) * (k + 2)) * C(k + 2, mu));
            detail::check_zero(r, "Gegen3", "Gegenbauer derivative", ps,
                               C(k, mu).derivative() - Rational(2) * mu * C(k - 1, mu1));
            detail::check_zero(r, "Gegen4", "Gegenbauer Euler relation", ps,
                               kk * C(k, mu) - t * C(k, mu).derivative() + Rational(2) * mu * C(k - 2, mu1));
        }
    }
    return r;
}

// C_k^mu = (2mu)_k / (mu+1/2)_k * P_k^{mu-1/2, mu-1/2}
inline Report verify_gegenbauer_jacobi_bridge(int k_max, const std::vector<Rational>& mus) {
    Report r;
    r.suite = "orthopoly";
    for (const Rational& mu : mus)
        for (int k = 0; k <= k_max; ++k) {
            Rational h = mu - Rational(1, 2);
            Rational scale = pochhammer(Rational(2) * mu, k) / pochhammer(mu + Rational(1, 2), k);
            detail::check_zero(r, "bridge", "Gegenbauer as Jacobi", detail::tuple_str({{"k", std::to_string(k)}, {"mu", mu.str()}}),
                               gegenbauer_poly(k, mu) - scale * jacobi_poly(k, h, h));
        }
    return r;
}

}  // namespace ck
