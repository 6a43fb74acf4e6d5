#pragma once

// Clifford algebra over the Gaussian rationals with e_j e_k + e_k e_j = -2 delta_jk,
// its Witt basis, the element beta and the spinor spaces S^(j).
//
// A blade is a bitmask: bit k-1 set means e_k is a factor, factors in increasing order.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/exactnum.hpp"

namespace ck {

using Blade = std::uint32_t;

inline int blade_grade(Blade a) { return std::popcount(a); }

// Sign of e_A e_B = sign * e_{A xor B}: one factor -1 per transposition and per e_i^2.
inline int blade_sign(Blade a, Blade b) {
    int swaps = 0;
    for (Blade bb = b; bb; bb &= bb - 1) {
        int i = std::countr_zero(bb);
        swaps += std::popcount(a >> (i + 1));
    }
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1 : 1;
}

// Sign picked up by e_A under the anti-automorphism with e_j -> -e_j.
inline int blade_dagger_sign(Blade a) {
    int k = blade_grade(a);
    return ((k * (k + 1) / 2) & 1) ? -1 : 1;
}

inline std::string blade_str(Blade a, int m) {
    if (a == 0) return "";
    std::string s = "e";
    if (m < 10) {
        for (int i = 0; i < m; ++i)
            if (a >> i & 1) s += char('1' + i);
        return s;
    }
    s += "{";
    bool first = true;
    for (int i = 0; i < m; ++i)
        if (a >> i & 1) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t column)
        : std::runtime_error("parse error at column " + std::to_string(column + 1) + ": " + what), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

namespace detail {

// One parsed summand: coefficient, blade and any remaining factor tokens
// (variables with optional exponent), each with its column.
struct ParsedTerm {
    GR coef{1};
    Blade blade = 0;
    std::vector<std::pair<std::string, std::size_t>> factors;
};

inline Blade parse_blade(const std::string& tok, std::size_t col, int m) {
    Blade b = 0;
    auto add = [&](int idx) {
        if (idx < 1 || idx > m) throw ParseError("blade index " + std::to_string(idx) + " outside 1.." + std::to_string(m), col);
        if (b >> (idx - 1) & 1) throw ParseError("repeated blade index", col);
        b |= Blade(1) << (idx - 1);
    };
    int last = 0;
    if (tok.size() >= 2 && tok[1] == '{') {
        if (tok.back() != '}') throw ParseError("unterminated blade", col);
        std::string body = tok.substr(2, tok.size() - 3);
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t c = body.find(',', pos);
            std::string num = body.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
            if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad blade index", col);
            int idx = std::stoi(num);
            if (idx <= last) throw ParseError("blade indices must increase", col);
            add(idx);
            last = idx;
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        return b;
    }
    for (std::size_t k = 1; k < tok.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(tok[k]))) throw ParseError("bad blade '" + tok + "'", col);
        int idx = tok[k] - '0';
        if (idx <= last) throw ParseError("blade indices must increase", col);
        add(idx);
        last = idx;
    }
    return b;
}

// Grammar: [sign] factor ('*' factor)* (('+'|'-') factor ('*' factor)*)*
// with factor = number | '(' gaussian ')' | 'i' | blade | identifier['^' digits].
inline std::vector<ParsedTerm> parse_terms(const std::string& s, int m) {
    std::vector<ParsedTerm> out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    skip();
    if (pos == s.size()) throw ParseError("empty input", pos);
    if (s.substr(pos) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (pos == s.size()) {
            if (first) throw ParseError("empty input", pos);
            break;
        }
        ParsedTerm t;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') t.coef = GR(-1);
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-'", pos);
        }
        first = false;
        bool have_factor = false;
        while (true) {
            skip();
            if (pos == s.size()) throw ParseError("expected a factor", pos);
            std::size_t start = pos;
            char c = s[pos];
            if (c == '(') {
                std::size_t close = s.find(')', pos);
                if (close == std::string::npos) throw ParseError("unbalanced parenthesis", pos);
                try {
                    t.coef *= GR::parse(s.substr(pos + 1, close - pos - 1));
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), pos);
                }
                pos = close + 1;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
                // a fraction "p/q" binds tighter than '*'
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    std::size_t d0 = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (d0 == pos) throw ParseError("missing denominator", d0);
                }
                try {
                    t.coef *= GR(Rational::parse(s.substr(start, pos - start)));
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), start);
                }
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                ++pos;
                if (c == 'e' && pos < s.size() && s[pos] == '{') {
                    std::size_t close = s.find('}', pos);
                    if (close == std::string::npos) throw ParseError("unterminated blade", pos);
                    pos = close + 1;
                } else {
                    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                }
                std::string tok = s.substr(start, pos - start);
                if (tok == "i") {
                    t.coef *= GR::i();
                } else if (tok[0] == 'e' && (tok.size() == 1 || tok[1] == '{' ||
                                             tok.find_first_not_of("0123456789", 1) == std::string::npos)) {
                    if (tok.size() == 1) throw ParseError("empty blade", start);
                    Blade b = parse_blade(tok, start, m);
                    // factors multiply in order
                    t.coef *= GR(blade_sign(t.blade, b));
                    t.blade ^= b;
                } else {
                    if (pos < s.size() && s[pos] == '^') {
                        ++pos;
                        std::size_t d0 = pos;
                        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                        if (d0 == pos) throw ParseError("missing exponent", d0);
                        tok = s.substr(start, pos - start);
                    }
                    t.factors.emplace_back(tok, start);
                }
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos);
            }
            have_factor = true;
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!have_factor) throw ParseError("expected a factor", pos);
        out.push_back(std::move(t));
    }
    return out;
}

// Renders "coef*rest" with the sign pulled out for real coefficients.
// Returns {negative, body}.
inline std::pair<bool, std::string> render_term(const GR& c, const std::string& rest) {
    if (c.is_real()) {
        Rational v = c.re();
        bool neg = v.sign() < 0;
        if (neg) v = -v;
        if (rest.empty()) return {neg, v.str()};
        if (v.is_one()) return {neg, rest};
        return {neg, v.str() + "*" + rest};
    }
    std::string cs = c.str();
    if (c.re().is_zero()) {
        // "(-3/2*i)" reads better as " - (3/2*i)"
        if (c.im().sign() < 0) {
            cs = (-c).str();
            return {true, rest.empty() ? cs : cs + "*" + rest};
        }
    }
    return {false, rest.empty() ? cs : cs + "*" + rest};
}

inline std::string join_terms(const std::vector<std::pair<bool, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::string s;
    for (const auto& [neg, body] : parts) {
        if (s.empty()) s = neg ? "-" + body : body;
        else s += (neg ? " - " : " + ") + body;
    }
    return s;
}

}  // namespace detail

class Multivector {
public:
    using Term = std::pair<Blade, GR>;

    Multivector() = default;
    explicit Multivector(int m) : m_(m) { check_dim(m); }
    Multivector(int m, const GR& scalar) : m_(m) {
        check_dim(m);
        if (!scalar.is_zero()) t_.emplace_back(0, scalar);
    }

    static Multivector blade(int m, Blade b, const GR& c = GR(1)) {
        Multivector r(m);
        if (m < 32 && (b >> m)) throw std::out_of_range("blade outside dimension");
        if (!c.is_zero()) r.t_.emplace_back(b, c);
        return r;
    }
    // e_k, 1 <= k <= m
    static Multivector e(int m, int k) {
        if (k < 1 || k > m) throw std::out_of_range("generator index out of range");
        return blade(m, Blade(1) << (k - 1));
    }

    // Terms in arbitrary order, duplicates summed.
    static Multivector from_terms(int m, std::vector<Term> terms) {
        Multivector r(m);
        r.t_ = std::move(terms);
        r.normalize();
        return r;
    }

    int dim() const { return m_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_scalar() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }
    GR scalar_part() const { return coeff(0); }
    GR coeff(Blade b) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), b, [](const Term& t, Blade v) { return t.first < v; });
        return it != t_.end() && it->first == b ? it->second : GR(0);
    }

    Multivector grade(int k) const {
        Multivector r(m_);
        for (const auto& t : t_)
            if (blade_grade(t.first) == k) r.t_.push_back(t);
        return r;
    }
    // Bitmask of grades present.
    std::uint64_t grades() const {
        std::uint64_t g = 0;
        for (const auto& t : t_) g |= std::uint64_t(1) << blade_grade(t.first);
        return g;
    }

    friend Multivector operator+(const Multivector& a, const Multivector& b) { return merge(a, b, false); }
    friend Multivector operator-(const Multivector& a, const Multivector& b) { return merge(a, b, true); }
    Multivector operator-() const {
        Multivector r = *this;
        for (auto& t : r.t_) t.second = -t.second;
        return r;
    }
    Multivector& operator+=(const Multivector& b) { return *this = *this + b; }
    Multivector& operator-=(const Multivector& b) { return *this = *this - b; }

    friend Multivector operator*(const GR& s, const Multivector& a) {
        if (s.is_zero()) return Multivector(a.m_);
        Multivector r = a;
        for (auto& t : r.t_) t.second = s * t.second;
        return r;
    }
    friend Multivector operator*(const Multivector& a, const GR& s) { return s * a; }

    friend Multivector operator*(const Multivector& a, const Multivector& b) {
        check_same(a, b);
        std::vector<Term> out;
        out.reserve(a.t_.size() * b.t_.size());
        for (const auto& [ba, ca] : a.t_)
            for (const auto& [bb, cb] : b.t_) {
                GR c = ca * cb;
                out.emplace_back(ba ^ bb, blade_sign(ba, bb) < 0 ? -c : c);
            }
        return from_terms(a.m_, std::move(out));
    }
    Multivector& operator*=(const Multivector& b) { return *this = *this * b; }

    friend bool operator==(const Multivector& a, const Multivector& b) { return a.m_ == b.m_ && a.t_ == b.t_; }
    friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }
    friend bool operator<(const Multivector& a, const Multivector& b) = delete;

    // Anti-automorphism with e_j -> -e_j and i -> -i.
    Multivector dagger() const {
        Multivector r = *this;
        for (auto& [b, c] : r.t_) c = blade_dagger_sign(b) < 0 ? -c.conj() : c.conj();
        return r;
    }
    // Same blade signs as dagger, coefficients left alone.
    Multivector tau() const {
        Multivector r = *this;
        for (auto& [b, c] : r.t_)
            if (blade_dagger_sign(b) < 0) c = -c;
        return r;
    }
    // Complex conjugation of coefficients only.
    Multivector complex_conj() const {
        Multivector r = *this;
        for (auto& t : r.t_) t.second = t.second.conj();
        return r;
    }

    std::string str() const {
        std::vector<std::pair<bool, std::string>> parts;
        for (const auto& [b, c] : t_) parts.push_back(detail::render_term(c, blade_str(b, m_)));
        return detail::join_terms(parts);
    }

    static Multivector parse(int m, const std::string& s) {
        std::vector<Term> terms;
        for (auto& t : detail::parse_terms(s, m)) {
            if (!t.factors.empty()) throw ParseError("unexpected symbol '" + t.factors[0].first + "'", t.factors[0].second);
            terms.emplace_back(t.blade, t.coef);
        }
        return from_terms(m, std::move(terms));
    }

private:
    int m_ = 0;
    std::vector<Term> t_;  // sorted by blade, no zero coefficients

    static void check_dim(int m) {
        if (m < 0 || m > 31) throw std::invalid_argument("Clifford dimension must be in 0..31");
    }
    static void check_same(const Multivector& a, const Multivector& b) {
        if (a.m_ != b.m_) throw std::invalid_argument("Clifford dimension mismatch");
    }

    void normalize() {
        std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::size_t w = 0;
        for (std::size_t r = 0; r < t_.size();) {
            Blade b = t_[r].first;
            GR c = std::move(t_[r].second);
            std::size_t k = r + 1;
            for (; k < t_.size() && t_[k].first == b; ++k) c += t_[k].second;
            if (!c.is_zero()) t_[w++] = {b, std::move(c)};
            r = k;
        }
        t_.resize(w);
    }

    static Multivector merge(const Multivector& a, const Multivector& b, bool subtract) {
        check_same(a, b);
        Multivector r(a.m_);
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
                r.t_.push_back(a.t_[i++]);
            } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
                r.t_.emplace_back(b.t_[j].first, subtract ? -b.t_[j].second : b.t_[j].second);
                ++j;
            } else {
                GR c = subtract ? a.t_[i].second - b.t_[j].second : a.t_[i].second + b.t_[j].second;
                if (!c.is_zero()) r.t_.emplace_back(a.t_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Multivector& x) { return os << x.str(); }

// Sum of coefficient products of grade-1 parts: <x,y> = sum x_k y_k.
inline GR vector_dot(const Multivector& x, const Multivector& y) {
    GR s(0);
    for (const auto& [b, c] : x.terms())
        if (blade_grade(b) == 1) s += c * y.coeff(b);
    return s;
}

// Outer product: keep only the blades whose factors are disjoint.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
    std::vector<Multivector::Term> out;
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms()) {
            if (ba & bb) continue;
            GR c = ca * cb;
            out.emplace_back(ba ^ bb, blade_sign(ba, bb) < 0 ? -c : c);
        }
    return Multivector::from_terms(a.dim(), std::move(out));
}

// f_j = (e_j - i e_{n+j}) / 2 in dimension 2n
inline Multivector witt(int n, int j) {
    if (j < 1 || j > n) throw std::out_of_range("Witt index out of range");
    GR half(Rational(1, 2));
    return half * Multivector::e(2 * n, j) + GR(Rational(0), Rational(-1, 2)) * Multivector::e(2 * n, n + j);
}

// f_j^dagger = -(e_j + i e_{n+j}) / 2
inline Multivector witt_dagger(int n, int j) {
    if (j < 1 || j > n) throw std::out_of_range("Witt index out of range");
    return GR(Rational(-1, 2)) * Multivector::e(2 * n, j) + GR(Rational(0), Rational(-1, 2)) * Multivector::e(2 * n, n + j);
}

// beta = sum_j f_j^dagger f_j
inline Multivector beta(int n) {
    if (n < 1) throw std::invalid_argument("beta needs n >= 1");
    Multivector b(2 * n);
    for (int j = 1; j <= n; ++j) b += witt_dagger(n, j) * witt(n, j);
    return b;
}

// I = f_1 f_1^dagger ... f_n f_n^dagger
inline Multivector spinor_vacuum(int n) {
    Multivector r(2 * n, GR(1));
    for (int k = 1; k <= n; ++k) r = r * witt(n, k) * witt_dagger(n, k);
    return r;
}

struct SpinorBasis {
    int n = 0;
    int j = 0;
    std::vector<Blade> subsets;  // bit a-1 set means f_a^dagger is a factor
    std::vector<Multivector> vectors;
};

// {f_A^dagger I : |A| = j}, subsets in increasing bitmask order, factors in
// increasing index order.
inline SpinorBasis spinor_basis(int n, int j) {
    if (n < 1 || j < 0 || j > n) throw std::out_of_range("spinor sector out of range");
    SpinorBasis sb;
    sb.n = n;
    sb.j = j;
    Multivector vac = spinor_vacuum(n);
    for (Blade a = 0; a < (Blade(1) << n); ++a) {
        if (blade_grade(a) != j) continue;
        Multivector v(2 * n, GR(1));
        for (int k = 1; k <= n; ++k)
            if (a >> (k - 1) & 1) v = v * witt_dagger(n, k);
        sb.subsets.push_back(a);
        sb.vectors.push_back(v * vac);
    }
    return sb;
}

// Polynomial in beta with rational coefficients (ascending), evaluated in the algebra.
inline Multivector beta_poly(int n, const std::vector<Rational>& coeffs) {
    Multivector b = beta(n);
    Multivector r(2 * n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * b + Multivector(2 * n, GR(*it));
    return r;
}

}  // namespace ck
