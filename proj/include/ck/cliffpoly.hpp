#pragma once

// Polynomials in one or two vector variables with Clifford coefficients,
// the first-order operators acting on them, and the Fischer and sphere pairings.
//
// Two coordinate charts share one data structure:
//   Real    variables x_1..x_m (slot 0) and y_1..y_m (slot 1);
//   Complex for m = 2n, variables z_j, zb_j (slot 0) and u_j, ub_j (slot 1),
//           with z_j = x_j + i x_{n+j}.
// Every operator is written through the chart's linear combinations of
// partial derivatives and coordinates, so both charts give the same results
// up to conversion.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ck/clifford.hpp"
#include "ck/report.hpp"

namespace ck {

enum class Chart { Real, Complex };
enum class Side { Left, Right };

// Monomial: 4-bit exponents for up to 12 variables, variable v at bits
// 44-4v..47-4v, total degree in bits 48..63. Integer order is graded lex.
using Mono = std::uint64_t;

namespace mono {

constexpr int kMaxVars = 12;
constexpr int kMaxExp = 15;
constexpr Mono kExpMask = (Mono(1) << 48) - 1;

inline int shift(int v) { return 44 - 4 * v; }
inline int exp(Mono a, int v) { return int((a >> shift(v)) & 15); }
inline int degree(Mono a) { return int(a >> 48); }
inline Mono var(int v, int e = 1) { return (Mono(e) << shift(v)) | (Mono(e) << 48); }

inline Mono mul(Mono a, Mono b) {
    Mono ea = a & kExpMask, eb = b & kExpMask;
    Mono s = ea + eb;
    // a carry out of any nibble shows up as a flipped low bit of the next one
    Mono carries = (s ^ ea ^ eb) & Mono(0x1111111111110);
    if (carries || (s >> 48)) throw std::overflow_error("monomial exponent exceeds 15");
    return s | ((a >> 48) + (b >> 48)) << 48;
}

// Exponent of v reduced by one; requires exp(a, v) > 0.
inline Mono lower(Mono a, int v) { return a - var(v); }

inline Mono from_exps(const std::vector<int>& e) {
    Mono r = 0;
    for (int v = 0; v < int(e.size()); ++v)
        if (e[v]) {
            if (e[v] > kMaxExp || e[v] < 0) throw std::overflow_error("monomial exponent out of range");
            r += var(v, e[v]);
        }
    return r;
}

inline std::vector<int> exps(Mono a, int nvars) {
    std::vector<int> e(nvars);
    for (int v = 0; v < nvars; ++v) e[v] = exp(a, v);
    return e;
}

}  // namespace mono

struct Roster {
    int m = 0;
    int slots = 1;
    Chart chart = Chart::Real;

    int nvars() const { return m * slots; }
    int n() const { return m / 2; }
    friend bool operator==(const Roster&, const Roster&) = default;

    std::string var_name(int v) const {
        int slot = v / m, k = v % m;
        if (chart == Chart::Real) return std::string(slot ? "y" : "x") + std::to_string(k + 1);
        bool bar = k >= n();
        int j = bar ? k - n() : k;
        return std::string(slot ? "u" : "z") + (bar ? "b" : "") + std::to_string(j + 1);
    }
    int var_index(const std::string& name) const {
        for (int v = 0; v < nvars(); ++v)
            if (var_name(v) == name) return v;
        return -1;
    }
};

struct PTerm {
    Mono mono;
    Blade blade;
    GR c;
};

// Storage order: monomials descending (graded lex), then blades ascending.
inline bool term_before(Mono ma, Blade ba, Mono mb, Blade bb) { return ma > mb || (ma == mb && ba < bb); }

// Linear combination of variables (or of partial derivatives).
using LinForm = std::vector<std::pair<int, GR>>;

class CliffPoly {
public:
    CliffPoly() = default;
    explicit CliffPoly(Roster r) : r_(r) { check_roster(r); }
    CliffPoly(int m, int slots = 1, Chart chart = Chart::Real) : CliffPoly(Roster{m, slots, chart}) {}

    static CliffPoly constant(Roster r, const Multivector& x) {
        CliffPoly p(r);
        if (x.dim() != r.m) throw std::invalid_argument("coefficient dimension mismatch");
        for (const auto& [b, c] : x.terms()) p.t_.push_back({0, b, c});
        return p;
    }
    static CliffPoly constant(Roster r, const GR& c) { return constant(r, Multivector(r.m, c)); }
    static CliffPoly monomial(Roster r, Mono mo, Blade b = 0, const GR& c = GR(1)) {
        CliffPoly p(r);
        if (!c.is_zero()) p.t_.push_back({mo, b, c});
        return p;
    }
    static CliffPoly variable(Roster r, int v) { return monomial(r, mono::var(v)); }
    static CliffPoly linear(Roster r, const LinForm& l) {
        std::vector<PTerm> t;
        for (const auto& [v, c] : l) t.push_back({mono::var(v), 0, c});
        return from_terms(r, std::move(t));
    }
    // Terms in any order, duplicates summed, zeros dropped.
    static CliffPoly from_terms(Roster r, std::vector<PTerm> t) {
        CliffPoly p(r);
        p.t_ = std::move(t);
        p.normalize();
        return p;
    }

    const Roster& roster() const { return r_; }
    int dim() const { return r_.m; }
    const std::vector<PTerm>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    friend CliffPoly operator+(const CliffPoly& a, const CliffPoly& b) { return merge(a, b, false); }
    friend CliffPoly operator-(const CliffPoly& a, const CliffPoly& b) { return merge(a, b, true); }
    CliffPoly operator-() const {
        CliffPoly p = *this;
        for (auto& t : p.t_) t.c = -t.c;
        return p;
    }
    CliffPoly& operator+=(const CliffPoly& b) { return *this = *this + b; }
    CliffPoly& operator-=(const CliffPoly& b) { return *this = *this - b; }

    friend CliffPoly operator*(const GR& s, const CliffPoly& p) {
        if (s.is_zero()) return CliffPoly(p.r_);
        CliffPoly r = p;
        for (auto& t : r.t_) t.c = s * t.c;
        return r;
    }
    friend CliffPoly operator*(const CliffPoly& p, const GR& s) { return s * p; }

    // Left multiplication of every coefficient by a constant multivector.
    friend CliffPoly operator*(const Multivector& w, const CliffPoly& p) {
        p.check_coeff(w);
        std::vector<PTerm> out;
        out.reserve(w.terms().size() * p.t_.size());
        for (const auto& [bw, cw] : w.terms())
            for (const auto& t : p.t_) {
                GR c = cw * t.c;
                out.push_back({t.mono, bw ^ t.blade, blade_sign(bw, t.blade) < 0 ? -c : c});
            }
        return from_terms(p.r_, std::move(out));
    }
    // Right multiplication of every coefficient by a constant multivector.
    friend CliffPoly operator*(const CliffPoly& p, const Multivector& w) {
        p.check_coeff(w);
        std::vector<PTerm> out;
        out.reserve(w.terms().size() * p.t_.size());
        for (const auto& t : p.t_)
            for (const auto& [bw, cw] : w.terms()) {
                GR c = t.c * cw;
                out.push_back({t.mono, t.blade ^ bw, blade_sign(t.blade, bw) < 0 ? -c : c});
            }
        return from_terms(p.r_, std::move(out));
    }

    friend CliffPoly operator*(const CliffPoly& a, const CliffPoly& b) {
        check_same(a, b);
        std::vector<PTerm> out;
        out.reserve(a.t_.size() * b.t_.size());
        for (const auto& x : a.t_)
            for (const auto& y : b.t_) {
                GR c = x.c * y.c;
                out.push_back({mono::mul(x.mono, y.mono), x.blade ^ y.blade, blade_sign(x.blade, y.blade) < 0 ? -c : c});
            }
        return from_terms(a.r_, std::move(out));
    }

    friend bool operator==(const CliffPoly& a, const CliffPoly& b) {
        if (!(a.r_ == b.r_) || a.t_.size() != b.t_.size()) return false;
        for (std::size_t k = 0; k < a.t_.size(); ++k)
            if (a.t_[k].mono != b.t_[k].mono || a.t_[k].blade != b.t_[k].blade || a.t_[k].c != b.t_[k].c) return false;
        return true;
    }
    friend bool operator!=(const CliffPoly& a, const CliffPoly& b) { return !(a == b); }

    // Coefficient multivector of one monomial.
    Multivector coeff(Mono mo) const {
        std::vector<Multivector::Term> t;
        for (const auto& x : t_)
            if (x.mono == mo) t.emplace_back(x.blade, x.c);
        return Multivector::from_terms(r_.m, std::move(t));
    }
    std::vector<Mono> monomials() const {
        std::vector<Mono> ms;
        for (const auto& x : t_)
            if (ms.empty() || ms.back() != x.mono) ms.push_back(x.mono);
        return ms;
    }
    // Bitmask of grades present.
    std::uint64_t grades() const {
        std::uint64_t g = 0;
        for (const auto& x : t_) g |= std::uint64_t(1) << blade_grade(x.blade);
        return g;
    }
    // Total degree in the variables of one slot, per term.
    int slot_degree(Mono mo, int slot) const {
        int d = 0;
        for (int k = 0; k < r_.m; ++k) d += mono::exp(mo, slot * r_.m + k);
        return d;
    }
    // Degree in z (or u) and in zb (or ub) of one slot under the complex split
    // of its variables; in the real chart this is only meaningful via operators.
    std::pair<int, int> slot_bidegree(Mono mo, int slot) const {
        int a = 0, b = 0;
        for (int k = 0; k < r_.m; ++k) (k < r_.n() ? a : b) += mono::exp(mo, slot * r_.m + k);
        return {a, b};
    }

    // Coefficientwise map on (blade, coefficient) with optional monomial map.
    template <class F>
    CliffPoly map_terms(F&& f) const {
        std::vector<PTerm> out;
        out.reserve(t_.size());
        for (const auto& t : t_) out.push_back(f(t));
        return from_terms(r_, std::move(out));
    }

    CliffPoly with_roster(Roster r) const {
        if (r.nvars() < max_var() + 1 || r.m != r_.m) throw std::invalid_argument("roster cannot hold the polynomial");
        CliffPoly p = *this;
        p.r_ = r;
        return p;
    }

    std::string str() const {
        std::vector<std::pair<bool, std::string>> parts;
        for (const auto& t : t_) {
            std::string rest = blade_str(t.blade, r_.m);
            for (int v = 0; v < r_.nvars(); ++v) {
                int e = mono::exp(t.mono, v);
                if (!e) continue;
                if (!rest.empty()) rest += "*";
                rest += r_.var_name(v);
                if (e > 1) rest += "^" + std::to_string(e);
            }
            parts.push_back(detail::render_term(t.c, rest));
        }
        return detail::join_terms(parts);
    }

    static CliffPoly parse(Roster r, const std::string& s) {
        std::vector<PTerm> out;
        for (auto& pt : detail::parse_terms(s, r.m)) {
            Mono mo = 0;
            for (const auto& [tok, col] : pt.factors) {
                std::string name = tok;
                int e = 1;
                auto caret = tok.find('^');
                if (caret != std::string::npos) {
                    name = tok.substr(0, caret);
                    e = std::stoi(tok.substr(caret + 1));
                }
                int v = r.var_index(name);
                if (v < 0) throw ParseError("unknown variable '" + name + "'", col);
                try {
                    mo = mono::mul(mo, mono::var(v, std::min(e, mono::kMaxExp + 1)));
                } catch (const std::overflow_error&) {
                    throw ParseError("exponent too large", col);
                }
            }
            out.push_back({mo, pt.blade, pt.coef});
        }
        return from_terms(r, std::move(out));
    }

private:
    Roster r_;
    std::vector<PTerm> t_;

    int max_var() const {
        int mv = -1;
        for (const auto& t : t_)
            for (int v = 0; v < mono::kMaxVars; ++v)
                if (mono::exp(t.mono, v)) mv = std::max(mv, v);
        return mv;
    }

    static void check_roster(const Roster& r) {
        if (r.m < 1 || r.slots < 1 || r.slots > 2) throw std::invalid_argument("bad roster");
        if (r.nvars() > mono::kMaxVars) throw std::invalid_argument("too many variables for the monomial encoding");
        if (r.chart == Chart::Complex && r.m % 2) throw std::invalid_argument("complex chart needs even dimension");
    }
    static void check_same(const CliffPoly& a, const CliffPoly& b) {
        if (!(a.r_ == b.r_)) throw std::invalid_argument("polynomial roster mismatch");
    }
    void check_coeff(const Multivector& w) const {
        if (w.dim() != r_.m) throw std::invalid_argument("coefficient dimension mismatch");
    }

    void normalize() {
        std::sort(t_.begin(), t_.end(),
                  [](const PTerm& a, const PTerm& b) { return term_before(a.mono, a.blade, b.mono, b.blade); });
        std::size_t w = 0;
        for (std::size_t r = 0; r < t_.size();) {
            Mono mo = t_[r].mono;
            Blade b = t_[r].blade;
            GR c = std::move(t_[r].c);
            std::size_t k = r + 1;
            for (; k < t_.size() && t_[k].mono == mo && t_[k].blade == b; ++k) c += t_[k].c;
            if (!c.is_zero()) t_[w++] = {mo, b, std::move(c)};
            r = k;
        }
        t_.resize(w);
    }

    static CliffPoly merge(const CliffPoly& a, const CliffPoly& b, bool subtract) {
        check_same(a, b);
        CliffPoly r(a.r_);
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            bool take_a = j == b.t_.size() ||
                          (i < a.t_.size() && term_before(a.t_[i].mono, a.t_[i].blade, b.t_[j].mono, b.t_[j].blade));
            bool take_b = i == a.t_.size() ||
                          (j < b.t_.size() && term_before(b.t_[j].mono, b.t_[j].blade, a.t_[i].mono, a.t_[i].blade));
            if (take_a) {
                r.t_.push_back(a.t_[i++]);
            } else if (take_b) {
                r.t_.push_back(b.t_[j]);
                if (subtract) r.t_.back().c = -r.t_.back().c;
                ++j;
            } else {
                GR c = subtract ? a.t_[i].c - b.t_[j].c : a.t_[i].c + b.t_[j].c;
                if (!c.is_zero()) r.t_.push_back({a.t_[i].mono, a.t_[i].blade, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const CliffPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Chart data: each real or complex coordinate and each partial derivative as a
// linear combination of the chart's own variables / partials. Indices k are
// 0-based within a slot; j runs over 0..n-1.

inline LinForm real_deriv(const Roster& r, int slot, int k) {
    int base = slot * r.m;
    if (r.chart == Chart::Real) return {{base + k, GR(1)}};
    int n = r.n();
    if (k < n) return {{base + k, GR(1)}, {base + n + k, GR(1)}};
    int j = k - n;
    return {{base + j, GR::i()}, {base + n + j, -GR::i()}};
}

inline LinForm real_coord(const Roster& r, int slot, int k) {
    int base = slot * r.m;
    if (r.chart == Chart::Real) return {{base + k, GR(1)}};
    int n = r.n();
    GR half(Rational(1, 2)), ihalf(Rational(0), Rational(1, 2));
    if (k < n) return {{base + k, half}, {base + n + k, half}};
    int j = k - n;
    return {{base + j, -ihalf}, {base + n + j, ihalf}};
}

inline void require_even(const Roster& r) {
    if (r.m % 2) throw std::invalid_argument("Hermitian operators need even dimension");
}

// d/dz_j = (d_j - i d_{n+j}) / 2
inline LinForm z_deriv(const Roster& r, int slot, int j) {
    require_even(r);
    int base = slot * r.m, n = r.n();
    if (r.chart == Chart::Complex) return {{base + j, GR(1)}};
    return {{base + j, GR(Rational(1, 2))}, {base + n + j, GR(Rational(0), Rational(-1, 2))}};
}

// d/dzb_j = (d_j + i d_{n+j}) / 2
inline LinForm zbar_deriv(const Roster& r, int slot, int j) {
    require_even(r);
    int base = slot * r.m, n = r.n();
    if (r.chart == Chart::Complex) return {{base + n + j, GR(1)}};
    return {{base + j, GR(Rational(1, 2))}, {base + n + j, GR(Rational(0), Rational(1, 2))}};
}

inline LinForm z_coord(const Roster& r, int slot, int j) {
    require_even(r);
    int base = slot * r.m, n = r.n();
    if (r.chart == Chart::Complex) return {{base + j, GR(1)}};
    return {{base + j, GR(1)}, {base + n + j, GR::i()}};
}

inline LinForm zbar_coord(const Roster& r, int slot, int j) {
    require_even(r);
    int base = slot * r.m, n = r.n();
    if (r.chart == Chart::Complex) return {{base + n + j, GR(1)}};
    return {{base + j, GR(1)}, {base + n + j, -GR::i()}};
}

// ---------------------------------------------------------------------------
// Generic first-order building blocks.

namespace detail {

inline void push_deriv(std::vector<PTerm>& out, const PTerm& t, int v, const GR& scale) {
    int e = mono::exp(t.mono, v);
    if (!e) return;
    out.push_back({mono::lower(t.mono, v), t.blade, scale * GR(e) * t.c});
}

}  // namespace detail

inline CliffPoly partial(const CliffPoly& p, int v) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms()) detail::push_deriv(out, t, v, GR(1));
    return CliffPoly::from_terms(p.roster(), std::move(out));
}

inline CliffPoly deriv(const CliffPoly& p, const LinForm& l) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms())
        for (const auto& [v, c] : l) detail::push_deriv(out, t, v, c);
    return CliffPoly::from_terms(p.roster(), std::move(out));
}

inline CliffPoly mul_linear(const CliffPoly& p, const LinForm& l) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms())
        for (const auto& [v, c] : l) out.push_back({mono::mul(t.mono, mono::var(v)), t.blade, c * t.c});
    return CliffPoly::from_terms(p.roster(), std::move(out));
}

// One summand W * D with W a constant multivector and D a linear form.
struct WeightedForm {
    Multivector w;
    LinForm form;
};

namespace detail {

inline void push_weighted(std::vector<PTerm>& out, const Multivector& w, Side side, Mono mo, Blade b, const GR& c) {
    for (const auto& [bw, cw] : w.terms()) {
        if (side == Side::Left) {
            GR v = cw * c;
            out.push_back({mo, bw ^ b, blade_sign(bw, b) < 0 ? -v : v});
        } else {
            GR v = c * cw;
            out.push_back({mo, b ^ bw, blade_sign(b, bw) < 0 ? -v : v});
        }
    }
}

}  // namespace detail

// sum_k W_k (D_k P) on the left, or sum_k (D_k P) W_k on the right.
inline CliffPoly first_order(const CliffPoly& p, const std::vector<WeightedForm>& ops, Side side) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms())
        for (const auto& op : ops)
            for (const auto& [v, c] : op.form) {
                int e = mono::exp(t.mono, v);
                if (!e) continue;
                detail::push_weighted(out, op.w, side, mono::lower(t.mono, v), t.blade, c * GR(e) * t.c);
            }
    return CliffPoly::from_terms(p.roster(), std::move(out));
}

// sum_k W_k L_k P, i.e. multiplication by a vector variable on the given side.
inline CliffPoly multiply_vector(const CliffPoly& p, const std::vector<WeightedForm>& ops, Side side) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms())
        for (const auto& op : ops)
            for (const auto& [v, c] : op.form)
                detail::push_weighted(out, op.w, side, mono::mul(t.mono, mono::var(v)), t.blade, c * t.c);
    return CliffPoly::from_terms(p.roster(), std::move(out));
}

// ---------------------------------------------------------------------------
// The operators.

inline std::vector<WeightedForm> dirac_forms(const Roster& r, int slot) {
    std::vector<WeightedForm> ops;
    for (int k = 0; k < r.m; ++k) ops.push_back({Multivector::e(r.m, k + 1), real_deriv(r, slot, k)});
    return ops;
}
inline std::vector<WeightedForm> dz_forms(const Roster& r, int slot) {
    std::vector<WeightedForm> ops;
    for (int j = 0; j < r.n(); ++j) ops.push_back({witt_dagger(r.n(), j + 1), z_deriv(r, slot, j)});
    return ops;
}
inline std::vector<WeightedForm> dzdag_forms(const Roster& r, int slot) {
    std::vector<WeightedForm> ops;
    for (int j = 0; j < r.n(); ++j) ops.push_back({witt(r.n(), j + 1), zbar_deriv(r, slot, j)});
    return ops;
}

// Dirac operator sum_k e_k d_{x_k}
inline CliffPoly dirac(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    return first_order(p, dirac_forms(p.roster(), slot), side);
}
// sum_j f_j^dagger d_{z_j}
inline CliffPoly dirac_z(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    require_even(p.roster());
    return first_order(p, dz_forms(p.roster(), slot), side);
}
// sum_j f_j d_{zb_j}
inline CliffPoly dirac_zdag(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    require_even(p.roster());
    return first_order(p, dzdag_forms(p.roster(), slot), side);
}

// x = sum e_k x_k
inline CliffPoly vec_x(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    const Roster& r = p.roster();
    std::vector<WeightedForm> ops;
    for (int k = 0; k < r.m; ++k) ops.push_back({Multivector::e(r.m, k + 1), real_coord(r, slot, k)});
    return multiply_vector(p, ops, side);
}
// z = sum f_j z_j
inline CliffPoly vec_z(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    const Roster& r = p.roster();
    require_even(r);
    std::vector<WeightedForm> ops;
    for (int j = 0; j < r.n(); ++j) ops.push_back({witt(r.n(), j + 1), z_coord(r, slot, j)});
    return multiply_vector(p, ops, side);
}
// z^dagger = sum f_j^dagger zb_j
inline CliffPoly vec_zdag(const CliffPoly& p, int slot = 0, Side side = Side::Left) {
    const Roster& r = p.roster();
    require_even(r);
    std::vector<WeightedForm> ops;
    for (int j = 0; j < r.n(); ++j) ops.push_back({witt_dagger(r.n(), j + 1), zbar_coord(r, slot, j)});
    return multiply_vector(p, ops, side);
}

// sum_k L_k D_k P for pairs of coordinate and derivative forms.
inline CliffPoly coord_times_deriv(const CliffPoly& p, const std::vector<std::pair<LinForm, LinForm>>& pairs) {
    CliffPoly acc(p.roster());
    for (const auto& [coord, d] : pairs) acc += mul_linear(deriv(p, d), coord);
    return acc;
}

inline CliffPoly euler(const CliffPoly& p, int slot = 0) {
    const Roster& r = p.roster();
    std::vector<std::pair<LinForm, LinForm>> pairs;
    for (int k = 0; k < r.m; ++k) pairs.emplace_back(real_coord(r, slot, k), real_deriv(r, slot, k));
    return coord_times_deriv(p, pairs);
}
inline CliffPoly euler_z(const CliffPoly& p, int slot = 0) {
    const Roster& r = p.roster();
    require_even(r);
    std::vector<std::pair<LinForm, LinForm>> pairs;
    for (int j = 0; j < r.n(); ++j) pairs.emplace_back(z_coord(r, slot, j), z_deriv(r, slot, j));
    return coord_times_deriv(p, pairs);
}
inline CliffPoly euler_zbar(const CliffPoly& p, int slot = 0) {
    const Roster& r = p.roster();
    require_even(r);
    std::vector<std::pair<LinForm, LinForm>> pairs;
    for (int j = 0; j < r.n(); ++j) pairs.emplace_back(zbar_coord(r, slot, j), zbar_deriv(r, slot, j));
    return coord_times_deriv(p, pairs);
}

// sum_k d_{x_k}^2
inline CliffPoly laplacian(const CliffPoly& p, int slot = 0) {
    CliffPoly acc(p.roster());
    for (int k = 0; k < p.roster().m; ++k) {
        LinForm d = real_deriv(p.roster(), slot, k);
        acc += deriv(deriv(p, d), d);
    }
    return acc;
}

// 4 sum_j d_{z_j} d_{zb_j}
inline CliffPoly laplacian_complex(const CliffPoly& p, int slot = 0) {
    const Roster& r = p.roster();
    require_even(r);
    CliffPoly acc(r);
    for (int j = 0; j < r.n(); ++j) acc += deriv(deriv(p, zbar_deriv(r, slot, j)), z_deriv(r, slot, j));
    return GR(4) * acc;
}

enum class OperatorTag {
    EulerE,
    EulerEz,
    EulerEzbar,
    DiracX_left,
    DiracX_right,
    DiracZ,
    DiracZdag,
    VecX,
    VecZ,
    VecZdag,
    Laplace
};

inline bool is_dirac_tag(OperatorTag op) {
    return op == OperatorTag::DiracX_left || op == OperatorTag::DiracX_right || op == OperatorTag::DiracZ ||
           op == OperatorTag::DiracZdag;
}

inline CliffPoly apply(OperatorTag op, const CliffPoly& p, Side side = Side::Left, int slot = 0) {
    if (side == Side::Right && !is_dirac_tag(op)) throw std::invalid_argument("right action is only defined for Dirac operators");
    switch (op) {
        case OperatorTag::EulerE: return euler(p, slot);
        case OperatorTag::EulerEz: return euler_z(p, slot);
        case OperatorTag::EulerEzbar: return euler_zbar(p, slot);
        case OperatorTag::DiracX_left:
            if (side == Side::Right) throw std::invalid_argument("DiracX_left is a left action");
            return dirac(p, slot, Side::Left);
        case OperatorTag::DiracX_right: return dirac(p, slot, Side::Right);
        case OperatorTag::DiracZ: return dirac_z(p, slot, side);
        case OperatorTag::DiracZdag: return dirac_zdag(p, slot, side);
        case OperatorTag::VecX: return vec_x(p, slot);
        case OperatorTag::VecZ: return vec_z(p, slot);
        case OperatorTag::VecZdag: return vec_zdag(p, slot);
        case OperatorTag::Laplace: return laplacian(p, slot);
    }
    throw std::invalid_argument("unknown operator");
}

// ---------------------------------------------------------------------------
// Conjugations and slot bookkeeping.

// Swaps z_j <-> zb_j (and u_j <-> ub_j) in the complex chart; identity in the real chart.
inline Mono conj_mono(const Roster& r, Mono mo) {
    if (r.chart == Chart::Real) return mo;
    Mono out = mo & ~mono::kExpMask;
    int n = r.n();
    for (int s = 0; s < r.slots; ++s)
        for (int j = 0; j < n; ++j) {
            int a = s * r.m + j, b = a + n;
            out |= Mono(mono::exp(mo, a)) << mono::shift(b);
            out |= Mono(mono::exp(mo, b)) << mono::shift(a);
        }
    return out;
}

// Complex conjugation of the polynomial as a function of real variables.
inline CliffPoly complex_conj(const CliffPoly& p) {
    const Roster& r = p.roster();
    return p.map_terms([&](const PTerm& t) { return PTerm{conj_mono(r, t.mono), t.blade, t.c.conj()}; });
}

// Clifford conjugation of the values: blade sign plus complex conjugation.
inline CliffPoly dagger(const CliffPoly& p) {
    const Roster& r = p.roster();
    return p.map_terms([&](const PTerm& t) {
        GR c = t.c.conj();
        return PTerm{conj_mono(r, t.mono), t.blade, blade_dagger_sign(t.blade) < 0 ? -c : c};
    });
}

// Blade signs of the conjugation without touching scalars or variables.
inline CliffPoly tau(const CliffPoly& p) {
    return p.map_terms([&](const PTerm& t) { return PTerm{t.mono, t.blade, blade_dagger_sign(t.blade) < 0 ? -t.c : t.c}; });
}

// P(x, y) -> P(y, x)
inline CliffPoly swap_slots(const CliffPoly& p) {
    const Roster& r = p.roster();
    if (r.slots != 2) throw std::invalid_argument("slot swap needs two slots");
    return p.map_terms([&](const PTerm& t) {
        Mono out = t.mono & ~mono::kExpMask;
        for (int k = 0; k < r.m; ++k) {
            out |= Mono(mono::exp(t.mono, k)) << mono::shift(r.m + k);
            out |= Mono(mono::exp(t.mono, r.m + k)) << mono::shift(k);
        }
        return PTerm{out, t.blade, t.c};
    });
}

// Embeds a one-slot polynomial as the given slot of a two-slot roster.
inline CliffPoly to_slot(const CliffPoly& p, int slot) {
    Roster r = p.roster();
    if (r.slots != 1) throw std::invalid_argument("to_slot needs a one-slot polynomial");
    Roster r2{r.m, 2, r.chart};
    CliffPoly q = p.with_roster(r2);
    return slot == 0 ? q : swap_slots(q);
}

// ---------------------------------------------------------------------------
// Chart conversion by substituting each variable with its linear form.

inline CliffPoly convert(const CliffPoly& p, Chart target) {
    const Roster& r = p.roster();
    if (r.chart == target) return p;
    Roster t{r.m, r.slots, target};
    require_even(t);
    int n = r.n();
    // image of each source variable as a scalar polynomial in the target chart
    std::vector<LinForm> image(r.nvars());
    for (int s = 0; s < r.slots; ++s)
        for (int k = 0; k < r.m; ++k) {
            int v = s * r.m + k;
            if (target == Chart::Complex) {
                image[v] = real_coord(t, s, k);
            } else {
                image[v] = k < n ? z_coord(t, s, k) : zbar_coord(t, s, k - n);
            }
        }
    std::vector<std::vector<CliffPoly>> powers(r.nvars());
    auto power = [&](int v, int e) -> const CliffPoly& {
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(CliffPoly::constant(t, GR(1)));
        while (int(pw.size()) <= e) pw.push_back(pw.back() * CliffPoly::linear(t, image[v]));
        return pw[e];
    };
    std::vector<PTerm> out;
    for (const auto& term : p.terms()) {
        CliffPoly acc = CliffPoly::monomial(t, 0, term.blade, term.c);
        for (int v = 0; v < r.nvars(); ++v) {
            int e = mono::exp(term.mono, v);
            if (e) acc = acc * power(v, e);
        }
        out.insert(out.end(), acc.terms().begin(), acc.terms().end());
    }
    return CliffPoly::from_terms(t, std::move(out));
}

// ---------------------------------------------------------------------------
// Pairings. Both the Fischer and the sphere pairing are
//     <P, Q> = sum_{alpha, gamma} w(alpha, gamma) P_alpha^dagger Q_gamma
// for a chart-dependent weight w on the slot-0 exponents. When P carries a
// second slot, the result is a polynomial in that slot, relabelled to slot 0
// (and conjugated along with P's coefficient).

namespace detail {

struct Moments {
    Roster r;
    bool sphere = false;

    Rational weight(const std::vector<int>& a, const std::vector<int>& g) const {
        int m = r.m;
        if (!sphere) {
            if (a != g) return Rational(0);
            Rational w(1);
            int deg = 0;
            for (int v = 0; v < m; ++v) {
                w *= factorial(a[v]);
                deg += a[v];
            }
            if (r.chart == Chart::Complex) w *= rpow(Rational(2), deg);
            return w;
        }
        if (r.chart == Chart::Real) {
            int tot = 0;
            Rational w(1);
            for (int v = 0; v < m; ++v) {
                int e = a[v] + g[v];
                if (e % 2) return Rational(0);
                w *= pochhammer(Rational(1, 2), e / 2);
                tot += e / 2;
            }
            return w / pochhammer(Rational(m, 2), tot);
        }
        // the conjugate of z^a zb^b is z^b zb^a
        int n = r.n(), tot = 0;
        Rational w(1);
        for (int j = 0; j < n; ++j) {
            int e = a[n + j] + g[j], f = a[j] + g[n + j];
            if (e != f) return Rational(0);
            w *= factorial(e);
            tot += e;
        }
        return w / pochhammer(Rational(n), tot);
    }
};

inline std::vector<int> slot_exps(Mono mo, int slot, int m) {
    std::vector<int> e(m);
    for (int k = 0; k < m; ++k) e[k] = mono::exp(mo, slot * m + k);
    return e;
}

inline Mono slot1_to_slot0(const Roster& r, Mono mo) {
    Mono out = 0;
    for (int k = 0; k < r.m; ++k) {
        int e = mono::exp(mo, r.m + k);
        if (e) out += mono::var(k, e);
    }
    return out;
}

}  // namespace detail

// <P(., y), Q> with the first argument prepared once, for pairing one kernel
// against many polynomials.
class Pairing {
public:
    Pairing(const CliffPoly& p, bool sphere) : rp_(p.roster()), sphere_(sphere) {
        CliffPoly pd = dagger(p);
        std::map<std::vector<int>, std::vector<PTerm>> by_x;
        for (const auto& t : pd.terms()) {
            Mono rest = rp_.slots == 2 ? detail::slot1_to_slot0(rp_, t.mono) : 0;
            // the dagger swapped the conjugate pairs; undo it on slot 0 so the
            // weight sees the original exponents
            std::vector<int> a = detail::slot_exps(conj_mono(rp_, t.mono), 0, rp_.m);
            by_x[a].push_back({rest, t.blade, t.c});
        }
        groups_.assign(by_x.begin(), by_x.end());
    }

    CliffPoly operator()(const CliffPoly& q) const {
        const Roster& rq = q.roster();
        if (rq.slots != 1 || rp_.m != rq.m || rp_.chart != rq.chart)
            throw std::invalid_argument("pairing roster mismatch");
        detail::Moments mom{rq, sphere_};
        std::map<std::vector<int>, std::vector<PTerm>> by_g;
        for (const auto& t : q.terms()) by_g[detail::slot_exps(t.mono, 0, rq.m)].push_back(t);
        std::vector<PTerm> out;
        for (const auto& [a, ps] : groups_)
            for (const auto& [g, qs] : by_g) {
                Rational w = mom.weight(a, g);
                if (w.is_zero()) continue;
                GR gw(w);
                for (const auto& x : ps)
                    for (const auto& y : qs) {
                        GR c = gw * x.c * y.c;
                        out.push_back({x.mono, x.blade ^ y.blade, blade_sign(x.blade, y.blade) < 0 ? -c : c});
                    }
            }
        return CliffPoly::from_terms(Roster{rp_.m, 1, rp_.chart}, std::move(out));
    }

private:
    Roster rp_;
    bool sphere_;
    std::vector<std::pair<std::vector<int>, std::vector<PTerm>>> groups_;
};

namespace detail {

inline CliffPoly pairing(const CliffPoly& p, const CliffPoly& q, bool sphere) { return Pairing(p, sphere)(q); }

inline Multivector constant_part(const CliffPoly& p) { return p.coeff(0); }

}  // namespace detail

// [P(d)^dagger Q(x)]_{x=0} for one-slot P, Q.
inline Multivector fischer_inner(const CliffPoly& p, const CliffPoly& q) {
    if (p.roster().slots != 1) throw std::invalid_argument("fischer_inner takes one-slot polynomials");
    return detail::constant_part(detail::pairing(p, q, false));
}

// Normalized sphere average of P^dagger Q for one-slot P, Q.
inline Multivector sphere_inner(const CliffPoly& p, const CliffPoly& q) {
    if (p.roster().slots != 1) throw std::invalid_argument("sphere_inner takes one-slot polynomials");
    return detail::constant_part(detail::pairing(p, q, true));
}

// <K(., y), H> as a polynomial in y (written in slot-0 variables).
inline CliffPoly fischer_pair(const CliffPoly& k, const CliffPoly& h) { return detail::pairing(k, h, false); }
inline CliffPoly sphere_pair(const CliffPoly& k, const CliffPoly& h) { return detail::pairing(k, h, true); }

// ---------------------------------------------------------------------------
// Monomial bases.

// All exponent vectors over `nvars` variables with total degree d, in
// descending graded-lex order.
inline std::vector<Mono> monomials_of_degree(int nvars, int d) {
    std::vector<Mono> out;
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto&& self, int v, int left) -> void {
        if (v == nvars - 1) {
            e[v] = left;
            if (left <= mono::kMaxExp) out.push_back(mono::from_exps(e));
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[v] = x;
            self(self, v + 1, left - x);
        }
    };
    if (nvars == 0) {
        if (d == 0) out.push_back(0);
        return out;
    }
    rec(rec, 0, d);
    return out;
}

// Monomials z^a zb^b with |a| = p, |b| = q over 2n variables (complex chart order).
inline std::vector<Mono> monomials_of_bidegree(int n, int p, int q) {
    std::vector<Mono> out;
    for (Mono a : monomials_of_degree(n, p))
        for (Mono b : monomials_of_degree(n, q)) {
            Mono bb = 0;
            for (int j = 0; j < n; ++j)
                if (int e = mono::exp(b, j)) bb += mono::var(n + j, e);
            out.push_back(mono::mul(a, bb));
        }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// ---------------------------------------------------------------------------
// Operator-identity sweeps.

namespace detail {

inline std::string residual_str(const CliffPoly& p) {
    std::string s = p.str();
    return s.size() > 400 ? s.substr(0, 400) + "..." : s;
}

inline void check_poly(Report& r, const char* id, const char* anchor, const std::string& params, const CliffPoly& residual) {
    r.add(id, anchor, params, residual.is_zero(), residual.is_zero() ? "" : residual_str(residual));
}

inline std::string mono_params(const Roster& r, Mono mo) {
    CliffPoly p = CliffPoly::monomial(r, mo);
    return "m=" + std::to_string(r.m) + ",P=" + p.str();
}

}  // namespace detail

// {x, dx} = -2(E + m/2) on every monomial of degree <= deg_max (real chart).
inline Report verify_osp12(int m, int deg_max) {
    Report rep;
    rep.suite = "operators";
    Roster r{m, 1, Chart::Real};
    for (int d = 0; d <= deg_max; ++d)
        for (Mono mo : monomials_of_degree(m, d)) {
            CliffPoly p = CliffPoly::monomial(r, mo);
            CliffPoly lhs = vec_x(dirac(p)) + dirac(vec_x(p));
            CliffPoly rhs = GR(-2) * euler(p) - GR(m) * p;
            detail::check_poly(rep, "osp12", "osp(1|2) relations", detail::mono_params(r, mo), lhs - rhs);
        }
    return rep;
}

// {z, dz} = E_z + beta and {z^dagger, dz^dagger} = E_zb + n - beta on every
// monomial times every basis blade, so beta acts on arbitrary coefficients.
inline Report verify_sl12(int n, int deg_max, Chart chart = Chart::Complex) {
    Report rep;
    rep.suite = "operators";
    Roster r{2 * n, 1, chart};
    Multivector b = beta(n), nb = Multivector(2 * n, GR(n)) - beta(n);
    for (int d = 0; d <= deg_max; ++d)
        for (Mono mo : monomials_of_degree(2 * n, d))
            for (Blade bl = 0; bl < (Blade(1) << (2 * n)); ++bl) {
                CliffPoly p = CliffPoly::monomial(r, mo, bl);
                std::string ps = "n=" + std::to_string(n) + ",P=" + p.str();
                CliffPoly a = vec_z(dirac_z(p)) + dirac_z(vec_z(p)) - euler_z(p) - b * p;
                CliffPoly c = vec_zdag(dirac_zdag(p)) + dirac_zdag(vec_zdag(p)) - euler_zbar(p) - nb * p;
                detail::check_poly(rep, "sl12a", "sl(1|2) relations", ps, a);
                detail::check_poly(rep, "sl12b", "sl(1|2) relations", ps, c);
            }
    return rep;
}

// Laplacian factorizations and the Euler split, on monomials.
inline Report verify_laplace_factorizations(int m, int deg_max, Chart chart) {
    Report rep;
    rep.suite = "operators";
    Roster r{m, 1, chart};
    for (int d = 0; d <= deg_max; ++d)
        for (Mono mo : monomials_of_degree(m, d)) {
            CliffPoly p = CliffPoly::monomial(r, mo);
            std::string ps = detail::mono_params(r, mo);
            detail::check_poly(rep, "laplace-dirac", "Laplacian as minus Dirac squared", ps, laplacian(p) + dirac(dirac(p)));
            if (m % 2 == 0) {
                detail::check_poly(rep, "laplace-complex", "Laplacian in complex derivatives", ps,
                                   laplacian(p) - laplacian_complex(p));
                detail::check_poly(rep, "euler-split", "complex Euler operators", ps,
                                   euler_z(p) + euler_zbar(p) - euler(p));
                // the Hermitian Dirac pair anticommutes to a quarter of the Laplacian
                detail::check_poly(rep, "dirac-anticommutator", "Hermitian Dirac pair", ps,
                                   GR(4) * (dirac_z(dirac_zdag(p)) + dirac_zdag(dirac_z(p))) - laplacian(p));
            }
        }
    return rep;
}

// <dx P, Q> = -<P, x Q> and the four Hermitian dualities on monomial pairs with
// compatible degrees <= deg_max. Coefficients cycle through every blade so the
// Clifford side of each identity is exercised.
inline Report verify_duality(int m, int deg_max) {
    Report rep;
    rep.suite = "duality";
    Chart chart = m % 2 == 0 ? Chart::Complex : Chart::Real;
    Roster r{m, 1, chart};
    Roster rr{m, 1, Chart::Real};
    Blade nbl = Blade(1) << m;
    int counter = 0;
    for (int d = 1; d <= deg_max; ++d) {
        auto hi = monomials_of_degree(m, d), lo = monomials_of_degree(m, d - 1);
        for (Mono a : hi)
            for (Mono c : lo) {
                Blade ba = Blade(counter++ * 7) % nbl, bc = Blade(counter * 3 + 1) % nbl;
                std::string ps = "m=" + std::to_string(m) + ",P=" + CliffPoly::monomial(r, a, ba).str() +
                                 ",Q=" + CliffPoly::monomial(r, c, bc).str();
                {
                    CliffPoly P = CliffPoly::monomial(rr, a, ba), Q = CliffPoly::monomial(rr, c, bc);
                    Multivector res = fischer_inner(dirac(P), Q) + fischer_inner(P, vec_x(Q));
                    rep.add("duality-dirac", "Lemma Duality1", "m=" + std::to_string(m) + ",P=" + P.str() + ",Q=" + Q.str(),
                            res.is_zero(), res.str());
                }
                if (m % 2) continue;
                CliffPoly P = CliffPoly::monomial(r, a, ba), Q = CliffPoly::monomial(r, c, bc);
                Multivector r1 = GR(2) * fischer_inner(dirac_z(P), Q) - fischer_inner(P, vec_z(Q));
                Multivector r2 = GR(2) * fischer_inner(dirac_zdag(P), Q) - fischer_inner(P, vec_zdag(Q));
                Multivector r3 = GR(2) * fischer_inner(Q, dirac_z(P)) - fischer_inner(vec_z(Q), P);
                Multivector r4 = GR(2) * fischer_inner(Q, dirac_zdag(P)) - fischer_inner(vec_zdag(Q), P);
                rep.add("duality-dz", "Lemma FischerSphere2", ps, r1.is_zero(), r1.str());
                rep.add("duality-dzdag", "Lemma FischerSphere2", ps, r2.is_zero(), r2.str());
                rep.add("duality-dz-right", "Lemma FischerSphere2", ps, r3.is_zero(), r3.str());
                rep.add("duality-dzdag-right", "Lemma FischerSphere2", ps, r4.is_zero(), r4.str());
            }
    }
    return rep;
}

}  // namespace ck
