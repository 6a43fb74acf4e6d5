#pragma once

// Exact bases of polynomial spaces (homogeneous, harmonic, monogenic,
// bihomogeneous and spinor-valued variants) as null spaces of their defining
// operators, and Fischer decompositions computed by exact linear solves.
//
// Spinor sectors are labelled by the eigenvalue j of left multiplication by
// beta; the vector variable z lowers it by one and z^dagger raises it.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ck/cliffpoly.hpp"
#include "ck/linalg.hpp"

namespace ck {

enum class Space {
    P,    // homogeneous of degree k in m real variables
    H,    // harmonic, degree k
    M,    // left monogenic, Cl_m-valued, degree k
    Ppq,  // bihomogeneous (p, q) in n complex variables
    Hpq,  // harmonic bihomogeneous
    Pj,   // P_{p,q} with values in the spinor sector j
    Hj,   // H_{p,q} with values in the spinor sector j
    Mj    // h-monogenic, spinor sector j
};

inline const char* space_name(Space s) {
    switch (s) {
        case Space::P: return "P";
        case Space::H: return "H";
        case Space::M: return "M";
        case Space::Ppq: return "Ppq";
        case Space::Hpq: return "Hpq";
        case Space::Pj: return "Pj";
        case Space::Hj: return "Hj";
        case Space::Mj: return "Mj";
    }
    return "?";
}

struct SpaceDesc {
    Space kind = Space::P;
    int m = 0, k = 0;             // Euclidean spaces
    int n = 0, p = 0, q = 0, j = 0;  // Hermitian spaces
    bool clifford = false;        // P and H tensored with Cl_m

    bool euclidean() const { return kind == Space::P || kind == Space::H || kind == Space::M; }
    bool spinor() const { return kind == Space::Pj || kind == Space::Hj || kind == Space::Mj; }

    Roster roster() const { return euclidean() ? Roster{m, 1, Chart::Real} : Roster{2 * n, 1, Chart::Complex}; }

    std::string str() const {
        std::ostringstream os;
        os << space_name(kind);
        if (euclidean())
            os << "(m=" << m << ",k=" << k << (clifford && kind != Space::M ? ",clifford" : "") << ")";
        else {
            os << "(n=" << n << ",p=" << p << ",q=" << q;
            if (spinor()) os << ",j=" << j;
            os << ")";
        }
        return os.str();
    }

    auto key() const { return std::tuple(int(kind), m, k, n, p, q, j, clifford); }
    bool operator<(const SpaceDesc& o) const { return key() < o.key(); }
};

inline SpaceDesc space_P(int m, int k, bool clifford = false) { return {Space::P, m, k, 0, 0, 0, 0, clifford}; }
inline SpaceDesc space_H(int m, int k, bool clifford = false) { return {Space::H, m, k, 0, 0, 0, 0, clifford}; }
inline SpaceDesc space_M(int m, int k) { return {Space::M, m, k, 0, 0, 0, 0, true}; }
inline SpaceDesc space_Ppq(int n, int p, int q) { return {Space::Ppq, 0, 0, n, p, q, 0, false}; }
inline SpaceDesc space_Hpq(int n, int p, int q) { return {Space::Hpq, 0, 0, n, p, q, 0, false}; }
inline SpaceDesc space_Pj(int n, int p, int q, int j) { return {Space::Pj, 0, 0, n, p, q, j, false}; }
inline SpaceDesc space_Hj(int n, int p, int q, int j) { return {Space::Hj, 0, 0, n, p, q, j, false}; }
inline SpaceDesc space_Mj(int n, int p, int q, int j) { return {Space::Mj, 0, 0, n, p, q, j, false}; }

struct PolySpaceBasis {
    SpaceDesc desc;
    Roster roster;
    std::vector<CliffPoly> elements;
    int dim() const { return int(elements.size()); }
};

// ---------------------------------------------------------------------------
// Coordinates of polynomials on (monomial, blade) atoms.

class Coords {
public:
    int index(Mono mo, Blade b) {
        auto [it, fresh] = idx_.emplace(std::pair(mo, b), int(idx_.size()));
        return it->second;
    }
    SparseVec<GR> vec(const CliffPoly& p) {
        SparseVec<GR> v;
        v.reserve(p.size());
        for (const auto& t : p.terms()) v.emplace_back(index(t.mono, t.blade), t.c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }
    int size() const { return int(idx_.size()); }

private:
    std::map<std::pair<Mono, Blade>, int> idx_;
};

inline CliffPoly combine(const Roster& r, const std::vector<CliffPoly>& polys, const SparseVec<GR>& coeffs) {
    CliffPoly acc(r);
    for (const auto& [i, c] : coeffs) acc += c * polys[i];
    return acc;
}

// Basis of {sum_i c_i domain_i : every operator annihilates it}.
inline std::vector<CliffPoly> null_combinations(
    const Roster& r, const std::vector<CliffPoly>& domain,
    const std::vector<std::function<CliffPoly(const CliffPoly&)>>& ops) {
    std::map<std::tuple<int, Mono, Blade>, int> row_of;
    std::vector<SparseVec<GR>> rows;
    for (int c = 0; c < int(domain.size()); ++c)
        for (int o = 0; o < int(ops.size()); ++o) {
            CliffPoly img = ops[o](domain[c]);
            for (const auto& t : img.terms()) {
                auto [it, fresh] = row_of.emplace(std::tuple(o, t.mono, t.blade), int(rows.size()));
                if (fresh) rows.emplace_back();
                rows[it->second].emplace_back(c, t.c);
            }
        }
    RowEchelon<GR> ech(int(domain.size()));
    for (auto& row : rows) ech.add_row(std::move(row));
    std::vector<CliffPoly> out;
    for (const auto& v : ech.nullspace()) out.push_back(combine(r, domain, v));
    return out;
}

inline int span_rank(const std::vector<CliffPoly>& polys) {
    Coords co;
    std::vector<SparseVec<GR>> vs;
    for (const auto& p : polys) vs.push_back(co.vec(p));
    RowEchelon<GR> ech(co.size());
    for (auto& v : vs) ech.add_row(std::move(v));
    return ech.rank();
}

// Coefficients expressing target in the span of cols, or nullopt.
inline std::optional<SolveResult<GR>> solve_in_span(const std::vector<CliffPoly>& cols, const CliffPoly& target) {
    Coords co;
    std::vector<SparseVec<GR>> cv;
    for (const auto& c : cols) cv.push_back(co.vec(c));
    SparseVec<GR> tv = co.vec(target);
    return solve_columns(cv, tv);
}

// ---------------------------------------------------------------------------
// Spinor sectors.

// Membership test for span{f_A^dagger I : |A| = j}.
class SectorTest {
public:
    SectorTest(int n, int j) : n_(n), ech_(1 << (2 * n)) {
        for (const auto& v : spinor_basis(n, j).vectors) ech_.add_row(mv_vec(v));
    }
    bool contains(const Multivector& x) const { return ech_.reduce(mv_vec(x)).empty(); }
    bool contains(const CliffPoly& p) const {
        std::map<Mono, Multivector> by_mono;
        for (const auto& t : p.terms()) {
            auto it = by_mono.try_emplace(t.mono, 2 * n_).first;
            it->second += Multivector::blade(2 * n_, t.blade, t.c);
        }
        for (const auto& [mo, x] : by_mono)
            if (!contains(x)) return false;
        return true;
    }

private:
    int n_;
    RowEchelon<GR> ech_;
    static SparseVec<GR> mv_vec(const Multivector& x) {
        SparseVec<GR> v;
        for (const auto& [b, c] : x.terms()) v.emplace_back(int(b), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }
};

// ---------------------------------------------------------------------------
// Basis construction.

namespace detail {

inline std::vector<CliffPoly> tensor_blades(const Roster& r, const std::vector<Mono>& monos, bool clifford) {
    std::vector<CliffPoly> out;
    Blade nb = clifford ? Blade(1) << r.m : 1;
    for (Mono mo : monos)
        for (Blade b = 0; b < nb; ++b) out.push_back(CliffPoly::monomial(r, mo, b));
    return out;
}

inline std::vector<CliffPoly> tensor_spinors(const Roster& r, const std::vector<Mono>& monos, int n, int j) {
    std::vector<CliffPoly> out;
    SpinorBasis sb = spinor_basis(n, j);
    for (Mono mo : monos)
        for (const auto& v : sb.vectors) out.push_back(CliffPoly::monomial(r, mo) * v);
    return out;
}

inline std::vector<CliffPoly> tensor_with(const std::vector<CliffPoly>& scalars, const std::vector<Multivector>& vals) {
    std::vector<CliffPoly> out;
    for (const auto& s : scalars)
        for (const auto& v : vals) out.push_back(s * v);
    return out;
}

inline PolySpaceBasis build_basis(const SpaceDesc& d) {
    PolySpaceBasis b{d, d.roster(), {}};
    const Roster& r = b.roster;
    auto lap = [](const CliffPoly& p) { return laplacian(p); };
    auto lapc = [](const CliffPoly& p) { return laplacian_complex(p); };
    if (d.euclidean() && (d.m < 1 || d.k < 0)) throw std::invalid_argument("space needs m >= 1, k >= 0: " + d.str());
    if (!d.euclidean() && (d.n < 1 || d.p < 0 || d.q < 0 || (d.spinor() && (d.j < 0 || d.j > d.n))))
        throw std::invalid_argument("space parameters out of range: " + d.str());
    switch (d.kind) {
        case Space::P: b.elements = tensor_blades(r, monomials_of_degree(d.m, d.k), d.clifford); break;
        case Space::H: b.elements = null_combinations(r, tensor_blades(r, monomials_of_degree(d.m, d.k), d.clifford), {lap}); break;
        case Space::M:
            b.elements = null_combinations(r, tensor_blades(r, monomials_of_degree(d.m, d.k), true),
                                           {[](const CliffPoly& p) { return dirac(p); }});
            break;
        case Space::Ppq: b.elements = tensor_blades(r, monomials_of_bidegree(d.n, d.p, d.q), false); break;
        case Space::Hpq:
            b.elements = null_combinations(r, tensor_blades(r, monomials_of_bidegree(d.n, d.p, d.q), false), {lapc});
            break;
        case Space::Pj: b.elements = tensor_spinors(r, monomials_of_bidegree(d.n, d.p, d.q), d.n, d.j); break;
        case Space::Hj: {
            auto h = null_combinations(r, tensor_blades(r, monomials_of_bidegree(d.n, d.p, d.q), false), {lapc});
            b.elements = tensor_with(h, spinor_basis(d.n, d.j).vectors);
            break;
        }
        case Space::Mj:
            b.elements = null_combinations(r, tensor_spinors(r, monomials_of_bidegree(d.n, d.p, d.q), d.n, d.j),
                                           {[](const CliffPoly& p) { return dirac_z(p); },
                                            [](const CliffPoly& p) { return dirac_zdag(p); }});
            break;
    }
    return b;
}

struct BasisCache {
    std::shared_mutex mu;
    std::map<SpaceDesc, std::shared_ptr<const PolySpaceBasis>> table;
};

inline BasisCache& basis_cache() {
    static BasisCache c;
    return c;
}

}  // namespace detail

// Memoized; safe to call from several threads.
inline std::shared_ptr<const PolySpaceBasis> basis(const SpaceDesc& d) {
    auto& c = detail::basis_cache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.table.find(d);
        if (it != c.table.end()) return it->second;
    }
    auto built = std::make_shared<const PolySpaceBasis>(detail::build_basis(d));
    std::unique_lock lk(c.mu);
    return c.table.emplace(d, std::move(built)).first->second;
}

inline int dim(const SpaceDesc& d) {
    if (d.euclidean() && d.k < 0) return 0;
    if (!d.euclidean() && (d.p < 0 || d.q < 0 || (d.spinor() && (d.j < 0 || d.j > d.n)))) return 0;
    return basis(d)->dim();
}

// ---------------------------------------------------------------------------
// Decompositions.

struct Decomposition {
    std::vector<std::string> labels;
    std::vector<CliffPoly> parts;    // summands; they add up to the input
    std::vector<CliffPoly> factors;  // the space element inside each summand
    bool consistent = false;         // input lies in the span of the summand spaces
    bool unique = false;             // summand spaces are independent
    std::vector<std::string> notes;

    CliffPoly sum(const Roster& r) const {
        CliffPoly s(r);
        for (const auto& p : parts) s += p;
        return s;
    }
};

namespace detail {

inline void require_homogeneous(const CliffPoly& p, int& k) {
    k = -1;
    for (const auto& t : p.terms()) {
        int d = mono::degree(t.mono);
        if (k >= 0 && d != k) throw std::invalid_argument("decomposition needs a homogeneous polynomial");
        k = d;
    }
    if (k < 0) k = 0;
}

// One group of columns per summand; `wrap` maps a space element into its summand.
struct Group {
    std::string label;
    std::vector<CliffPoly> factors;
    std::function<CliffPoly(const CliffPoly&)> wrap;
};

inline Decomposition solve_groups(const CliffPoly& target, const std::vector<Group>& groups) {
    Decomposition dec;
    std::vector<CliffPoly> cols;
    std::vector<int> owner, local;
    for (int g = 0; g < int(groups.size()); ++g)
        for (int i = 0; i < int(groups[g].factors.size()); ++i) {
            cols.push_back(groups[g].wrap(groups[g].factors[i]));
            owner.push_back(g);
            local.push_back(i);
        }
    auto sol = solve_in_span(cols, target);
    const Roster& r = target.roster();
    for (const auto& g : groups) {
        dec.labels.push_back(g.label);
        dec.parts.emplace_back(r);
        dec.factors.emplace_back(r);
    }
    if (!sol) return dec;
    dec.consistent = true;
    // the sum is direct when the image ranks add up; a wrap map with a kernel
    // only makes the factor non-unique, not the part
    int rank_sum = 0;
    for (int g = 0; g < int(groups.size()); ++g) {
        std::vector<CliffPoly> img;
        for (int c = 0; c < int(cols.size()); ++c)
            if (owner[c] == g) img.push_back(cols[c]);
        int rk = span_rank(img);
        rank_sum += rk;
        if (rk < int(img.size()))
            dec.notes.push_back(groups[g].label + ": wrap has a kernel (" + std::to_string(img.size() - rk) + " of " +
                                std::to_string(img.size()) + " factor images are dependent)");
    }
    dec.unique = sol->unique || rank_sum == span_rank(cols);
    for (int c = 0; c < int(cols.size()); ++c) {
        const GR& x = sol->x[c];
        if (x.is_zero()) continue;
        dec.parts[owner[c]] += x * cols[c];
        dec.factors[owner[c]] += x * groups[owner[c]].factors[local[c]];
    }
    return dec;
}

inline std::vector<Blade> blades_of(const CliffPoly& p) {
    std::vector<Blade> bs;
    for (const auto& t : p.terms()) bs.push_back(t.blade);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    return bs;
}

}  // namespace detail

enum class FischerMode { Harmonic, Monogenic };

// Harmonic: P = sum_j |x|^{2j} H_{k-2j}, blade by blade.
// Monogenic: P = sum_i x^i M_{k-i} with Cl_m-valued monogenic M.
inline Decomposition fischer_decompose_euclidean(const CliffPoly& p, FischerMode mode) {
    const Roster& r = p.roster();
    if (r.slots != 1 || r.chart != Chart::Real) throw std::invalid_argument("decomposition works on one-slot real-chart input");
    int k;
    detail::require_homogeneous(p, k);
    std::vector<detail::Group> groups;
    CliffPoly xx(r);
    for (int v = 0; v < r.m; ++v) xx += CliffPoly::variable(r, v) * CliffPoly::variable(r, v);
    if (mode == FischerMode::Harmonic) {
        std::vector<Blade> bl = detail::blades_of(p);
        for (int j = 0; 2 * j <= k; ++j) {
            std::vector<CliffPoly> f;
            for (const auto& h : basis(space_H(r.m, k - 2 * j))->elements)
                for (Blade b : bl) f.push_back(h * Multivector::blade(r.m, b));
            CliffPoly w = CliffPoly::constant(r, GR(1));
            for (int i = 0; i < j; ++i) w = w * xx;
            groups.push_back({j == 0 ? "H" : "|x|^" + std::to_string(2 * j) + " H", std::move(f),
                              [w](const CliffPoly& h) { return w * h; }});
        }
    } else {
        for (int i = 0; i <= k; ++i) {
            std::vector<CliffPoly> f = basis(space_M(r.m, k - i))->elements;
            groups.push_back({i == 0 ? "M" : i == 1 ? "x M" : "x^" + std::to_string(i) + " M", std::move(f),
                              [i](const CliffPoly& m) {
                                  CliffPoly y = m;
                                  for (int s = 0; s < i; ++s) y = vec_x(y);
                                  return y;
                              }});
        }
    }
    return detail::solve_groups(p, groups);
}

// Weight of the fourth Hermitian summand, W = a z z^dagger + b z^dagger z.
struct HermitianWeight {
    GR a, b;
    bool defined = true;  // false when the requested constants have a zero denominator
};

// Constants as printed, with the sector index translated to beta-eigenvalues:
// a = 1/(q-1+n-j), b = 1/(p-1+j).
inline HermitianWeight hermitian_weight_literal(int n, int p, int q, int j) {
    int da = q - 1 + n - j, db = p - 1 + j;
    if (da == 0 || db == 0) return {GR(0), GR(0), false};
    return {GR(Rational(1, da)), GR(Rational(1, db)), true};
}

// Weight making W M harmonic for every M in the sector: a(q-1+n-j) + b(p-1+j) = 0,
// here with denominators cleared.
inline HermitianWeight hermitian_weight_harmonic(int n, int p, int q, int j) {
    int da = q - 1 + n - j, db = p - 1 + j;
    if (da == 0 && db == 0) return {GR(1), GR(0), true};
    return {GR(db), GR(-da), true};
}

inline CliffPoly apply_weight(const HermitianWeight& w, const CliffPoly& m) {
    CliffPoly zz = vec_z(vec_zdag(m));
    CliffPoly zdz = vec_zdag(vec_z(m));
    return w.a * zz + w.b * zdz;
}

// H in H^{(j)}_{p,q} = M^{(j)}_{p,q} + z M^{(j+1)}_{p-1,q} + z^dagger M^{(j-1)}_{p,q-1} + W M^{(j)}_{p-1,q-1}.
// When the weight is undefined the fourth summand is replaced by the part of H
// Fischer-orthogonal to the first three.
inline Decomposition fischer_decompose_hermitian(const CliffPoly& h, int n, int p, int q, int j, const HermitianWeight& w) {
    const Roster& r = h.roster();
    if (r.chart != Chart::Complex || r.slots != 1 || r.n() != n) throw std::invalid_argument("hermitian decomposition needs the complex chart");
    auto mj = [&](int pp, int qq, int jj) {
        if (pp < 0 || qq < 0 || jj < 0 || jj > n) return std::vector<CliffPoly>{};
        return basis(space_Mj(n, pp, qq, jj))->elements;
    };
    std::vector<detail::Group> groups{
        {"M", mj(p, q, j), [](const CliffPoly& m) { return m; }},
        {"z M", mj(p - 1, q, j + 1), [](const CliffPoly& m) { return vec_z(m); }},
        {"z^dagger M", mj(p, q - 1, j - 1), [](const CliffPoly& m) { return vec_zdag(m); }},
    };
    if (w.defined) {
        groups.push_back({"W M", mj(p - 1, q - 1, j), [w](const CliffPoly& m) { return apply_weight(w, m); }});
        return detail::solve_groups(h, groups);
    }
    // Fischer projection onto the first three summands; the rest is the complement.
    std::vector<CliffPoly> cols;
    for (const auto& g : groups)
        for (const auto& f : g.factors) cols.push_back(g.wrap(f));
    int nc = int(cols.size());
    auto form = [](const CliffPoly& a, const CliffPoly& b) { return fischer_inner(a, b).scalar_part(); };
    std::vector<SparseVec<GR>> gram(nc);
    SparseVec<GR> rhs;
    for (int i = 0; i < nc; ++i) {
        GR t = form(cols[i], h);
        if (!t.is_zero()) rhs.emplace_back(i, t);
    }
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < nc; ++i) {
            GR g = form(cols[i], cols[c]);
            if (!g.is_zero()) gram[c].emplace_back(i, g);
        }
    auto sol = solve_columns(gram, rhs);
    Decomposition dec;
    for (const auto& g : groups) {
        dec.labels.push_back(g.label);
        dec.parts.emplace_back(r);
        dec.factors.emplace_back(r);
    }
    dec.labels.push_back("complement");
    dec.notes.push_back("degenerate sector: fourth weight undefined");
    if (!sol) return dec;
    int c = 0;
    for (int g = 0; g < int(groups.size()); ++g)
        for (const auto& f : groups[g].factors) {
            const GR& x = sol->x[c];
            if (!x.is_zero()) {
                dec.parts[g] += x * cols[c];
                dec.factors[g] += x * f;
            }
            ++c;
        }
    CliffPoly rest = h - dec.sum(r);
    dec.parts.push_back(rest);
    dec.factors.push_back(rest);
    dec.consistent = true;
    dec.unique = sol->unique;
    return dec;
}

}  // namespace ck
