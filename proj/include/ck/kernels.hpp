#pragma once

// Reproducing kernels: the zonal harmonic, its Hermitian (Koornwinder)
// analogue, the monogenic kernel and the h-monogenic kernel, each in closed
// form and (where one exists) as Dirac operators applied to a harmonic kernel.
//
// Euclidean kernels live in the real chart with slots (x, y). Hermitian
// kernels are built in the complex chart with slots (z, u), where
//   A = <z,u> = sum z_j ub_j,  B = <u,z>,  C = <z,z>,  D = <u,u>,
//   z = sum f_j z_j, z^dagger = sum f_j^dagger zb_j, and likewise u.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ck/cliffpoly.hpp"
#include "ck/orthopoly.hpp"

namespace ck {

struct KernelPoly {
    CliffPoly poly;
    int deg_a = 0;  // degree (Euclidean) or z-degree in the first slot
    int deg_b = 0;  // zb-degree in the first slot for Hermitian kernels
};

// ---------------------------------------------------------------------------
// Scalar building blocks.

namespace detail {

inline CliffPoly one(const Roster& r) { return CliffPoly::constant(r, GR(1)); }

inline CliffPoly power(const CliffPoly& p, int k) {
    if (k < 0) throw std::logic_error("negative power of a polynomial");
    CliffPoly r = one(p.roster());
    CliffPoly b = p;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

// Cached powers of a fixed polynomial.
class Powers {
public:
    explicit Powers(CliffPoly base) : base_(std::move(base)) { cache_.push_back(one(base_.roster())); }
    const CliffPoly& operator()(int k) {
        if (k < 0) throw std::logic_error("negative power in kernel expansion");
        while (int(cache_.size()) <= k) cache_.push_back(cache_.back() * base_);
        return cache_[k];
    }

private:
    CliffPoly base_;
    std::vector<CliffPoly> cache_;
};

}  // namespace detail

// <x,y>, |x|^2 and |y|^2 in the two-slot real chart.
struct EuclideanForms {
    Roster r;
    CliffPoly dot, xx, yy;
    explicit EuclideanForms(int m) : r{m, 2, Chart::Real}, dot(r), xx(r), yy(r) {
        for (int k = 0; k < m; ++k) {
            CliffPoly xk = CliffPoly::variable(r, k), yk = CliffPoly::variable(r, m + k);
            dot += xk * yk;
            xx += xk * xk;
            yy += yk * yk;
        }
    }
    CliffPoly x() const { return vec_x(detail::one(r), 0); }
    CliffPoly y() const { return vec_x(detail::one(r), 1); }
};

// sum_i g_i dot^i (xx*yy)^((k-i)/2) for a polynomial g(t) whose support has
// the parity of k; this is |x|^k |y|^k g(<x,y>/(|x||y|)).
inline CliffPoly expand_zonal(const UPoly& g, int k, const CliffPoly& dot, const CliffPoly& xxyy) {
    CliffPoly acc(dot.roster());
    detail::Powers pd(dot), pr(xxyy);
    for (int i = 0; i <= g.degree(); ++i) {
        if (g.coeff(i).is_zero()) continue;
        if ((k - i) % 2 || i > k) throw std::logic_error("odd power of |x| in zonal expansion");
        acc += GR(g.coeff(i)) * (pd(i) * pr((k - i) / 2));
    }
    return acc;
}

// ((k+mu)/mu) C_k^mu(t) with mu = m/2 - 1, written so that mu = 0 (m = 2) is
// the limit: (k+mu)(mu+1)_{k-j-1}/... for k >= 1.
inline UPoly zonal_profile(int k, int m) {
    if (k == 0) return UPoly(Rational(1));
    Rational mu = Rational(m, 2) - Rational(1);
    std::vector<Rational> c(k + 1);
    for (int j = 0; 2 * j <= k; ++j) {
        Rational v = (Rational(k) + mu) * pochhammer(mu + Rational(1), k - j - 1) * rpow(Rational(2), k - 2 * j) /
                     (factorial(j) * factorial(k - 2 * j));
        c[k - 2 * j] = (j % 2) ? -v : v;
    }
    return UPoly(std::move(c));
}

// K_k^m(x, y) = ((k+mu)/mu) |x|^k |y|^k C_k^mu(t)
inline KernelPoly zonal_harmonic(int k, int m) {
    if (m < 2 || k < 0) throw std::invalid_argument("zonal_harmonic needs m >= 2 and k >= 0");
    EuclideanForms f(m);
    return {expand_zonal(zonal_profile(k, m), k, f.dot, f.xx * f.yy), k, 0};
}

// <x,y>^k / k!, the Fischer reproducing kernel of P_k.
inline KernelPoly fischer_kernel(int k, int m) {
    EuclideanForms f(m);
    return {GR(factorial(k).inverse()) * detail::power(f.dot, k), k, 0};
}

// ((2mu+k)/(2mu)) |x|^k|y|^k C_k^mu(t) + (x wedge y) |x|^{k-1}|y|^{k-1} C_{k-1}^{mu+1}(t)
inline KernelPoly monogenic_kernel_closed(int k, int m) {
    if (m < 3 || k < 0) throw std::invalid_argument("monogenic kernel needs m >= 3 and k >= 0");
    EuclideanForms f(m);
    Rational mu = Rational(m, 2) - Rational(1);
    CliffPoly xxyy = f.xx * f.yy;
    UPoly scalar = ((Rational(2) * mu + Rational(k)) / (Rational(2) * mu)) * gegenbauer_poly(k, mu);
    CliffPoly result = expand_zonal(scalar, k, f.dot, xxyy);
    if (k >= 1) {
        CliffPoly x_wedge_y = vec_x(f.y(), 0) + f.dot;  // x y = x^y - <x,y>
        result += x_wedge_y * expand_zonal(gegenbauer_poly(k - 1, mu + Rational(1)), k - 1, f.dot, xxyy);
    }
    return {result, k, 0};
}

// c_k dx K_{k+1}^m dy with c_k = -1/(m+2k)^2
inline KernelPoly monogenic_kernel_operational(int k, int m) {
    if (m < 3 || k < 0) throw std::invalid_argument("monogenic kernel needs m >= 3 and k >= 0");
    CliffPoly kk = zonal_harmonic(k + 1, m).poly;
    CliffPoly r = dirac(dirac(kk, 0, Side::Left), 1, Side::Right);
    Rational ck = -Rational(1) / rpow(Rational(m + 2 * k), 2);
    return {GR(ck) * r, k, 0};
}

// (m+2k)(y |x|^k|y|^k C_k^{mu+1}(t) - x |x|^{k-1}|y|^{k+1} C_{k-1}^{mu+1}(t)),
// the intermediate vector after the first Dirac operator.
inline CliffPoly monogenic_action_closed(int k, int m) {
    EuclideanForms f(m);
    Rational mu = Rational(m, 2) - Rational(1);
    CliffPoly xxyy = f.xx * f.yy;
    CliffPoly a = f.y() * expand_zonal(gegenbauer_poly(k, mu + Rational(1)), k, f.dot, xxyy);
    CliffPoly b(f.r);
    if (k >= 1) b = f.x() * f.yy * expand_zonal(gegenbauer_poly(k - 1, mu + Rational(1)), k - 1, f.dot, xxyy);
    return GR(m + 2 * k) * (a - b);
}

// ---------------------------------------------------------------------------
// Hermitian building blocks in the two-slot complex chart.

class HermitianForms {
public:
    explicit HermitianForms(int n)
        : n_(n),
          r_{2 * n, 2, Chart::Complex},
          A_(make(0, 1)),
          B_(make(1, 0)),
          C_(make(0, 0)),
          D_(make(1, 1)) {
        CliffPoly u1 = detail::one(r_);
        z_ = vec_z(u1, 0);
        zd_ = vec_zdag(u1, 0);
        u_ = vec_z(u1, 1);
        ud_ = vec_zdag(u1, 1);
    }

    int n() const { return n_; }
    const Roster& roster() const { return r_; }
    const CliffPoly& z() const { return z_; }
    const CliffPoly& zd() const { return zd_; }
    const CliffPoly& u() const { return u_; }
    const CliffPoly& ud() const { return ud_; }
    CliffPoly A(int k) { return A_(k); }
    CliffPoly B(int k) { return B_(k); }
    CliffPoly C(int k) { return C_(k); }
    CliffPoly D(int k) { return D_(k); }

    // A^a B^b C^c D^d
    CliffPoly abcd(int a, int b, int c, int d) {
        if (a < 0 || b < 0 || c < 0 || d < 0) throw std::logic_error("negative exponent in Hermitian kernel term");
        return A_(a) * B_(b) * C_(c) * D_(d);
    }

    // A^a B^b C^c D^d J(2s - 1) with s = AB/(CD), each s^i absorbed into the
    // exponents; J is given in the variable x = 2s - 1.
    CliffPoly jacobi_term(int a, int b, int c, int d, const UPoly& jac_x) {
        UPoly js = jac_x.compose_affine(Rational(2), Rational(-1));
        CliffPoly acc(r_);
        for (int i = 0; i <= js.degree(); ++i) {
            if (js.coeff(i).is_zero()) continue;
            acc += GR(js.coeff(i)) * abcd(a + i, b + i, c - i, d - i);
        }
        return acc;
    }

    // Constant multivector acting on the left.
    CliffPoly lift(const Multivector& x) const { return CliffPoly::constant(r_, x); }

private:
    int n_;
    Roster r_;
    detail::Powers A_, B_, C_, D_;
    CliffPoly z_, zd_, u_, ud_;

    // sum_j (slot s1, unbarred)_j (slot s2, barred)_j
    detail::Powers make(int s1, int s2) {
        Roster r{2 * n_, 2, Chart::Complex};
        CliffPoly acc(r);
        for (int j = 0; j < n_; ++j)
            acc += CliffPoly::monomial(r, mono::mul(mono::var(s1 * 2 * n_ + j), mono::var(s2 * 2 * n_ + n_ + j)));
        return detail::Powers(acc);
    }
};

// (nu+1+p+q)/(nu+1) with nu = n-2, the constant as usually printed. It gives
// the reproducing kernel only for n = 2.
inline Rational koornwinder_constant_printed(int p, int q, int n) { return Rational(n - 1 + p + q, n - 1); }

// dim H_{p,q} / P_q^{nu,p-q}(1) for p >= q (symmetric in p, q): the printed
// constant times binom(max(p,q)+nu, max(p,q)).
inline Rational koornwinder_constant(int p, int q, int n) {
    return koornwinder_constant_printed(p, q, n) * binomial(std::max(p, q) + n - 2, std::max(p, q));
}

// K_{p,q}^n = c_{p,q} A^{p-q} C^q D^q P_q^{nu,p-q}(2s-1) for p >= q, and the
// complex conjugate of K_{q,p} otherwise.
inline KernelPoly koornwinder_kernel(int p, int q, int n, HermitianForms* forms = nullptr) {
    if (n < 2 || p < 0 || q < 0) throw std::invalid_argument("koornwinder_kernel needs n >= 2, p, q >= 0");
    if (p < q) {
        KernelPoly k = koornwinder_kernel(q, p, n, forms);
        return {complex_conj(k.poly), p, q};
    }
    std::optional<HermitianForms> own;
    if (!forms) forms = &own.emplace(n);
    CliffPoly poly = GR(koornwinder_constant(p, q, n)) *
                     forms->jacobi_term(p - q, 0, q, q, jacobi_poly(q, Rational(n - 2), Rational(p - q)));
    return {poly, p, q};
}

// Fischer reproducing kernel of P_{p,q}: A^p B^q / (2^{p+q} p! q!).
inline KernelPoly fischer_kernel_complex(int p, int q, int n) {
    HermitianForms f(n);
    Rational c = (rpow(Rational(2), p + q) * factorial(p) * factorial(q)).inverse();
    return {GR(c) * f.abcd(p, q, 0, 0), p, q};
}

// The same product without the 2^{-(p+q)}.
inline KernelPoly fischer_kernel_complex_unscaled(int p, int q, int n) {
    HermitianForms f(n);
    return {GR((factorial(p) * factorial(q)).inverse()) * f.abcd(p, q, 0, 0), p, q};
}

// ---------------------------------------------------------------------------
// Normalization polynomial in beta.

// L_j(beta) = prod_{l != j} (beta - l)/(j - l) over nodes 0..n.
inline Multivector lagrange_beta(int n, int j) {
    UPoly l(Rational(1));
    for (int k = 0; k <= n; ++k)
        if (k != j) l = (Rational(1) / Rational(j - k)) * (l * (UPoly::x() - UPoly(Rational(k))));
    return beta_poly(n, l.coeffs());
}

// L_j(n - beta)
inline Multivector lagrange_reflected(int n, int j) {
    UPoly l(Rational(1));
    for (int k = 0; k <= n; ++k)
        if (k != j) l = (Rational(1) / Rational(j - k)) * (l * (UPoly(Rational(n - k)) - UPoly::x()));
    return beta_poly(n, l.coeffs());
}

struct Normalization {
    Multivector d;                 // sum over regular nodes of d^(j) L_j(beta)
    std::vector<int> pole_nodes;   // nodes dropped because a factor vanishes
    std::vector<Rational> node_values;  // d^(j), zero at pole nodes
};

// d_{p,q}(beta) = sum_j L_j(beta) / ((n+p+q+1)^2 (n-j+q)(j+p)), pole nodes dropped.
inline Normalization normalization_dpq(int p, int q, int n) {
    if (n < 1 || p < 0 || q < 0) throw std::invalid_argument("normalization needs n >= 1, p, q >= 0");
    Normalization res;
    res.d = Multivector(2 * n);
    Rational s = rpow(Rational(n + p + q + 1), 2);
    for (int j = 0; j <= n; ++j) {
        int f1 = n - j + q, f2 = j + p;
        if (f1 == 0 || f2 == 0) {
            res.pole_nodes.push_back(j);
            res.node_values.push_back(Rational(0));
            continue;
        }
        Rational v = (s * Rational(f1) * Rational(f2)).inverse();
        res.node_values.push_back(v);
        res.d += GR(v) * lagrange_beta(n, j);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Closed forms for dz^dagger dz K_{p+1,q+1} du^dagger du (without d(beta)).

namespace detail {

inline Multivector beta_lin(int n, const Rational& c0, const Rational& c1) { return beta_poly(n, {c0, c1}); }

}  // namespace detail

// Six-term form, p > q >= 0 (q = 0 formally: negative-degree Jacobi terms vanish).
inline CliffPoly hermitian_six_term(int p, int q, HermitianForms& f) {
    if (!(p > q && q >= 0)) throw std::invalid_argument("six-term form needs p > q >= 0");
    int n = f.n();
    Rational k0 = koornwinder_constant(p + 1, q + 1, n) * Rational((p + 1) * (n + p + q + 1));
    Multivector bp = detail::beta_lin(n, Rational(p), Rational(1));        // beta + p
    Multivector nbq = detail::beta_lin(n, Rational(n + q), Rational(-1));  // n - beta + q
    CliffPoly z = f.z(), zd = f.zd(), u = f.u(), ud = f.ud();
    CliffPoly zwz = z * zd - GR(Rational(1, 2)) * f.C(1);
    CliffPoly uwu = u * ud - GR(Rational(1, 2)) * f.D(1);
    auto J = [](int k, int a, int b) { return jacobi_poly(k, Rational(a), Rational(b)); };
    CliffPoly acc(f.roster());
    Rational P(p);
    acc += f.lift(bp * nbq) * f.jacobi_term(p - q, 0, q, q, J(q, n - 1, p - q));
    if (q >= 1) {
        UPoly j1 = J(q - 1, n, p - q);
        acc -= GR(P) * (f.lift(bp) * (zwz * f.jacobi_term(p - q, 0, q - 1, q, j1)));
        acc -= GR(P) * (f.lift(bp) * (uwu * f.jacobi_term(p - q, 0, q, q - 1, j1)));
        acc -= GR(n + p) * (f.lift(bp) * (zd * u * f.jacobi_term(p - q + 1, 0, q - 1, q - 1, J(q - 1, n, p - q + 1))));
        acc += GR(P * Rational(n + p + q)) * (z * zd * u * ud * f.jacobi_term(p - q, 0, q - 1, q - 1, j1));
    }
    acc -= GR(P) * (f.lift(nbq) * (z * ud * f.jacobi_term(p - q - 1, 0, q, q, J(q, n, p - q - 1))));
    return GR(k0) * acc;
}

// (n - beta)(A^p (beta + p) - p A^{p-1} z u^dagger) times the kernel constant.
inline CliffPoly hermitian_q0(int p, HermitianForms& f) {
    int n = f.n();
    Rational k0 = koornwinder_constant(p + 1, 1, n) * Rational((p + 1) * (n + p + 1));
    Multivector nb = detail::beta_lin(n, Rational(n), Rational(-1));
    Multivector bp = detail::beta_lin(n, Rational(p), Rational(1));
    CliffPoly inner = f.lift(bp) * f.A(p);
    if (p >= 1) inner -= GR(p) * (f.z() * f.ud() * f.A(p - 1));
    return GR(k0) * (f.lift(nb) * inner);
}

// beta (B^p (n - beta + p) - p B^{p-1} z^dagger u) times the kernel constant.
inline CliffPoly hermitian_p0(int q, HermitianForms& f) {
    int n = f.n();
    Rational k0 = koornwinder_constant(1, q + 1, n) * Rational((q + 1) * (n + q + 1));
    Multivector b = beta(n);
    Multivector nbq = detail::beta_lin(n, Rational(n + q), Rational(-1));
    CliffPoly inner = f.lift(nbq) * f.B(q);
    if (q >= 1) inner -= GR(q) * (f.zd() * f.u() * f.B(q - 1));
    return GR(k0) * (f.lift(b) * inner);
}

// Equal degrees p = q >= 0.
inline CliffPoly hermitian_diagonal(int p, HermitianForms& f) {
    int n = f.n();
    Rational k0 = koornwinder_constant(p + 1, p + 1, n) * Rational((p + 1) * (n + 2 * p + 1));
    Multivector bp = detail::beta_lin(n, Rational(p), Rational(1));
    Multivector nbp = detail::beta_lin(n, Rational(n + p), Rational(-1));
    CliffPoly z = f.z(), zd = f.zd(), u = f.u(), ud = f.ud();
    auto J = [](int k, int a, int b) { return jacobi_poly(k, Rational(a), Rational(b)); };
    CliffPoly acc = f.lift(bp * nbp) * f.jacobi_term(0, 0, p, p, J(p, n - 1, 0));
    if (p >= 1) {
        CliffPoly zwz = z * zd - GR(Rational(1, 2)) * f.C(1);
        CliffPoly uwu = u * ud - GR(Rational(1, 2)) * f.D(1);
        UPoly j0 = J(p - 1, n, 0), j1 = J(p - 1, n, 1);
        acc -= GR(p) * (f.lift(bp) * (zwz * f.jacobi_term(0, 0, p - 1, p, j0)));
        acc -= GR(p) * (f.lift(bp) * (uwu * f.jacobi_term(0, 0, p, p - 1, j0)));
        acc -= GR(n + p) * (f.lift(bp) * (zd * u * f.jacobi_term(1, 0, p - 1, p - 1, j1)));
        acc -= GR(n + p) * (f.lift(nbp) * (z * ud * f.jacobi_term(0, 1, p - 1, p - 1, j1)));
        acc += GR(p * (n + 2 * p)) * (z * zd * u * ud * f.jacobi_term(0, 0, p - 1, p - 1, j0));
    }
    return GR(k0) * acc;
}

// Blade-sign anti-automorphism applied after exchanging the slots: the
// closed form for p < q from the one for (q, p).
inline CliffPoly mirror_kernel(const CliffPoly& x) { return tau(swap_slots(x)); }

enum class ClosedCase { SixTerm, QZero, PZero, Diagonal, Mirrored };

inline ClosedCase closed_case(int p, int q) {
    if (p == q) return ClosedCase::Diagonal;
    if (p > q) return q == 0 ? ClosedCase::QZero : ClosedCase::SixTerm;
    return p == 0 ? ClosedCase::PZero : ClosedCase::Mirrored;
}

// dz^dagger dz K_{p+1,q+1} du^dagger du in closed form, every (p, q).
inline CliffPoly hermitian_unnormalized_closed(int p, int q, HermitianForms& f) {
    switch (closed_case(p, q)) {
        case ClosedCase::Diagonal: return hermitian_diagonal(p, f);
        case ClosedCase::QZero: return hermitian_q0(p, f);
        case ClosedCase::SixTerm: return hermitian_six_term(p, q, f);
        case ClosedCase::PZero: return hermitian_p0(q, f);
        case ClosedCase::Mirrored: return mirror_kernel(hermitian_unnormalized_closed(q, p, f));
    }
    throw std::logic_error("unreachable");
}

inline KernelPoly hermitian_kernel_closed(int p, int q, int n, HermitianForms* forms = nullptr) {
    if (n < 2 || p < 0 || q < 0) throw std::invalid_argument("hermitian kernel needs n >= 2, p, q >= 0");
    std::optional<HermitianForms> own;
    if (!forms) forms = &own.emplace(n);
    Normalization d = normalization_dpq(p, q, n);
    return {forms->lift(d.d) * hermitian_unnormalized_closed(p, q, *forms), p, q};
}

// ---------------------------------------------------------------------------
// Operational route with the four stages kept.

struct HermitianTrace {
    CliffPoly harmonic;  // K_{p+1,q+1}
    CliffPoly stage1;    // dz K
    CliffPoly stage2;    // dz^dagger dz K
    CliffPoly stage3;    // (dz^dagger dz K) du^dagger
    CliffPoly stage4;    // (dz^dagger dz K) du^dagger du
};

inline HermitianTrace hermitian_trace(int p, int q, int n, HermitianForms* forms = nullptr) {
    std::optional<HermitianForms> own;
    if (!forms) forms = &own.emplace(n);
    HermitianTrace t;
    t.harmonic = koornwinder_kernel(p + 1, q + 1, n, forms).poly;
    t.stage1 = dirac_z(t.harmonic, 0, Side::Left);
    t.stage2 = dirac_zdag(t.stage1, 0, Side::Left);
    t.stage3 = dirac_zdag(t.stage2, 1, Side::Right);
    t.stage4 = dirac_z(t.stage3, 1, Side::Right);
    return t;
}

// The other operator order: dz dz^dagger K du du^dagger.
inline CliffPoly hermitian_swapped_order(int p, int q, int n, HermitianForms* forms = nullptr) {
    std::optional<HermitianForms> own;
    if (!forms) forms = &own.emplace(n);
    CliffPoly k = koornwinder_kernel(p + 1, q + 1, n, forms).poly;
    CliffPoly s = dirac_z(dirac_zdag(k, 0, Side::Left), 0, Side::Left);
    return dirac_zdag(dirac_z(s, 1, Side::Right), 1, Side::Right);
}

inline KernelPoly hermitian_kernel_operational(int p, int q, int n, HermitianForms* forms = nullptr) {
    if (n < 2 || p < 0 || q < 0) throw std::invalid_argument("hermitian kernel needs n >= 2, p, q >= 0");
    std::optional<HermitianForms> own;
    if (!forms) forms = &own.emplace(n);
    HermitianTrace t = hermitian_trace(p, q, n, forms);
    return {forms->lift(normalization_dpq(p, q, n).d) * t.stage4, p, q};
}

// Closed forms of the first three stages for p > q >= 1.
struct HermitianStages {
    CliffPoly stage1, stage2, stage3;
};

inline HermitianStages hermitian_stages_closed(int p, int q, HermitianForms& f) {
    if (!(p > q && q >= 1)) throw std::invalid_argument("staged forms need p > q >= 1");
    int n = f.n();
    Rational c = koornwinder_constant(p + 1, q + 1, n) * Rational(p + 1);
    auto J = [](int k, int a, int b) { return jacobi_poly(k, Rational(a), Rational(b)); };
    CliffPoly z = f.z(), zd = f.zd(), u = f.u(), ud = f.ud();
    HermitianStages s;
    s.stage1 = GR(c) * (ud * f.jacobi_term(p - q - 1, 0, q + 1, q + 1, J(q + 1, n - 1, p - q - 1)) -
                        zd * f.jacobi_term(p - q, 0, q, q + 1, J(q, n - 1, p - q)));
    Multivector nb = detail::beta_lin(n, Rational(n), Rational(-1));
    CliffPoly s2 = GR(p) * (z * zd * f.jacobi_term(p - q, 0, q - 1, q + 1, J(q - 1, n, p - q)));
    s2 += GR(n + p) * (u * ud * f.jacobi_term(p - q, 0, q, q, J(q, n, p - q)));
    s2 -= GR(p) * (z * ud * f.jacobi_term(p - q - 1, 0, q, q + 1, J(q, n, p - q - 1)));
    s2 -= GR(n + p) * (u * zd * f.jacobi_term(p - q + 1, 0, q - 1, q, J(q - 1, n, p - q + 1)));
    s2 -= f.lift(nb) * f.jacobi_term(p - q, 0, q, q + 1, J(q, n - 1, p - q));
    s.stage2 = GR(c) * s2;
    Multivector bp = detail::beta_lin(n, Rational(p), Rational(1));
    CliffPoly s3 = f.lift(bp) * (u * f.jacobi_term(p - q, 0, q, q, J(q, n - 1, p - q)));
    s3 -= GR(p) * (z * ud * u * f.jacobi_term(p - q - 1, 0, q, q, J(q, n, p - q - 1)));
    s3 += GR(p) * (z * zd * u * f.jacobi_term(p - q, 0, q - 1, q, J(q - 1, n, p - q)));
    s.stage3 = GR(c * Rational(n + p + q + 1)) * s3;
    return s;
}

}  // namespace ck
