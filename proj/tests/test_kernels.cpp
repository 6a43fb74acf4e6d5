#include <gtest/gtest.h>

#include "ck/kernels.hpp"
#include "ck/spaces.hpp"
#include "ck/suites.hpp"
#include "support.hpp"

using namespace ck;
using cktest::q;

namespace {

Roster real2(int m) { return {m, 2, Chart::Real}; }

CliffPoly var(const Roster& r, int v) { return CliffPoly::variable(r, v); }

// sum_i x_i y_i built from variables directly
CliffPoly dot_xy(int m) {
    Roster r = real2(m);
    CliffPoly s(r);
    for (int i = 0; i < m; ++i) s += var(r, i) * var(r, m + i);
    return s;
}

// x ^ y = sum_{i<j} e_ij (x_i y_j - x_j y_i)
CliffPoly wedge_xy(int m) {
    Roster r = real2(m);
    CliffPoly s(r);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            CliffPoly e = CliffPoly::constant(r, Multivector::blade(m, Blade((1u << i) | (1u << j))));
            s += e * (var(r, i) * var(r, m + j) - var(r, j) * var(r, m + i));
        }
    return s;
}

CliffPoly sq(int m, int slot) {
    Roster r = real2(m);
    CliffPoly s(r);
    for (int i = 0; i < m; ++i) s += var(r, slot * m + i) * var(r, slot * m + i);
    return s;
}

// <z, u> = sum_j z_j conj(u_j) in the two-slot complex chart
CliffPoly zu(int n) {
    Roster r{2 * n, 2, Chart::Complex};
    CliffPoly s(r);
    for (int j = 0; j < n; ++j) s += var(r, j) * var(r, 2 * n + n + j);
    return s;
}

std::string fails(const Report& r) { return cktest::failures(r); }

}  // namespace

// ---------------------------------------------------------------------------
// zonal harmonics

TEST(Zonal, DegreeZeroIsOne) {
    for (int m = 2; m <= 5; ++m) EXPECT_EQ(zonal_harmonic(0, m).poly, CliffPoly::constant(real2(m), GR(1)));
}

TEST(Zonal, DegreeOneIsMTimesDot) {
    for (int m = 2; m <= 6; ++m) EXPECT_EQ(zonal_harmonic(1, m).poly, GR(m) * dot_xy(m));
}

TEST(Zonal, PlaneLimitIsTwiceChebyshev) {
    // m = 2: 2 T_2(t) |x|^2|y|^2 = 2(2<x,y>^2 - |x|^2|y|^2)
    CliffPoly d = dot_xy(2);
    CliffPoly want = GR(2) * (GR(2) * d * d - sq(2, 0) * sq(2, 1));
    EXPECT_EQ(zonal_harmonic(2, 2).poly, want);
}

TEST(Zonal, DegreeTwoInThreeDimensions) {
    // (k+mu)/mu C_2^mu(t) with mu = 1/2: 5 P_2(t) = 5(3t^2 - 1)/2
    CliffPoly d = dot_xy(3);
    CliffPoly want = GR(q(15, 2)) * d * d - GR(q(5, 2)) * sq(3, 0) * sq(3, 1);
    EXPECT_EQ(zonal_harmonic(2, 3).poly, want);
}

TEST(Zonal, ReproducesHarmonics) {
    Report r = check_zonal(3, 2);
    EXPECT_TRUE(r.ok()) << fails(r);
    EXPECT_GT(r.checks.size(), 0u);
}

TEST(Zonal, OddProfileRejected) { EXPECT_THROW(expand_zonal(UPoly::x(), 2, dot_xy(3), sq(3, 0) * sq(3, 1)), std::logic_error); }

TEST(FischerKernel, ReproducesPolynomials) {
    Report r = check_fischer_kernel(3, 2);
    EXPECT_TRUE(r.ok()) << fails(r);
}

TEST(FischerKernel, IsPowerOfDotOverFactorial) {
    CliffPoly d = dot_xy(3);
    EXPECT_EQ(fischer_kernel(3, 3).poly, GR(q(1, 6)) * d * d * d);
}

// ---------------------------------------------------------------------------
// monogenic kernel

TEST(Monogenic, DegreeZeroIsOne) {
    EXPECT_EQ(monogenic_kernel_closed(0, 3).poly, CliffPoly::constant(real2(3), GR(1)));
    EXPECT_EQ(monogenic_kernel_operational(0, 3).poly, CliffPoly::constant(real2(3), GR(1)));
}

TEST(Monogenic, DegreeOneBothRoutes) {
    for (int m = 3; m <= 5; ++m) {
        CliffPoly want = GR(m - 1) * dot_xy(m) + wedge_xy(m);
        EXPECT_EQ(monogenic_kernel_closed(1, m).poly, want) << "m=" << m;
        EXPECT_EQ(monogenic_kernel_operational(1, m).poly, want) << "m=" << m;
    }
}

TEST(Monogenic, FourDimensionalExample) {
    CliffPoly want = GR(3) * dot_xy(4) + wedge_xy(4);
    EXPECT_EQ(monogenic_kernel_operational(1, 4).poly, want);
}

TEST(Monogenic, ClosedEqualsOperationalAndReproduces) {
    for (int k = 0; k <= 2; ++k) {
        Report r = check_monogenic_kernel(3, k, 2);
        EXPECT_TRUE(r.ok()) << fails(r);
    }
}

TEST(Monogenic, NeedsThreeDimensions) { EXPECT_THROW(monogenic_kernel_operational(1, 2), std::invalid_argument); }

// ---------------------------------------------------------------------------
// Hermitian building blocks

TEST(Koornwinder, DegreeZeroIsOne) {
    for (int n = 2; n <= 3; ++n)
        EXPECT_EQ(koornwinder_kernel(0, 0, n).poly, CliffPoly::constant(Roster{2 * n, 2, Chart::Complex}, GR(1)));
}

TEST(Koornwinder, DegreeOneZero) {
    // n = 2: printed and corrected constants agree, n/(n-1) <z,u> = 2<z,u>
    EXPECT_EQ(koornwinder_kernel(1, 0, 2).poly, GR(2) * zu(2));
    EXPECT_EQ(koornwinder_constant_printed(1, 0, 2), q(2));
    // n = 3: the reproducing kernel is n<z,u>; the printed constant gives half of it
    EXPECT_EQ(koornwinder_kernel(1, 0, 3).poly, GR(3) * zu(3));
    EXPECT_EQ(koornwinder_constant_printed(1, 0, 3), q(3, 2));
}

TEST(Koornwinder, PrintedConstantRatio) {
    for (int p = 0; p <= 3; ++p)
        for (int qq = 0; qq <= 3; ++qq) {
            EXPECT_EQ(koornwinder_constant(p, qq, 2), koornwinder_constant_printed(p, qq, 2));
            EXPECT_EQ(koornwinder_constant_printed(p, qq, 3) / koornwinder_constant(p, qq, 3), q(1, std::max(p, qq) + 1));
        }
}

TEST(Koornwinder, ConstantMatchesDimensionOverJacobiAtOne) {
    // dim H_{p,q} / P_q^{(n-2, p-q)}(1), p >= q
    for (int n = 2; n <= 3; ++n)
        for (int p = 0; p <= 2; ++p)
            for (int qq = 0; qq <= p; ++qq) {
                Rational at1 = jacobi_poly(qq, Rational(n - 2), Rational(p - qq))(Rational(1));
                EXPECT_EQ(koornwinder_constant(p, qq, n), Rational(dim(space_Hpq(n, p, qq))) / at1) << n << p << qq;
            }
}

TEST(Koornwinder, ReproducesAndIsSymmetric) {
    Report r = check_koornwinder(2, 1);
    EXPECT_TRUE(r.ok()) << fails(r);
}

TEST(FischerKernelComplex, HandCheckOneVariable) {
    // n = 1, (p,q) = (1,0): z conj(u) / 2; pairing with z gives u
    Roster r{2, 2, Chart::Complex};
    CliffPoly zub = var(r, 0) * var(r, 3);
    EXPECT_EQ(fischer_kernel_complex(1, 0, 1).poly, GR(q(1, 2)) * zub);
    EXPECT_EQ(fischer_kernel_complex_unscaled(1, 0, 1).poly, zub);
    Roster r1{2, 1, Chart::Complex};
    CliffPoly z = var(r1, 0);
    EXPECT_EQ(fischer_pair(fischer_kernel_complex(1, 0, 1).poly, z), z);
}

TEST(FischerKernelComplex, Reproduces) {
    Report r = check_fischer_kernel_complex(2, 1);
    EXPECT_TRUE(r.ok()) << fails(r);
}

// ---------------------------------------------------------------------------
// normalization

TEST(Normalization, LagrangeLinear) {
    // n = 1: L_0 = 1 - beta, L_1 = beta
    Multivector b = beta(1), one(2, GR(1));
    EXPECT_EQ(lagrange_beta(1, 0), one - b);
    EXPECT_EQ(lagrange_beta(1, 1), b);
}

TEST(Normalization, IdentityWithoutPoles) {
    for (int n = 1; n <= 3; ++n) {
        Normalization d = normalization_dpq(1, 1, n);
        EXPECT_TRUE(d.pole_nodes.empty());
        Multivector one(2 * n, GR(1)), b = beta(n);
        Multivector lhs = GR(rpow(Rational(n + 3), 2)) * (GR(n + 1) * one - b) * (b + one) * d.d;
        EXPECT_EQ(lhs, one) << "n=" << n;
    }
}

TEST(Normalization, PoleNodesFlagged) {
    EXPECT_EQ(normalization_dpq(0, 0, 2).pole_nodes, (std::vector<int>{0, 2}));
    EXPECT_EQ(normalization_dpq(0, 1, 3).pole_nodes, (std::vector<int>{0}));
    EXPECT_EQ(normalization_dpq(2, 0, 3).pole_nodes, (std::vector<int>{3}));
    EXPECT_EQ(normalization_dpq(0, 0, 2).node_values[0], q(0));
    EXPECT_EQ(normalization_dpq(1, 1, 2).node_values[1], q(1, 25 * 2 * 2));  // (2+1+1+1)^2 (2-1+1)(1+1)
}

TEST(Normalization, SuiteSmallGrid) {
    Report r = check_normalization(2, 2);
    r.append(check_lagrange(3));
    EXPECT_TRUE(r.ok()) << fails(r);
}

// ---------------------------------------------------------------------------
// Hermitian kernel

TEST(Hermitian, ClosedCaseSelection) {
    EXPECT_EQ(closed_case(2, 1), ClosedCase::SixTerm);
    EXPECT_EQ(closed_case(2, 0), ClosedCase::QZero);
    EXPECT_EQ(closed_case(0, 2), ClosedCase::PZero);
    EXPECT_EQ(closed_case(1, 1), ClosedCase::Diagonal);
    EXPECT_EQ(closed_case(1, 2), ClosedCase::Mirrored);
}

TEST(Hermitian, StagedTraceTwoOneTwo) {
    Report r = check_hermitian_stages(2, 1, 2);
    EXPECT_TRUE(r.ok()) << fails(r);
    EXPECT_EQ(r.checks.size(), 3u);
}

TEST(Hermitian, ClosedEqualsOperationalSmall) {
    for (auto [p, qq] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}) {
        Report r = check_hermitian_closed(p, qq, 2);
        EXPECT_TRUE(r.ok()) << fails(r);
    }
}

TEST(Hermitian, QZeroFormByHand) {
    // p = 1, q = 0 before normalization: c (n - beta)((beta + 1) A - z u^dagger)
    int n = 2;
    HermitianForms f(n);
    Multivector one(4, GR(1)), b = beta(n);
    Rational c = koornwinder_constant(2, 1, n) * Rational(2 * (n + 2));
    CliffPoly want = GR(c) * (f.lift(GR(n) * one - b) * (f.lift(b + one) * zu(n) - f.z() * f.ud()));
    EXPECT_EQ(hermitian_unnormalized_closed(1, 0, f), want);
}

TEST(Hermitian, ConjugateSymmetryOfKernels) {
    HermitianForms f(2);
    for (int p = 0; p <= 2; ++p)
        for (int qq = 0; qq <= 2; ++qq) {
            CliffPoly a = koornwinder_kernel(p, qq, 2, &f).poly, b = koornwinder_kernel(qq, p, 2, &f).poly;
            EXPECT_EQ(a, complex_conj(b));
            EXPECT_EQ(a, swap_slots(b));
        }
}

TEST(Hermitian, RepIdentitiesAwayFromPoles) {
    Report r = check_rep_hermitian(1, 1, 2, 1);
    EXPECT_TRUE(r.ok()) << fails(r);
    for (const char* id : {"rep3", "rep4", "rep5", "rep6"})
        EXPECT_TRUE(std::any_of(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.id == id; })) << id;
}

TEST(Hermitian, PoleSectorIsNotReproduced) {
    // n = 2, (p,q) = (1,0): the node j = 2 is dropped, and M^{(2)}_{1,0} is nonzero
    Report r = check_rep_hermitian(1, 0, 2, 1);
    std::vector<std::string> failing;
    for (const auto& c : r.checks)
        if (!c.pass) failing.push_back(c.id + "[" + c.params + "]");
    ASSERT_EQ(failing.size(), 1u) << fails(r);
    EXPECT_EQ(failing[0], "rep3[n=2,p=1,q=0,s=1,t=0,j=2,dimM=2,pole]");
}

TEST(Hermitian, RegularizedQZeroKernelReproducesPoleSector) {
    // Cancelling (n - beta) against the vanishing factor before evaluating the
    // pole node gives sum_j L_j / ((n+p+1)^2 (j+p)) times the remaining factor.
    for (int n = 2; n <= 3; ++n)
        for (int p = 1; p <= 2; ++p) {
            HermitianForms f(n);
            Multivector dreg(2 * n);
            for (int j = 0; j <= n; ++j) dreg += GR(Rational(1) / (rpow(Rational(n + p + 1), 2) * Rational(j + p))) * lagrange_beta(n, j);
            Rational c = koornwinder_constant(p + 1, 1, n) * Rational((p + 1) * (n + p + 1));
            CliffPoly inner = f.lift(beta(n) + Multivector(2 * n, GR(p))) * f.A(p) - GR(p) * (f.z() * f.ud() * f.A(p - 1));
            Pairing pair(GR(c) * (f.lift(dreg) * inner), true);
            for (int j = 0; j <= n; ++j)
                for (const auto& m : basis(space_Mj(n, p, 0, j))->elements) EXPECT_EQ(pair(m), m) << n << p << j;
        }
}

TEST(Hermitian, HMonogenic) {
    for (int p = 0; p <= 2; ++p)
        for (int qq = 0; qq <= 2; ++qq) {
            CliffPoly k = hermitian_kernel_closed(p, qq, 2).poly;
            EXPECT_TRUE(dirac_z(k).is_zero());
            EXPECT_TRUE(dirac_zdag(k).is_zero());
        }
}

TEST(Hermitian, OperationalMatchesClosedWithNormalization) {
    EXPECT_EQ(hermitian_kernel_operational(2, 1, 2).poly, hermitian_kernel_closed(2, 1, 2).poly);
}

TEST(Hermitian, RejectsBadParameters) {
    EXPECT_THROW(hermitian_kernel_closed(1, 1, 1), std::invalid_argument);
    EXPECT_THROW(normalization_dpq(-1, 0, 2), std::invalid_argument);
    HermitianForms f(2);
    EXPECT_THROW(hermitian_six_term(1, 1, f), std::invalid_argument);
}
