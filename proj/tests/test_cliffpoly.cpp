#include <gtest/gtest.h>

#include "ck/cliffpoly.hpp"
#include "support.hpp"

using namespace ck;
using cktest::q;

namespace {

Roster real1(int m) { return {m, 1, Chart::Real}; }
Roster cplx1(int n) { return {2 * n, 1, Chart::Complex}; }

CliffPoly x_vector(int m) { return vec_x(CliffPoly::constant(real1(m), GR(1))); }

// <x, y> in a two-slot roster
CliffPoly dot_xy(Roster r2) {
    CliffPoly s(r2);
    for (int k = 0; k < r2.m; ++k) s += CliffPoly::linear(r2, real_coord(r2, 0, k)) * CliffPoly::linear(r2, real_coord(r2, 1, k));
    return s;
}

CliffPoly pow(const CliffPoly& p, int k) {
    CliffPoly r = CliffPoly::constant(p.roster(), GR(1));
    for (int j = 0; j < k; ++j) r = r * p;
    return r;
}

}  // namespace

TEST(Operators, DiracOfVectorVariable) {
    for (int m = 1; m <= 5; ++m)
        EXPECT_EQ(dirac(x_vector(m)), CliffPoly::constant(real1(m), GR(-m)));
    EXPECT_EQ(apply(OperatorTag::DiracX_left, x_vector(3)), CliffPoly::constant(real1(3), GR(-3)));
}

TEST(Operators, HermitianDiracOfVectorVariableIsBeta) {
    for (int n = 1; n <= 3; ++n)
        for (Chart ch : {Chart::Real, Chart::Complex}) {
            Roster r{2 * n, 1, ch};
            CliffPoly z = vec_z(CliffPoly::constant(r, GR(1)));
            EXPECT_EQ(apply(OperatorTag::DiracZ, z), CliffPoly::constant(r, beta(n)));
        }
}

TEST(Operators, EulerOnMonomial) {
    Roster r = real1(3);
    CliffPoly p = CliffPoly::parse(r, "x1^2*x2");
    EXPECT_EQ(apply(OperatorTag::EulerE, p), GR(3) * p);
}

TEST(Operators, RightActionOnlyForDirac) {
    CliffPoly p = x_vector(3);
    EXPECT_THROW(apply(OperatorTag::EulerE, p, Side::Right), std::invalid_argument);
    EXPECT_THROW(apply(OperatorTag::DiracZ, p), std::invalid_argument);  // odd dimension
}

TEST(Laplace, Examples) {
    for (int m = 2; m <= 4; ++m) {
        Roster r = real1(m);
        EXPECT_EQ(laplacian(CliffPoly::parse(r, "x1^2 + x2^2")), CliffPoly::constant(r, GR(4)));
        EXPECT_TRUE(laplacian(CliffPoly::parse(r, "x1^2 - x2^2")).is_zero());
    }
}

TEST(Laplace, MinusDiracSquaredOnRandomInputs) {
    std::mt19937 rng(21);
    for (int it = 0; it < 50; ++it) {
        int m = 1 + it % 5, d = it % 5;
        CliffPoly p = cktest::random_poly(rng, real1(m), d, 4);
        EXPECT_EQ(laplacian(p), -dirac(dirac(p)));
    }
}

TEST(Laplace, ComplexFactorizations) {
    std::mt19937 rng(22);
    for (int it = 0; it < 30; ++it) {
        int n = 1 + it % 3;
        for (Chart ch : {Chart::Real, Chart::Complex}) {
            CliffPoly p = cktest::random_poly(rng, {2 * n, 1, ch}, it % 5, 4);
            EXPECT_EQ(laplacian(p), laplacian_complex(p));
            // the Hermitian Dirac pair anticommutes to a quarter of the Laplacian
            EXPECT_EQ(GR(4) * (dirac_z(dirac_zdag(p)) + dirac_zdag(dirac_z(p))), laplacian(p));
        }
    }
}

TEST(Superalgebra, OrthosymplecticRelations) {
    auto r = verify_osp12(3, 4);
    EXPECT_TRUE(r.ok()) << cktest::failures(r);
    EXPECT_EQ(r.checks.size(), 35u);
    // constant input: {x, dx} 1 = -m
    CliffPoly one = CliffPoly::constant(real1(3), GR(1));
    EXPECT_EQ(vec_x(dirac(one)) + dirac(vec_x(one)), CliffPoly::constant(real1(3), GR(-3)));
}

TEST(Superalgebra, SpecialLinearRelationsBothCharts) {
    for (Chart ch : {Chart::Complex, Chart::Real}) {
        auto r = verify_sl12(2, 3, ch);
        EXPECT_TRUE(r.ok()) << cktest::failures(r);
    }
}

TEST(Euler, ComplexSplit) {
    auto r = verify_laplace_factorizations(4, 4, Chart::Real);
    EXPECT_TRUE(r.ok()) << cktest::failures(r);
}

TEST(Fischer, PowerOfOneVariable) {
    for (int k = 0; k <= 6; ++k) {
        CliffPoly p = CliffPoly::monomial(real1(2), mono::var(0, k));
        EXPECT_EQ(fischer_inner(p, p), Multivector(2, GR(factorial(k))));
    }
}

TEST(Fischer, DistinctDegreesAreOrthogonal) {
    std::mt19937 rng(23);
    for (int it = 0; it < 40; ++it) {
        int m = 2 + it % 3;
        Roster r = it % 2 ? real1(m) : Roster{4, 1, Chart::Complex};
        CliffPoly p = cktest::random_poly(rng, r, 2, 4), qq = cktest::random_poly(rng, r, 3, 4);
        EXPECT_TRUE(fischer_inner(p, qq).is_zero());
        EXPECT_TRUE(fischer_inner(qq, p).is_zero());
    }
}

TEST(Fischer, ScaledDotPowerReproducesHomogeneous) {
    std::mt19937 rng(24);
    for (int m = 1; m <= 4; ++m)
        for (int k = 0; k <= 3; ++k) {
            Roster r2{m, 2, Chart::Real};
            CliffPoly z = GR(factorial(k).inverse()) * pow(dot_xy(r2), k);
            for (int it = 0; it < 3; ++it) {
                CliffPoly p = cktest::random_poly(rng, real1(m), k, 5);
                EXPECT_EQ(fischer_pair(z, p), p);
                CliffPoly other = cktest::random_poly(rng, real1(m), k + 1, 3);
                EXPECT_TRUE(fischer_pair(z, other).is_zero());
            }
        }
}

TEST(Fischer, ConjugateSymmetry) {
    std::mt19937 rng(25);
    for (int it = 0; it < 40; ++it) {
        Roster r = it % 2 ? real1(3) : cplx1(2);
        CliffPoly a = cktest::random_poly(rng, r, 2, 5), b = cktest::random_poly(rng, r, 2, 5);
        EXPECT_EQ(fischer_inner(a, b).dagger(), fischer_inner(b, a));
        EXPECT_EQ(sphere_inner(a, b).dagger(), sphere_inner(b, a));
    }
}

TEST(Sphere, NormalizedMoments) {
    for (int m = 1; m <= 5; ++m) {
        Roster r = real1(m);
        CliffPoly one = CliffPoly::constant(r, GR(1)), x1 = CliffPoly::variable(r, 0);
        EXPECT_EQ(sphere_inner(one, one), Multivector(m, GR(1)));
        EXPECT_EQ(sphere_inner(x1, x1), Multivector(m, GR(Rational(1, m))));
        // |x|^2 averages to 1
        CliffPoly sq(r);
        for (int k = 0; k < m; ++k) sq += CliffPoly::variable(r, k) * CliffPoly::variable(r, k);
        EXPECT_EQ(sphere_inner(one, sq), Multivector(m, GR(1)));
    }
}

TEST(Duality, EuclideanAndHermitian) {
    for (int m : {2, 3, 4}) {
        auto r = verify_duality(m, 3);
        EXPECT_TRUE(r.ok()) << cktest::failures(r);
        EXPECT_FALSE(r.checks.empty());
    }
}

TEST(Duality, SingleVectorExample) {
    Roster r = real1(3);
    CliffPoly p = CliffPoly::parse(r, "e1*x1"), one = CliffPoly::constant(r, GR(1));
    // dx(e1 x1) = e1 e1 = -1 and <-1, 1> = -1; x*1 = sum e_k x_k and <e1 x1, e1 x1> = e1^dagger e1 = 1
    EXPECT_EQ(fischer_inner(dirac(p), one), Multivector(3, GR(-1)));
    EXPECT_EQ(fischer_inner(p, vec_x(one)), Multivector(3, GR(1)));
}

TEST(RightDirac, ConjugateOfRightActionIsMinusLeftAction) {
    std::mt19937 rng(26);
    for (int it = 0; it < 50; ++it) {
        int m = 1 + it % 5;
        CliffPoly p = cktest::random_poly(rng, real1(m), 1 + it % 4, 5);
        EXPECT_EQ(dagger(dirac(p, 0, Side::Right)), -dirac(dagger(p)));
    }
}

TEST(Charts, ConversionRoundTrip) {
    std::mt19937 rng(27);
    for (int it = 0; it < 30; ++it) {
        int n = 1 + it % 3;
        Roster r{2 * n, 1 + it % 2, Chart::Real};
        CliffPoly p = cktest::random_poly(rng, r, it % 4, 5);
        CliffPoly c = convert(p, Chart::Complex);
        EXPECT_EQ(c.roster().chart, Chart::Complex);
        EXPECT_EQ(convert(c, Chart::Real), p);
    }
}

TEST(Charts, OperatorsCommuteWithConversion) {
    std::mt19937 rng(28);
    for (int it = 0; it < 20; ++it) {
        int n = 1 + it % 3;
        CliffPoly p = cktest::random_poly(rng, {2 * n, 1, Chart::Real}, 1 + it % 3, 5);
        CliffPoly c = convert(p, Chart::Complex);
        auto same = [&](const CliffPoly& a, const CliffPoly& b) { EXPECT_EQ(convert(a, Chart::Complex), b); };
        same(dirac(p), dirac(c));
        same(dirac(p, 0, Side::Right), dirac(c, 0, Side::Right));
        same(dirac_z(p), dirac_z(c));
        same(dirac_zdag(p, 0, Side::Right), dirac_zdag(c, 0, Side::Right));
        same(vec_x(p), vec_x(c));
        same(vec_z(p), vec_z(c));
        same(vec_zdag(p), vec_zdag(c));
        same(euler_z(p), euler_z(c));
        same(laplacian(p), laplacian(c));
        same(dagger(p), dagger(c));
        same(complex_conj(p), complex_conj(c));
    }
}

TEST(Charts, PairingsAgreeAcrossCharts) {
    std::mt19937 rng(29);
    for (int it = 0; it < 20; ++it) {
        int n = 1 + it % 2, d = it % 3;
        Roster r{2 * n, 1, Chart::Real};
        CliffPoly a = cktest::random_poly(rng, r, d, 4), b = cktest::random_poly(rng, r, d + (it % 4 == 0 ? 2 : 0), 4);
        CliffPoly ac = convert(a, Chart::Complex), bc = convert(b, Chart::Complex);
        EXPECT_EQ(fischer_inner(a, b), fischer_inner(ac, bc));
        EXPECT_EQ(sphere_inner(a, b), sphere_inner(ac, bc));
        Roster r2{2 * n, 2, Chart::Real};
        CliffPoly k = cktest::random_poly(rng, r2, 2 * d, 6);
        EXPECT_EQ(convert(fischer_pair(k, b), Chart::Complex), fischer_pair(convert(k, Chart::Complex), bc));
        EXPECT_EQ(convert(sphere_pair(k, b), Chart::Complex), sphere_pair(convert(k, Chart::Complex), bc));
    }
}

TEST(Text, RoundTripAndErrors) {
    std::mt19937 rng(30);
    for (int it = 0; it < 40; ++it) {
        Roster r = it % 2 ? Roster{3, 2, Chart::Real} : Roster{4, 2, Chart::Complex};
        CliffPoly p = cktest::random_poly(rng, r, it % 4, 5);
        EXPECT_EQ(CliffPoly::parse(r, p.str()), p) << p.str();
    }
    Roster r{3, 1, Chart::Real};
    EXPECT_EQ(CliffPoly::parse(r, "3*x1*x1 + x2").str(), "3*x1^2 + x2");
    EXPECT_EQ(CliffPoly::parse(r, "1/2*e13*x1^2").str(), "1/2*e13*x1^2");
    EXPECT_EQ(CliffPoly(r).str(), "0");
    try {
        CliffPoly::parse(r, "x1 + w2");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5u);
    }
}

TEST(Mono, EncodingOrderAndOverflow) {
    Mono a = mono::from_exps({2, 0, 1}), b = mono::from_exps({1, 1, 1});
    EXPECT_EQ(mono::degree(a), 3);
    EXPECT_GT(a, b);  // same degree, larger first exponent
    EXPECT_GT(mono::from_exps({0, 0, 4}), a);  // higher degree first
    EXPECT_EQ(mono::mul(a, b), mono::from_exps({3, 1, 2}));
    EXPECT_THROW(mono::mul(mono::var(3, 15), mono::var(3, 1)), std::overflow_error);
    EXPECT_EQ(monomials_of_degree(4, 3).size(), 20u);
}
