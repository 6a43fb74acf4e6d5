#include <gtest/gtest.h>

#include "ck/orthopoly.hpp"

using ck::Rational;
using ck::UPoly;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

UPoly poly(std::vector<Rational> c) { return UPoly(std::move(c)); }

std::vector<Rational> ints(int lo, int hi) {
    std::vector<Rational> v;
    for (int j = lo; j <= hi; ++j) v.push_back(q(j));
    return v;
}

std::string failures(const ck::Report& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (!c.pass) s += c.id + "[" + c.params + "]: " + c.residual + "\n";
    return s;
}

// Independent evaluation of the Gamma-ratio series at a rational point.
Rational jacobi_value(int k, const Rational& a, const Rational& b, const Rational& x) {
    Rational sum(0);
    for (int j = 0; j <= k; ++j) {
        Rational term = ck::binomial(k, j);
        for (int i = 1; i <= j; ++i) term *= a + b + Rational(k + i);
        for (int i = j + 1; i <= k; ++i) term *= a + Rational(i);
        for (int i = 0; i < j; ++i) term *= (x - Rational(1)) / Rational(2);
        sum += term;
    }
    return sum / ck::factorial(k);
}

}  // namespace

TEST(Jacobi, DegreeZeroIsOne) {
    for (Rational a : ints(0, 3))
        for (Rational b : ints(0, 3)) EXPECT_EQ(ck::jacobi(0, a, b).poly, UPoly(q(1)));
}

TEST(Jacobi, DegreeOneExample) {
    // 2 + (3/2)(x - 1) = (3x + 1)/2
    EXPECT_EQ(ck::jacobi(1, q(1), q(0)).poly, poly({q(1, 2), q(3, 2)}));
}

TEST(Jacobi, MinusOneIsZero) {
    auto p = ck::jacobi(-1, q(2), q(1, 2));
    EXPECT_TRUE(p.poly.is_zero());
    EXPECT_EQ(p.degree, -1);
    EXPECT_EQ(p.poly.degree(), -1);
}

TEST(Jacobi, MatchesPointwiseSeriesAndDegree) {
    for (int k = 0; k <= 6; ++k)
        for (Rational a : {q(0), q(1, 2), q(3)})
            for (Rational b : {q(0), q(5, 2)}) {
                UPoly p = ck::jacobi_poly(k, a, b);
                EXPECT_EQ(p.degree(), k);
                for (Rational x : {q(-2), q(1, 3), q(3, 2)}) EXPECT_EQ(p(x), jacobi_value(k, a, b, x));
            }
}

TEST(Jacobi, RejectsParametersOutOfRange) {
    EXPECT_THROW(ck::jacobi(2, q(-1), q(0)), std::invalid_argument);
    EXPECT_THROW(ck::gegenbauer(2, q(-1, 2)), std::invalid_argument);
}

TEST(Gegenbauer, LowDegrees) {
    EXPECT_EQ(ck::gegenbauer(0, q(7, 2)).poly, UPoly(q(1)));
    for (Rational mu : {q(1, 2), q(1), q(5, 2)}) EXPECT_EQ(ck::gegenbauer(1, mu).poly, poly({q(0), q(2) * mu}));
    EXPECT_EQ(ck::gegenbauer(3, q(1)).poly, poly({q(0), q(-4), q(0), q(8)}));
}

TEST(Gegenbauer, JacobiBridge) {
    auto r = ck::verify_gegenbauer_jacobi_bridge(8, {q(1, 2), q(1), q(3, 2), q(2)});
    EXPECT_TRUE(r.ok()) << failures(r);
}

TEST(JacobiRelations, FullGrid) {
    auto r = ck::verify_jacobi_recurrences(6, ints(0, 4));
    EXPECT_TRUE(r.ok()) << failures(r);
    EXPECT_EQ(r.checks.size(), 25u * (8 * 3 + 7 * 2));
}

TEST(JacobiRelations, DerivativeExample) {
    // d/dx P_2^{1,1} = (1/2)(2+1+1+1) P_1^{2,2}
    EXPECT_EQ(ck::jacobi_poly(2, q(1), q(1)).derivative(), q(5, 2) * ck::jacobi_poly(1, q(2), q(2)));
}

TEST(JacobiRelations, FormalMinusOneOfThirdRelation) {
    // at k = -1 only the degree-0 terms survive: (a+b+1)*1 = (a+b+1)*1
    for (Rational a : ints(0, 4))
        for (Rational b : ints(0, 4)) {
            UPoly lhs = (a + b + q(1)) * ck::jacobi_poly(0, a, b + q(1)) + a * ck::jacobi_poly(-1, a, b + q(1));
            UPoly rhs = (a + b + q(1)) * ck::jacobi_poly(0, a, b);
            EXPECT_EQ(lhs, rhs);
        }
}

TEST(JacobiSpecial, FullGrid) {
    auto r = ck::verify_jacobi_special(6, {2, 3, 4}, 6);
    EXPECT_TRUE(r.ok()) << failures(r);
}

TEST(JacobiSpecial, ExpansionAtQZero) {
    for (int n : {2, 3, 4})
        for (int p = 1; p <= 6; ++p)
            EXPECT_EQ(ck::binomial(n - 1 + p, p), q(n - 1 + p, n - 1) * ck::binomial(n - 2 + p, p));
}

TEST(JacobiSpecial, FormalMinusOneOfFirstRelation) {
    // q = -1: (p+1) P_0^{n-2,p+1} = (p+1) P_0^{n-1,p}
    for (int n : {2, 3, 4})
        for (int p = 0; p <= 6; ++p) {
            UPoly P = ck::jacobi_poly(0, q(n - 2), q(p + 1));
            UPoly two_s = UPoly::x() + UPoly(q(1));
            EXPECT_EQ(q(p + 1) * P + two_s * P.derivative(), q(p + 1) * ck::jacobi_poly(0, q(n - 1), q(p)));
        }
}

TEST(GegenbauerRelations, FullGrid) {
    auto r = ck::verify_gegenbauer_relations(8, {q(1, 2), q(1), q(3, 2), q(2), q(5, 2)});
    EXPECT_TRUE(r.ok()) << failures(r);
    EXPECT_EQ(r.checks.size(), 5u * 9 * 5);
}

TEST(GegenbauerRelations, EulerExample) {
    // 2(4t^2 - 1) - t(8t) = -2
    UPoly C = ck::gegenbauer_poly(2, q(1));
    EXPECT_EQ(q(2) * C - UPoly::x() * C.derivative(), UPoly(q(-2)));
    EXPECT_EQ(q(-2) * ck::gegenbauer_poly(0, q(2)), UPoly(q(-2)));
}

TEST(GegenbauerRelations, DerivativeAtDegreeOne) {
    for (Rational mu : {q(1, 2), q(2)}) EXPECT_EQ(ck::gegenbauer_poly(1, mu).derivative(), UPoly(q(2) * mu));
}

TEST(UPoly, Arithmetic) {
    UPoly x = UPoly::x();
    EXPECT_EQ((x + UPoly(q(1))) * (x - UPoly(q(1))), x * x - UPoly(q(1)));
    EXPECT_EQ((x * x).compose_affine(q(2), q(-1)), poly({q(1), q(-4), q(4)}));
    EXPECT_EQ(poly({q(1), q(0), q(-3, 2)}).str(), "-3/2*x^2 + 1");
}
