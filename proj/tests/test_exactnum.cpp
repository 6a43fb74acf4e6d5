#include <gtest/gtest.h>

#include <random>

#include "ck/exactnum.hpp"

using ck::GR;
using ck::Rational;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

TEST(Pochhammer, HalfIntegerProduct) {
    // (3/2)(5/2)
    EXPECT_EQ(ck::pochhammer(q(3, 2), 2), q(15, 4));
}

TEST(Pochhammer, EmptyProductIsOne) {
    EXPECT_EQ(ck::pochhammer(q(7, 3), 0), q(1));
    EXPECT_EQ(ck::pochhammer(q(-5), 0), q(1));
}

TEST(Pochhammer, FactorialCase) { EXPECT_EQ(ck::pochhammer(q(1), 5), q(120)); }

TEST(Pochhammer, SplitsAdditively) {
    for (Rational a : {q(1, 2), q(1), q(3, 2), q(2)})
        for (int j = 0; j <= 8; ++j)
            for (int k = 0; j + k <= 8; ++k)
                EXPECT_EQ(ck::pochhammer(a, j + k), ck::pochhammer(a, j) * ck::pochhammer(a + Rational(j), k));
}

TEST(Rational, LowestTermsPositiveDenominator) {
    Rational r(6, -4);
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(q(1) / q(0), std::domain_error);
}

TEST(Rational, MatchesGmpOnRandomInputsAcrossOverflow) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> small(-50, 50);
    std::uniform_int_distribution<long long> wide(-(1LL << 62), 1LL << 62);
    for (int it = 0; it < 20000; ++it) {
        auto draw = [&](bool big) {
            long long n = big ? wide(rng) : small(rng);
            long long d = big ? wide(rng) : small(rng);
            if (d == 0) d = 1;
            return Rational(n, d);
        };
        Rational a = draw(it % 3 == 0), b = draw(it % 5 == 0);
        // chain a few operations so values leave and re-enter the int64 range
        Rational c = a * b * a + b;
        mpq_class ma = a.to_mpq(), mb = b.to_mpq();
        mpq_class mc = ma * mb * ma + mb;
        ASSERT_EQ(c.to_mpq(), mc);
        ASSERT_EQ((a - b).to_mpq(), mpq_class(ma - mb));
        if (!b.is_zero()) ASSERT_EQ((a / b).to_mpq(), mpq_class(ma / mb));
        ASSERT_EQ(a < b, ma < mb);
        Rational back = (c - b) - a * b * a;
        ASSERT_TRUE(back.is_zero());
        ASSERT_TRUE(back.is_small());
    }
}

TEST(Rational, BigValuesDemoteWhenTheyFit) {
    Rational big = ck::factorial(30);
    EXPECT_FALSE(big.is_small());
    Rational r = big / ck::factorial(29);
    EXPECT_TRUE(r.is_small());
    EXPECT_EQ(r, q(30));
}

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(Rational::parse("3/4"), q(3, 4));
    EXPECT_EQ(Rational::parse("-6/8"), q(-3, 4));
    EXPECT_EQ(Rational::parse("1.25"), q(5, 4));
    EXPECT_EQ(Rational::parse("-0.5"), q(-1, 2));
    EXPECT_EQ(Rational::parse("123456789012345678901234567890").str(), "123456789012345678901234567890");
    EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
    EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(GaussianRational, ConjugationIsInvolution) {
    GR x(q(1, 2), q(-7, 3));
    EXPECT_EQ(x.conj().conj(), x);
    GR n = x * x.conj();
    EXPECT_TRUE(n.is_real());
    EXPECT_GE(n.re(), q(0));
}

TEST(GaussianRational, FieldAxiomsOnRandomSet) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    auto draw = [&] {
        int den1 = d(rng), den2 = d(rng);
        return GR(Rational(d(rng), den1 ? den1 : 1), Rational(d(rng), den2 ? den2 : 1));
    };
    for (int it = 0; it < 500; ++it) {
        GR a = draw(), b = draw(), c = draw();
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
}

TEST(GaussianRational, ImaginaryUnitSquaresToMinusOne) {
    EXPECT_EQ(GR::i() * GR::i(), GR(-1));
}

TEST(GaussianRational, TextRoundTrip) {
    for (GR g : {GR(q(3, 2)), GR(q(0), q(-1, 2)), GR(q(1, 2), q(3)), GR(q(-2), q(-1)), GR(q(0), q(1))})
        EXPECT_EQ(GR::parse(g.str()), g) << g.str();
    EXPECT_EQ(GR(q(1, 2), q(3, 2)).str(), "(1/2+3/2*i)");
    EXPECT_EQ(GR::parse("2-3*i"), GR(q(2), q(-3)));
    EXPECT_EQ(GR::parse("i"), GR::i());
    EXPECT_EQ(GR::parse("-i"), -GR::i());
    EXPECT_EQ(GR::parse("-1/2+i"), GR(q(-1, 2), q(1)));
}
