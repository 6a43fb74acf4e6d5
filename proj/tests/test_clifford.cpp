#include <gtest/gtest.h>

#include <random>

#include "ck/clifford.hpp"

using ck::Blade;
using ck::GR;
using ck::Multivector;
using ck::Rational;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

Multivector scalar(int m, const GR& c) { return Multivector(m, c); }

// Product of two blades by sorting the concatenated index list with adjacent
// swaps, then cancelling equal neighbours with e_i^2 = -1.
std::pair<int, Blade> naive_blade_product(Blade a, Blade b, int m) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
        if (a >> i & 1) idx.push_back(i);
    for (int i = 0; i < m; ++i)
        if (b >> i & 1) idx.push_back(i);
    int sign = 1;
    for (std::size_t p = 0; p < idx.size(); ++p)
        for (std::size_t k = 0; k + 1 < idx.size() - p; ++k)
            if (idx[k] > idx[k + 1]) {
                std::swap(idx[k], idx[k + 1]);
                sign = -sign;
            }
    Blade r = 0;
    for (std::size_t k = 0; k < idx.size();) {
        if (k + 1 < idx.size() && idx[k] == idx[k + 1]) {
            sign = -sign;
            k += 2;
        } else {
            r |= Blade(1) << idx[k];
            ++k;
        }
    }
    return {sign, r};
}

Multivector random_mv(std::mt19937& rng, int m, int terms) {
    std::uniform_int_distribution<int> blade(0, (1 << m) - 1), c(-4, 4);
    std::vector<Multivector::Term> t;
    for (int k = 0; k < terms; ++k) t.emplace_back(Blade(blade(rng)), GR(Rational(c(rng)), Rational(c(rng), 2)));
    return Multivector::from_terms(m, std::move(t));
}

}  // namespace

TEST(Clifford, GeneratorsSquareToMinusOne) {
    EXPECT_EQ(Multivector::e(3, 1) * Multivector::e(3, 1), scalar(3, GR(-1)));
}

TEST(Clifford, GeneratorsAnticommute) {
    Multivector e12 = Multivector::blade(3, 0b11);
    EXPECT_EQ(Multivector::e(3, 1) * Multivector::e(3, 2), e12);
    EXPECT_EQ(Multivector::e(3, 2) * Multivector::e(3, 1), -e12);
}

TEST(Clifford, AnticommutatorRelationsUpToSix) {
    for (int m = 1; m <= 6; ++m)
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k) {
                Multivector a = Multivector::e(m, j), b = Multivector::e(m, k);
                EXPECT_EQ(a * b + b * a, scalar(m, GR(j == k ? -2 : 0)));
            }
}

TEST(Clifford, BladeSignMatchesSortingOracle) {
    for (int m = 1; m <= 6; ++m)
        for (Blade a = 0; a < (Blade(1) << m); ++a)
            for (Blade b = 0; b < (Blade(1) << m); ++b) {
                auto [s, r] = naive_blade_product(a, b, m);
                ASSERT_EQ(r, a ^ b);
                ASSERT_EQ(s, ck::blade_sign(a, b)) << a << " " << b;
            }
}

TEST(Clifford, UnitAndAssociativity) {
    std::mt19937 rng(3);
    for (int it = 0; it < 50; ++it) {
        int m = 1 + it % 5;
        Multivector x = random_mv(rng, m, 5), y = random_mv(rng, m, 5), z = random_mv(rng, m, 5);
        EXPECT_EQ(scalar(m, GR(1)) * x, x);
        EXPECT_EQ((x * y) * z, x * (y * z));
    }
}

TEST(Clifford, DimensionMismatchThrows) {
    EXPECT_THROW(Multivector::e(3, 1) * Multivector::e(4, 1), std::invalid_argument);
}

TEST(Conjugation, Examples) {
    Multivector e1 = Multivector::e(3, 1), e2 = Multivector::e(3, 2);
    EXPECT_EQ(e1.dagger(), -e1);
    EXPECT_EQ((e1 * e2).dagger(), -(e1 * e2));
    EXPECT_EQ((e2.dagger() * e1.dagger()), -(e1 * e2));
    EXPECT_EQ(scalar(3, GR::i()).dagger(), scalar(3, -GR::i()));
}

TEST(Conjugation, ReversesProductsAndIsInvolution) {
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        int m = 1 + it % 5;
        Multivector x = random_mv(rng, m, 6), y = random_mv(rng, m, 6);
        EXPECT_EQ((x * y).dagger(), y.dagger() * x.dagger());
        EXPECT_EQ(x.dagger().dagger(), x);
        EXPECT_EQ((x * y).tau(), y.tau() * x.tau());
    }
}

TEST(Wedge, VectorProductSplitsIntoWedgeAndDot) {
    int m = 3;
    Multivector e1 = Multivector::e(m, 1), e2 = Multivector::e(m, 2);
    EXPECT_TRUE(ck::wedge(e1, e1).is_zero());
    EXPECT_EQ(ck::vector_dot(e1, e2), GR(0));
    Multivector x = e1 + e2, y = e2;
    EXPECT_EQ(x * y, Multivector::blade(m, 0b11) - scalar(m, GR(1)));
    EXPECT_EQ(ck::wedge(x, y), Multivector::blade(m, 0b11));
    EXPECT_EQ(ck::vector_dot(x, y), GR(1));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int it = 0; it < 40; ++it) {
        Multivector a(4), b(4);
        for (int k = 1; k <= 4; ++k) {
            a += GR(c(rng)) * Multivector::e(4, k);
            b += GR(c(rng)) * Multivector::e(4, k);
        }
        EXPECT_EQ(a * b, ck::wedge(a, b) - scalar(4, ck::vector_dot(a, b)));
        EXPECT_EQ((a * b).grades() & ~std::uint64_t(0b101), 0u);
    }
}

TEST(Witt, GrassmannAndDualityRelations) {
    for (int n = 1; n <= 4; ++n)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Multivector fj = ck::witt(n, j), fk = ck::witt(n, k);
                Multivector fjd = ck::witt_dagger(n, j), fkd = ck::witt_dagger(n, k);
                EXPECT_EQ(fj * fkd + fkd * fj, scalar(2 * n, GR(j == k ? 1 : 0)));
                EXPECT_TRUE((fj * fk + fk * fj).is_zero());
                EXPECT_TRUE((fjd * fkd + fkd * fjd).is_zero());
            }
}

TEST(Witt, ConjugateOfWittIsWittDagger) {
    for (int n = 1; n <= 4; ++n)
        for (int j = 1; j <= n; ++j) EXPECT_EQ(ck::witt(n, j).dagger(), ck::witt_dagger(n, j));
}

TEST(Witt, ExplicitPairProduct) {
    // f_1 f_1^dagger = 1/2 - (i/2) e_1 e_2 for n = 1
    Multivector expect = scalar(2, GR(q(1, 2))) + GR(q(0), q(-1, 2)) * Multivector::blade(2, 0b11);
    EXPECT_EQ(ck::witt(1, 1) * ck::witt_dagger(1, 1), expect);
}

TEST(Beta, AnnihilatingPolynomial) {
    for (int n = 1; n <= 4; ++n) {
        Multivector b = ck::beta(n), prod = scalar(2 * n, GR(1));
        for (int j = 0; j <= n; ++j) {
            EXPECT_FALSE(prod.is_zero()) << "product vanished early at n=" << n << " j=" << j;
            prod = prod * (b - scalar(2 * n, GR(j)));
        }
        EXPECT_TRUE(prod.is_zero()) << n;
    }
}

TEST(Beta, CommutesPastWittElementsWithShift) {
    for (int n = 1; n <= 4; ++n) {
        Multivector b = ck::beta(n), one = scalar(2 * n, GR(1));
        for (int j = 1; j <= n; ++j) {
            EXPECT_TRUE((b * ck::witt(n, j) - ck::witt(n, j) * (b - one)).is_zero());
            EXPECT_TRUE((b * ck::witt_dagger(n, j) - ck::witt_dagger(n, j) * (b + one)).is_zero());
        }
    }
}

TEST(Spinors, VacuumForOneDimension) {
    auto sb = ck::spinor_basis(1, 0);
    ASSERT_EQ(sb.vectors.size(), 1u);
    Multivector expect = scalar(2, GR(q(1, 2))) + GR(q(0), q(-1, 2)) * Multivector::blade(2, 0b11);
    EXPECT_EQ(sb.vectors[0], expect);
}

TEST(Spinors, CardinalityAndIndependence) {
    for (int n = 1; n <= 3; ++n)
        for (int j = 0; j <= n; ++j) {
            auto sb = ck::spinor_basis(n, j);
            EXPECT_EQ(Rational(long(sb.vectors.size())), ck::binomial(n, j));
        }
    EXPECT_EQ(ck::spinor_basis(2, 1).vectors.size(), 2u);
}

TEST(Spinors, BetaActsAsSectorIndexAndLiesInIdeal) {
    for (int n = 1; n <= 3; ++n) {
        Multivector b = ck::beta(n), vac = ck::spinor_vacuum(n);
        for (int j = 0; j <= n; ++j)
            for (const auto& v : ck::spinor_basis(n, j).vectors) {
                EXPECT_EQ(b * v, GR(j) * v);
                EXPECT_EQ(v * vac, v);  // I is idempotent, so v in the left ideal satisfies v I = v
            }
    }
}

TEST(Spinors, WittElementsShiftTheSector) {
    for (int n = 1; n <= 3; ++n) {
        Multivector b = ck::beta(n);
        for (int j = 0; j <= n; ++j)
            for (const auto& v : ck::spinor_basis(n, j).vectors)
                for (int k = 1; k <= n; ++k) {
                    Multivector lo = ck::witt(n, k) * v, hi = ck::witt_dagger(n, k) * v;
                    EXPECT_EQ(b * lo, GR(j - 1) * lo);
                    EXPECT_EQ(b * hi, GR(j + 1) * hi);
                }
    }
}

TEST(MultivectorText, RoundTrip) {
    std::mt19937 rng(17);
    for (int it = 0; it < 100; ++it) {
        int m = 1 + it % 6;
        Multivector x = random_mv(rng, m, 4);
        EXPECT_EQ(Multivector::parse(m, x.str()), x) << x.str();
    }
    EXPECT_EQ(Multivector::parse(3, "1/2*e13"), GR(q(1, 2)) * Multivector::blade(3, 0b101));
    EXPECT_EQ(Multivector::parse(3, "e2*e1"), -Multivector::blade(3, 0b11));
    EXPECT_EQ(Multivector::parse(12, "e{1,10}").str(), "e{1,10}");
    EXPECT_EQ(Multivector(3).str(), "0");
    EXPECT_THROW(Multivector::parse(3, "e14"), ck::ParseError);
    EXPECT_THROW(Multivector::parse(3, "1 +"), ck::ParseError);
}
