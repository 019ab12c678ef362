#include <gtest/gtest.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "eqip/rational.hpp"
#include "eqip/scalar.hpp"

using eqip::CompareMode;
using eqip::Rational;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

int sg(std::weak_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

// Mix of inline values, values near the 63-bit boundary, and GMP-backed values.
Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::int64_t> small(-50, 50);
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    switch (kind(rng)) {
    case 0: return Rational(small(rng), den(rng));
    case 1: return Rational(std::numeric_limits<std::int64_t>::max() - small(rng) - 50, den(rng));
    case 2: {
        mpz_class big = mpz_class(static_cast<long>(small(rng))) << 90;
        return Rational(mpq_class(big + 7, mpz_class(static_cast<unsigned long>(den(rng)))));
    }
    default: return Rational(small(rng));
    }
}

TEST(ParseScalar, IntegerDecimalAndRationalTokens) {
    EXPECT_EQ(eqip::parse_scalar("3"), q(3));
    EXPECT_EQ(eqip::parse_scalar("0.25"), q(1, 4));
    EXPECT_EQ(eqip::parse_scalar("-7/14"), q(-1, 2));
    EXPECT_EQ(eqip::parse_scalar("-0.5"), q(-1, 2));
    EXPECT_EQ(eqip::parse_scalar("007"), q(7));
}

TEST(ParseScalar, CanonicalFormAfterParse) {
    auto r = eqip::parse_scalar("-7/14");
    EXPECT_EQ(r.numerator(), -1);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-1/2");
}

TEST(ParseScalar, RejectsMalformedTokensWithPosition) {
    struct Case {
        const char* token;
        std::size_t column;
    };
    for (auto c : std::vector<Case>{{"", 1}, {"-", 2}, {"abc", 1}, {"1.", 3}, {"1/", 3},
                                    {"1/2/3", 4}, {"+3", 1}, {"1e5", 2}, {"3 ", 2}, {"0.5.1", 4}}) {
        try {
            eqip::parse_scalar(c.token);
            ADD_FAILURE() << "accepted '" << c.token << "'";
        } catch (const eqip::ParseError& e) {
            EXPECT_EQ(e.column(), c.column) << "token '" << c.token << "': " << e.what();
        }
    }
}

TEST(ParseScalar, RejectsZeroDenominator) {
    try {
        eqip::parse_scalar("5/0");
        FAIL();
    } catch (const eqip::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("zero denominator"), std::string::npos);
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(ParseScalar, HugeTokensStayExact) {
    auto r = eqip::parse_scalar("123456789012345678901234567890/3");
    EXPECT_FALSE(r.is_inline());
    EXPECT_EQ(r.str(), "41152263004115226300411522630");
    EXPECT_EQ(eqip::parse_scalar(r.str()), r);
}

TEST(CompareScalars, Examples) {
    EXPECT_EQ(sg(eqip::compare_scalars(q(1, 3), q(1, 3), CompareMode::exact())), 0);
    auto tol = CompareMode::tolerant(eqip::parse_scalar("0.001"));
    EXPECT_EQ(sg(eqip::compare_scalars(eqip::parse_scalar("0.1000"), eqip::parse_scalar("0.1005"), tol)), 0);
    EXPECT_LT(sg(eqip::compare_scalars(q(2), q(3), CompareMode::exact())), 0);
    EXPECT_GT(sg(eqip::compare_scalars(q(3), q(2), tol)), 0);
}

TEST(CompareScalars, ToleranceIsNotTransitive) {
    auto tol = CompareMode::tolerant(eqip::parse_scalar("0.001"));
    auto a = eqip::parse_scalar("0");
    auto b = eqip::parse_scalar("0.0006");
    auto c = eqip::parse_scalar("0.0012");
    EXPECT_EQ(sg(eqip::compare_scalars(a, b, tol)), 0);
    EXPECT_EQ(sg(eqip::compare_scalars(b, c, tol)), 0);
    EXPECT_LT(sg(eqip::compare_scalars(a, c, tol)), 0);
}

TEST(CompareScalars, DoubleModes) {
    EXPECT_NE(sg(eqip::compare_scalars(0.1 + 0.2, 0.3, CompareMode::exact())), 0);
    EXPECT_EQ(sg(eqip::compare_scalars(0.1 + 0.2, 0.3, CompareMode::tolerant(1e-9))), 0);
}

TEST(CompareLex, Examples) {
    auto ex = CompareMode::exact();
    std::vector<Rational> a{1, 2, 3}, b{1, 2, 3};
    EXPECT_EQ(sg(eqip::compare_lex(a, b, ex)), 0);
    std::vector<Rational> c{1, 5, 0}, d{1, 4, 9};
    EXPECT_GT(sg(eqip::compare_lex(c, d, ex)), 0);
    std::vector<Rational> e{0, 9}, f{1, 0};
    EXPECT_LT(sg(eqip::compare_lex(e, f, ex)), 0);
}

TEST(CompareLex, DimensionMismatchIsContractViolation) {
    std::vector<Rational> a{1, 2}, b{1};
    EXPECT_THROW(eqip::compare_lex(a, b, CompareMode::exact()), eqip::ContractViolation);
}

TEST(Rational, ArithmeticMatchesGmpReference) {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 4000; ++iter) {
        Rational a = random_rational(rng);
        Rational b = random_rational(rng);
        mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        EXPECT_EQ((a + b).to_mpq(), mpq_class(qa + qb));
        EXPECT_EQ((a - b).to_mpq(), mpq_class(qa - qb));
        EXPECT_EQ((a * b).to_mpq(), mpq_class(qa * qb));
        if (!b.is_zero()) {
            EXPECT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
        }
        EXPECT_EQ(a < b, qa < qb);
        EXPECT_EQ(a == b, qa == qb);
        Rational c = a;
        c += b;
        EXPECT_EQ(c, a + b);
        c -= b;
        EXPECT_EQ(c, a);
    }
}

TEST(Rational, OverflowPromotesAndDemotes) {
    Rational big = Rational(std::numeric_limits<std::int64_t>::max());
    Rational sum = big + big;
    EXPECT_FALSE(sum.is_inline());
    Rational back = sum - big;
    EXPECT_TRUE(back.is_inline());
    EXPECT_EQ(back, big);
    EXPECT_EQ((-big - 1).str(), "-9223372036854775808");
    EXPECT_FALSE((-big - 1).is_inline());
}

TEST(Rational, ExactOrderIsATotalOrder) {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 3000; ++iter) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        // totality and antisymmetry
        EXPECT_EQ((a < b) + (b < a) + (a == b), 1);
        // transitivity
        if (a <= b && b <= c) {
            EXPECT_LE(a, c);
        }
        if (a == b && b == c) {
            EXPECT_EQ(a, c);
        }
    }
}

TEST(Rational, RenderParseRoundTrip) {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 2000; ++iter) {
        Rational a = random_rational(rng);
        EXPECT_EQ(eqip::parse_scalar(eqip::render_scalar(a)), a) << a;
    }
}

TEST(CompareLex, EqualIffEveryCoordinateEqual) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-1, 1);
    auto tol = CompareMode::tolerant(q(1, 2));
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<Rational> u(3), v(3);
        for (auto& x : u) x = coord(rng);
        for (auto& x : v) x = coord(rng);
        for (const auto& mode : {CompareMode::exact(), tol}) {
            bool all = true;
            for (int i = 0; i < 3; ++i) all = all && sg(eqip::compare_scalars(u[i], v[i], mode)) == 0;
            EXPECT_EQ(sg(eqip::compare_lex(u, v, mode)) == 0, all);
        }
    }
}

TEST(RenderScalar, ShortestForms) {
    EXPECT_EQ(eqip::render_scalar(q(6, 3)), "2");
    EXPECT_EQ(eqip::render_scalar(q(3, -6)), "-1/2");
    EXPECT_EQ(eqip::render_scalar(0.25), "0.25");
}

} // namespace
