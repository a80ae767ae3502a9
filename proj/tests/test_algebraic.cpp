#include "support.hpp"
#include "twolog/algebraic.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace twolog;
using testing_support::encloses;
using testing_support::near;
using testing_support::random_irreducibles;

namespace {

AlgebraicNumber make(const char* poly, const char* root) { return AlgebraicNumber::parse(poly, root); }

const AlgebraicNumber& three_four_fifths()
{
    static const AlgebraicNumber a = make("5,-6,5", "0.6,0.8");
    return a;
}

}  // namespace

TEST(ConjugateEnclosures, KnownRoots)
{
    const auto i_boxes = AlgebraicNumber::imaginary_unit().conjugate_enclosures();
    ASSERT_EQ(i_boxes.size(), 2u);
    int found = 0;
    for (const auto& b : i_boxes) {
        found += b.re.contains(mpq_class(0)) && (b.im.contains(mpq_class(1)) || b.im.contains(mpq_class(-1)));
    }
    EXPECT_EQ(found, 2);

    const auto boxes = three_four_fifths().conjugate_enclosures();
    ASSERT_EQ(boxes.size(), 2u);
    for (const auto& b : boxes) {
        EXPECT_TRUE(b.re.contains(mpq_class(3, 5)));
        EXPECT_TRUE(b.im.contains(mpq_class(4, 5)) || b.im.contains(mpq_class(-4, 5)));
    }
    EXPECT_FALSE(intersects(boxes[0], boxes[1]));

    const auto sqrt2 = make("-2,0,1", "1.4,0").conjugate_enclosures();
    ASSERT_EQ(sqrt2.size(), 2u);
    const oracle::Real r = sqrt(oracle::Real(2));
    EXPECT_TRUE(encloses(sqrt2[0].re, sqrt2[0].re.certainly_positive() ? r : oracle::Real(-r)));
}

TEST(ConjugateEnclosures, DisjointAndProductMatchesConstant)
{
    for (const auto& rp : random_irreducibles(20, 3)) {
        const AlgebraicNumber a = AlgebraicNumber::parse(rp.text, rp.root);
        const auto boxes = a.conjugate_enclosures();
        ASSERT_EQ(static_cast<int>(boxes.size()), a.degree()) << rp.text;
        ComplexEnclosure prod{IntervalReal(1) + IntervalReal(kDefaultPrecision), IntervalReal(kDefaultPrecision)};
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            prod = prod * boxes[i];
            for (std::size_t j = i + 1; j < boxes.size(); ++j) {
                EXPECT_FALSE(intersects(boxes[i], boxes[j])) << rp.text;
            }
        }
        // prod of roots = (-1)^d c0 / cd.
        mpq_class e((a.degree() % 2 ? -1 : 1) * rp.coefficients.front(), rp.coefficients.back());
        e.canonicalize();
        EXPECT_TRUE(prod.re.contains(e)) << rp.text << " " << prod.re.to_string();
        EXPECT_TRUE(prod.im.contains_zero()) << rp.text;
    }
}

TEST(Height, FixedCases)
{
    EXPECT_TRUE(encloses(AlgebraicNumber::rational(2).absolute_log_height(), log(oracle::Real(2))));
    const IntervalReal hi = AlgebraicNumber::imaginary_unit().absolute_log_height();
    EXPECT_TRUE(hi.contains_zero());
    EXPECT_GE(mpfr_sgn(hi.lo()), 0);
    EXPECT_TRUE(encloses(three_four_fifths().absolute_log_height(), log(oracle::Real(5)) / 2));
}

TEST(Height, RationalFamily)
{
    for (long p = -12; p <= 12; ++p) {
        for (long q = 1; q <= 9; ++q) {
            if (p == 0 || std::gcd(std::labs(p), q) != 1) {
                continue;
            }
            const IntervalReal h = AlgebraicNumber::rational(mpq_class(p, q)).absolute_log_height();
            EXPECT_TRUE(encloses(h, log(oracle::Real(std::max(std::labs(p), q))))) << p << "/" << q;
        }
    }
}

TEST(Height, MatchesMahlerMeasureOracle)
{
    for (const auto& rp : random_irreducibles(20, 17)) {
        const AlgebraicNumber a = AlgebraicNumber::parse(rp.text, rp.root);
        EXPECT_TRUE(near(a.absolute_log_height(), oracle::height(rp.coefficients), "1e-20")) << rp.text;
    }
}

TEST(Height, RootsOfUnityHaveHeightZero)
{
    const std::pair<const char*, const char*> cases[] = {
        {"1,1", "-1,0"}, {"1,1,1", "-0.5,0.866"}, {"1,0,1", "0,1"}, {"1,-1,1", "0.5,0.866"},
        {"1,1,1,1,1", "0.309,0.951"}, {"1,0,0,0,1", "0.707,0.707"}, {"1,1,1,1,1,1,1", "0.623,0.782"}};
    for (const auto& [poly, root] : cases) {
        const IntervalReal h = make(poly, root).absolute_log_height();
        EXPECT_TRUE(h.contains_zero()) << poly;
        EXPECT_LT(h.width_double(), 1e-30) << poly;
    }
}

TEST(UnitModulus, ExactDecisions)
{
    EXPECT_TRUE(AlgebraicNumber::imaginary_unit().has_unit_modulus());
    EXPECT_TRUE(three_four_fifths().has_unit_modulus());
    EXPECT_FALSE(AlgebraicNumber::rational(2).has_unit_modulus());
    EXPECT_TRUE(make("5,-2,6,-2,5", "0.5583,0.8297").has_unit_modulus());
    // Self-reciprocal but the selected root is off the circle.
    EXPECT_FALSE(make("1,-3,1", "2.6,0").has_unit_modulus());
}

TEST(UnitModulus, ImpliesSelfReciprocal)
{
    for (const auto& rp : random_irreducibles(40, 5)) {
        const AlgebraicNumber a = AlgebraicNumber::parse(rp.text, rp.root);
        if (a.has_unit_modulus()) {
            EXPECT_TRUE(a.minpoly().is_self_reciprocal()) << rp.text;
        }
    }
}

TEST(RootOfUnity, CyclotomicTest)
{
    EXPECT_TRUE(AlgebraicNumber::imaginary_unit().is_root_of_unity());
    EXPECT_FALSE(three_four_fifths().is_root_of_unity());
    EXPECT_TRUE(make("1,1,1,1,1,1,1", "0.62,0.78").is_root_of_unity());
    EXPECT_TRUE(AlgebraicNumber::rational(-1).is_root_of_unity());
    EXPECT_TRUE(make("1,-1,1,-1,1,-1,1", "0.901,0.434").is_root_of_unity());
    // Salem-type unit: self-reciprocal, integral, not cyclotomic.
    EXPECT_FALSE(make("1,-3,1", "2.6,0").is_root_of_unity());
}

TEST(Argument, PrincipalValues)
{
    EXPECT_TRUE(encloses(AlgebraicNumber::imaginary_unit().principal_argument(), oracle::pi() / 2));
    EXPECT_TRUE(AlgebraicNumber::rational(1).principal_argument().contains_zero());
    EXPECT_TRUE(encloses(three_four_fifths().principal_argument(), atan2(oracle::Real(4), oracle::Real(3))));
    EXPECT_TRUE(encloses(AlgebraicNumber::rational(-2).principal_argument(), oracle::pi()));
    EXPECT_TRUE(encloses(three_four_fifths().conjugate().principal_argument(), -atan2(oracle::Real(4), oracle::Real(3))));
    const IntervalReal wide = three_four_fifths().principal_argument(Precision(64));
    const IntervalReal narrow = three_four_fifths().principal_argument(Precision(512));
    EXPECT_LT(narrow.width_double(), wide.width_double());
}

TEST(Irreducibility, SmallCases)
{
    EXPECT_FALSE(is_irreducible(ZPoly{-1, 0, 0, 0, 1}));
    EXPECT_TRUE(is_irreducible(ZPoly{2, 0, 1}));
    EXPECT_FALSE(is_irreducible(ZPoly{4, 0, 0, 0, 1}));
    EXPECT_TRUE(is_irreducible(ZPoly{1, 1, 1, 1, 1, 1, 1}));
    EXPECT_FALSE(is_irreducible(ZPoly{6, 5, 1}));
    EXPECT_THROW(AlgebraicNumber::parse("-1,0,0,0,1", "1,0"), ReducibleError);
    EXPECT_NO_THROW(AlgebraicNumber::parse("-1,0,0,0,1", "1,0", true));
    EXPECT_TRUE(AlgebraicNumber::parse("-1,0,0,0,1", "1,0", true).trusted());
}

TEST(Selection, AmbiguousHintIsReported)
{
    try {
        AlgebraicNumber::parse("1,0,1", "0,0");
        FAIL() << "expected an ambiguity";
    } catch (const AmbiguousRootError& e) {
        EXPECT_EQ(e.candidates().size(), 2u);
    }
    const AlgebraicNumber minus_sqrt2 = make("-2,0,1", "-1.4,0");
    EXPECT_TRUE(encloses(minus_sqrt2.principal_argument(), oracle::pi()));
    EXPECT_TRUE(encloses(minus_sqrt2.absolute_log_height(), log(oracle::Real(2)) / 2));
}

TEST(Parsing, RejectsMalformedInput)
{
    EXPECT_THROW(IntegerPolynomial::parse("1,x,2"), std::invalid_argument);
    EXPECT_THROW(IntegerPolynomial::parse("2,4,6"), std::invalid_argument);
    EXPECT_THROW(IntegerPolynomial::parse("5"), std::invalid_argument);
    EXPECT_THROW(AlgebraicNumber::parse("5,-6,5", "0.6"), std::invalid_argument);
}
