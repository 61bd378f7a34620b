#include "rht/encoder.hpp"

#include <doctest.h>

#include "test_util.hpp"

using namespace rht;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

// One-equation block system over a single 1x1 form.
QuadraticSystem minimalQblin(long formEntry, long rhs) {
    QuadraticSystem sys;
    sys.shape = SystemShape::QBLIN;
    sys.uBlockDim = 1;
    sys.vBlockDim = 1;
    sys.uBlockNames = {"u1"};
    sys.vBlockNames = {"v1"};
    sys.forms = {mat({{formEntry}})};
    QblinEquation eq;
    eq.form = 0;
    eq.coeffs = mat({{1}});
    eq.rhs = rhs;
    eq.family = "original";
    sys.equations = {eq};
    return sys;
}

MinimalModel sphere2Model() {
    MinimalModel m({{"a", 2}, {"eta", 3}});
    Polynomial p;
    p[{0, 0}] = Rat(1);
    m.setDifferential("eta", p);
    return m;
}

// Three even generators with d(eta) = abc: yields a spectator factor mu = c.
MinimalModel spectatorModel() {
    MinimalModel m({{"a", 2}, {"b", 2}, {"c", 2}, {"eta", 5}});
    Polynomial p;
    p[{0, 1, 2}] = Rat(1);
    m.setDifferential("eta", p);
    return m;
}

QuadraticSystem spectatorQblin() {
    QuadraticSystem sys;
    sys.shape = SystemShape::QBLIN;
    sys.uBlockDim = 2;
    sys.vBlockDim = 2;
    sys.uBlockNames = {"u1"};
    sys.vBlockNames = {"v1"};
    sys.forms = {mat({{0, 1}, {1, 0}})};
    QblinEquation eq;
    eq.form = 0;
    eq.coeffs = mat({{1}});
    eq.rhs = 1;
    eq.family = "original";
    sys.equations = {eq};
    return sys;
}

QuadraticSystem skewSystem(std::size_t r, const std::vector<IntMatrix>& coeffs,
                           const std::vector<long>& rhs) {
    QuadraticSystem sys;
    sys.shape = SystemShape::QSKEW;
    sys.r = r;
    sys.coefficients = coeffs;
    for (long b : rhs) sys.rhs.emplace_back(b);
    return sys;
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("attaching expressions print and reparse") {
    std::vector<std::string> fixtures{
        "0",
        "A.Sd[1]",
        "whitehead(X.Sa[1], X.Sb[1])",
        "deg(3, whitehead(a, b))",
        "sum(X.Sa[1], -1*X.Sa'[1])",
        "sum(2*a, 3*whitehead(b, c), deg(-2, d))",
        "sum(A.Sd[1], -1*whitehead(X.Sa[1], X.Sb[1]))",
        "whitehead(X.fw[1][2].a+n1, X.Sb'[2])",
    };
    for (const std::string& text : fixtures) {
        AttachingExpr e = AttachingExpr::parse(text);
        CHECK(e.print() == text);
        CHECK(AttachingExpr::parse(e.print()).print() == text);
    }
}

TEST_CASE("constructed expressions print canonically") {
    AttachingExpr w = AttachingExpr::whitehead(
        {AttachingExpr::cellRef("x"), AttachingExpr::cellRef("y")});
    CHECK(w.print() == "whitehead(x, y)");
    AttachingExpr s = AttachingExpr::sum({Int(1), Int(-2)},
                                         {AttachingExpr::cellRef("a"), w});
    CHECK(s.print() == "sum(a, -2*whitehead(x, y))");
    CHECK(AttachingExpr::deg(Int(5), AttachingExpr::cellRef("a")).print() == "deg(5, a)");
    CHECK(AttachingExpr::zero().print() == "0");
}

TEST_CASE("malformed expressions are rejected") {
    CHECK_THROWS_AS(AttachingExpr::parse("whitehead("), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("whitehead(a)"), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("sum()"), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("5"), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("deg(a, b)"), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("foo(a, b)"), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(AttachingExpr::parse("a b"), std::invalid_argument);
}

TEST_CASE("hurewicz bookkeeping keeps only naked cell classes") {
    CHECK(AttachingExpr::parse("0").hurewicz().empty());
    auto single = AttachingExpr::parse("A.Sd[1]").hurewicz();
    REQUIRE(single.size() == 1);
    CHECK(single.at("A.Sd[1]") == 1);
    CHECK(AttachingExpr::parse("whitehead(a, b)").hurewicz().empty());
    auto scaled = AttachingExpr::parse("deg(4, a)").hurewicz();
    CHECK(scaled.at("a") == 4);
    auto mixed = AttachingExpr::parse("sum(2*a, -1*deg(3, b), whitehead(c, d))").hurewicz();
    REQUIRE(mixed.size() == 2);
    CHECK(mixed.at("a") == 2);
    CHECK(mixed.at("b") == -3);
    CHECK(AttachingExpr::parse("sum(a, -1*a)").hurewicz().empty());
}

TEST_CASE("fat wedge cell enumeration") {
    auto two = fat_wedge_cells({2, 2});
    REQUIRE(two.size() == 3);
    CHECK(two[0].first.empty());
    CHECK(two[0].second == 0);
    CHECK(two[1].first == std::vector<std::size_t>{1});
    CHECK(two[1].second == 2);
    CHECK(two[2].first == std::vector<std::size_t>{2});
    CHECK(two[2].second == 2);

    auto three = fat_wedge_cells({2, 2, 3});
    std::vector<unsigned> dims;
    for (const auto& [subset, dim] : three) dims.push_back(dim);
    CHECK(dims == std::vector<unsigned>{0, 2, 2, 3, 4, 5, 5});

    auto one = fat_wedge_cells({3});
    REQUIRE(one.size() == 1);
    CHECK(one[0].second == 0);
}

TEST_CASE("golden cell pair for the even sphere target") {
    EncodeResult r = encode(minimalQblin(1, 1), extract_bilinear_forms(sphere2Model()));
    CHECK(r.d == 3);
    CHECK(r.d1 == 2);
    CHECK(r.d2 == 2);
    CHECK(r.sphereCountA == 1);
    CHECK(r.tensorCount == 1);

    // Frozen from instantiating the construction: one equation sphere in A,
    // one pair of degree-2 spheres, two mapping cylinders, one relation cell.
    const std::vector<std::tuple<std::string, unsigned, std::string, std::string>> expected{
        {"pt", 0, "in-A", "0"},
        {"A.Sd[1]", 3, "in-A", "0"},
        {"X.Sa[1]", 2, "fat-wedge", "0"},
        {"X.Sb[1]", 2, "fat-wedge", "0"},
        {"X.Sa'[1]", 2, "cylinder", "0"},
        {"X.cylA[1]", 3, "cylinder", "sum(X.Sa[1], -1*X.Sa'[1])"},
        {"X.Sb'[1]", 2, "cylinder", "0"},
        {"X.cylB[1]", 3, "cylinder", "sum(X.Sb[1], -1*X.Sb'[1])"},
        {"X.rel[1]", 4, "relation-cell", "sum(A.Sd[1], -1*whitehead(X.Sa[1], X.Sb[1]))"},
    };
    REQUIRE(r.pair.cells.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(r.pair.cells[i].id == std::get<0>(expected[i]));
        CHECK(r.pair.cells[i].dimension == std::get<1>(expected[i]));
        CHECK(to_string(r.pair.cells[i].role) == std::get<2>(expected[i]));
        CHECK(r.pair.cells[i].attaching.print() == std::get<3>(expected[i]));
    }
    CHECK_NOTHROW(r.pair.validate());

    REQUIRE(r.map.assignments.size() == 1);
    CHECK(r.map.assignments[0].sphere == "A.Sd[1]");
    CHECK(r.map.assignments[0].targetClass == "eta-pairing");
    CHECK(r.map.assignments[0].multiplier == 1);
    CHECK(r.map.assignments[0].pairings == std::vector<Int>{Int(1)});

    REQUIRE(r.pair.assumptions.size() == 2);
    CHECK(r.pair.assumptions[0] ==
          "whitehead product sets assumed nonempty for all referenced products");
    CHECK(r.pair.assumptions[1] == "multipliers: p=[], rho1=1, rho2=1, rho=1");
}

TEST_CASE("multipliers appear as degree markers") {
    EncodeMultipliers mult;
    mult.rho = 2;
    mult.rho1 = 3;
    EncodeResult r = encode(minimalQblin(1, 1), extract_bilinear_forms(sphere2Model()), mult);
    const FormalCell* cylA = r.pair.find("X.cylA[1]");
    REQUIRE(cylA != nullptr);
    CHECK(cylA->attaching.print() == "sum(X.Sa[1], -3*X.Sa'[1])");
    const FormalCell* rel = r.pair.find("X.rel[1]");
    REQUIRE(rel != nullptr);
    CHECK(rel->attaching.print() ==
          "deg(2, sum(A.Sd[1], -1*whitehead(X.Sa[1], X.Sb[1])))");
    CHECK_NOTHROW(r.pair.validate());
}

TEST_CASE("spectator factors add spheres and genuine fat wedge cells") {
    EncodeResult r = encode(spectatorQblin(), extract_bilinear_forms(spectatorModel()));
    CHECK(r.d == 5);
    CHECK(r.sphereCountA == 2);  // one equation sphere + one spectator sphere

    const FormalCell* spectator = r.pair.find("A.Sn[1]");
    REQUIRE(spectator != nullptr);
    CHECK(spectator->dimension == 2);
    CHECK(to_string(spectator->role) == "in-A");

    // Proper subsets of {a, b, n1} of size >= 2 give three product cells.
    const FormalCell* ab = r.pair.find("X.fw[1][1].a+b");
    const FormalCell* an = r.pair.find("X.fw[1][1].a+n1");
    const FormalCell* bn = r.pair.find("X.fw[1][1].b+n1");
    REQUIRE(ab != nullptr);
    REQUIRE(an != nullptr);
    REQUIRE(bn != nullptr);
    CHECK(ab->dimension == 4);
    CHECK(an->dimension == 4);
    CHECK(bn->dimension == 4);
    CHECK(ab->attaching.print() == "whitehead(X.Sa[1], X.Sb[1])");
    CHECK(an->attaching.print() == "whitehead(X.Sa[1], A.Sn[1])");
    CHECK(bn->attaching.print() == "whitehead(X.Sb[1], A.Sn[1])");

    const FormalCell* rel = r.pair.find("X.rel[1]");
    REQUIRE(rel != nullptr);
    CHECK(rel->dimension == 6);
    CHECK(rel->attaching.print() ==
          "sum(A.Sd[1], -1*whitehead(X.Sa[1], X.Sb[1], A.Sn[1]))");
    CHECK_NOTHROW(r.pair.validate());

    // Spectator multiplier is recorded on the map, not the cells.
    EncodeMultipliers mult;
    mult.p = {Int(2)};
    EncodeResult scaled = encode(spectatorQblin(), extract_bilinear_forms(spectatorModel()), mult);
    bool sawSpectator = false;
    for (const SphereAssignment& a : scaled.map.assignments)
        if (a.sphere == "A.Sn[1]") {
            sawSpectator = true;
            CHECK(a.targetClass == "c");
            CHECK(a.multiplier == 2);
        }
    CHECK(sawSpectator);
}

TEST_CASE("encode rejects mismatched inputs") {
    BilinearFormExtraction target = extract_bilinear_forms(sphere2Model());
    QuadraticSystem wrongDim = minimalQblin(1, 1);
    wrongDim.uBlockDim = 2;
    wrongDim.forms = {mat({{1}, {0}})};
    CHECK_THROWS_AS(encode(wrongDim, target), std::invalid_argument);

    QuadraticSystem extraForm = minimalQblin(1, 1);
    extraForm.forms.push_back(mat({{1}}));
    CHECK_THROWS_AS(encode(extraForm, target), std::invalid_argument);

    QuadraticSystem notBlin;
    notBlin.shape = SystemShape::QDIFF;
    notBlin.r = 1;
    notBlin.coefficients = {mat({{1}})};
    notBlin.rhs = {Int(1)};
    CHECK_THROWS_AS(encode(notBlin, target), std::invalid_argument);

    EncodeMultipliers badP;
    badP.p = {Int(2)};  // no mu factors to multiply
    CHECK_THROWS_AS(encode(minimalQblin(1, 1), target, badP), std::invalid_argument);

    EncodeMultipliers zeroRho;
    zeroRho.rho = 0;
    CHECK_THROWS_AS(encode(minimalQblin(1, 1), target, zeroRho), std::invalid_argument);
}

TEST_CASE("validation catches structural defects") {
    CellPairDescription desc;
    desc.cells.push_back({"pt", 0, CellRole::InA, AttachingExpr::zero()});
    desc.cells.push_back({"s", 2, CellRole::InA, AttachingExpr::zero()});
    desc.cells.push_back(
        {"c", 3, CellRole::Cylinder, AttachingExpr::parse("sum(s, -1*s)")});
    CHECK_NOTHROW(desc.validate());

    CellPairDescription dup = desc;
    dup.cells.push_back({"s", 2, CellRole::InA, AttachingExpr::zero()});
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    CellPairDescription unknown = desc;
    unknown.cells[2].attaching = AttachingExpr::parse("ghost");
    CHECK_THROWS_AS(unknown.validate(), std::invalid_argument);

    CellPairDescription wrongDegree = desc;
    wrongDegree.cells[2].dimension = 4;  // attaches along degree 2, needs 3
    CHECK_THROWS_AS(wrongDegree.validate(), std::invalid_argument);

    CellPairDescription zeroCell = desc;
    zeroCell.cells[0].attaching = AttachingExpr::parse("s");
    CHECK_THROWS_AS(zeroCell.validate(), std::invalid_argument);
}

TEST_CASE("tensor groups collapse equation grids into single cells") {
    BilinearFormExtraction target = extract_bilinear_forms(sphere2Model());
    QuadraticSystem qdiff;
    qdiff.shape = SystemShape::QDIFF;
    qdiff.r = 1;
    qdiff.coefficients = {mat({{1}})};
    qdiff.rhs = {Int(1)};
    QblinReduction red = reduce_qdiff_to_qblin(qdiff, target.forms);
    EncodeResult r = encode(red.system, target);
    // Original family and form-preservation family each form one tensor group.
    CHECK(r.tensorCount == 2);
    CHECK(r.pair.find("X.rel[1]") != nullptr);
    CHECK(r.pair.find("X.rel[2]") != nullptr);
    CHECK_NOTHROW(r.pair.validate());

    // A grid whose groups share coefficient matrices is accepted; breaking
    // the shared-coefficient rule is rejected.
    QuadraticSystem twoForms = minimalQblin(1, 1);
    twoForms.forms.push_back(mat({{2}}));
    QblinEquation second = twoForms.equations[0];
    second.form = 1;
    second.rhs = 3;
    twoForms.equations.push_back(second);
    for (std::size_t e = 0; e < 2; ++e) twoForms.equations[e].tensor = 0;
    BilinearFormExtraction twoTarget = target;
    twoTarget.forms.push_back(mat({{2}}));
    twoTarget.etaNames.push_back("eta2");
    CHECK_NOTHROW(encode(twoForms, twoTarget));

    QuadraticSystem mixed = twoForms;
    mixed.equations[1].tensor = static_cast<std::size_t>(-1);
    CHECK_THROWS_AS(encode(mixed, twoTarget), std::invalid_argument);

    QuadraticSystem unequal = twoForms;
    unequal.equations[1].coeffs = mat({{2}});
    CHECK_THROWS_AS(encode(unequal, twoTarget), std::invalid_argument);

    QuadraticSystem missing = twoForms;
    missing.equations[1].form = 0;  // group covers form 0 twice, form 1 never
    CHECK_THROWS_AS(encode(missing, twoTarget), std::invalid_argument);
}

TEST_CASE("coefficient scaling touches only relation cells") {
    BilinearFormExtraction target = extract_bilinear_forms(sphere2Model());
    QuadraticSystem base = minimalQblin(1, 1);
    QuadraticSystem scaled = base;
    scaled.equations[0].coeffs = mat({{3}});
    EncodeResult r1 = encode(base, target);
    EncodeResult r2 = encode(scaled, target);
    REQUIRE(r1.pair.cells.size() == r2.pair.cells.size());
    for (std::size_t i = 0; i < r1.pair.cells.size(); ++i) {
        const FormalCell& c1 = r1.pair.cells[i];
        const FormalCell& c2 = r2.pair.cells[i];
        CHECK(c1.id == c2.id);
        if (c1.role == CellRole::RelationCell) {
            CHECK(c2.attaching.print() ==
                  "sum(A.Sd[1], -3*whitehead(X.Sa[1], X.Sb[1]))");
        } else {
            CHECK(c1.attaching.print() == c2.attaching.print());
        }
    }
    // Scaling the rhs moves only the map pairings.
    QuadraticSystem rhsScaled = base;
    rhsScaled.equations[0].rhs = 5;
    EncodeResult r3 = encode(rhsScaled, target);
    for (std::size_t i = 0; i < r1.pair.cells.size(); ++i)
        CHECK(r1.pair.cells[i].attaching.print() == r3.pair.cells[i].attaching.print());
    CHECK(r3.map.assignments[0].pairings == std::vector<Int>{Int(5)});
}

TEST_CASE("relative homology vanishes above d in the total reading") {
    EncodeResult r = encode(minimalQblin(1, 1), extract_bilinear_forms(sphere2Model()));
    RelativeHomologyReport rep = verify_relative_homology(r.pair, r.d);
    CHECK(rep.topDimension == 4);
    CHECK(rep.d == 3);
    REQUIRE(rep.totalComplexAboveD.size() == 1);
    CHECK(rep.totalComplexAboveD[0].first == 4);
    CHECK(rep.totalComplexAboveD[0].second.isTrivial());
    CHECK(rep.totalAllZero);
    // The quotient reading sees one free class per relation cell: the cell
    // boundary lands entirely in A.
    REQUIRE(rep.relativeQuotientAboveD.size() == 1);
    CHECK(rep.relativeQuotientAboveD[0].second == FgAbelianGroup(1, {}));
    CHECK_FALSE(rep.relativeAllZero);
    CHECK(rep.pairCohomologicalDimension == 4);  // d + 1
}

TEST_CASE("empty equation list leaves nothing above d") {
    QuadraticSystem sys = minimalQblin(1, 1);
    sys.equations.clear();
    EncodeResult r = encode(sys, extract_bilinear_forms(sphere2Model()));
    CHECK(r.tensorCount == 0);
    CHECK(r.sphereCountA == 0);
    RelativeHomologyReport rep = verify_relative_homology(r.pair, r.d);
    CHECK(rep.totalAllZero);
    CHECK(rep.relativeAllZero);
    for (const auto& [n, g] : rep.totalComplexAboveD) CHECK(g.isTrivial());
}

TEST_CASE("a pair equal to its subcomplex has zero relative homology") {
    CellPairDescription desc;
    desc.cells.push_back({"pt", 0, CellRole::InA, AttachingExpr::zero()});
    desc.cells.push_back({"s", 4, CellRole::InA, AttachingExpr::zero()});
    RelativeHomologyReport rep = verify_relative_homology(desc, 2);
    CHECK(rep.relativeAllZero);
    for (const auto& [n, g] : rep.relativeQuotientAboveD) CHECK(g.isTrivial());
    CHECK(rep.pairCohomologicalDimension == -1);
}

TEST_CASE("cellular complex extraction in both readings") {
    EncodeResult r = encode(minimalQblin(1, 1), extract_bilinear_forms(sphere2Model()));
    ChainComplex total = cellular_complex(r.pair, false);
    CHECK(total.dims == std::vector<std::size_t>{1, 0, 4, 3, 1});
    CHECK(total.composesToZero());
    CHECK(total.homology(4).isTrivial());
    CHECK(total.homology(3).isTrivial());

    ChainComplex quotient = cellular_complex(r.pair, true);
    CHECK(quotient.dims == std::vector<std::size_t>{0, 0, 4, 2, 1});
    CHECK(quotient.composesToZero());
    CHECK(quotient.homology(4) == FgAbelianGroup(1, {}));
}

TEST_CASE("skew example with one cross pair") {
    IntMatrix a(2, 2);
    a.at(0, 1) = 1;
    SkewExample ex = encode_skew_example(skewSystem(2, {a}, {0}));
    REQUIRE(ex.complex.cells.size() == 4);  // pt + two spheres + one 6-cell
    CHECK(ex.complex.cells[1].id == "X'.S3[1]");
    CHECK(ex.complex.cells[1].dimension == 3);
    const FormalCell& top = ex.complex.cells[3];
    CHECK(top.id == "X'.e6[1]");
    CHECK(top.dimension == 6);
    CHECK(top.attaching.print() == "whitehead(X'.S3[1], X'.S3[2])");
    REQUIRE(ex.sixCellDegrees.size() == 1);
    CHECK(ex.sixCellDegrees[0] == 0);
    CHECK_NOTHROW(ex.complex.validate());
}

TEST_CASE("skew example with no cross pairs attaches trivially") {
    IntMatrix a(1, 1);
    SkewExample ex = encode_skew_example(skewSystem(1, {a}, {5}));
    const FormalCell* top = ex.complex.find("X'.e6[1]");
    REQUIRE(top != nullptr);
    CHECK(top->attaching.print() == "0");
    CHECK(ex.sixCellDegrees == std::vector<Int>{Int(-5)});
}

TEST_CASE("golden skew complex for three spheres and two equations") {
    IntMatrix a1(3, 3), a2(3, 3);
    a1.at(0, 1) = 1;
    a1.at(0, 2) = -2;
    a2.at(0, 2) = 3;
    a2.at(1, 2) = 1;
    SkewExample ex = encode_skew_example(skewSystem(3, {a1, a2}, {1, -4}));
    REQUIRE(ex.complex.cells.size() == 6);
    const FormalCell* e1 = ex.complex.find("X'.e6[1]");
    const FormalCell* e2 = ex.complex.find("X'.e6[2]");
    REQUIRE(e1 != nullptr);
    REQUIRE(e2 != nullptr);
    CHECK(e1->attaching.print() ==
          "sum(whitehead(X'.S3[1], X'.S3[2]), -2*whitehead(X'.S3[1], X'.S3[3]))");
    CHECK(e2->attaching.print() ==
          "sum(3*whitehead(X'.S3[1], X'.S3[3]), whitehead(X'.S3[2], X'.S3[3]))");
    CHECK(ex.sixCellDegrees == std::vector<Int>{Int(-1), Int(4)});
    CHECK_NOTHROW(ex.complex.validate());

    // All attachings are pure Whitehead data: the skew complex is a wedge of
    // spheres with homologically invisible 6-cell boundaries.
    ChainComplex cc = cellular_complex(ex.complex, false);
    CHECK(cc.homology(3) == FgAbelianGroup(3, {}));
    CHECK(cc.homology(6) == FgAbelianGroup(2, {}));
}

TEST_CASE("non-skew input is rejected") {
    QuadraticSystem q;
    q.shape = SystemShape::QDIFF;
    q.r = 1;
    q.coefficients = {mat({{1}})};
    q.rhs = {Int(1)};
    CHECK_THROWS_AS(encode_skew_example(q), std::invalid_argument);
}

}  // TEST_SUITE
