#include "rht/cdga.hpp"

#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"

using namespace rht;

namespace {

Monomial mono(const MinimalModel& m, const std::vector<std::string>& names) {
    Monomial out;
    for (const std::string& n : names) out.push_back(m.indexOf(n));
    std::sort(out.begin(), out.end());
    return out;
}

Polynomial poly(const MinimalModel& m,
                const std::vector<std::pair<Rat, std::vector<std::string>>>& terms) {
    Polynomial p;
    for (const auto& [c, names] : terms) p[mono(m, names)] += c;
    return p;
}

MinimalModel sphere2() {
    MinimalModel m({{"a", 2}, {"eta", 3}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"a", "a"}}}));
    return m;
}

MinimalModel sphere3() { return MinimalModel({{"b", 3}}); }

// Complex projective plane: one even class whose cube bounds.
MinimalModel cp2() {
    MinimalModel m({{"a", 2}, {"eta", 5}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"a", "a", "a"}}}));
    return m;
}

bool divisibleAfterClearing(const MinimalModel& m, const Polynomial& c, long r) {
    Int lcm = 1;
    for (const auto& [mo, coeff] : c) lcm = lcm * coeff.get_den() / gcd(lcm, Int(coeff.get_den()));
    Polynomial pulled = m.chiPullback(Int(r), c);
    for (const auto& [mo, coeff] : pulled) {
        Rat scaled = coeff * Rat(lcm);
        if (scaled.get_den() != 1) return false;
        if (scaled.get_num() % r != 0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("cdga") {

TEST_CASE("odd sphere model is an H-space in every range") {
    MinimalModel m = sphere3();
    CHECK(m.validate().empty());
    CHECK_FALSE(m.firstNontrivialDegree().has_value());
    for (unsigned d = 1; d <= 10; ++d) CHECK(m.isRationalHspaceThrough(d));
    CHECK(m.cohomology(0, 8).dimension == 1);
    CHECK(m.cohomology(3, 8).dimension == 1);
    CHECK(m.cohomology(6, 8).dimension == 0);  // odd square vanishes
}

TEST_CASE("even sphere model stops being an H-space at its relation") {
    MinimalModel m = sphere2();
    CHECK(m.validate().empty());
    REQUIRE(m.firstNontrivialDegree().has_value());
    CHECK(*m.firstNontrivialDegree() == 3);
    CHECK(m.isRationalHspaceThrough(2));
    CHECK_FALSE(m.isRationalHspaceThrough(3));

    std::vector<std::size_t> expected{1, 0, 1, 0, 0, 0, 0};
    for (unsigned n = 0; n <= 6; ++n) CHECK(m.cohomology(n, 8).dimension == expected[n]);
}

TEST_CASE("projective plane model cohomology") {
    MinimalModel m = cp2();
    CHECK(m.validate().empty());
    std::vector<std::size_t> expected{1, 0, 1, 0, 1, 0, 0, 0, 0};
    for (unsigned n = 0; n <= 8; ++n) CHECK(m.cohomology(n, 10).dimension == expected[n]);
}

TEST_CASE("free polynomial algebra on one even generator") {
    MinimalModel m({{"a", 2}});
    CHECK(m.cohomology(2, 8).dimension == 1);
    CHECK(m.cohomology(4, 8).dimension == 1);
    CHECK(m.cohomology(6, 8).dimension == 1);
    CHECK(m.cohomology(3, 8).dimension == 0);
    CHECK_THROWS_AS(m.cohomology(9, 8), std::invalid_argument);
}

TEST_CASE("empty model is a point") {
    MinimalModel m({});
    CHECK(m.validate().empty());
    CHECK(m.isRationalHspaceThrough(100));
    CHECK(m.cohomology(0, 4).dimension == 1);
    CHECK(m.cohomology(1, 4).dimension == 0);
}

TEST_CASE("degree-mismatched linear differential gives two violations") {
    MinimalModel m({{"a", 2}, {"b", 3}});
    m.setDifferential("b", poly(m, {{Rat(1), {"a"}}}));
    std::vector<std::string> v = m.validate();
    REQUIRE(v.size() == 2);
    CHECK(v[0].find("b") == 0);
    CHECK(v[1].find("b") == 0);
}

TEST_CASE("construction rejects low degrees and duplicate names") {
    CHECK_THROWS_AS(MinimalModel({{"a", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MinimalModel({{"a", 2}, {"a", 3}}), std::invalid_argument);
}

TEST_CASE("graded commutativity signs") {
    MinimalModel m({{"x", 3}, {"y", 3}});
    auto [s1, m1] = m.mulMonomials(mono(m, {"x"}), mono(m, {"y"}));
    auto [s2, m2] = m.mulMonomials(mono(m, {"y"}), mono(m, {"x"}));
    CHECK(m1 == m2);
    CHECK(s1 == 1);
    CHECK(s2 == -1);
    auto [s3, m3] = m.mulMonomials(mono(m, {"x"}), mono(m, {"x"}));
    CHECK(s3 == 0);
}

TEST_CASE("monomial bases in low degrees") {
    MinimalModel m({{"a", 2}, {"b", 3}});
    CHECK(m.monomialBasis(0).size() == 1);
    CHECK(m.monomialBasis(2).size() == 1);   // a
    CHECK(m.monomialBasis(3).size() == 1);   // b
    CHECK(m.monomialBasis(5).size() == 1);   // ab
    CHECK(m.monomialBasis(6).size() == 1);   // a^3 only, b^2 dies
    CHECK(m.monomialBasis(7).size() == 1);   // a^2 b
}

TEST_CASE("differential squares to zero on every fixture") {
    std::vector<MinimalModel> fixtures;
    fixtures.push_back(sphere2());
    fixtures.push_back(sphere3());
    fixtures.push_back(cp2());
    {
        MinimalModel m({{"a1", 2}, {"a2", 2}, {"b1", 3}, {"b2", 3}, {"eta", 4}});
        m.setDifferential("eta",
                          poly(m, {{Rat(1), {"a1", "b1"}}, {Rat(2), {"a2", "b2"}}}));
        fixtures.push_back(std::move(m));
    }
    for (const MinimalModel& m : fixtures) {
        CHECK(m.validate().empty());
        for (std::size_t i = 0; i < m.generatorCount(); ++i)
            if (m.generator(i).degree <= 8) CHECK(m.differential(m.differentialOf(i)).empty());
    }
}

TEST_CASE("scaling endomorphism on cocycles") {
    MinimalModel m({{"a", 2}});
    Polynomial aa = poly(m, {{Rat(1), {"a", "a"}}});
    CHECK(m.chiPullback(Int(1), aa) == aa);
    Polynomial pulled = m.chiPullback(Int(2), aa);
    REQUIRE(pulled.size() == 1);
    CHECK(pulled.begin()->second == Rat(4));
}

TEST_CASE("pullback divisibility on zero-differential fixtures") {
    MinimalModel flat({{"a", 2}, {"c", 2}, {"b", 3}});
    std::vector<Polynomial> cocycles{
        poly(flat, {{Rat(1), {"a"}}}),
        poly(flat, {{Rat(1), {"a", "a"}}, {Rat(3), {"a", "c"}}}),
        poly(flat, {{Rat(1) / Rat(2), {"a", "b"}}, {Rat(5), {"c", "b"}}}),
        poly(flat, {{Rat(2) / Rat(3), {"a", "a", "c"}}}),
    };
    for (long r : {2L, 3L, 5L})
        for (const Polynomial& c : cocycles) CHECK(divisibleAfterClearing(flat, c, r));

    MinimalModel odd({{"b", 3}});
    CHECK(divisibleAfterClearing(odd, poly(odd, {{Rat(7), {"b"}}}), 2));
}

TEST_CASE("commutation defect of the scaling map") {
    MinimalModel s2 = sphere2();
    auto defects = s2.chiCommutationDefects(Int(2), 6);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].first == "eta");
    // d(chi eta) = 2 a^2 while chi(d eta) = 4 a^2.
    Polynomial expected = poly(s2, {{Rat(-2), {"a", "a"}}});
    CHECK(defects[0].second == expected);

    CHECK(s2.chiCommutationDefects(Int(1), 6).empty());
    CHECK(sphere3().chiCommutationDefects(Int(3), 6).empty());
    MinimalModel flat({{"a", 2}, {"b", 3}});
    CHECK(flat.chiCommutationDefects(Int(5), 8).empty());
}

TEST_CASE("minimum word length of a polynomial") {
    MinimalModel m({{"a", 2}, {"b", 2}, {"c", 2}});
    CHECK(p_degree(poly(m, {{Rat(1), {"a", "a"}}})) == 2);
    CHECK(p_degree(poly(m, {{Rat(1), {"a", "a"}}, {Rat(1), {"a", "b", "c"}}})) == 2);
    CHECK(p_degree(poly(m, {{Rat(1), {"a"}}})) == 1);
    CHECK_THROWS_AS(p_degree(Polynomial{}), std::invalid_argument);
}

TEST_CASE("form extraction on the even sphere") {
    BilinearFormExtraction ex = extract_bilinear_forms(sphere2());
    CHECK(ex.targetDegree == 3);
    CHECK(ex.degreeAlpha == 2);
    CHECK(ex.degreeBeta == 2);
    CHECK(ex.mu.empty());
    CHECK(ex.muNames.empty());
    CHECK(ex.etaNames == std::vector<std::string>{"eta"});
    CHECK(ex.alphaBasis == std::vector<std::string>{"a"});
    CHECK(ex.betaBasis == std::vector<std::string>{"a"});
    CHECK(ex.distinguishedCoefficient == Rat(1));
    CHECK(ex.denominatorLcm == 1);
    REQUIRE(ex.forms.size() == 1);
    REQUIRE(ex.forms[0].rows() == 1);
    REQUIRE(ex.forms[0].cols() == 1);
    CHECK(ex.forms[0].at(0, 0) == 1);  // golden entry for the chosen convention
}

TEST_CASE("form extraction with mixed degrees skips silent generators") {
    MinimalModel m({{"a", 2}, {"a'", 2}, {"b", 3}, {"eta", 4}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"a", "b"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.targetDegree == 4);
    CHECK(ex.degreeAlpha == 2);
    CHECK(ex.degreeBeta == 3);
    CHECK(ex.alphaBasis == std::vector<std::string>{"a"});  // a' never occurs
    CHECK(ex.betaBasis == std::vector<std::string>{"b"});
    REQUIRE(ex.forms.size() == 1);
    CHECK(ex.forms[0].at(0, 0) == 1);
}

TEST_CASE("form extraction reads off a diagonal matrix") {
    MinimalModel m({{"a1", 2}, {"a2", 2}, {"b1", 3}, {"b2", 3}, {"eta", 4}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"a1", "b1"}}, {Rat(2), {"a2", "b2"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.alphaBasis == std::vector<std::string>{"a1", "a2"});
    CHECK(ex.betaBasis == std::vector<std::string>{"b1", "b2"});
    REQUIRE(ex.forms.size() == 1);
    const IntMatrix& b = ex.forms[0];
    REQUIRE(b.rows() == 2);
    REQUIRE(b.cols() == 2);
    CHECK(b.at(0, 0) == 1);
    CHECK(b.at(0, 1) == 0);
    CHECK(b.at(1, 0) == 0);
    CHECK(b.at(1, 1) == 2);
}

TEST_CASE("equal odd degrees complete antisymmetrically") {
    MinimalModel m({{"x", 3}, {"y", 3}, {"eta", 5}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"x", "y"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.alphaBasis == std::vector<std::string>{"x", "y"});
    const IntMatrix& b = ex.forms[0];
    CHECK(b.at(0, 0) == 0);
    CHECK(b.at(0, 1) == 1);
    CHECK(b.at(1, 0) == -1);
    CHECK(b.at(1, 1) == 0);
}

TEST_CASE("equal even degrees read symmetrically with a spectator factor") {
    MinimalModel m({{"a", 2}, {"b", 2}, {"c", 2}, {"eta", 5}});
    m.setDifferential("eta", poly(m, {{Rat(1), {"a", "b", "c"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.muNames == std::vector<std::string>{"c"});
    CHECK(ex.muDegrees == std::vector<unsigned>{2});
    CHECK(ex.alphaBasis == std::vector<std::string>{"a", "b"});
    const IntMatrix& b = ex.forms[0];
    CHECK(b.at(0, 0) == 0);
    CHECK(b.at(0, 1) == 1);
    CHECK(b.at(1, 0) == 1);
    CHECK(b.at(1, 1) == 0);
}

TEST_CASE("denominators are cleared by a global least common multiple") {
    MinimalModel m({{"a", 2}, {"eta", 3}});
    m.setDifferential("eta", poly(m, {{Rat(1) / Rat(2), {"a", "a"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.distinguishedCoefficient == Rat(1) / Rat(2));
    CHECK(ex.denominatorLcm == 2);
    CHECK(ex.forms[0].at(0, 0) == 1);
}

TEST_CASE("extraction refuses a zero differential") {
    CHECK_THROWS_WITH_AS(extract_bilinear_forms(sphere3()),
                         "rational H-space; no forms to extract", std::domain_error);
}

TEST_CASE("extraction ignores generator insertion order") {
    MinimalModel m1({{"a1", 2}, {"a2", 2}, {"b1", 3}, {"b2", 3}, {"eta", 4}});
    MinimalModel m2({{"eta", 4}, {"b2", 3}, {"a2", 2}, {"b1", 3}, {"a1", 2}});
    for (MinimalModel* m : {&m1, &m2})
        m->setDifferential("eta",
                           poly(*m, {{Rat(1), {"a1", "b1"}}, {Rat(2), {"a2", "b2"}}}));
    BilinearFormExtraction e1 = extract_bilinear_forms(m1);
    BilinearFormExtraction e2 = extract_bilinear_forms(m2);
    CHECK(e1.alphaBasis == e2.alphaBasis);
    CHECK(e1.betaBasis == e2.betaBasis);
    REQUIRE(e1.forms.size() == e2.forms.size());
    for (std::size_t i = 0; i < e1.forms.size(); ++i)
        for (std::size_t r = 0; r < e1.forms[i].rows(); ++r)
            for (std::size_t c = 0; c < e1.forms[i].cols(); ++c)
                CHECK(e1.forms[i].at(r, c) == e2.forms[i].at(r, c));
}

TEST_CASE("several relation generators give one form each") {
    MinimalModel m({{"a1", 2}, {"a2", 2}, {"e1", 3}, {"e2", 3}});
    m.setDifferential("e1", poly(m, {{Rat(1), {"a1", "a1"}}}));
    m.setDifferential("e2", poly(m, {{Rat(1), {"a1", "a2"}}, {Rat(-1), {"a2", "a2"}}}));
    BilinearFormExtraction ex = extract_bilinear_forms(m);
    CHECK(ex.etaNames == std::vector<std::string>{"e1", "e2"});
    REQUIRE(ex.forms.size() == 2);
    CHECK(ex.alphaBasis == std::vector<std::string>{"a1", "a2"});
    // e1: coefficient of a1^2 sits at (0,0).
    CHECK(ex.forms[0].at(0, 0) == 1);
    CHECK(ex.forms[0].at(1, 1) == 0);
    // e2: cross term symmetric, diagonal read directly.
    CHECK(ex.forms[1].at(0, 1) == 1);
    CHECK(ex.forms[1].at(1, 0) == 1);
    CHECK(ex.forms[1].at(1, 1) == -1);
}

}  // TEST_SUITE
