#include "rht/haction.hpp"

#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace rht;

namespace {

SimplicialPair diskPair() {
    return SimplicialPair::make(
        SimplicialComplex::fromSimplices({{0, 1, 2}}),
        SimplicialComplex::fromSimplices({{0, 1}, {0, 2}, {1, 2}}));
}

GroupElement elem(const FgAbelianGroup& g, const std::vector<long>& freePart,
                  const std::vector<long>& torsionPart) {
    GroupElement e = g.zero();
    for (std::size_t i = 0; i < freePart.size(); ++i) e.freePart[i] = freePart[i];
    for (std::size_t i = 0; i < torsionPart.size(); ++i) e.torsionPart[i] = torsionPart[i];
    return e;
}

}  // namespace

TEST_SUITE("haction") {

TEST_CASE("single integral stage on the disk pair") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    CHECK(g.total == FgAbelianGroup(1, {}));
    REQUIRE(g.degreeComponents.size() == 1);
    CHECK(g.degreeComponents[0].first == 2);
    CHECK(g.degreeComponents[0].second == FgAbelianGroup(1, {}));
}

TEST_CASE("mixed stages keep only the live degrees") {
    // H^2 with Z/2 coefficients survives; H^3 of the disk pair vanishes.
    MappingGroup g = mapping_group(
        diskPair(), {{2, FgAbelianGroup(0, {Int(2)})}, {3, FgAbelianGroup(1, {})}});
    REQUIRE(g.degreeComponents.size() == 2);
    CHECK(g.degreeComponents[0].second == FgAbelianGroup(0, {Int(2)}));
    CHECK(g.degreeComponents[1].second.isTrivial());
    CHECK(g.total == FgAbelianGroup(0, {Int(2)}));
}

TEST_CASE("empty coefficient list gives the trivial group") {
    MappingGroup g = mapping_group(diskPair(), {});
    CHECK(g.total.isTrivial());
    CHECK(g.degreeComponents.empty());
}

TEST_CASE("components arrive sorted by degree") {
    MappingGroup g = mapping_group(
        diskPair(), {{3, FgAbelianGroup(1, {})}, {2, FgAbelianGroup(1, {})}});
    REQUIRE(g.degreeComponents.size() == 2);
    CHECK(g.degreeComponents[0].first == 2);
    CHECK(g.degreeComponents[1].first == 3);
}

TEST_CASE("duplicate degrees are rejected") {
    CHECK_THROWS_AS(mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})},
                                               {2, FgAbelianGroup(0, {Int(2)})}}),
                    std::invalid_argument);
}

TEST_CASE("coset skeleton matches the underlying group operation") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    std::vector<GroupElement> sk = coset_skeleton(g, Int(3));
    std::vector<GroupElement> direct = cosets_mod_r(g.total, Int(3));
    REQUIRE(sk.size() == 3);
    CHECK(sk == direct);
    for (long k = 0; k < 3; ++k) CHECK(sk[k].freePart[0] == k);
}

TEST_CASE("stabilizer candidates are the torsion elements of order dividing r") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(0, {Int(6)})}});
    std::vector<GroupElement> cands = stabilizer_candidates(g, Int(2));
    std::vector<GroupElement> direct = order_dividing_subgroup(g.total, Int(2));
    CHECK(cands == direct);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].torsionPart[0] == 0);
    CHECK(cands[1].torsionPart[0] == 3);
}

TEST_CASE("candidate count divides the torsion order") {
    std::vector<FgAbelianGroup> groups{FgAbelianGroup(0, {Int(4)}),
                                       FgAbelianGroup(0, {Int(2), Int(6)}),
                                       FgAbelianGroup(1, {Int(12)})};
    for (const FgAbelianGroup& base : groups) {
        MappingGroup g = mapping_group(diskPair(), {{2, base}});
        Int torsionOrder = 1;
        for (const Int& t : g.total.torsionFactors()) torsionOrder *= t;
        for (long r : {1L, 2L, 3L, 4L, 6L}) {
            std::size_t count = stabilizer_candidates(g, Int(r)).size();
            CHECK(torsionOrder % Int(count) == 0);
        }
    }
}

TEST_CASE("single free orbit with trivial stabilizer") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    VffStructure v = assemble_vff({"orbit0"}, {{g.total.zero()}}, g);
    CHECK(v.orbitRepresentatives == std::vector<std::string>{"orbit0"});
    REQUIRE(v.stabilizers.size() == 1);
    CHECK(v.stabilizers[0].size() == 1);
}

TEST_CASE("three orbits from the mod-three skeleton") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    std::vector<GroupElement> sk = coset_skeleton(g, Int(3));
    std::vector<std::string> names;
    std::vector<std::vector<GroupElement>> stabs;
    for (const GroupElement& rep : sk) {
        names.push_back("coset@" + rep.freePart[0].get_str());
        stabs.push_back({g.total.zero()});
    }
    VffStructure v = assemble_vff(names, stabs, g);
    CHECK(v.orbitRepresentatives.size() == 3);
}

TEST_CASE("two-torsion stabilizer inside a cyclic group") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(0, {Int(6)})}});
    // {0, 3} is the order-dividing-2 subgroup of Z/6; oracle: closure check.
    GroupElement zero = g.total.zero();
    GroupElement three = elem(g.total, {}, {3});
    std::set<long> subgroup{0, 3};
    for (long a : subgroup)
        for (long b : subgroup) CHECK(subgroup.count((a + b) % 6) == 1);
    VffStructure v = assemble_vff({"orbit"}, {{zero, three}}, g);
    CHECK(v.stabilizers[0].size() == 2);
}

TEST_CASE("orbit and stabilizer counts must match") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    CHECK_THROWS_WITH_AS(assemble_vff({"a", "b"}, {{g.total.zero()}}, g),
                         "one stabilizer per orbit required", std::invalid_argument);
}

TEST_CASE("infinite-order stabilizer elements are rejected") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(1, {})}});
    GroupElement one = elem(g.total, {1}, {});
    CHECK_THROWS_WITH_AS(assemble_vff({"a"}, {{g.total.zero(), one}}, g),
                         "stabilizer element of infinite order", std::invalid_argument);
}

TEST_CASE("stabilizers must be subgroups") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(0, {Int(6)})}});
    GroupElement zero = g.total.zero();
    GroupElement two = elem(g.total, {}, {2});
    // {0, 2} misses 4 = 2 + 2: not closed under addition.
    CHECK_THROWS_AS(assemble_vff({"a"}, {{zero, two}}, g), std::invalid_argument);
    // {2, 4} misses zero.
    GroupElement four = elem(g.total, {}, {4});
    CHECK_THROWS_AS(assemble_vff({"a"}, {{two, four}}, g), std::invalid_argument);
    // Full cyclic subgroup {0, 2, 4} passes.
    CHECK_NOTHROW(assemble_vff({"a"}, {{zero, two, four}}, g));
}

TEST_CASE("malformed elements are rejected") {
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(0, {Int(6)})}});
    GroupElement bad;
    bad.freePart = {Int(0), Int(0)};  // wrong shape for Z/6
    CHECK_THROWS_AS(assemble_vff({"a"}, {{bad}}, g), std::invalid_argument);
}

TEST_CASE("translation action of a finite cyclic group on itself") {
    // Synthetic fixture: G = Z/6 acting on itself by translation has a single
    // orbit with trivial stabilizer; r=1 collapses the skeleton to one coset.
    MappingGroup g = mapping_group(diskPair(), {{2, FgAbelianGroup(0, {Int(6)})}});
    std::vector<GroupElement> sk = coset_skeleton(g, Int(1));
    REQUIRE(sk.size() == 1);
    VffStructure v = assemble_vff({"translation-orbit"}, {{g.total.zero()}}, g);
    CHECK(v.stabilizers[0].size() == 1);
    CHECK(element_order(g.total, v.stabilizers[0][0]) == Int(1));
}

}  // TEST_SUITE
