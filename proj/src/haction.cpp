#include "rht/haction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rht {

MappingGroup mapping_group(
    const SimplicialPair& pair,
    const std::vector<std::pair<std::size_t, FgAbelianGroup>>& coefficients) {
    std::set<std::size_t> degrees;
    for (const auto& [n, pi] : coefficients)
        if (!degrees.insert(n).second)
            throw std::invalid_argument("coefficient degrees must be distinct");

    MappingGroup g;
    for (const auto& [n, pi] : coefficients)
        g.degreeComponents.emplace_back(n, relative_cohomology(pair, n, pi));
    std::sort(g.degreeComponents.begin(), g.degreeComponents.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<FgAbelianGroup> parts;
    for (const auto& [n, h] : g.degreeComponents) parts.push_back(h);
    g.sum = direct_sum(std::move(parts));
    g.total = g.sum.total;
    return g;
}

std::vector<GroupElement> coset_skeleton(const MappingGroup& g, const Int& r) {
    return cosets_mod_r(g.total, r);
}

std::vector<GroupElement> stabilizer_candidates(const MappingGroup& g, const Int& r) {
    return order_dividing_subgroup(g.total, r);
}

namespace {

struct ElementLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        if (a.freePart != b.freePart) return a.freePart < b.freePart;
        return a.torsionPart < b.torsionPart;
    }
};

}  // namespace

VffStructure assemble_vff(std::vector<std::string> orbitRepresentatives,
                          std::vector<std::vector<GroupElement>> stabilizers,
                          MappingGroup actingGroup) {
    if (orbitRepresentatives.size() != stabilizers.size())
        throw std::invalid_argument("one stabilizer per orbit required");
    const FgAbelianGroup& total = actingGroup.total;
    for (const std::vector<GroupElement>& stab : stabilizers) {
        std::set<GroupElement, ElementLess> members;
        for (const GroupElement& e : stab) {
            if (!total.isValidElement(e))
                throw std::invalid_argument("stabilizer element outside the acting group");
            if (!element_order(total, e))
                throw std::invalid_argument("stabilizer element of infinite order");
            members.insert(e);
        }
        if (!members.count(total.zero()))
            throw std::invalid_argument("stabilizer does not contain zero");
        for (const GroupElement& a : members) {
            if (!members.count(total.negate(a)))
                throw std::invalid_argument("stabilizer is not closed under negation");
            for (const GroupElement& b : members)
                if (!members.count(total.add(a, b)))
                    throw std::invalid_argument("stabilizer is not closed under addition");
        }
    }
    VffStructure out;
    out.orbitRepresentatives = std::move(orbitRepresentatives);
    out.stabilizers = std::move(stabilizers);
    out.actingGroup = std::move(actingGroup);
    return out;
}

}  // namespace rht
