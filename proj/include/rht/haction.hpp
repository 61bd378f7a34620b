#pragma once

#include "rht/simplicial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rht {

// The group of homotopy classes [X/A, H] for a product of Eilenberg-MacLane
// stages: one relative cohomology group per coefficient degree, assembled into
// a single canonical direct sum.
struct MappingGroup {
    // (degree n, H^n(total, sub; pi_n)), sorted by degree.
    std::vector<std::pair<std::size_t, FgAbelianGroup>> degreeComponents;
    FgAbelianGroup total;
    // Embedding bookkeeping of the components into total, in degree order.
    DirectSum sum;
};

// Componentwise relative cohomology of the pair. Coefficient degrees must be
// distinct; an empty list yields the trivial group.
MappingGroup mapping_group(const SimplicialPair& pair,
                           const std::vector<std::pair<std::size_t, FgAbelianGroup>>& coefficients);

// Representatives of total / r*total, lexicographically minimal and ordered.
std::vector<GroupElement> coset_skeleton(const MappingGroup& g, const Int& r);

// The finite subgroup of elements whose order divides r; candidate stabilizer
// elements for any orbit of the degree-r coset action.
std::vector<GroupElement> stabilizer_candidates(const MappingGroup& g, const Int& r);

// Orbit data in the shape of a virtually free and faithful action: finitely
// many labeled orbits, each carrying a finite stabilizer subgroup.
struct VffStructure {
    std::vector<std::string> orbitRepresentatives;
    std::vector<std::vector<GroupElement>> stabilizers;  // parallel to orbits
    MappingGroup actingGroup;
};

// Packages externally supplied orbit data after validating it: every
// stabilizer must be a finite subgroup of the acting group's total (contains
// zero, closed under negation and addition, all orders finite). Throws
// std::invalid_argument on an infinite-order element or a non-subgroup.
VffStructure assemble_vff(std::vector<std::string> orbitRepresentatives,
                          std::vector<std::vector<GroupElement>> stabilizers,
                          MappingGroup actingGroup);

}  // namespace rht
