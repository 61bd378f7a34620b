#pragma once

#include "rht/intlinalg.hpp"

#include <optional>
#include <vector>

namespace rht {

// Element of a group in invariant-factor form: freePart has one coordinate per
// free generator, torsionPart one per torsion factor (reduced into [0, t_i)).
struct GroupElement {
    std::vector<Int> freePart;
    std::vector<Int> torsionPart;

    bool operator==(const GroupElement& rhs) const = default;
};

// Change-of-basis bookkeeping kept when a group is derived from a presentation,
// so ambient coordinates can be round-tripped through canonical form.
struct PresentationBasis {
    IntMatrix relations;              // rows are relations on the ambient generators
    IntMatrix V, Vinv;                // x (row vector) -> x*V diagonalizes the row lattice
    std::vector<Int> diagonal;        // padded to ambient rank; 0 marks a free direction
    std::vector<std::size_t> freeIdx; // diagonal positions feeding freePart
    std::vector<std::size_t> torsionIdx;
};

// Finitely generated abelian group Z^freeRank + Z/t_1 + ... with t_i >= 2 and
// t_i | t_{i+1}.
class FgAbelianGroup {
public:
    FgAbelianGroup() : freeRank_(0) {}
    FgAbelianGroup(std::size_t freeRank, std::vector<Int> torsionFactors);

    std::size_t freeRank() const { return freeRank_; }
    const std::vector<Int>& torsionFactors() const { return torsion_; }
    std::size_t torsionRank() const { return torsion_.size(); }
    bool isTrivial() const { return freeRank_ == 0 && torsion_.empty(); }
    bool isFinite() const { return freeRank_ == 0; }
    Int order() const;  // finite groups only

    bool operator==(const FgAbelianGroup& rhs) const {
        return freeRank_ == rhs.freeRank_ && torsion_ == rhs.torsion_;
    }

    GroupElement zero() const;
    bool isValidElement(const GroupElement& e) const;
    GroupElement reduce(GroupElement e) const;  // torsion coords into [0, t_i)
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement negate(const GroupElement& a) const;
    GroupElement scale(const Int& k, const GroupElement& a) const;
    bool isZero(const GroupElement& a) const;

    const std::optional<PresentationBasis>& basis() const { return basis_; }
    void setBasis(PresentationBasis b) { basis_ = std::move(b); }
    // Canonical coordinates of an ambient vector; requires presentation bookkeeping.
    GroupElement toCanonical(const std::vector<Int>& ambient) const;
    // An ambient representative of a canonical element.
    std::vector<Int> fromCanonical(const GroupElement& e) const;

private:
    std::size_t freeRank_;
    std::vector<Int> torsion_;
    std::optional<PresentationBasis> basis_;
};

// Cokernel of the relation rows inside Z^cols, in invariant-factor form with
// the change of basis retained.
FgAbelianGroup from_presentation(const IntMatrix& relations);

// Lexicographically minimal nonnegative representatives of G / rG, enumerated
// in lexicographic order. Requires r >= 1.
std::vector<GroupElement> cosets_mod_r(const FgAbelianGroup& g, const Int& r);

// All elements killed by r (free part necessarily zero). Requires r >= 1.
std::vector<GroupElement> order_dividing_subgroup(const FgAbelianGroup& g, const Int& r);

// nullopt for elements of infinite order.
std::optional<Int> element_order(const FgAbelianGroup& g, const GroupElement& e);

// Canonicalized direct sum together with the embeddings of the summands.
struct DirectSum {
    FgAbelianGroup total;
    std::vector<FgAbelianGroup> components;

    GroupElement inject(std::size_t component, const GroupElement& e) const;

    // Ambient layout: one generator per component free/torsion coordinate.
    std::vector<std::vector<std::size_t>> freePos, torsionPos;
    std::size_t ambientRank = 0;
};

DirectSum direct_sum(std::vector<FgAbelianGroup> components);

}  // namespace rht
