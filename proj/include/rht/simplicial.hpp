#pragma once

#include "rht/chain.hpp"

#include <cstdint>
#include <optional>

namespace rht {

using VertexId = std::int64_t;
using Simplex = std::vector<VertexId>;  // strictly increasing vertex ids

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Face closure of the given simplices. Input vertex lists may be unsorted
    // but must not repeat a vertex.
    static SimplicialComplex fromSimplices(const std::vector<Simplex>& simplices);

    bool empty() const { return byDim_.empty(); }
    int topDimension() const { return static_cast<int>(byDim_.size()) - 1; }
    std::size_t count(std::size_t dim) const;
    // Lexicographically sorted within each dimension.
    const std::vector<Simplex>& simplices(std::size_t dim) const;
    bool contains(const Simplex& s) const;
    std::size_t indexOf(const Simplex& s) const;  // position within its dimension
    bool containsComplex(const SimplicialComplex& sub) const;

private:
    std::vector<std::vector<Simplex>> byDim_;
};

struct SimplicialPair {
    SimplicialComplex total, sub;

    // Validates that sub is a subcomplex of total.
    static SimplicialPair make(SimplicialComplex total, SimplicialComplex sub);
};

// Boundary matrices with sorted-vertex orientations.
ChainComplex chain_complex(const SimplicialComplex& c);

// Quotient complex: degree-n basis is the n-simplices of total that are not in
// sub; boundary entries landing in sub are dropped. retained[n][i] gives the
// index in total of the i-th retained n-simplex.
struct RelativeComplex {
    ChainComplex complex;
    std::vector<std::vector<std::size_t>> retained;
};
RelativeComplex relative_chain_complex(const SimplicialPair& p);

FgAbelianGroup relative_homology(const SimplicialPair& p, std::size_t n);

// Universal-coefficient form Hom(H_n, pi) + Ext(H_(n-1), pi), canonicalized.
FgAbelianGroup relative_cohomology(const SimplicialPair& p, std::size_t n, const FgAbelianGroup& pi);

// Least d with H_n(total, sub) = 0 for all n > d and H_d torsion-free;
// -1 when every relative group vanishes.
int cohomological_dimension(const SimplicialPair& p);

// pi-valued simplicial cochain, values indexed like simplices(degree).
struct CochainSpec {
    std::size_t degree = 0;
    FgAbelianGroup coefficients;
    std::vector<GroupElement> values;
};

struct RestrictionMap {
    FgAbelianGroup source, target;  // H^n(total; pi) and H^n(sub; pi)
    // Column j holds the invariant-factor coordinates (free rows first, then
    // torsion rows as residues) of the image of source generator j.
    IntMatrix matrix;
};
RestrictionMap restriction_map(const SimplicialPair& p, std::size_t n, const FgAbelianGroup& pi);

// Extends a cocycle on sub to a cocycle on total by solving the combined
// cocycle + restriction conditions as one integer linear system. nullopt
// exactly when the input's class misses the image of the restriction map.
// Throws std::invalid_argument("not a cocycle") when the input fails the
// cocycle condition on sub.
std::optional<CochainSpec> cocycle_extension(const SimplicialPair& p, std::size_t n,
                                             const FgAbelianGroup& pi, const CochainSpec& onSub);

// Hom / Ext into pi on invariant factors.
FgAbelianGroup hom_group(const FgAbelianGroup& a, const FgAbelianGroup& pi);
FgAbelianGroup ext_group(const FgAbelianGroup& a, const FgAbelianGroup& pi);

// Invariant-factor form of Z^freeRank + sum of Z/f (factors 1 are dropped).
FgAbelianGroup canonical_group(std::size_t freeRank, const std::vector<Int>& factors);

}  // namespace rht
