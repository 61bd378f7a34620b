#pragma once

#include "rht/abgroup.hpp"

#include <vector>

namespace rht {

// Chain complex of finitely generated free Z-modules. boundary[n] maps
// C_n -> C_{n-1} and has shape dims[n-1] x dims[n]; boundary[0] has zero rows.
struct ChainComplex {
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> boundary;

    std::size_t dim(std::size_t n) const { return n < dims.size() ? dims[n] : 0; }
    // Zero-shaped matrices outside the populated range.
    IntMatrix boundaryAt(std::size_t n) const;
    bool composesToZero() const;
    FgAbelianGroup homology(std::size_t n) const;
};

// Top degree N with nonzero homology: N when H_N is torsion-free, N + 1 when
// it has torsion, -1 when every degree vanishes.
int cohomological_dimension(const ChainComplex& c);

// H^n(C; pi) computed from explicit cochains. A cochain in degree n is stored
// as an integer lift in Z^(gens * dims[n]), generator-major within each cell:
// index cell * gens + k, where generators 0..freeRank-1 of pi are free and the
// rest carry the torsion factors.
class CochainModel {
public:
    CochainModel(const ChainComplex& complex, FgAbelianGroup coefficients);

    const FgAbelianGroup& coefficients() const { return pi_; }
    std::size_t gens() const { return gens_; }
    std::size_t liftLength(std::size_t n) const { return gens_ * complex_.dim(n); }

    // Integer lift of the coboundary, C^n -> C^(n+1).
    IntMatrix coboundaryLift(std::size_t n) const;
    // True when the lift represents a pi-valued cocycle (coboundary vanishes
    // in every coefficient coordinate).
    bool isCocycle(std::size_t n, const std::vector<Int>& lift) const;

    struct Cohomology {
        FgAbelianGroup group;
        // One integer lift per canonical generator: free generators first,
        // then torsion generators, matching GroupElement coordinates.
        std::vector<std::vector<Int>> representatives;
        // Basis of the cocycle lattice and of the coboundary+relation lattice,
        // kept for coordinate computations.
        IntMatrix cocycleBasis;
    };

    Cohomology cohomologyAt(std::size_t n) const;

    // Invariant-factor coordinates of a cocycle's class. The lift must satisfy
    // isCocycle; throws std::invalid_argument otherwise.
    GroupElement classOf(const Cohomology& h, std::size_t n, const std::vector<Int>& lift) const;

    // Per-cell values of a lift as reduced coefficient-group elements.
    std::vector<GroupElement> cellValues(std::size_t n, const std::vector<Int>& lift) const;
    std::vector<Int> liftFromCellValues(std::size_t n, const std::vector<GroupElement>& values) const;

    // Rows form a basis of the per-cell relation lattice in degree n.
    IntMatrix relationRows(std::size_t n) const;

private:
    const ChainComplex& complex_;
    FgAbelianGroup pi_;
    std::size_t gens_;
};

}  // namespace rht
