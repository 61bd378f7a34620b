#pragma once

#include "rht/cdga.hpp"
#include "rht/chain.hpp"
#include "rht/diophantine.hpp"

#include <map>
#include <string>
#include <vector>

namespace rht {

// Formal attaching data: integer combinations of sphere classes, Whitehead
// product symbols, and composition-with-degree markers. Only the degree-1
// Hurewicz content (the cell-class coefficients outside any whitehead) feeds
// boundary computations; whitehead terms are boundary-free bookkeeping.
//
// Grammar: expr := "0" | cellId | whitehead(expr, ...) | deg(k, expr)
//                | sum(term, ...)
//          term := coeff*expr | expr          (bare expr means coefficient 1)
struct AttachingExpr {
    enum class Kind { Zero, Cell, Whitehead, Deg, Sum };
    Kind kind = Kind::Zero;
    std::string cell;                  // Kind::Cell
    Int multiplier;                    // Kind::Deg
    std::vector<Int> coefficients;     // Kind::Sum, parallel to children
    std::vector<AttachingExpr> children;  // Whitehead args / Deg inner / Sum terms

    static AttachingExpr zero();
    static AttachingExpr cellRef(std::string id);
    static AttachingExpr whitehead(std::vector<AttachingExpr> args);
    static AttachingExpr deg(Int k, AttachingExpr inner);
    static AttachingExpr sum(std::vector<Int> coeffs, std::vector<AttachingExpr> terms);

    std::string print() const;
    static AttachingExpr parse(const std::string& text);

    // Degree-1 content: cell id -> coefficient.
    std::map<std::string, Int> hurewicz() const;
};

enum class CellRole { InA, FatWedge, Cylinder, RelationCell };

std::string to_string(CellRole r);
CellRole cell_role_from_string(const std::string& s);

struct FormalCell {
    std::string id;
    unsigned dimension = 0;
    CellRole role = CellRole::InA;
    AttachingExpr attaching;
};

struct CellPairDescription {
    std::vector<FormalCell> cells;
    std::vector<std::string> assumptions;  // recorded non-algorithmic hypotheses

    const FormalCell* find(const std::string& id) const;
    // Checks id uniqueness, reference resolution, and that every attaching
    // expression is homogeneous of degree dimension - 1. Throws
    // std::invalid_argument on malformed data.
    void validate() const;
};

struct SphereAssignment {
    std::string sphere;
    std::string targetClass;  // generator name, or "eta-pairing"
    Int multiplier;
    std::vector<Int> pairings;  // for eta-pairing spheres: c_pq per form p
};

struct MapDescription {
    std::vector<SphereAssignment> assignments;
};

// All proper subsets of {1..t} with their product-cell dimensions, ordered by
// size then lexicographically. The empty subset is the basepoint cell.
std::vector<std::pair<std::vector<std::size_t>, unsigned>> fat_wedge_cells(
    const std::vector<unsigned>& sphereDims);

struct EncodeMultipliers {
    std::vector<Int> p;  // one per mu factor; empty means all 1
    Int rho1 = 1, rho2 = 1, rho = 1;
};

struct EncodeResult {
    CellPairDescription pair;
    MapDescription map;
    unsigned d = 0, d1 = 0, d2 = 0;
    std::size_t sphereCountA = 0;  // wedge summands of A (without basepoint)
    std::size_t tensorCount = 0;   // relation cells
};

// Compiles a block-bilinear system against an extracted-forms target into the
// formal cell pair: A = wedge of equation spheres and mu spheres; X adds the
// per-(i, j) fat wedges, the degree-rho cylinders, and one relation cell per
// coefficient tensor. Throws std::invalid_argument on dimensional mismatch
// between the system's blocks/forms and the extraction.
EncodeResult encode(const QuadraticSystem& system, const BilinearFormExtraction& target,
                    const EncodeMultipliers& multipliers = {});

struct RelativeHomologyReport {
    unsigned topDimension = 0;
    unsigned d = 0;
    // H_n of the full cellular complex of X for n in (d, topDimension].
    std::vector<std::pair<unsigned, FgAbelianGroup>> totalComplexAboveD;
    // H_n(X, A): homology of the quotient complex with the in-A cells deleted.
    std::vector<std::pair<unsigned, FgAbelianGroup>> relativeQuotientAboveD;
    bool totalAllZero = true;
    bool relativeAllZero = true;
    // Dimension criterion applied to the full relative (quotient) complex.
    int pairCohomologicalDimension = -1;
};

// Extracts the cellular chain complex from the Hurewicz bookkeeping and
// reports the homology above degree d in both readings: the complex of X
// itself and the genuine relative quotient. The two differ exactly when
// relation-cell boundaries land in A.
RelativeHomologyReport verify_relative_homology(const CellPairDescription& desc, unsigned d);

// The cellular chain complex of the description, with in-A cells removed when
// relativeQuotient is set. Exposed for independent cross-checks.
ChainComplex cellular_complex(const CellPairDescription& desc, bool relativeQuotient);

struct SkewExample {
    CellPairDescription complex;
    // Degree of the collapse map on the k-th six-cell: -rhs_k.
    std::vector<Int> sixCellDegrees;
};

// The wedge of r three-spheres with one six-cell per equation, attached along
// the prescribed Whitehead sums, together with the collapse-map degree data.
SkewExample encode_skew_example(const QuadraticSystem& skewSystem);

}  // namespace rht
