#include "rht/chain.hpp"

#include <stdexcept>

namespace rht {

IntMatrix ChainComplex::boundaryAt(std::size_t n) const {
    if (n < boundary.size()) return boundary[n];
    std::size_t rows = n == 0 ? 0 : dim(n - 1);
    return IntMatrix(rows, dim(n));
}

bool ChainComplex::composesToZero() const {
    for (std::size_t n = 1; n + 1 <= dims.size(); ++n) {
        if (n >= boundary.size()) break;
        IntMatrix prod = boundaryAt(n) * boundaryAt(n + 1);
        if (!prod.isZero()) return false;
    }
    return true;
}

FgAbelianGroup ChainComplex::homology(std::size_t n) const {
    // H_n = Z^(dim ker d_n - rank d_(n+1)) + torsion of coker d_(n+1); the
    // ambient quotient has the same torsion because C_n / ker d_n is free.
    SmithDecomposition down = smith_normal_form(boundaryAt(n));
    SmithDecomposition up = smith_normal_form(boundaryAt(n + 1));
    std::size_t kerRank = dim(n) - down.rank();
    std::size_t freeRank = kerRank - up.rank();
    std::vector<Int> torsion;
    for (const Int& d : up.invariantFactors())
        if (d >= 2) torsion.push_back(d);
    return FgAbelianGroup(freeRank, std::move(torsion));
}

CochainModel::CochainModel(const ChainComplex& complex, FgAbelianGroup coefficients)
    : complex_(complex), pi_(std::move(coefficients)), gens_(pi_.freeRank() + pi_.torsionRank()) {}

IntMatrix CochainModel::coboundaryLift(std::size_t n) const {
    IntMatrix d = complex_.boundaryAt(n + 1);  // dims[n] x dims[n+1]
    IntMatrix t(gens_ * d.cols(), gens_ * d.rows());
    for (std::size_t sigma = 0; sigma < d.cols(); ++sigma)
        for (std::size_t c = 0; c < d.rows(); ++c) {
            if (d.at(c, sigma) == 0) continue;
            for (std::size_t k = 0; k < gens_; ++k)
                t.at(sigma * gens_ + k, c * gens_ + k) = d.at(c, sigma);
        }
    return t;
}

IntMatrix CochainModel::relationRows(std::size_t n) const {
    const std::size_t cells = complex_.dim(n);
    const std::size_t torsion = pi_.torsionRank();
    IntMatrix rows(cells * torsion, cells * gens_);
    for (std::size_t c = 0; c < cells; ++c)
        for (std::size_t k = 0; k < torsion; ++k)
            rows.at(c * torsion + k, c * gens_ + pi_.freeRank() + k) = pi_.torsionFactors()[k];
    return rows;
}

bool CochainModel::isCocycle(std::size_t n, const std::vector<Int>& lift) const {
    if (lift.size() != liftLength(n)) throw std::invalid_argument("cochain lift length mismatch");
    std::vector<Int> image = coboundaryLift(n).mulVec(lift);
    const std::size_t f = pi_.freeRank();
    for (std::size_t c = 0; c * gens_ < image.size(); ++c)
        for (std::size_t k = 0; k < gens_; ++k) {
            const Int& v = image[c * gens_ + k];
            if (k < f) {
                if (v != 0) return false;
            } else if (v % pi_.torsionFactors()[k - f] != 0) {
                return false;
            }
        }
    return true;
}

CochainModel::Cohomology CochainModel::cohomologyAt(std::size_t n) const {
    Cohomology h;
    const std::size_t len = liftLength(n);
    if (len == 0) {
        h.group = FgAbelianGroup();
        IntMatrix empty(0, 0);
        h.group.setBasis(PresentationBasis{empty, IntMatrix::identity(0), IntMatrix::identity(0), {}, {}, {}});
        h.cocycleBasis = IntMatrix(0, len);
        return h;
    }

    // Cocycle lattice: x with T x lying in the next degree's relation lattice.
    IntMatrix t = coboundaryLift(n);
    IntMatrix relNext = relationRows(n + 1).transpose();  // columns span the lattice
    IntMatrix stacked(t.rows(), t.cols() + relNext.cols());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) stacked.at(i, j) = t.at(i, j);
        for (std::size_t j = 0; j < relNext.cols(); ++j) stacked.at(i, t.cols() + j) = relNext.at(i, j);
    }
    LatticeBasis kernel = kernel_lattice_basis(stacked);
    IntMatrix projected(kernel.basisVectors.size(), len);
    for (std::size_t i = 0; i < kernel.basisVectors.size(); ++i)
        for (std::size_t j = 0; j < len; ++j) projected.at(i, j) = kernel.basisVectors[i][j];
    std::size_t zRank = 0;
    IntMatrix zBasis = row_hnf(projected, &zRank);
    IntMatrix bz(zRank, len);
    for (std::size_t i = 0; i < zRank; ++i)
        for (std::size_t j = 0; j < len; ++j) bz.at(i, j) = zBasis.at(i, j);
    h.cocycleBasis = bz;

    // Coboundary lattice plus per-cell relations.
    IntMatrix prev = n == 0 ? IntMatrix(len, 0) : coboundaryLift(n - 1);
    IntMatrix rel = relationRows(n);
    IntMatrix bRows(prev.cols() + rel.rows(), len);
    for (std::size_t j = 0; j < prev.cols(); ++j)
        for (std::size_t i = 0; i < len; ++i) bRows.at(j, i) = prev.at(i, j);
    for (std::size_t i = 0; i < rel.rows(); ++i)
        for (std::size_t j = 0; j < len; ++j) bRows.at(prev.cols() + i, j) = rel.at(i, j);

    // Present the quotient on the cocycle basis.
    IntMatrix bzT = bz.transpose();
    IntMatrix relations(bRows.rows(), zRank);
    for (std::size_t i = 0; i < bRows.rows(); ++i) {
        IntLinearSolution sol = solve_integer_system(bzT, bRows.row(i));
        if (!sol.solution) throw std::logic_error("coboundary escaped the cocycle lattice");
        for (std::size_t j = 0; j < zRank; ++j) relations.at(i, j) = (*sol.solution)[j];
    }
    h.group = from_presentation(relations);

    const std::size_t freeRank = h.group.freeRank();
    const std::size_t torsionRank = h.group.torsionRank();
    for (std::size_t k = 0; k < freeRank + torsionRank; ++k) {
        GroupElement e = h.group.zero();
        if (k < freeRank)
            e.freePart[k] = 1;
        else
            e.torsionPart[k - freeRank] = 1;
        std::vector<Int> lambda = h.group.fromCanonical(e);
        h.representatives.push_back(bz.vecMul(lambda));
    }
    return h;
}

GroupElement CochainModel::classOf(const Cohomology& h, std::size_t n, const std::vector<Int>& lift) const {
    if (!isCocycle(n, lift)) throw std::invalid_argument("not a cocycle");
    if (h.group.freeRank() == 0 && h.group.torsionRank() == 0) return h.group.zero();
    IntLinearSolution sol = solve_integer_system(h.cocycleBasis.transpose(), lift);
    if (!sol.solution) throw std::logic_error("cocycle escaped the cocycle lattice");
    return h.group.toCanonical(*sol.solution);
}

std::vector<GroupElement> CochainModel::cellValues(std::size_t n, const std::vector<Int>& lift) const {
    if (lift.size() != liftLength(n)) throw std::invalid_argument("cochain lift length mismatch");
    std::vector<GroupElement> values;
    const std::size_t f = pi_.freeRank();
    for (std::size_t c = 0; c < complex_.dim(n); ++c) {
        GroupElement e;
        e.freePart.assign(lift.begin() + c * gens_, lift.begin() + c * gens_ + f);
        e.torsionPart.assign(lift.begin() + c * gens_ + f, lift.begin() + (c + 1) * gens_);
        values.push_back(pi_.reduce(std::move(e)));
    }
    return values;
}

std::vector<Int> CochainModel::liftFromCellValues(std::size_t n, const std::vector<GroupElement>& values) const {
    if (values.size() != complex_.dim(n)) throw std::invalid_argument("cell value count mismatch");
    std::vector<Int> lift(liftLength(n));
    const std::size_t f = pi_.freeRank();
    for (std::size_t c = 0; c < values.size(); ++c) {
        if (!pi_.isValidElement(values[c])) throw std::invalid_argument("coefficient element shape mismatch");
        for (std::size_t k = 0; k < f; ++k) lift[c * gens_ + k] = values[c].freePart[k];
        for (std::size_t k = 0; k < pi_.torsionRank(); ++k) lift[c * gens_ + f + k] = values[c].torsionPart[k];
    }
    return lift;
}

int cohomological_dimension(const ChainComplex& c) {
    for (int n = static_cast<int>(c.dims.size()) - 1; n >= 0; --n) {
        FgAbelianGroup h = c.homology(static_cast<std::size_t>(n));
        if (!h.isTrivial()) return h.torsionFactors().empty() ? n : n + 1;
    }
    return -1;
}

}  // namespace rht
