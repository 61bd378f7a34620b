#include "rht/simplicial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rht {

SimplicialComplex SimplicialComplex::fromSimplices(const std::vector<Simplex>& simplices) {
    std::set<Simplex> closure;
    for (Simplex s : simplices) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex repeats a vertex");
        if (s.empty()) throw std::invalid_argument("empty simplex");
        // All nonempty subsets; simplex sizes stay small.
        const std::size_t k = s.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(s[i]);
            closure.insert(std::move(face));
        }
    }
    SimplicialComplex c;
    for (const Simplex& s : closure) {
        const std::size_t d = s.size() - 1;
        if (c.byDim_.size() <= d) c.byDim_.resize(d + 1);
        c.byDim_[d].push_back(s);
    }
    for (auto& level : c.byDim_) std::sort(level.begin(), level.end());
    return c;
}

std::size_t SimplicialComplex::count(std::size_t dim) const {
    return dim < byDim_.size() ? byDim_[dim].size() : 0;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t dim) const {
    static const std::vector<Simplex> none;
    return dim < byDim_.size() ? byDim_[dim] : none;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    if (s.empty() || s.size() > byDim_.size()) return false;
    const auto& level = byDim_[s.size() - 1];
    return std::binary_search(level.begin(), level.end(), s);
}

std::size_t SimplicialComplex::indexOf(const Simplex& s) const {
    const auto& level = simplices(s.size() - 1);
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) throw std::invalid_argument("simplex not in complex");
    return static_cast<std::size_t>(it - level.begin());
}

bool SimplicialComplex::containsComplex(const SimplicialComplex& sub) const {
    for (int d = 0; d <= sub.topDimension(); ++d)
        for (const Simplex& s : sub.simplices(d))
            if (!contains(s)) return false;
    return true;
}

SimplicialPair SimplicialPair::make(SimplicialComplex total, SimplicialComplex sub) {
    if (!total.containsComplex(sub)) throw std::invalid_argument("sub is not a subcomplex of total");
    return SimplicialPair{std::move(total), std::move(sub)};
}

ChainComplex chain_complex(const SimplicialComplex& c) {
    ChainComplex cc;
    const int top = c.topDimension();
    if (top < 0) return cc;
    cc.dims.resize(top + 1);
    cc.boundary.resize(top + 1);
    for (int n = 0; n <= top; ++n) cc.dims[n] = c.count(n);
    cc.boundary[0] = IntMatrix(0, cc.dims[0]);
    for (int n = 1; n <= top; ++n) {
        IntMatrix d(cc.dims[n - 1], cc.dims[n]);
        const auto& level = c.simplices(n);
        for (std::size_t j = 0; j < level.size(); ++j) {
            const Simplex& s = level[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                d.at(c.indexOf(face), j) = (i % 2 == 0) ? 1 : -1;
            }
        }
        cc.boundary[n] = std::move(d);
    }
    return cc;
}

RelativeComplex relative_chain_complex(const SimplicialPair& p) {
    RelativeComplex rel;
    const int top = p.total.topDimension();
    if (top < 0) return rel;
    rel.complex.dims.resize(top + 1);
    rel.complex.boundary.resize(top + 1);
    rel.retained.resize(top + 1);

    // retained index within total, and total index -> relative index
    std::vector<std::vector<std::ptrdiff_t>> toRel(top + 1);
    for (int n = 0; n <= top; ++n) {
        const auto& level = p.total.simplices(n);
        toRel[n].assign(level.size(), -1);
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (p.sub.contains(level[i])) continue;
            toRel[n][i] = static_cast<std::ptrdiff_t>(rel.retained[n].size());
            rel.retained[n].push_back(i);
        }
        rel.complex.dims[n] = rel.retained[n].size();
    }
    rel.complex.boundary[0] = IntMatrix(0, rel.complex.dims[0]);
    for (int n = 1; n <= top; ++n) {
        IntMatrix d(rel.complex.dims[n - 1], rel.complex.dims[n]);
        const auto& level = p.total.simplices(n);
        for (std::size_t jr = 0; jr < rel.retained[n].size(); ++jr) {
            const Simplex& s = level[rel.retained[n][jr]];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                std::ptrdiff_t ir = toRel[n - 1][p.total.indexOf(face)];
                if (ir < 0) continue;  // face lies in sub
                d.at(static_cast<std::size_t>(ir), jr) = (i % 2 == 0) ? 1 : -1;
            }
        }
        rel.complex.boundary[n] = std::move(d);
    }
    return rel;
}

FgAbelianGroup relative_homology(const SimplicialPair& p, std::size_t n) {
    return relative_chain_complex(p).complex.homology(n);
}

FgAbelianGroup canonical_group(std::size_t freeRank, const std::vector<Int>& factors) {
    std::vector<Int> kept;
    for (const Int& f : factors) {
        if (f < 1) throw std::invalid_argument("cyclic factor must be >= 1");
        if (f >= 2) kept.push_back(f);
    }
    IntMatrix relations(kept.size(), freeRank + kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) relations.at(i, freeRank + i) = kept[i];
    return from_presentation(relations);
}

FgAbelianGroup hom_group(const FgAbelianGroup& a, const FgAbelianGroup& pi) {
    std::size_t freeRank = a.freeRank() * pi.freeRank();
    std::vector<Int> factors;
    for (const Int& t : pi.torsionFactors())
        for (std::size_t k = 0; k < a.freeRank(); ++k) factors.push_back(t);
    for (const Int& s : a.torsionFactors())
        for (const Int& t : pi.torsionFactors()) factors.push_back(gcd(s, t));
    return canonical_group(freeRank, factors);
}

FgAbelianGroup ext_group(const FgAbelianGroup& a, const FgAbelianGroup& pi) {
    // Ext(Z/s, pi) = pi / s*pi.
    std::vector<Int> factors;
    for (const Int& s : a.torsionFactors()) {
        for (std::size_t k = 0; k < pi.freeRank(); ++k) factors.push_back(s);
        for (const Int& t : pi.torsionFactors()) factors.push_back(gcd(s, t));
    }
    return canonical_group(0, factors);
}

FgAbelianGroup relative_cohomology(const SimplicialPair& p, std::size_t n, const FgAbelianGroup& pi) {
    FgAbelianGroup hn = relative_homology(p, n);
    FgAbelianGroup hom = hom_group(hn, pi);
    std::vector<Int> factors = hom.torsionFactors();
    std::size_t freeRank = hom.freeRank();
    if (n > 0) {
        FgAbelianGroup ext = ext_group(relative_homology(p, n - 1), pi);
        factors.insert(factors.end(), ext.torsionFactors().begin(), ext.torsionFactors().end());
    }
    return canonical_group(freeRank, factors);
}

int cohomological_dimension(const SimplicialPair& p) {
    return cohomological_dimension(relative_chain_complex(p).complex);
}

namespace {

// Restriction of a degree-n lift on total to the sub complex.
std::vector<Int> restrictLift(const SimplicialPair& p, std::size_t n, std::size_t gens,
                              const std::vector<Int>& lift) {
    const auto& subLevel = p.sub.simplices(n);
    std::vector<Int> out(gens * subLevel.size());
    for (std::size_t c = 0; c < subLevel.size(); ++c) {
        std::size_t cx = p.total.indexOf(subLevel[c]);
        for (std::size_t k = 0; k < gens; ++k) out[c * gens + k] = lift[cx * gens + k];
    }
    return out;
}

}  // namespace

RestrictionMap restriction_map(const SimplicialPair& p, std::size_t n, const FgAbelianGroup& pi) {
    ChainComplex cx = chain_complex(p.total);
    ChainComplex ca = chain_complex(p.sub);
    CochainModel mx(cx, pi), ma(ca, pi);
    CochainModel::Cohomology hx = mx.cohomologyAt(n);
    CochainModel::Cohomology ha = ma.cohomologyAt(n);

    const std::size_t sourceGens = hx.group.freeRank() + hx.group.torsionRank();
    const std::size_t targetGens = ha.group.freeRank() + ha.group.torsionRank();
    IntMatrix m(targetGens, sourceGens);
    for (std::size_t j = 0; j < sourceGens; ++j) {
        std::vector<Int> restricted = restrictLift(p, n, mx.gens(), hx.representatives[j]);
        GroupElement img = ma.classOf(ha, n, restricted);
        for (std::size_t i = 0; i < ha.group.freeRank(); ++i) m.at(i, j) = img.freePart[i];
        for (std::size_t i = 0; i < ha.group.torsionRank(); ++i)
            m.at(ha.group.freeRank() + i, j) = img.torsionPart[i];
    }
    return RestrictionMap{hx.group, ha.group, std::move(m)};
}

std::optional<CochainSpec> cocycle_extension(const SimplicialPair& p, std::size_t n,
                                             const FgAbelianGroup& pi, const CochainSpec& onSub) {
    if (onSub.degree != n) throw std::invalid_argument("cochain degree mismatch");
    if (!(onSub.coefficients == pi)) throw std::invalid_argument("coefficient group mismatch");
    ChainComplex cx = chain_complex(p.total);
    ChainComplex ca = chain_complex(p.sub);
    CochainModel mx(cx, pi), ma(ca, pi);

    std::vector<Int> liftA = ma.liftFromCellValues(n, onSub.values);
    if (!ma.isCocycle(n, liftA)) throw std::invalid_argument("not a cocycle");

    // Unknowns: x (lift on total), w (slack for the cocycle condition on the
    // (n+1)-cells of total), z (slack for matching on the n-cells of sub).
    const std::size_t lx = mx.liftLength(n);
    IntMatrix t = mx.coboundaryLift(n);
    IntMatrix relNext = mx.relationRows(n + 1);  // rows span the slack lattice
    IntMatrix relSub = ma.relationRows(n);

    const std::size_t rowsTop = t.rows();
    const std::size_t rowsBot = ma.liftLength(n);
    const std::size_t colsW = relNext.rows();
    const std::size_t colsZ = relSub.rows();
    IntMatrix sys(rowsTop + rowsBot, lx + colsW + colsZ);
    for (std::size_t i = 0; i < rowsTop; ++i) {
        for (std::size_t j = 0; j < lx; ++j) sys.at(i, j) = t.at(i, j);
        for (std::size_t j = 0; j < colsW; ++j) sys.at(i, lx + j) = relNext.at(j, i);
    }
    const auto& subLevel = p.sub.simplices(n);
    for (std::size_t c = 0; c < subLevel.size(); ++c) {
        std::size_t cx2 = p.total.indexOf(subLevel[c]);
        for (std::size_t k = 0; k < mx.gens(); ++k)
            sys.at(rowsTop + c * mx.gens() + k, cx2 * mx.gens() + k) = 1;
    }
    for (std::size_t j = 0; j < colsZ; ++j)
        for (std::size_t i = 0; i < rowsBot; ++i) sys.at(rowsTop + i, lx + colsW + j) = relSub.at(j, i);

    std::vector<Int> rhs(rowsTop + rowsBot);
    for (std::size_t i = 0; i < rowsBot; ++i) rhs[rowsTop + i] = liftA[i];

    IntLinearSolution sol = solve_integer_system(sys, rhs);
    if (!sol.solution) return std::nullopt;
    std::vector<Int> x(sol.solution->begin(), sol.solution->begin() + lx);
    if (!mx.isCocycle(n, x)) throw std::logic_error("extension failed the cocycle condition");
    return CochainSpec{n, pi, mx.cellValues(n, x)};
}

}  // namespace rht
