#include "rht/diophantine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rht {

std::string to_string(SystemShape s) {
    switch (s) {
        case SystemShape::QSYM: return "QSYM";
        case SystemShape::QSKEW: return "QSKEW";
        case SystemShape::QDIFF: return "QDIFF";
        case SystemShape::QBLIN: return "QBLIN";
    }
    throw std::logic_error("unreachable");
}

SystemShape shape_from_string(const std::string& s) {
    if (s == "QSYM") return SystemShape::QSYM;
    if (s == "QSKEW") return SystemShape::QSKEW;
    if (s == "QDIFF") return SystemShape::QDIFF;
    if (s == "QBLIN") return SystemShape::QBLIN;
    throw std::invalid_argument("unknown system shape: " + s);
}

std::size_t QuadraticSystem::equationCount() const {
    return shape == SystemShape::QBLIN ? equations.size() : rhs.size();
}

std::vector<std::string> QuadraticSystem::variableNames() const {
    std::vector<std::string> names;
    if (shape == SystemShape::QBLIN) {
        for (const std::string& b : uBlockNames)
            for (std::size_t k = 1; k <= uBlockDim; ++k)
                names.push_back(b + "[" + std::to_string(k) + "]");
        for (const std::string& b : vBlockNames)
            for (std::size_t k = 1; k <= vBlockDim; ++k)
                names.push_back(b + "[" + std::to_string(k) + "]");
        return names;
    }
    for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
    if (shape != SystemShape::QSYM)
        for (std::size_t j = 1; j <= r; ++j) names.push_back("y" + std::to_string(j));
    return names;
}

void QuadraticSystem::validate() const {
    if (shape == SystemShape::QBLIN) {
        if (forms.empty()) throw std::invalid_argument("QBLIN system has no forms");
        bool allZero = true;
        for (const IntMatrix& b : forms) {
            if (b.rows() != uBlockDim || b.cols() != vBlockDim)
                throw std::invalid_argument("form dimensions do not match block dimensions");
            if (!b.isZero()) allZero = false;
        }
        if (allZero) throw std::invalid_argument("QBLIN forms are all zero");
        for (const QblinEquation& e : equations) {
            if (e.form >= forms.size()) throw std::invalid_argument("equation references missing form");
            if (e.coeffs.rows() != uBlockNames.size() || e.coeffs.cols() != vBlockNames.size())
                throw std::invalid_argument("equation coefficient shape mismatch");
        }
        return;
    }
    if (coefficients.size() != rhs.size())
        throw std::invalid_argument("coefficient tensor count differs from rhs count");
    for (const IntMatrix& a : coefficients) {
        if (a.rows() != r || a.cols() != r)
            throw std::invalid_argument("coefficient matrix is not r x r");
        if (shape != SystemShape::QDIFF)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (a.at(i, j) != 0)
                        throw std::invalid_argument(
                            "only entries above the diagonal may be nonzero for this shape");
    }
}

namespace {

const Int& fetch(const Assignment& a, const std::string& name) {
    auto it = a.find(name);
    if (it == a.end()) throw std::invalid_argument("missing variable: " + name);
    return it->second;
}

std::string xName(std::size_t i) { return "x" + std::to_string(i + 1); }
std::string yName(std::size_t j) { return "y" + std::to_string(j + 1); }
std::string blockVar(const std::string& block, std::size_t k) {
    return block + "[" + std::to_string(k + 1) + "]";
}

std::vector<Int> blockValues(const Assignment& a, const std::string& block, std::size_t dim) {
    std::vector<Int> v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = fetch(a, blockVar(block, k));
    return v;
}

// A quadratic system compiled to flat products: residual_q = sum of
// coeff * value[first] * value[second] over the q-th term list, minus rhs.
struct CompiledSystem {
    std::vector<std::string> varNames;
    struct Term {
        std::size_t first, second;
        Int coeff;
    };
    std::vector<std::vector<Term>> equations;
    std::vector<Int> rhs;
};

CompiledSystem compile(const QuadraticSystem& sys) {
    sys.validate();
    CompiledSystem c;
    c.varNames = sys.variableNames();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < c.varNames.size(); ++i) index[c.varNames[i]] = i;

    if (sys.shape == SystemShape::QBLIN) {
        for (const QblinEquation& e : sys.equations) {
            std::vector<CompiledSystem::Term> terms;
            const IntMatrix& b = sys.forms[e.form];
            for (std::size_t i = 0; i < sys.uBlockNames.size(); ++i)
                for (std::size_t j = 0; j < sys.vBlockNames.size(); ++j) {
                    const Int& a = e.coeffs.at(i, j);
                    if (a == 0) continue;
                    for (std::size_t k = 0; k < sys.uBlockDim; ++k)
                        for (std::size_t l = 0; l < sys.vBlockDim; ++l) {
                            if (b.at(k, l) == 0) continue;
                            terms.push_back({index.at(blockVar(sys.uBlockNames[i], k)),
                                             index.at(blockVar(sys.vBlockNames[j], l)),
                                             a * b.at(k, l)});
                        }
                }
            c.equations.push_back(std::move(terms));
            c.rhs.push_back(e.rhs);
        }
        return c;
    }

    for (std::size_t q = 0; q < sys.rhs.size(); ++q) {
        std::vector<CompiledSystem::Term> terms;
        const IntMatrix& a = sys.coefficients[q];
        for (std::size_t i = 0; i < sys.r; ++i)
            for (std::size_t j = 0; j < sys.r; ++j) {
                if (a.at(i, j) == 0) continue;
                switch (sys.shape) {
                    case SystemShape::QSYM:
                        terms.push_back({index.at(xName(i)), index.at(xName(j)), a.at(i, j)});
                        break;
                    case SystemShape::QSKEW:
                        terms.push_back({index.at(xName(i)), index.at(yName(j)), a.at(i, j)});
                        terms.push_back({index.at(xName(j)), index.at(yName(i)), -a.at(i, j)});
                        break;
                    case SystemShape::QDIFF:
                        terms.push_back({index.at(xName(i)), index.at(yName(j)), a.at(i, j)});
                        break;
                    case SystemShape::QBLIN: break;  // handled above
                }
            }
        c.equations.push_back(std::move(terms));
        c.rhs.push_back(sys.rhs[q]);
    }
    return c;
}

std::vector<Int> evaluateCompiled(const CompiledSystem& c, const std::vector<Int>& values) {
    std::vector<Int> residual;
    residual.reserve(c.equations.size());
    Int acc, prod;
    for (std::size_t q = 0; q < c.equations.size(); ++q) {
        acc = -c.rhs[q];
        for (const auto& t : c.equations[q]) {
            prod = values[t.first] * values[t.second];
            acc += t.coeff * prod;
        }
        residual.push_back(acc);
    }
    return residual;
}

}  // namespace

std::vector<Int> evaluate(const QuadraticSystem& system, const Assignment& assignment) {
    CompiledSystem c = compile(system);
    std::vector<Int> values(c.varNames.size());
    for (std::size_t i = 0; i < c.varNames.size(); ++i) values[i] = fetch(assignment, c.varNames[i]);
    return evaluateCompiled(c, values);
}

std::optional<Assignment> brute_force_solve(const QuadraticSystem& system, const Int& bound,
                                            const Int& budget) {
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    CompiledSystem c = compile(system);
    const std::size_t vars = c.varNames.size();

    Int boxSize;
    mpz_class side = 2 * bound + 1;
    mpz_pow_ui(boxSize.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(vars));
    if (boxSize > budget)
        throw BudgetError("search box of size " + boxSize.get_str() +
                                 " exceeds budget; required budget " + boxSize.get_str());

    const long n = static_cast<long>(bound.get_si());

    // int64 fast path when every intermediate provably fits.
    bool fits = true;
    long long worst = 0;
    for (std::size_t q = 0; q < c.equations.size() && fits; ++q) {
        Int mag = abs(c.rhs[q]);
        for (const auto& t : c.equations[q]) mag += abs(t.coeff) * bound * bound;
        if (!mag.fits_slong_p() || mag.get_si() > (1LL << 62))
            fits = false;
        else
            worst = std::max(worst, static_cast<long long>(mag.get_si()));
    }
    (void)worst;

    std::vector<long> vals(vars, -n);
    auto buildAssignment = [&]() {
        Assignment a;
        for (std::size_t i = 0; i < vars; ++i) a[c.varNames[i]] = Int(vals[i]);
        return a;
    };

    if (fits) {
        struct FastTerm {
            std::size_t first, second;
            long long coeff;
        };
        std::vector<std::vector<FastTerm>> eqs(c.equations.size());
        std::vector<long long> rhs(c.rhs.size());
        for (std::size_t q = 0; q < c.equations.size(); ++q) {
            rhs[q] = c.rhs[q].get_si();
            for (const auto& t : c.equations[q])
                eqs[q].push_back({t.first, t.second, t.coeff.get_si()});
        }
        while (true) {
            bool ok = true;
            for (std::size_t q = 0; q < eqs.size() && ok; ++q) {
                long long acc = -rhs[q];
                for (const auto& t : eqs[q])
                    acc += t.coeff * static_cast<long long>(vals[t.first]) * vals[t.second];
                ok = acc == 0;
            }
            if (ok) return buildAssignment();
            std::size_t pos = vars;
            while (pos > 0 && vals[pos - 1] == n) vals[--pos] = -n;
            if (pos == 0) return std::nullopt;
            ++vals[pos - 1];
        }
    }

    std::vector<Int> bigVals(vars, Int(-n));
    while (true) {
        std::vector<Int> residual = evaluateCompiled(c, bigVals);
        bool ok = std::all_of(residual.begin(), residual.end(), [](const Int& v) { return v == 0; });
        if (ok) {
            Assignment a;
            for (std::size_t i = 0; i < vars; ++i) a[c.varNames[i]] = bigVals[i];
            return a;
        }
        std::size_t pos = vars;
        while (pos > 0 && bigVals[pos - 1] == n) bigVals[--pos] = -n;
        if (pos == 0) return std::nullopt;
        bigVals[pos - 1] += 1;
    }
}

namespace {

// Expresses each row of `target` as an integer combination of the rows of
// `basisRows`: result * basisRows == target.
IntMatrix rowCombinationWitness(const IntMatrix& target, const IntMatrix& basisRows) {
    IntMatrix bt = basisRows.transpose();
    IntMatrix out(target.rows(), basisRows.rows());
    for (std::size_t i = 0; i < target.rows(); ++i) {
        IntLinearSolution sol = solve_integer_system(bt, target.row(i));
        if (!sol.solution) throw std::logic_error("row not contained in the claimed row lattice");
        for (std::size_t j = 0; j < basisRows.rows(); ++j) out.at(i, j) = (*sol.solution)[j];
    }
    return out;
}

IntMatrix matrixFromBasisRows(const LatticeBasis& b) {
    IntMatrix m(b.basisVectors.size(), b.ambientDim);
    for (std::size_t i = 0; i < b.basisVectors.size(); ++i)
        for (std::size_t j = 0; j < b.ambientDim; ++j) m.at(i, j) = b.basisVectors[i][j];
    return m;
}

}  // namespace

bool SquareifyResult::verify(const IntMatrix& b) const {
    if (uToReduced * b != reducedRows) return false;
    if (uFromReduced * reducedRows != b) return false;
    if (square * vToSquare != reducedRows) return false;
    if (reducedRows * vFromSquare != square) return false;
    return determinant(square) != 0;
}

SquareifyResult squareify(const IntMatrix& b) {
    if (b.isZero()) throw std::invalid_argument("zero matrix has no square reduction");

    SquareifyResult out;
    out.reducedRows = matrixFromBasisRows(row_lattice_basis(b));
    out.uToReduced = rowCombinationWitness(out.reducedRows, b);
    out.uFromReduced = rowCombinationWitness(b, out.reducedRows);

    // Columns of `square` generate the column lattice of reducedRows; the
    // rows of reducedRows are independent, so square is t x t of full rank.
    LatticeBasis colBasis = column_lattice_basis(out.reducedRows);
    IntMatrix squareT(colBasis.basisVectors.size(), colBasis.ambientDim);
    for (std::size_t i = 0; i < colBasis.basisVectors.size(); ++i)
        for (std::size_t j = 0; j < colBasis.ambientDim; ++j)
            squareT.at(i, j) = colBasis.basisVectors[i][j];
    out.square = squareT.transpose();
    if (!out.square.isSquare()) throw std::logic_error("column lattice rank disagrees with row rank");

    // square * vToSquare = reducedRows, column by column.
    out.vToSquare = IntMatrix(out.square.cols(), out.reducedRows.cols());
    for (std::size_t j = 0; j < out.reducedRows.cols(); ++j) {
        IntLinearSolution sol = solve_integer_system(out.square, out.reducedRows.col(j));
        if (!sol.solution) throw std::logic_error("column outside the claimed column lattice");
        for (std::size_t i = 0; i < out.square.cols(); ++i) out.vToSquare.at(i, j) = (*sol.solution)[i];
    }
    // reducedRows * vFromSquare = square.
    out.vFromSquare = IntMatrix(out.reducedRows.cols(), out.square.cols());
    for (std::size_t j = 0; j < out.square.cols(); ++j) {
        IntLinearSolution sol = solve_integer_system(out.reducedRows, out.square.col(j));
        if (!sol.solution) throw std::logic_error("square column not achievable");
        for (std::size_t i = 0; i < out.reducedRows.cols(); ++i)
            out.vFromSquare.at(i, j) = (*sol.solution)[i];
    }
    if (!out.verify(b)) throw std::logic_error("squareify witnesses failed verification");
    return out;
}

QblinReduction reduce_qdiff_to_qblin(const QuadraticSystem& qdiff,
                                     const std::vector<IntMatrix>& forms) {
    if (qdiff.shape != SystemShape::QDIFF) throw std::invalid_argument("input system must be QDIFF");
    qdiff.validate();
    if (forms.empty()) throw std::invalid_argument("no forms given");
    const std::size_t m = forms[0].rows(), n = forms[0].cols();
    for (const IntMatrix& b : forms)
        if (b.rows() != m || b.cols() != n) throw std::invalid_argument("forms have mixed shapes");

    // Reshuffle so the first form has a nonzero (1,1) entry.
    std::size_t pStar = forms.size(), kStar = 0, lStar = 0;
    for (std::size_t p = 0; p < forms.size() && pStar == forms.size(); ++p)
        for (std::size_t k = 0; k < m && pStar == forms.size(); ++k)
            for (std::size_t l = 0; l < n; ++l)
                if (forms[p].at(k, l) != 0) {
                    pStar = p;
                    kStar = k;
                    lStar = l;
                    break;
                }
    if (pStar == forms.size()) throw std::invalid_argument("QBLIN forms are all zero");

    QblinReduction red;
    red.qdiffR = qdiff.r;
    red.qdiffS = qdiff.rhs.size();
    auto frontPerm = [](std::size_t star, std::size_t count) {
        std::vector<std::size_t> p{star};
        for (std::size_t i = 0; i < count; ++i)
            if (i != star) p.push_back(i);
        return p;
    };
    red.formPerm = frontPerm(pStar, forms.size());
    red.rowPerm = frontPerm(kStar, m);
    red.colPerm = frontPerm(lStar, n);

    QuadraticSystem& sys = red.system;
    sys.shape = SystemShape::QBLIN;
    sys.uBlockDim = m;
    sys.vBlockDim = n;
    for (std::size_t i = 1; i <= qdiff.r; ++i) sys.uBlockNames.push_back("u" + std::to_string(i));
    for (std::size_t k = 1; k <= m; ++k) sys.uBlockNames.push_back("zc" + std::to_string(k));
    for (std::size_t j = 1; j <= qdiff.r; ++j) sys.vBlockNames.push_back("v" + std::to_string(j));
    for (std::size_t l = 1; l <= n; ++l) sys.vBlockNames.push_back("wc" + std::to_string(l));

    for (std::size_t p = 0; p < forms.size(); ++p) {
        IntMatrix bp(m, n);
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < n; ++l)
                bp.at(k, l) = forms[red.formPerm[p]].at(red.rowPerm[k], red.colPerm[l]);
        sys.forms.push_back(std::move(bp));
    }
    red.distinguishedEntry = sys.forms[0].at(0, 0);

    const std::size_t r = qdiff.r;
    const std::size_t rU = sys.uBlockNames.size(), rV = sys.vBlockNames.size();
    const std::size_t s = qdiff.rhs.size();
    for (std::size_t p = 0; p < sys.forms.size(); ++p)
        for (std::size_t q = 0; q < s; ++q) {
            QblinEquation e;
            e.form = p;
            e.family = "original";
            e.tensor = q;
            e.coeffs = IntMatrix(rU, rV);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) e.coeffs.at(i, j) = qdiff.coefficients[q].at(i, j);
            e.rhs = sys.forms[p].at(0, 0) * qdiff.rhs[q];
            sys.equations.push_back(std::move(e));
        }
    for (std::size_t p = 0; p < sys.forms.size(); ++p)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                QblinEquation e;
                e.form = p;
                e.family = "form-preservation";
                e.tensor = s + k * n + l;
                e.coeffs = IntMatrix(rU, rV);
                e.coeffs.at(r + k, r + l) = 1;
                e.rhs = sys.forms[p].at(k, l);
                sys.equations.push_back(std::move(e));
            }
    for (std::size_t p = 0; p < sys.forms.size(); ++p)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t l = 1; l < n; ++l) {
                QblinEquation e;
                e.form = p;
                e.family = "u-orthogonality";
                e.tensor = s + m * n + i * (n - 1) + (l - 1);
                e.coeffs = IntMatrix(rU, rV);
                e.coeffs.at(i, r + l) = 1;
                e.rhs = 0;
                sys.equations.push_back(std::move(e));
            }
    for (std::size_t p = 0; p < sys.forms.size(); ++p)
        for (std::size_t k = 1; k < m; ++k)
            for (std::size_t j = 0; j < r; ++j) {
                QblinEquation e;
                e.form = p;
                e.family = "v-orthogonality";
                e.tensor = s + m * n + r * (n - 1) + (k - 1) * r + j;
                e.coeffs = IntMatrix(rU, rV);
                e.coeffs.at(r + k, j) = 1;
                e.rhs = 0;
                sys.equations.push_back(std::move(e));
            }
    sys.validate();
    return red;
}

namespace {

void setBlock(Assignment& a, const std::string& block, const std::vector<Int>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) a[blockVar(block, k)] = values[k];
}

std::vector<Int> unitVector(std::size_t dim, std::size_t pos) {
    std::vector<Int> e(dim);
    e[pos] = 1;
    return e;
}

}  // namespace

ForwardWitness forward_witness(const QblinReduction& reduction, const std::vector<Int>& x,
                               const std::vector<Int>& y) {
    const QuadraticSystem& sys = reduction.system;
    if (x.size() != reduction.qdiffR || y.size() != reduction.qdiffR)
        throw std::invalid_argument("solution size does not match the reduced system");
    ForwardWitness w;
    const std::size_t m = sys.uBlockDim, n = sys.vBlockDim, r = reduction.qdiffR;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> u(m);
        u[0] = x[i];
        setBlock(w.assignment, sys.uBlockNames[i], u);
    }
    for (std::size_t k = 0; k < m; ++k)
        setBlock(w.assignment, sys.uBlockNames[r + k], unitVector(m, k));
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Int> v(n);
        v[0] = y[j];
        setBlock(w.assignment, sys.vBlockNames[j], v);
    }
    for (std::size_t l = 0; l < n; ++l)
        setBlock(w.assignment, sys.vBlockNames[r + l], unitVector(n, l));
    w.residual = evaluate(sys, w.assignment);
    w.residualZero =
        std::all_of(w.residual.begin(), w.residual.end(), [](const Int& v) { return v == 0; });
    return w;
}

std::optional<CorrectedWitness> corrected_forward_witness(const QblinReduction& reduction,
                                                          const std::vector<Int>& x,
                                                          const std::vector<Int>& y) {
    const QuadraticSystem& sys = reduction.system;
    if (sys.forms.size() != 1) return std::nullopt;
    const IntMatrix& b = sys.forms[0];
    if (!b.isSquare()) return std::nullopt;
    Int det = determinant(b);
    if (det == 0) return std::nullopt;
    const std::size_t m = b.rows(), r = reduction.qdiffR;

    // c with c^T B = lambda e_1^T: solve B^T c = det * e_1, then strip the content.
    auto scaledUnitSolve = [&](const IntMatrix& mat) {
        std::vector<Int> rhs(m);
        rhs[0] = det;
        IntLinearSolution sol = solve_integer_system(mat, rhs);
        if (!sol.solution) throw std::logic_error("det-scaled unit vector must be achievable");
        std::vector<Int> v = *sol.solution;
        Int g = 0;
        for (const Int& e : v) g = gcd(g, e);
        if (g > 1)
            for (Int& e : v) e /= g;
        return v;
    };
    CorrectedWitness w;
    w.c = scaledUnitSolve(b.transpose());
    w.d = scaledUnitSolve(b);

    std::vector<Int> bd = b.mulVec(w.d);
    Int factor = 0;
    for (std::size_t k = 0; k < m; ++k) factor += w.c[k] * bd[k];
    w.scaledRhsFactor = factor;

    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> u(m);
        for (std::size_t k = 0; k < m; ++k) u[k] = x[i] * w.c[k];
        setBlock(w.assignment, sys.uBlockNames[i], u);
    }
    for (std::size_t k = 0; k < m; ++k)
        setBlock(w.assignment, sys.uBlockNames[r + k], unitVector(m, k));
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Int> v(m);
        for (std::size_t k = 0; k < m; ++k) v[k] = y[j] * w.d[k];
        setBlock(w.assignment, sys.vBlockNames[j], v);
    }
    for (std::size_t l = 0; l < m; ++l)
        setBlock(w.assignment, sys.vBlockNames[r + l], unitVector(m, l));

    // The original family rescales from (B)_11 to c^T B d; every other family
    // keeps its right-hand side.
    QuadraticSystem rescaled = sys;
    for (QblinEquation& e : rescaled.equations)
        if (e.family == "original") {
            // stored rhs = (B)_11 * c_q; replace the factor.
            if (reduction.distinguishedEntry == 0)
                throw std::logic_error("distinguished entry vanished");
            Int cq = e.rhs / reduction.distinguishedEntry;
            e.rhs = factor * cq;
        }
    w.residual = evaluate(rescaled, w.assignment);
    w.residualZero =
        std::all_of(w.residual.begin(), w.residual.end(), [](const Int& v) { return v == 0; });
    return w;
}

BackwardTransport backward_transport(const QblinReduction& reduction,
                                     const Assignment& instSolution) {
    const QuadraticSystem& sys = reduction.system;
    const std::size_t m = sys.uBlockDim, n = sys.vBlockDim, r = reduction.qdiffR;

    std::vector<Int> inputResidual = evaluate(sys, instSolution);
    if (!std::all_of(inputResidual.begin(), inputResidual.end(),
                     [](const Int& v) { return v == 0; }))
        throw std::invalid_argument("assignment does not solve the system");

    IntMatrix z(m, m), w(n, n);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Int> col = blockValues(instSolution, sys.uBlockNames[r + k], m);
        for (std::size_t i = 0; i < m; ++i) z.at(i, k) = col[i];
    }
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<Int> col = blockValues(instSolution, sys.vBlockNames[r + l], n);
        for (std::size_t i = 0; i < n; ++i) w.at(i, l) = col[i];
    }
    if (!is_unimodular(z)) throw std::invalid_argument("Z is not unimodular");
    if (!is_unimodular(w)) throw std::invalid_argument("W is not unimodular");
    IntMatrix zInv = invert_unimodular(z), wInv = invert_unimodular(w);

    BackwardTransport out;
    out.scaleFactor = reduction.distinguishedEntry;
    const IntMatrix& b1 = sys.forms[0];
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> u = zInv.mulVec(blockValues(instSolution, sys.uBlockNames[i], m));
        setBlock(out.normalized, sys.uBlockNames[i], u);
        // x_i = (u'^T B_1)_1
        Int xi = 0;
        for (std::size_t k = 0; k < m; ++k) xi += u[k] * b1.at(k, 0);
        out.x.push_back(xi);
    }
    for (std::size_t k = 0; k < m; ++k)
        setBlock(out.normalized, sys.uBlockNames[r + k], unitVector(m, k));
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Int> v = wInv.mulVec(blockValues(instSolution, sys.vBlockNames[j], n));
        setBlock(out.normalized, sys.vBlockNames[j], v);
        out.y.push_back(v[0]);
    }
    for (std::size_t l = 0; l < n; ++l)
        setBlock(out.normalized, sys.vBlockNames[r + l], unitVector(n, l));

    // The normalized assignment must solve the full system, and the extracted
    // scalars the scaled quadratic one; both are checked exactly.
    std::vector<Int> normResidual = evaluate(sys, out.normalized);
    bool normOk = std::all_of(normResidual.begin(), normResidual.end(),
                              [](const Int& v) { return v == 0; });
    bool scaledOk = true;
    for (std::size_t q = 0; q < reduction.qdiffS && scaledOk; ++q) {
        // original-family equations for form 0 come first, in q order.
        const QblinEquation& e = sys.equations[q];
        Int lhs = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) lhs += e.coeffs.at(i, j) * out.x[i] * out.y[j];
        scaledOk = lhs == e.rhs;  // e.rhs = (B_1)_11 * c_q
    }
    out.verified = normOk && scaledOk;
    return out;
}

namespace {

// All vectors in [-N, N]^dim satisfying vec^T . constraint == 0 for every
// constraint row.
std::vector<std::vector<Int>> boxVectorsOrthogonal(std::size_t dim, long n,
                                                   const std::vector<std::vector<Int>>& constraints) {
    std::vector<std::vector<Int>> out;
    std::vector<long> vals(dim, -n);
    while (true) {
        bool ok = true;
        for (const auto& cRow : constraints) {
            Int acc = 0;
            for (std::size_t k = 0; k < dim; ++k) acc += Int(vals[k]) * cRow[k];
            if (acc != 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<Int> v(dim);
            for (std::size_t k = 0; k < dim; ++k) v[k] = vals[k];
            out.push_back(std::move(v));
        }
        std::size_t pos = dim;
        while (pos > 0 && vals[pos - 1] == n) vals[--pos] = -n;
        if (pos == 0) return out;
        ++vals[pos - 1];
    }
}

}  // namespace

std::optional<Assignment> solve_reduction_in_box(const QblinReduction& reduction, const Int& bound) {
    const QuadraticSystem& sys = reduction.system;
    const std::size_t m = sys.uBlockDim, n = sys.vBlockDim, r = reduction.qdiffR;
    const IntMatrix& b1 = sys.forms[0];

    if (m != n || determinant(b1) == 0) return brute_force_solve(sys, bound);

    const long nb = static_cast<long>(bound.get_si());
    Int zBoxSize;
    mpz_class side = 2 * bound + 1;
    mpz_pow_ui(zBoxSize.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(m * m));
    if (zBoxSize > 10000000)
        throw BudgetError("search box of size " + zBoxSize.get_str() +
                                 " exceeds budget; required budget " + zBoxSize.get_str());

    std::vector<long> zVals(m * m, -nb);
    while (true) {
        IntMatrix z(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) z.at(i, j) = zVals[i * m + j];
        Int dz = determinant(z);
        if (dz == 1 || dz == -1) {
            // Form preservation for the invertible first form pins W:
            // Z^T B_1 W = B_1 forces W = B_1^{-1} Z^{-T} B_1.
            IntMatrix zInvT = invert_unimodular(z).transpose();
            IntMatrix t = zInvT * b1;
            bool wOk = true;
            IntMatrix w(m, m);
            for (std::size_t j = 0; j < m && wOk; ++j) {
                IntLinearSolution sol = solve_integer_system(b1, t.col(j));
                if (!sol.solution) {
                    wOk = false;
                    break;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    w.at(i, j) = (*sol.solution)[i];
                    if (w.at(i, j) > nb || w.at(i, j) < -nb) wOk = false;
                }
            }
            for (std::size_t p = 1; p < sys.forms.size() && wOk; ++p)
                if (z.transpose() * sys.forms[p] * w != sys.forms[p]) wOk = false;
            if (wOk) {
                // Orthogonality families constrain u against later W columns
                // and v against later Z columns, for every form.
                std::vector<std::vector<Int>> uConstraints, vConstraints;
                for (std::size_t p = 0; p < sys.forms.size(); ++p) {
                    for (std::size_t l = 1; l < n; ++l)
                        uConstraints.push_back(sys.forms[p].mulVec(w.col(l)));
                    for (std::size_t k = 1; k < m; ++k)
                        vConstraints.push_back(sys.forms[p].transpose().mulVec(z.col(k)));
                }
                std::vector<std::vector<Int>> uOk = boxVectorsOrthogonal(m, nb, uConstraints);
                std::vector<std::vector<Int>> vOk = boxVectorsOrthogonal(n, nb, vConstraints);
                if (!uOk.empty() && !vOk.empty()) {
                    // Pairings u^T B_p v for every candidate pair.
                    std::vector<std::vector<std::vector<Int>>> pairing(sys.forms.size());
                    for (std::size_t p = 0; p < sys.forms.size(); ++p) {
                        pairing[p].assign(uOk.size(), std::vector<Int>(vOk.size()));
                        for (std::size_t a = 0; a < uOk.size(); ++a) {
                            std::vector<Int> left = sys.forms[p].vecMul(uOk[a]);
                            for (std::size_t c = 0; c < vOk.size(); ++c) {
                                Int acc = 0;
                                for (std::size_t l = 0; l < n; ++l) acc += left[l] * vOk[c][l];
                                pairing[p][a][c] = acc;
                            }
                        }
                    }
                    Int tupleCount;
                    mpz_class uc = Int(uOk.size()), vc = Int(vOk.size());
                    Int ucr, vcr;
                    mpz_pow_ui(ucr.get_mpz_t(), uc.get_mpz_t(), static_cast<unsigned long>(r));
                    mpz_pow_ui(vcr.get_mpz_t(), vc.get_mpz_t(), static_cast<unsigned long>(r));
                    tupleCount = ucr * vcr;
                    if (tupleCount > 50000000)
                        throw BudgetError("search box of size " + tupleCount.get_str() +
                                                 " exceeds budget; required budget " +
                                                 tupleCount.get_str());

                    std::vector<std::size_t> pick(2 * r, 0);  // u indices then v indices
                    while (true) {
                        bool ok = true;
                        for (std::size_t q = 0; q < reduction.qdiffS * sys.forms.size() && ok;
                             ++q) {
                            const QblinEquation& e = sys.equations[q];
                            Int lhs = 0;
                            for (std::size_t i = 0; i < r; ++i)
                                for (std::size_t j = 0; j < r; ++j) {
                                    const Int& a = e.coeffs.at(i, j);
                                    if (a != 0) lhs += a * pairing[e.form][pick[i]][pick[r + j]];
                                }
                            ok = lhs == e.rhs;
                        }
                        if (ok) {
                            Assignment out;
                            for (std::size_t i = 0; i < r; ++i)
                                setBlock(out, sys.uBlockNames[i], uOk[pick[i]]);
                            for (std::size_t k = 0; k < m; ++k)
                                setBlock(out, sys.uBlockNames[r + k], z.col(k));
                            for (std::size_t j = 0; j < r; ++j)
                                setBlock(out, sys.vBlockNames[j], vOk[pick[r + j]]);
                            for (std::size_t l = 0; l < n; ++l)
                                setBlock(out, sys.vBlockNames[r + l], w.col(l));
                            return out;
                        }
                        std::size_t pos = 2 * r;
                        while (pos > 0 &&
                               pick[pos - 1] + 1 == (pos - 1 < r ? uOk.size() : vOk.size()))
                            pick[--pos] = 0;
                        if (pos == 0) break;
                        ++pick[pos - 1];
                    }
                }
            }
        }
        std::size_t pos = m * m;
        while (pos > 0 && zVals[pos - 1] == nb) zVals[--pos] = -nb;
        if (pos == 0) return std::nullopt;
        ++zVals[pos - 1];
    }
}

InstanceReport run_instance(const QuadraticSystem& qdiff, const std::vector<IntMatrix>& forms,
                            const Int& bound, const Int& budget) {
    InstanceReport rep;
    rep.qdiff = qdiff;
    rep.qdiffSolution = brute_force_solve(qdiff, bound, budget);
    rep.qdiffSolvable = rep.qdiffSolution.has_value();

    QblinReduction red = reduce_qdiff_to_qblin(qdiff, forms);
    rep.instSolution = solve_reduction_in_box(red, bound);
    rep.instSolvable = rep.instSolution.has_value();

    if (rep.qdiffSolvable) {
        std::vector<Int> x, y;
        for (std::size_t i = 0; i < qdiff.r; ++i) {
            x.push_back(fetch(*rep.qdiffSolution, xName(i)));
            y.push_back(fetch(*rep.qdiffSolution, yName(i)));
        }
        rep.forward = forward_witness(red, x, y);
        rep.correctedForward = corrected_forward_witness(red, x, y);
    }
    if (rep.instSolvable) rep.backward = backward_transport(red, *rep.instSolution);

    bool inconsistent = false;
    if (rep.backward && !rep.backward->verified) inconsistent = true;
    if (rep.forward && !rep.forward->residualZero) inconsistent = true;
    if (rep.forward && rep.forward->residualZero && !rep.instSolvable) inconsistent = true;
    rep.verdict = inconsistent ? "inconsistent-with-paper" : "consistent";
    return rep;
}

HarnessReport equivalence_harness(const std::vector<QuadraticSystem>& qdiffs,
                                  const std::vector<IntMatrix>& forms, const Int& bound,
                                  const Int& budget) {
    HarnessReport rep;
    for (const QuadraticSystem& q : qdiffs) {
        InstanceReport r = run_instance(q, forms, bound, budget);
        if (r.verdict == "consistent")
            ++rep.consistentCount;
        else
            ++rep.inconsistentCount;
        if (r.qdiffSolvable) ++rep.qdiffSolvableCount;
        if (r.instSolvable) ++rep.instSolvableCount;
        if (r.forward) {
            if (r.forward->residualZero)
                ++rep.forwardResidualZeroCount;
            else
                ++rep.forwardResidualNonzeroCount;
        }
        if (r.backward && r.backward->verified) ++rep.backwardVerifiedCount;
        rep.instances.push_back(std::move(r));
    }
    return rep;
}

std::vector<QuadraticSystem> random_qdiff_instances(std::uint64_t seed, std::size_t count,
                                                    std::size_t maxR, std::size_t maxS, long lo,
                                                    long hi) {
    if (hi < lo) throw std::invalid_argument("empty coefficient range");
    std::mt19937_64 rng(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    auto draw = [&]() { return lo + static_cast<long>(rng() % span); };
    std::vector<QuadraticSystem> out;
    for (std::size_t c = 0; c < count; ++c) {
        QuadraticSystem q;
        q.shape = SystemShape::QDIFF;
        q.r = 1 + static_cast<std::size_t>(rng() % maxR);
        std::size_t s = 1 + static_cast<std::size_t>(rng() % maxS);
        for (std::size_t e = 0; e < s; ++e) {
            IntMatrix a(q.r, q.r);
            for (std::size_t i = 0; i < q.r; ++i)
                for (std::size_t j = 0; j < q.r; ++j) a.at(i, j) = draw();
            q.coefficients.push_back(std::move(a));
            q.rhs.push_back(Int(draw()));
        }
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace rht
