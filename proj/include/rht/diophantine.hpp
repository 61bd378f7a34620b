#pragma once

#include "rht/intlinalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rht {

enum class SystemShape { QSYM, QSKEW, QDIFF, QBLIN };

std::string to_string(SystemShape s);
SystemShape shape_from_string(const std::string& s);

// One equation of a block-bilinear system:
//   sum_{i,j} coeffs[i][j] * u_i^T B_form v_j = rhs.
struct QblinEquation {
    std::size_t form = 0;  // index into QuadraticSystem::forms
    IntMatrix coeffs;      // uBlocks x vBlocks
    Int rhs;
    std::string family;  // provenance tag for reporting; "" for ad-hoc systems
    // Equations sharing a tensor index share their coefficient matrix and
    // differ only in form and rhs (the c_pq grid). SIZE_MAX = ungrouped.
    std::size_t tensor = static_cast<std::size_t>(-1);
};

// The four quadratic shapes sharing one solver interface.
//
// QSYM:  sum_{i<j} a^(q)_ij x_i x_j = rhs_q
// QSKEW: sum_{i<j} a^(q)_ij (x_i y_j - x_j y_i) = rhs_q
// QDIFF: sum_{i,j} a^(q)_ij x_i y_j = rhs_q
// QBLIN: block equations as above, with named vector blocks.
struct QuadraticSystem {
    SystemShape shape = SystemShape::QDIFF;

    // QSYM/QSKEW/QDIFF data: coefficients[q] is r x r; for QSYM/QSKEW only the
    // strict upper triangle may be nonzero.
    std::size_t r = 0;
    std::vector<IntMatrix> coefficients;
    std::vector<Int> rhs;

    // QBLIN data.
    std::size_t uBlockDim = 0, vBlockDim = 0;
    std::vector<std::string> uBlockNames, vBlockNames;
    std::vector<IntMatrix> forms;  // each uBlockDim x vBlockDim
    std::vector<QblinEquation> equations;

    std::size_t equationCount() const;
    // Variable names in canonical enumeration order.
    std::vector<std::string> variableNames() const;
    // Throws std::invalid_argument when the fields are inconsistent.
    void validate() const;
};

using Assignment = std::map<std::string, Int>;

// Thrown when an exhaustive search would exceed its enumeration budget; the
// message names the budget the search would need.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Left minus right per equation, in the system's documented order.
std::vector<Int> evaluate(const QuadraticSystem& system, const Assignment& assignment);

// Exhaustive search over the box [-N, N]^vars in lexicographic order of
// variableNames(), values ascending; the first hit is therefore the
// lexicographically least solution. Throws BudgetError when (2N+1)^vars
// exceeds the budget.
std::optional<Assignment> brute_force_solve(const QuadraticSystem& system, const Int& bound,
                                            const Int& budget = Int(20000000));

// Replacement of a rectangular pairing matrix by a square invertible one with
// the same achievable value set, plus the integer change-of-variable
// witnesses in both directions.
struct SquareifyResult {
    IntMatrix reducedRows;  // t x n, rows generate the row lattice of the input
    IntMatrix square;       // t x t, invertible, columns generate the column lattice
    // Row-combination witnesses: uToReduced * B = reducedRows and
    // uFromReduced * reducedRows = B, so u^T B = (uFromReduced^T u)^T reducedRows
    // and (u')^T reducedRows = (uToReduced^T u')^T B.
    IntMatrix uToReduced, uFromReduced;  // t x m, m x t
    // Column witnesses: square * vToSquare = reducedRows and
    // reducedRows * vFromSquare = square, so reducedRows v = square (vToSquare v).
    IntMatrix vToSquare, vFromSquare;  // t x n, n x t
    // Combined: u^T B v = (uFromReduced^T u)^T square (vToSquare v).
    bool verify(const IntMatrix& b) const;
};

SquareifyResult squareify(const IntMatrix& b);

// Output of the QDIFF -> QBLIN compilation, carrying the index reshuffle that
// brought a nonzero entry of the first form to position (1,1).
struct QblinReduction {
    QuadraticSystem system;  // shape QBLIN
    std::size_t qdiffR = 0, qdiffS = 0;
    std::vector<std::size_t> formPerm;  // output form p came from input forms[formPerm[p]]
    std::vector<std::size_t> rowPerm;   // output row k came from input row rowPerm[k]
    std::vector<std::size_t> colPerm;
    Int distinguishedEntry;  // (B_1)_11 after reshuffling, nonzero
};

// Builds the block-bilinear system with blocks u_1..u_r, zc_1..zc_m (columns
// of Z), v_1..v_r, wc_1..wc_n (columns of W) and the four equation families:
//   original:           sum a^(q)_ij u_i^T B_p v_j = (B_1)_11 * rhs_q
//   form-preservation:  zc_k^T B_p wc_l = (B_p)_kl
//   u-orthogonality:    u_i^T B_p wc_l = 0   (l >= 2)
//   v-orthogonality:    zc_k^T B_p v_j = 0   (k >= 2)
// Throws std::invalid_argument when every form is zero.
QblinReduction reduce_qdiff_to_qblin(const QuadraticSystem& qdiff,
                                     const std::vector<IntMatrix>& forms);

// The textbook witness Z=I, W=I, u_i = x_i e_1, v_j = y_j e_1, evaluated and
// reported rather than asserted: the orthogonality families read off the
// first row/column of each form and need not vanish.
struct ForwardWitness {
    Assignment assignment;
    std::vector<Int> residual;  // of reduction.system at the assignment
    bool residualZero = false;
};

ForwardWitness forward_witness(const QblinReduction& reduction, const std::vector<Int>& x,
                               const std::vector<Int>& y);

// Witness variant replacing e_1 by integer vectors c, d with c^T B in
// span(e_1^T) and B d in span(e_1); only meaningful for a single square
// invertible form. The original-family right-hand side rescales from (B)_11
// to c^T B d.
struct CorrectedWitness {
    Assignment assignment;
    std::vector<Int> c, d;
    Int scaledRhsFactor;        // c^T B d, replaces (B_1)_11 in the original family
    std::vector<Int> residual;  // against the rescaled system
    bool residualZero = false;
};

std::optional<CorrectedWitness> corrected_forward_witness(const QblinReduction& reduction,
                                                          const std::vector<Int>& x,
                                                          const std::vector<Int>& y);

// Normalization of an inst solution by the unimodular Z, W, plus the scalar
// extraction x_i = (u'_i^T B_1)_1, y_j = (v'_j)_1. The extracted pair solves
// the (B_1)_11-scaled QDIFF system; that identity is re-checked exactly.
struct BackwardTransport {
    Assignment normalized;  // Z' = W' = I
    std::vector<Int> x, y;
    Int scaleFactor;  // (B_1)_11: extracted values satisfy sum a_ij x_i y_j = scale * rhs_q
    bool verified = false;
};

// Throws std::invalid_argument when Z or W is not unimodular.
BackwardTransport backward_transport(const QblinReduction& reduction,
                                     const Assignment& instSolution);

// Exhaustive box search specialized to reductions whose first form is square
// and invertible: Z determines W through the form-preservation family, which
// collapses the search space. Finds a solution iff one exists in the box
// (no lexicographic guarantee).
std::optional<Assignment> solve_reduction_in_box(const QblinReduction& reduction, const Int& bound);

struct InstanceReport {
    QuadraticSystem qdiff;
    std::optional<Assignment> qdiffSolution;
    bool qdiffSolvable = false;
    bool instSolvable = false;
    std::optional<Assignment> instSolution;
    std::optional<ForwardWitness> forward;           // when qdiff solved
    std::optional<CorrectedWitness> correctedForward;
    std::optional<BackwardTransport> backward;       // when inst solved
    std::string verdict;  // "consistent" | "inconsistent-with-paper"
};

// Runs one instance end to end: solve the QDIFF in the box, reduce, solve the
// reduction in the box, transport in both directions.
InstanceReport run_instance(const QuadraticSystem& qdiff, const std::vector<IntMatrix>& forms,
                            const Int& bound, const Int& budget = Int(20000000));

struct HarnessReport {
    std::vector<InstanceReport> instances;
    std::size_t consistentCount = 0;
    std::size_t inconsistentCount = 0;
    std::size_t qdiffSolvableCount = 0;
    std::size_t instSolvableCount = 0;
    std::size_t forwardResidualZeroCount = 0;   // among solved qdiffs
    std::size_t forwardResidualNonzeroCount = 0;
    std::size_t backwardVerifiedCount = 0;      // among solved insts
};

HarnessReport equivalence_harness(const std::vector<QuadraticSystem>& qdiffs,
                                  const std::vector<IntMatrix>& forms, const Int& bound,
                                  const Int& budget = Int(20000000));

// Deterministic instance generator for the harness: r, s in [1, maxR] x
// [1, maxS], coefficients and rhs uniform in [lo, hi].
std::vector<QuadraticSystem> random_qdiff_instances(std::uint64_t seed, std::size_t count,
                                                    std::size_t maxR, std::size_t maxS, long lo,
                                                    long hi);

}  // namespace rht
