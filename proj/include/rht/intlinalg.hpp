#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace rht {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix over arbitrary-precision integers, row-major. 0xN and Nx0
// shapes are legal and show up as empty presentations / empty complexes.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix fromRows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool isZero() const;
    bool isSquare() const { return rows_ == cols_; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const;
    bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

    // A * x with x a column vector.
    std::vector<Int> mulVec(const std::vector<Int>& x) const;
    // x^T * A with x a row vector.
    std::vector<Int> vecMul(const std::vector<Int>& x) const;

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> col(std::size_t j) const;

    // Elementary operations used by the normal-form routines.
    void swapRows(std::size_t a, std::size_t b);
    void swapCols(std::size_t a, std::size_t b);
    void addRowMultiple(std::size_t dst, std::size_t src, const Int& k);  // row_dst += k * row_src
    void addColMultiple(std::size_t dst, std::size_t src, const Int& k);  // col_dst += k * col_src
    void negateRow(std::size_t i);

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

// Exact determinant via fraction-free elimination. Requires a square matrix.
Int determinant(const IntMatrix& m);

// U * A * V = D with U, V unimodular, D diagonal, diagonal entries nonnegative
// and forming a divisibility chain d_0 | d_1 | ... (trailing entries zero).
struct SmithDecomposition {
    IntMatrix U, D, V;

    std::vector<Int> invariantFactors() const;  // nonzero diagonal entries
    std::size_t rank() const;
    // Re-derives every certificate property from scratch: the product identity,
    // diagonality, the chain, and |det U| = |det V| = 1.
    bool verify(const IntMatrix& a) const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Row-style Hermite form: canonical basis of the row lattice. Pivots positive,
// entries above each pivot reduced into [0, pivot). rankOut gets the number of
// nonzero rows, which come first.
IntMatrix row_hnf(const IntMatrix& a, std::size_t* rankOut);

struct LatticeBasis {
    std::size_t ambientDim = 0;
    std::vector<std::vector<Int>> basisVectors;  // linearly independent
};

// Canonical basis of the subgroup of Z^cols generated by the rows of a.
LatticeBasis row_lattice_basis(const IntMatrix& a);
// Canonical basis of the subgroup of Z^rows generated by the columns of a.
LatticeBasis column_lattice_basis(const IntMatrix& a);

// Canonical basis of {x : a * x = 0}, each vector of length a.cols().
LatticeBasis kernel_lattice_basis(const IntMatrix& a);

bool is_unimodular(const IntMatrix& m);
// Exact inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix invert_unimodular(const IntMatrix& m);

// Machine-checkable witness that A x = b has no integer solution: a row
// combination u with u*A == 0 entrywise modulo `modulus` while u*b is not
// (modulus 0 means u*A = 0 exactly and u*b != 0, a rational obstruction).
struct UnsolvableCertificate {
    std::vector<Int> u;
    Int modulus;

    bool check(const IntMatrix& a, const std::vector<Int>& b) const;
};

struct IntLinearSolution {
    std::optional<std::vector<Int>> solution;
    std::optional<UnsolvableCertificate> certificate;  // set iff no solution
};

// Decides A x = b over the integers. Exactly one of solution / certificate is set.
IntLinearSolution solve_integer_system(const IntMatrix& a, const std::vector<Int>& b);

}  // namespace rht
