#include "rht/intlinalg.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rht {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::fromRows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::isZero() const {
    for (const Int& e : entries_)
        if (e != 0) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("dimension mismatch in product");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

std::vector<Int> IntMatrix::mulVec(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in mulVec");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
    return y;
}

std::vector<Int> IntMatrix::vecMul(const std::vector<Int>& x) const {
    if (x.size() != rows_) throw std::invalid_argument("dimension mismatch in vecMul");
    std::vector<Int> y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) y[j] += x[i] * at(i, j);
    }
    return y;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    std::vector<Int> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void IntMatrix::swapRows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swapCols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::addRowMultiple(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(dst, j) += k * at(src, j);
}

void IntMatrix::addColMultiple(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += k * at(i, src);
}

void IntMatrix::negateRow(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

Int determinant(const IntMatrix& m) {
    if (!m.isSquare()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t pivot = k;
            while (pivot < n && w.at(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            w.swapRows(k, pivot);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

std::vector<Int> SmithDecomposition::invariantFactors() const {
    std::vector<Int> f;
    const std::size_t k = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < k && D.at(i, i) != 0; ++i) f.push_back(D.at(i, i));
    return f;
}

std::size_t SmithDecomposition::rank() const { return invariantFactors().size(); }

bool SmithDecomposition::verify(const IntMatrix& a) const {
    if (U.rows() != a.rows() || U.cols() != a.rows()) return false;
    if (V.rows() != a.cols() || V.cols() != a.cols()) return false;
    if (D.rows() != a.rows() || D.cols() != a.cols()) return false;
    if (U * a * V != D) return false;
    Int du = determinant(U), dv = determinant(V);
    if (du != 1 && du != -1) return false;
    if (dv != 1 && dv != -1) return false;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (i != j && D.at(i, j) != 0) return false;
    const std::size_t k = std::min(D.rows(), D.cols());
    bool zeroSeen = false;
    for (std::size_t i = 0; i < k; ++i) {
        const Int& d = D.at(i, i);
        if (d < 0) return false;
        if (d == 0) {
            zeroSeen = true;
            continue;
        }
        if (zeroSeen) return false;  // nonzero after zero breaks the chain
        if (i + 1 < k && D.at(i + 1, i + 1) != 0 && D.at(i + 1, i + 1) % d != 0) return false;
    }
    return true;
}

namespace {

// Locates the entry of minimal nonzero absolute value in the trailing block
// starting at (t, t). Returns false when the block is zero.
bool findPivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d.at(i, j) == 0) continue;
            Int v = abs(d.at(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SmithDecomposition s;
    s.U = IntMatrix::identity(a.rows());
    s.V = IntMatrix::identity(a.cols());
    s.D = a;
    IntMatrix& d = s.D;
    const std::size_t bound = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < bound; ++t) {
        std::size_t pi, pj;
        if (!findPivot(d, t, pi, pj)) break;  // trailing block zero
        d.swapRows(t, pi);
        s.U.swapRows(t, pi);
        d.swapCols(t, pj);
        s.V.swapCols(t, pj);

        for (;;) {
            // Clear column t below the pivot; a nonzero remainder becomes the
            // new, strictly smaller pivot.
            bool restart = false;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.addRowMultiple(i, t, -q);
                s.U.addRowMultiple(i, t, -q);
                if (d.at(i, t) != 0) {
                    d.swapRows(t, i);
                    s.U.swapRows(t, i);
                    restart = true;
                    break;
                }
            }
            if (restart) continue;
            bool colRestart = false;
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.addColMultiple(j, t, -q);
                s.V.addColMultiple(j, t, -q);
                if (d.at(t, j) != 0) {
                    d.swapCols(t, j);
                    s.V.swapCols(t, j);
                    colRestart = true;
                    break;
                }
            }
            if (colRestart) continue;

            // Row and column t are clear. Enforce that the pivot divides the
            // trailing block; folding an offending row back in shrinks the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < d.cols() && divides; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        d.addRowMultiple(t, i, 1);
                        s.U.addRowMultiple(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }

        if (d.at(t, t) < 0) {
            d.negateRow(t);
            s.U.negateRow(t);
        }
    }
    return s;
}

IntMatrix row_hnf(const IntMatrix& a, std::size_t* rankOut) {
    IntMatrix h = a;
    std::size_t r = 0;
    for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
        // Reduce column j over rows [r, m) to a single nonzero entry at row r.
        for (;;) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h.at(i, j) == 0) continue;
                if (best == h.rows() || abs(h.at(i, j)) < abs(h.at(best, j))) best = i;
            }
            if (best == h.rows()) break;  // column clear
            h.swapRows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h.at(i, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(r, j).get_mpz_t());
                h.addRowMultiple(i, r, -q);
                if (h.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, j) == 0) continue;
        if (h.at(r, j) < 0) h.negateRow(r);
        // Canonical form: entries above the pivot land in [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(r, j).get_mpz_t());
            h.addRowMultiple(i, r, -q);
        }
        ++r;
    }
    if (rankOut) *rankOut = r;
    return h;
}

LatticeBasis row_lattice_basis(const IntMatrix& a) {
    std::size_t rank = 0;
    IntMatrix h = row_hnf(a, &rank);
    LatticeBasis basis;
    basis.ambientDim = a.cols();
    for (std::size_t i = 0; i < rank; ++i) basis.basisVectors.push_back(h.row(i));
    return basis;
}

LatticeBasis column_lattice_basis(const IntMatrix& a) {
    LatticeBasis basis = row_lattice_basis(a.transpose());
    basis.ambientDim = a.rows();
    return basis;
}

LatticeBasis kernel_lattice_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    const std::size_t rank = s.rank();
    IntMatrix gens(a.cols() - rank, a.cols());
    for (std::size_t k = rank; k < a.cols(); ++k)
        for (std::size_t i = 0; i < a.cols(); ++i) gens.at(k - rank, i) = s.V.at(i, k);
    // V's trailing columns already form a basis; the Hermite pass only
    // canonicalizes it.
    return row_lattice_basis(gens);
}

bool is_unimodular(const IntMatrix& m) {
    if (!m.isSquare()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

IntMatrix invert_unimodular(const IntMatrix& m) {
    if (!is_unimodular(m)) throw std::invalid_argument("not unimodular");
    // U m V = I for a unimodular m, hence m^{-1} = V U.
    SmithDecomposition s = smith_normal_form(m);
    IntMatrix inv = s.V * s.U;
    if (m * inv != IntMatrix::identity(m.rows())) throw std::logic_error("inverse check failed");
    return inv;
}

bool UnsolvableCertificate::check(const IntMatrix& a, const std::vector<Int>& b) const {
    if (u.size() != a.rows() || b.size() != a.rows()) return false;
    std::vector<Int> ua = a.vecMul(u);
    Int ub;
    for (std::size_t i = 0; i < u.size(); ++i) ub += u[i] * b[i];
    if (modulus == 0) {
        for (const Int& e : ua)
            if (e != 0) return false;
        return ub != 0;
    }
    for (const Int& e : ua)
        if (e % modulus != 0) return false;
    return ub % modulus != 0;
}

IntLinearSolution solve_integer_system(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
    SmithDecomposition s = smith_normal_form(a);
    const std::size_t rank = s.rank();
    std::vector<Int> c = s.U.mulVec(b);

    IntLinearSolution result;
    for (std::size_t i = 0; i < rank; ++i) {
        if (c[i] % s.D.at(i, i) != 0) {
            result.certificate = UnsolvableCertificate{s.U.row(i), s.D.at(i, i)};
            return result;
        }
    }
    for (std::size_t i = rank; i < a.rows(); ++i) {
        if (c[i] != 0) {
            result.certificate = UnsolvableCertificate{s.U.row(i), Int(0)};
            return result;
        }
    }
    std::vector<Int> y(a.cols());
    for (std::size_t i = 0; i < rank; ++i) y[i] = c[i] / s.D.at(i, i);
    result.solution = s.V.mulVec(y);
    return result;
}

}  // namespace rht
