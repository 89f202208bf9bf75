#ifndef KT_LINALG_HPP
#define KT_LINALG_HPP

#include <optional>
#include <vector>

#include "kt/rational.hpp"

namespace kt {

// Sparse vector: strictly increasing indices, non-zero entries.
using SparseVec = std::vector<std::pair<int, Rat>>;
using DenseVec = std::vector<Rat>;

SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, int size);

// a += c * b
void axpy(SparseVec& a, const Rat& c, const SparseVec& b);

// Reduced row echelon form over Q with deterministic pivoting (rows are
// processed in the given order; within a column the earliest remaining row
// wins). Rows of an RREF have strictly increasing pivot columns, pivot
// coefficient 1, and pivot columns eliminated from all other rows.
class Rref {
  public:
    explicit Rref(int ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivot_cols() const { return pivot_cols_; }
    int pivot_row(int col) const { return pivot_row_.at(col); }

    // Reduces v against the current rows; if a new pivot remains, absorbs
    // the remainder as a new row and returns true.
    bool add_row(SparseVec v);

    // Remainder of v after elimination by the stored rows.
    SparseVec reduce(SparseVec v) const;

    // True iff v lies in the row span.
    bool contains(SparseVec v) const { return reduce(std::move(v)).empty(); }

  private:
    int ncols_;
    std::vector<SparseVec> rows_;
    std::vector<int> pivot_cols_;
    std::vector<int> pivot_row_;
};

// Kernel basis of the linear map given by columns (each column is a sparse
// vector over row indices). Basis vectors are indexed over columns,
// normalized to primitive integer form with positive leading entry, one per
// free column in increasing column order.
std::vector<DenseVec> nullspace(const std::vector<SparseVec>& columns, int ncols);

// Solves A x = b for each right-hand side, where A is given by columns.
// Returns, per rhs, the particular solution with all free variables zero,
// or nullopt if inconsistent. Deterministic.
std::vector<std::optional<DenseVec>> solve_columns(const std::vector<SparseVec>& columns,
                                                   int ncols,
                                                   const std::vector<SparseVec>& rhs);

// Scales v to a primitive integer vector whose first non-zero entry is
// positive. Zero vectors are returned unchanged.
void normalize_primitive(DenseVec& v);

// Representatives of span(vectors) modulo span(modulus): vectors that add
// a new pivot after reduction against the modulus span, in input order.
std::vector<DenseVec> quotient_basis(const std::vector<DenseVec>& vectors,
                                     const std::vector<DenseVec>& modulus, int ncols);

} // namespace kt

#endif
