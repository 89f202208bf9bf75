#include "kt/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kt {

SparseVec to_sparse(const DenseVec& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

DenseVec to_dense(const SparseVec& v, int size) {
    DenseVec d(size, Rat(0));
    for (const auto& [i, c] : v) d.at(i) = c;
    return d;
}

void axpy(SparseVec& a, const Rat& c, const SparseVec& b) {
    if (is_zero(c) || b.empty()) return;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rat val = a[i].second + c * b[j].second;
            if (!is_zero(val)) out.emplace_back(a[i].first, std::move(val));
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

SparseVec Rref::reduce(SparseVec v) const {
    // Rows have increasing pivots; one left-to-right pass suffices because
    // each row only touches columns at or after its own pivot.
    for (size_t r = 0; r < rows_.size(); ++r) {
        int p = pivot_cols_[r];
        auto it = std::lower_bound(v.begin(), v.end(), p,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it == v.end() || it->first != p) continue;
        Rat c = -it->second;
        axpy(v, c, rows_[r]);
    }
    return v;
}

bool Rref::add_row(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int p = v.front().first;
    Rat inv = Rat(1) / v.front().second;
    for (auto& [i, c] : v) c *= inv;
    // eliminate the new pivot from existing rows
    for (size_t r = 0; r < rows_.size(); ++r) {
        auto it = std::lower_bound(rows_[r].begin(), rows_[r].end(), p,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it == rows_[r].end() || it->first != p) continue;
        Rat c = -it->second;
        axpy(rows_[r], c, v);
    }
    // insert keeping pivot columns sorted
    size_t pos = 0;
    while (pos < pivot_cols_.size() && pivot_cols_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivot_cols_.insert(pivot_cols_.begin() + pos, p);
    for (size_t r = pos; r < rows_.size(); ++r) pivot_row_[pivot_cols_[r]] = static_cast<int>(r);
    return true;
}

namespace {

// Transpose columns into rows (row index -> sparse row over columns).
std::vector<SparseVec> rows_from_columns(const std::vector<SparseVec>& columns) {
    int nrows = 0;
    for (const auto& col : columns)
        for (const auto& [r, c] : col) nrows = std::max(nrows, r + 1);
    std::vector<SparseVec> rows(nrows);
    for (size_t j = 0; j < columns.size(); ++j)
        for (const auto& [r, c] : columns[j]) rows[r].emplace_back(static_cast<int>(j), c);
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return rows;
}

} // namespace

std::vector<DenseVec> nullspace(const std::vector<SparseVec>& columns, int ncols) {
    if (static_cast<int>(columns.size()) != ncols)
        throw std::invalid_argument("column count mismatch");
    Rref rref(ncols);
    for (auto& row : rows_from_columns(columns)) rref.add_row(std::move(row));
    std::vector<DenseVec> basis;
    for (int j = 0; j < ncols; ++j) {
        if (rref.pivot_row(j) >= 0) continue;
        DenseVec v(ncols, Rat(0));
        v[j] = 1;
        for (size_t r = 0; r < rref.rows().size(); ++r) {
            const SparseVec& row = rref.rows()[r];
            auto it = std::lower_bound(row.begin(), row.end(), j,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it != row.end() && it->first == j) v[rref.pivot_cols()[r]] = -it->second;
        }
        normalize_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::optional<DenseVec>> solve_columns(const std::vector<SparseVec>& columns,
                                                   int ncols,
                                                   const std::vector<SparseVec>& rhs) {
    if (static_cast<int>(columns.size()) != ncols)
        throw std::invalid_argument("column count mismatch");
    // Augment: unknown columns first, one extra column per right-hand side.
    int total = ncols + static_cast<int>(rhs.size());
    std::vector<SparseVec> aug = columns;
    aug.insert(aug.end(), rhs.begin(), rhs.end());
    Rref rref(total);
    for (auto& row : rows_from_columns(aug)) rref.add_row(std::move(row));

    // Rows whose pivot lies in a rhs column have zero coefficient part;
    // any non-zero entry of such a row marks its rhs as inconsistent.
    std::vector<bool> inconsistent(rhs.size(), false);
    for (size_t r = 0; r < rref.rows().size(); ++r) {
        if (rref.pivot_cols()[r] < ncols) continue;
        for (const auto& [col, c] : rref.rows()[r])
            if (col >= ncols) inconsistent[col - ncols] = true;
    }

    std::vector<std::optional<DenseVec>> out;
    for (size_t k = 0; k < rhs.size(); ++k) {
        if (inconsistent[k]) {
            out.push_back(std::nullopt);
            continue;
        }
        int bcol = ncols + static_cast<int>(k);
        DenseVec x(ncols, Rat(0));
        for (size_t r = 0; r < rref.rows().size(); ++r) {
            int p = rref.pivot_cols()[r];
            if (p >= ncols) continue;
            const SparseVec& row = rref.rows()[r];
            auto it = std::lower_bound(row.begin(), row.end(), bcol,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it != row.end() && it->first == bcol) x[p] = it->second;
        }
        // With all free variables zero, each pivot takes the rhs entry of
        // its own row.
        out.push_back(std::move(x));
    }
    return out;
}

void normalize_primitive(DenseVec& v) {
    mpz_class num_gcd(0), den_lcm(1);
    int lead_sign = 0;
    for (const auto& c : v) {
        if (is_zero(c)) continue;
        if (lead_sign == 0) lead_sign = sgn(c);
        num_gcd = gcd(num_gcd, c.get_num());
        den_lcm = lcm(den_lcm, c.get_den());
    }
    if (lead_sign == 0) return;
    Rat scale(den_lcm * lead_sign, num_gcd);
    scale.canonicalize();
    for (auto& c : v) c *= scale;
}

std::vector<DenseVec> quotient_basis(const std::vector<DenseVec>& vectors,
                                     const std::vector<DenseVec>& modulus, int ncols) {
    Rref rref(ncols);
    for (const auto& m : modulus) rref.add_row(to_sparse(m));
    std::vector<DenseVec> reps;
    for (const auto& v : vectors) {
        if (rref.add_row(to_sparse(v))) {
            DenseVec rep = v;
            normalize_primitive(rep);
            reps.push_back(std::move(rep));
        }
    }
    return reps;
}

} // namespace kt
