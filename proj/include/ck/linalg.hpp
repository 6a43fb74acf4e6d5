#pragma once

// Exact sparse Gauss-Jordan elimination: rank, null space and linear solve
// over Rational or GaussianRational.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ck/exactnum.hpp"

namespace ck {

template <class T>
using SparseVec = std::vector<std::pair<int, T>>;  // sorted by index, no zeros

namespace detail {

template <class T>
SparseVec<T> axpy(const SparseVec<T>& x, const T& a, const SparseVec<T>& y) {
    // x + a*y
    SparseVec<T> r;
    r.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            T v = x[i].second + a * y[j].second;
            if (!v.is_zero()) r.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

template <class T>
T lookup(const SparseVec<T>& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, int k) { return e.first < k; });
    return it != v.end() && it->first == idx ? it->second : T(0);
}

}  // namespace detail

// Row-reduced echelon form built one row at a time.
template <class T>
class RowEchelon {
public:
    explicit RowEchelon(int ncols) : ncols_(ncols) {}

    // Returns true when the row was independent of those already present.
    bool add_row(SparseVec<T> row) {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        T inv = T(1) / row.front().second;
        for (auto& e : row) e.second = inv * e.second;
        int lead = row.front().first;
        // keep earlier pivots reduced against the new one
        for (auto& [c, pr] : pivots_) {
            T f = detail::lookup(pr, lead);
            if (!f.is_zero()) pr = detail::axpy(pr, -f, row);
        }
        pivots_.emplace(lead, std::move(row));
        return true;
    }

    SparseVec<T> reduce(SparseVec<T> row) const {
        // eliminate pivot columns in increasing order; each elimination only
        // introduces non-pivot columns since pivots are fully reduced
        for (std::size_t k = 0; k < row.size();) {
            auto it = pivots_.find(row[k].first);
            if (it == pivots_.end()) {
                ++k;
                continue;
            }
            T f = row[k].second;
            row = detail::axpy(row, -f, it->second);
        }
        return row;
    }

    int rank() const { return int(pivots_.size()); }
    int ncols() const { return ncols_; }
    const std::map<int, SparseVec<T>>& pivots() const { return pivots_; }

    // Basis of {x : A x = 0}: one vector per free column.
    std::vector<SparseVec<T>> nullspace() const {
        std::vector<SparseVec<T>> basis;
        for (int f = 0; f < ncols_; ++f) {
            if (pivots_.count(f)) continue;
            SparseVec<T> v;
            for (const auto& [c, pr] : pivots_) {
                T a = detail::lookup(pr, f);
                if (!a.is_zero()) v.emplace_back(c, -a);
            }
            v.emplace_back(f, T(1));
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int ncols_;
    std::map<int, SparseVec<T>> pivots_;
};

// Solves sum_k x_k cols[k] = target. Returns nullopt when inconsistent;
// free variables are set to zero. `unique` reports whether the columns are
// independent.
template <class T>
struct SolveResult {
    std::vector<T> x;
    bool unique = false;
};

template <class T>
std::optional<SolveResult<T>> solve_columns(const std::vector<SparseVec<T>>& cols, const SparseVec<T>& target) {
    // Work on the transposed problem: augment each column with a tag so that
    // reducing the target expresses it in the column basis.
    int ncols = int(cols.size());
    int nrows = 0;
    for (const auto& c : cols)
        if (!c.empty()) nrows = std::max(nrows, c.back().first + 1);
    if (!target.empty()) nrows = std::max(nrows, target.back().first + 1);
    // row-wise view of the matrix [cols | target]
    std::vector<SparseVec<T>> rows(nrows);
    for (int k = 0; k < ncols; ++k)
        for (const auto& [r, v] : cols[k]) rows[r].emplace_back(k, v);
    for (const auto& [r, v] : target) rows[r].emplace_back(ncols, v);
    RowEchelon<T> ech(ncols + 1);
    for (auto& row : rows) ech.add_row(std::move(row));
    if (ech.pivots().count(ncols)) return std::nullopt;
    SolveResult<T> res;
    res.x.assign(ncols, T(0));
    for (const auto& [c, pr] : ech.pivots()) res.x[c] = detail::lookup(pr, ncols);
    res.unique = ech.rank() == ncols;
    return res;
}

}  // namespace ck
