#pragma once

// Compressed sparse-column matrices over an arbitrary value type.
//
// Arithmetic is routed through a ring object, so the same container holds
// machine integers (boundary matrices), big integers, rationals and residues.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/ring.hpp"

namespace coarse {

template <class T>
class SparseMatrix {
public:
    using value_type = T;
    using Entry = std::pair<std::size_t, T>;
    using Column = std::vector<Entry>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    /// Entries of column j, sorted by row, no stored zeros.
    const Column& column(std::size_t j) const { return columns_[j]; }

    /// Replaces column j; entries must be sorted by row and nonzero.
    void set_column(std::size_t j, Column entries) { columns_[j] = std::move(entries); }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    const T* find(std::size_t i, std::size_t j) const {
        const auto& c = columns_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry& e, std::size_t r) { return e.first < r; });
        if (it == c.end() || it->first != i) return nullptr;
        return &it->second;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols(), rows());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, v] : columns_[j]) t.columns_[i].emplace_back(j, v);
        return t;
    }

    /// Triplets (row, col, value); duplicates are summed, zeros dropped.
    template <class R>
    static SparseMatrix from_triplets(const R& ring, std::size_t rows, std::size_t cols,
                                      const std::vector<std::tuple<std::size_t, std::size_t, T>>& triplets) {
        std::vector<std::map<std::size_t, T>> acc(cols);
        for (const auto& [i, j, v] : triplets) {
            if (i >= rows || j >= cols)
                fail(ErrorKind::DimensionMismatch, "triplet (" + std::to_string(i) + "," + std::to_string(j) +
                                                       ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
            auto [it, inserted] = acc[j].try_emplace(i, v);
            if (!inserted) it->second = ring.add(it->second, v);
        }
        SparseMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (auto& [i, v] : acc[j])
                if (!ring.is_zero(v)) m.columns_[j].emplace_back(i, std::move(v));
        return m;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// Machine-integer matrices: boundary and direct-input matrices.
using IntMatrix = SparseMatrix<std::int64_t>;

/// Ring-free arithmetic for int64 matrices (values stay small: boundary
/// coefficients are +-1 and direct inputs are validated on load).
struct MachineIntegers {
    using value_type = std::int64_t;
    std::int64_t add(std::int64_t a, std::int64_t b) const { return a + b; }
    bool is_zero(std::int64_t a) const { return a == 0; }
};

template <class R, class T>
SparseMatrix<typename R::value_type> convert(const R& ring, const SparseMatrix<T>& m) {
    SparseMatrix<typename R::value_type> out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        typename SparseMatrix<typename R::value_type>::Column col;
        for (const auto& [i, v] : m.column(j)) {
            typename R::value_type w;
            if constexpr (std::is_same_v<T, std::int64_t>)
                w = embed(ring, v);
            else
                w = embed_big(ring, BigInt(v));
            if (!ring.is_zero(w)) col.emplace_back(i, std::move(w));
        }
        out.set_column(j, std::move(col));
    }
    return out;
}

template <class R>
SparseMatrix<typename R::value_type> identity_matrix(const R& ring, std::size_t n) {
    SparseMatrix<typename R::value_type> m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.set_column(j, {{j, ring.one()}});
    return m;
}

template <class R>
SparseMatrix<typename R::value_type> multiply(const R& ring, const SparseMatrix<typename R::value_type>& a,
                                              const SparseMatrix<typename R::value_type>& b) {
    using V = typename R::value_type;
    if (a.cols() != b.rows())
        fail(ErrorKind::DimensionMismatch, "multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                               " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    SparseMatrix<V> c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        std::map<std::size_t, V> acc;
        for (const auto& [k, bv] : b.column(j))
            for (const auto& [i, av] : a.column(k)) {
                V prod = ring.mul(av, bv);
                auto [it, inserted] = acc.try_emplace(i, prod);
                if (!inserted) it->second = ring.add(it->second, prod);
            }
        typename SparseMatrix<V>::Column col;
        for (auto& [i, v] : acc)
            if (!ring.is_zero(v)) col.emplace_back(i, std::move(v));
        c.set_column(j, std::move(col));
    }
    return c;
}

template <class R>
std::vector<typename R::value_type> apply(const R& ring, const SparseMatrix<typename R::value_type>& a,
                                          const std::vector<typename R::value_type>& x) {
    if (x.size() != a.cols()) fail(ErrorKind::DimensionMismatch, "vector length does not match matrix columns");
    std::vector<typename R::value_type> y(a.rows(), ring.zero());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (ring.is_zero(x[j])) continue;
        for (const auto& [i, v] : a.column(j)) y[i] = ring.add(y[i], ring.mul(v, x[j]));
    }
    return y;
}

template <class R>
SparseMatrix<typename R::value_type> scaled(const R& ring, const SparseMatrix<typename R::value_type>& a,
                                            const typename R::value_type& c) {
    SparseMatrix<typename R::value_type> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        typename SparseMatrix<typename R::value_type>::Column col;
        for (const auto& [i, v] : a.column(j)) {
            auto w = ring.mul(v, c);
            if (!ring.is_zero(w)) col.emplace_back(i, std::move(w));
        }
        out.set_column(j, std::move(col));
    }
    return out;
}

template <class T>
bool is_zero_matrix(const SparseMatrix<T>& a) {
    return a.nnz() == 0;
}

/// Rows and columns picked (and reordered) by index lists.
template <class T>
SparseMatrix<T> submatrix(const SparseMatrix<T>& a, const std::vector<std::size_t>& row_pick,
                          const std::vector<std::size_t>& col_pick) {
    std::vector<std::ptrdiff_t> row_pos(a.rows(), -1);
    for (std::size_t p = 0; p < row_pick.size(); ++p) row_pos[row_pick[p]] = static_cast<std::ptrdiff_t>(p);
    SparseMatrix<T> out(row_pick.size(), col_pick.size());
    for (std::size_t q = 0; q < col_pick.size(); ++q) {
        typename SparseMatrix<T>::Column col;
        for (const auto& [i, v] : a.column(col_pick[q]))
            if (row_pos[i] >= 0) col.emplace_back(static_cast<std::size_t>(row_pos[i]), v);
        std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.set_column(q, std::move(col));
    }
    return out;
}

template <class R>
std::vector<std::vector<typename R::value_type>> to_dense(const R& ring,
                                                          const SparseMatrix<typename R::value_type>& a) {
    std::vector<std::vector<typename R::value_type>> d(a.rows(), std::vector<typename R::value_type>(a.cols(), ring.zero()));
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (const auto& [i, v] : a.column(j)) d[i][j] = v;
    return d;
}

template <class R>
SparseMatrix<typename R::value_type> from_dense(const R& ring,
                                                const std::vector<std::vector<typename R::value_type>>& d,
                                                std::size_t cols) {
    SparseMatrix<typename R::value_type> a(d.size(), cols);
    for (std::size_t j = 0; j < cols; ++j) {
        typename SparseMatrix<typename R::value_type>::Column col;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!ring.is_zero(d[i][j])) col.emplace_back(i, d[i][j]);
        a.set_column(j, std::move(col));
    }
    return a;
}

/// Coordinate text form: a header "rows cols" then one "(row col value)" per line.
template <class T>
void write_coordinates(std::ostream& os, const SparseMatrix<T>& a) {
    os << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (const auto& [i, v] : a.column(j)) os << '(' << i << ' ' << j << ' ' << v << ")\n";
}

inline SparseMatrix<BigInt> read_coordinates(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) fail(ErrorKind::ParseError, "coordinate matrix: missing 'rows cols' header");
    std::vector<std::tuple<std::size_t, std::size_t, BigInt>> triplets;
    std::string line;
    std::getline(is, line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto open = line.find('('), close = line.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail(ErrorKind::ParseError, "coordinate matrix line " + std::to_string(lineno) + ": expected '(row col value)'");
        std::istringstream body(line.substr(open + 1, close - open - 1));
        std::size_t i = 0, j = 0;
        std::string value;
        if (!(body >> i >> j >> value))
            fail(ErrorKind::ParseError, "coordinate matrix line " + std::to_string(lineno) + ": expected '(row col value)'");
        BigInt v;
        try {
            v = BigInt(value);
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "coordinate matrix line " + std::to_string(lineno) + ": bad integer '" + value + "'");
        }
        triplets.emplace_back(i, j, v);
    }
    return SparseMatrix<BigInt>::from_triplets(Integers{}, rows, cols, triplets);
}

}  // namespace coarse
