#pragma once

// Sparse Smith normal form over a PID (Z) or a field (Q, Z/p).
//
// Pivots are chosen by least magnitude, then least Markowitz cost
// (r-1)(c-1), which keeps fill and coefficient growth down on the very
// sparse +-1 boundary matrices this toolkit produces. Non-divisible entries
// are folded into the pivot with a unimodular 2x2 gcd step, so no separate
// Euclidean cascade is needed. Transforms are tracked only on request.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/ring.hpp"
#include "coarse/sparse_matrix.hpp"

namespace coarse {

template <class Ring>
struct SmithResult {
    using V = typename Ring::value_type;

    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Nonzero diagonal entries, canonical associates, d_0 | d_1 | ...
    std::vector<V> factors;
    bool has_transforms = false;
    /// left * A * right = diag(factors) padded with zeros.
    SparseMatrix<V> left;
    SparseMatrix<V> left_inverse;
    SparseMatrix<V> right;
    SparseMatrix<V> right_inverse;

    std::size_t rank() const { return factors.size(); }
};

namespace detail {

template <class Ring>
class SmithReducer {
public:
    using V = typename Ring::value_type;
    using Line = std::map<std::size_t, V>;

    SmithReducer(const Ring& ring, const SparseMatrix<V>& a, bool transforms)
        : ring_(ring), rows_(a.rows()), cols_(a.cols()), transforms_(transforms) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (const auto& [i, v] : a.column(j)) {
                rows_[i].emplace(j, v);
                cols_[j].emplace(i, v);
            }
        if (transforms_) {
            u_rows_.resize(a.rows());
            uinv_cols_.resize(a.rows());
            for (std::size_t i = 0; i < a.rows(); ++i) {
                u_rows_[i].emplace(i, ring_.one());
                uinv_cols_[i].emplace(i, ring_.one());
            }
            v_cols_.resize(a.cols());
            vinv_rows_.resize(a.cols());
            for (std::size_t j = 0; j < a.cols(); ++j) {
                v_cols_[j].emplace(j, ring_.one());
                vinv_rows_[j].emplace(j, ring_.one());
            }
        }
    }

    SmithResult<Ring> run() {
        while (auto pivot = choose_pivot()) {
            auto [r, c] = *pivot;
            eliminate(r, c);
            pivots_.push_back({r, c, rows_[r].at(c)});
            rows_[r].clear();
            cols_[c].clear();
        }
        normalize();
        if constexpr (!Ring::is_field) fix_divisibility();
        return assemble();
    }

private:
    struct Pivot {
        std::size_t row;
        std::size_t col;
        V value;
    };

    std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        std::uint64_t best_mag = std::numeric_limits<std::uint64_t>::max();
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            const auto& col = cols_[c];
            if (col.empty()) continue;
            for (const auto& [r, v] : col) {
                std::uint64_t mag = ring_.magnitude(v);
                std::size_t cost = (rows_[r].size() - 1) * (col.size() - 1);
                if (mag < best_mag || (mag == best_mag && cost < best_cost)) {
                    best = std::pair{r, c};
                    best_mag = mag;
                    best_cost = cost;
                    if (mag <= 1 && cost == 0) return best;
                }
            }
        }
        return best;
    }

    // x += q*y on sparse lines
    void addmul(Line& x, const Line& y, const V& q) {
        for (const auto& [k, v] : y) {
            V w = ring_.mul(q, v);
            auto [it, inserted] = x.try_emplace(k, w);
            if (!inserted) {
                it->second = ring_.add(it->second, w);
                if (ring_.is_zero(it->second)) x.erase(it);
            } else if (ring_.is_zero(it->second)) {
                x.erase(it);
            }
        }
    }

    // (x, y) <- (a*x + b*y, c*x + d*y)
    void combine(Line& x, Line& y, const V& a, const V& b, const V& c, const V& d) {
        Line nx, ny;
        auto put = [&](Line& out, std::size_t k, const V& v) {
            if (!ring_.is_zero(v)) out.emplace(k, v);
        };
        auto ix = x.begin(), iy = y.begin();
        while (ix != x.end() || iy != y.end()) {
            std::size_t k;
            V vx = ring_.zero(), vy = ring_.zero();
            if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
                k = ix->first;
                vx = ix->second;
                ++ix;
            } else if (ix == x.end() || iy->first < ix->first) {
                k = iy->first;
                vy = iy->second;
                ++iy;
            } else {
                k = ix->first;
                vx = ix->second;
                vy = iy->second;
                ++ix;
                ++iy;
            }
            put(nx, k, ring_.add(ring_.mul(a, vx), ring_.mul(b, vy)));
            put(ny, k, ring_.add(ring_.mul(c, vx), ring_.mul(d, vy)));
        }
        x = std::move(nx);
        y = std::move(ny);
    }

    void sync_columns_from_rows(std::size_t r, const Line& before, const Line& after) {
        for (const auto& [k, v] : before)
            if (!after.count(k)) cols_[k].erase(r);
        for (const auto& [k, v] : after) cols_[k][r] = v;
    }
    void sync_rows_from_columns(std::size_t c, const Line& before, const Line& after) {
        for (const auto& [k, v] : before)
            if (!after.count(k)) rows_[k].erase(c);
        for (const auto& [k, v] : after) rows_[k][c] = v;
    }

    // row_i += q * row_j
    void row_addmul(std::size_t i, std::size_t j, const V& q) {
        Line before = rows_[i];
        addmul(rows_[i], rows_[j], q);
        sync_columns_from_rows(i, before, rows_[i]);
        if (transforms_) {
            addmul(u_rows_[i], u_rows_[j], q);
            addmul(uinv_cols_[j], uinv_cols_[i], ring_.neg(q));
        }
    }

    // col_i += q * col_j
    void col_addmul(std::size_t i, std::size_t j, const V& q) {
        Line before = cols_[i];
        addmul(cols_[i], cols_[j], q);
        sync_rows_from_columns(i, before, cols_[i]);
        if (transforms_) {
            addmul(v_cols_[i], v_cols_[j], q);
            addmul(vinv_rows_[j], vinv_rows_[i], ring_.neg(q));
        }
    }

    // Rows (i, j) <- M (i, j) with M = [[a, b], [c, d]], det M = 1.
    void row_combine(std::size_t i, std::size_t j, const V& a, const V& b, const V& c, const V& d) {
        Line bi = rows_[i], bj = rows_[j];
        combine(rows_[i], rows_[j], a, b, c, d);
        sync_columns_from_rows(i, bi, rows_[i]);
        sync_columns_from_rows(j, bj, rows_[j]);
        transform_rows(i, j, a, b, c, d);
    }

    // Columns (i, j) <- (i, j) M with M = [[a, b], [c, d]], det M = 1.
    void col_combine(std::size_t i, std::size_t j, const V& a, const V& b, const V& c, const V& d) {
        Line bi = cols_[i], bj = cols_[j];
        combine(cols_[i], cols_[j], a, c, b, d);
        sync_rows_from_columns(i, bi, cols_[i]);
        sync_rows_from_columns(j, bj, cols_[j]);
        transform_cols(i, j, a, b, c, d);
    }

    void transform_rows(std::size_t i, std::size_t j, const V& a, const V& b, const V& c, const V& d) {
        if (!transforms_) return;
        combine(u_rows_[i], u_rows_[j], a, b, c, d);
        // left_inverse <- left_inverse * M^{-1}
        combine(uinv_cols_[i], uinv_cols_[j], d, ring_.neg(c), ring_.neg(b), a);
    }

    void transform_cols(std::size_t i, std::size_t j, const V& a, const V& b, const V& c, const V& d) {
        if (!transforms_) return;
        combine(v_cols_[i], v_cols_[j], a, c, b, d);
        // right_inverse <- M^{-1} * right_inverse
        combine(vinv_rows_[i], vinv_rows_[j], d, ring_.neg(b), ring_.neg(c), a);
    }

    void eliminate(std::size_t r, std::size_t c) {
        for (;;) {
            bool dirty = false;
            std::vector<std::pair<std::size_t, V>> col_entries(cols_[c].begin(), cols_[c].end());
            for (const auto& [r2, v0] : col_entries) {
                if (r2 == r) continue;
                auto it = cols_[c].find(r2);
                if (it == cols_[c].end()) continue;
                V v = it->second;
                V p = rows_[r].at(c);
                if (ring_.divides(p, v)) {
                    row_addmul(r2, r, ring_.neg(ring_.exact_div(v, p)));
                } else {
                    auto [g, s, t] = ring_.gcdex(p, v);
                    row_combine(r, r2, s, t, ring_.neg(ring_.exact_div(v, g)), ring_.exact_div(p, g));
                    dirty = true;
                }
            }
            std::vector<std::pair<std::size_t, V>> row_entries(rows_[r].begin(), rows_[r].end());
            for (const auto& [c2, v0] : row_entries) {
                if (c2 == c) continue;
                auto it = rows_[r].find(c2);
                if (it == rows_[r].end()) continue;
                V v = it->second;
                V p = rows_[r].at(c);
                if (ring_.divides(p, v)) {
                    col_addmul(c2, c, ring_.neg(ring_.exact_div(v, p)));
                } else {
                    auto [g, s, t] = ring_.gcdex(p, v);
                    col_combine(c, c2, s, ring_.neg(ring_.exact_div(v, g)), t, ring_.exact_div(p, g));
                    dirty = true;
                }
            }
            if (!dirty && cols_[c].size() == 1 && rows_[r].size() == 1) return;
        }
    }

    void normalize() {
        for (auto& p : pivots_) {
            V u = ring_.normalizing_unit(p.value);
            if (ring_.is_unit(u) && u == ring_.one()) continue;
            p.value = ring_.mul(p.value, u);
            if (transforms_) {
                for (auto& [k, v] : u_rows_[p.row]) v = ring_.mul(v, u);
                V ui = ring_.unit_inverse(u);
                for (auto& [k, v] : uinv_cols_[p.row]) v = ring_.mul(v, ui);
            }
        }
    }

    void fix_divisibility() {
        std::stable_sort(pivots_.begin(), pivots_.end(),
                         [&](const Pivot& x, const Pivot& y) { return x.value < y.value; });
        for (std::size_t i = 0; i < pivots_.size(); ++i)
            for (std::size_t j = i + 1; j < pivots_.size(); ++j) {
                const V a = pivots_[i].value, b = pivots_[j].value;
                if (ring_.divides(a, b)) continue;
                auto [g, s, t] = ring_.gcdex(a, b);
                V bg = ring_.exact_div(b, g), ag = ring_.exact_div(a, g);
                transform_rows(pivots_[i].row, pivots_[j].row, s, t, ring_.neg(bg), ag);
                transform_cols(pivots_[i].col, pivots_[j].col, ring_.one(), ring_.neg(ring_.mul(t, bg)), ring_.one(),
                               ring_.mul(s, ag));
                pivots_[i].value = g;
                pivots_[j].value = ring_.mul(a, bg);
            }
    }

    SmithResult<Ring> assemble() {
        SmithResult<Ring> out;
        out.rows = rows_.size();
        out.cols = cols_.size();
        for (const auto& p : pivots_) out.factors.push_back(p.value);
        out.has_transforms = transforms_;
        if (!transforms_) return out;

        auto order = [&](std::size_t n, auto pick) {
            std::vector<std::size_t> perm;
            std::vector<bool> used(n, false);
            for (const auto& p : pivots_) {
                perm.push_back(pick(p));
                used[pick(p)] = true;
            }
            for (std::size_t k = 0; k < n; ++k)
                if (!used[k]) perm.push_back(k);
            return perm;
        };
        auto row_perm = order(rows_.size(), [](const Pivot& p) { return p.row; });
        auto col_perm = order(cols_.size(), [](const Pivot& p) { return p.col; });

        // Lines stored as rows become matrices whose p-th row is line[perm[p]];
        // lines stored as columns become matrices whose p-th column is line[perm[p]].
        auto from_rows = [&](const std::vector<Line>& lines, const std::vector<std::size_t>& perm, std::size_t n) {
            std::vector<std::tuple<std::size_t, std::size_t, V>> t;
            for (std::size_t p = 0; p < perm.size(); ++p)
                for (const auto& [k, v] : lines[perm[p]]) t.emplace_back(p, k, v);
            return SparseMatrix<V>::from_triplets(ring_, perm.size(), n, t);
        };
        auto from_cols = [&](const std::vector<Line>& lines, const std::vector<std::size_t>& perm, std::size_t n) {
            std::vector<std::tuple<std::size_t, std::size_t, V>> t;
            for (std::size_t p = 0; p < perm.size(); ++p)
                for (const auto& [k, v] : lines[perm[p]]) t.emplace_back(k, p, v);
            return SparseMatrix<V>::from_triplets(ring_, n, perm.size(), t);
        };
        out.left = from_rows(u_rows_, row_perm, rows_.size());
        out.left_inverse = from_cols(uinv_cols_, row_perm, rows_.size());
        out.right = from_cols(v_cols_, col_perm, cols_.size());
        out.right_inverse = from_rows(vinv_rows_, col_perm, cols_.size());
        return out;
    }

    const Ring& ring_;
    std::vector<Line> rows_;
    std::vector<Line> cols_;
    bool transforms_;
    std::vector<Line> u_rows_, uinv_cols_, v_cols_, vinv_rows_;
    std::vector<Pivot> pivots_;
};

}  // namespace detail

template <class Ring>
SmithResult<Ring> smith_normal_form(const Ring& ring, const SparseMatrix<typename Ring::value_type>& a,
                                    bool keep_transforms = false) {
    return detail::SmithReducer<Ring>(ring, a, keep_transforms).run();
}

template <class Ring>
std::size_t rank(const Ring& ring, const SparseMatrix<typename Ring::value_type>& a) {
    return smith_normal_form(ring, a, false).rank();
}

/// Exact check of left*A*right = D and of both inverse pairs.
template <class Ring>
bool verify_smith(const Ring& ring, const SparseMatrix<typename Ring::value_type>& a, const SmithResult<Ring>& s) {
    using V = typename Ring::value_type;
    if (!s.has_transforms) return false;
    std::vector<std::tuple<std::size_t, std::size_t, V>> diag;
    for (std::size_t p = 0; p < s.factors.size(); ++p) diag.emplace_back(p, p, s.factors[p]);
    auto d = SparseMatrix<V>::from_triplets(ring, a.rows(), a.cols(), diag);
    if (!(multiply(ring, multiply(ring, s.left, a), s.right) == d)) return false;
    if (!(multiply(ring, s.left, s.left_inverse) == identity_matrix(ring, a.rows()))) return false;
    if (!(multiply(ring, s.right, s.right_inverse) == identity_matrix(ring, a.cols()))) return false;
    for (std::size_t p = 0; p + 1 < s.factors.size(); ++p)
        if (!ring.divides(s.factors[p], s.factors[p + 1])) return false;
    return true;
}

enum class SolveStatus {
    Solved,
    NoSolution,    // not even over the fraction field
    NotIntegral,   // rational solution exists, none over Z
};

template <class Ring>
struct LinearSolution {
    SolveStatus status = SolveStatus::NoSolution;
    std::vector<typename Ring::value_type> x;

    bool solved() const { return status == SolveStatus::Solved; }
};

/// Reusable factorization for repeated A*x = b solves against one matrix.
template <class Ring>
class LinearSolver {
public:
    using V = typename Ring::value_type;

    LinearSolver(const Ring& ring, const SparseMatrix<V>& a)
        : ring_(ring), a_(a), snf_(smith_normal_form(ring, a, true)) {}

    LinearSolution<Ring> solve(const std::vector<V>& b) const {
        if (b.size() != a_.rows()) fail(ErrorKind::DimensionMismatch, "right-hand side length does not match rows");
        auto y = apply(ring_, snf_.left, b);
        LinearSolution<Ring> out;
        for (std::size_t p = snf_.rank(); p < y.size(); ++p)
            if (!ring_.is_zero(y[p])) {
                out.status = SolveStatus::NoSolution;
                return out;
            }
        std::vector<V> z(a_.cols(), ring_.zero());
        for (std::size_t p = 0; p < snf_.rank(); ++p) {
            if (!ring_.divides(snf_.factors[p], y[p])) {
                out.status = SolveStatus::NotIntegral;
                return out;
            }
            z[p] = ring_.exact_div(y[p], snf_.factors[p]);
        }
        out.x = apply(ring_, snf_.right, z);
        out.status = SolveStatus::Solved;
        return out;
    }

    const SmithResult<Ring>& smith() const { return snf_; }

private:
    Ring ring_;
    SparseMatrix<V> a_;
    SmithResult<Ring> snf_;
};

template <class Ring>
LinearSolution<Ring> solve_linear(const Ring& ring, const SparseMatrix<typename Ring::value_type>& a,
                                  const std::vector<typename Ring::value_type>& b) {
    return LinearSolver<Ring>(ring, a).solve(b);
}

}  // namespace coarse
