#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the sparse Smith reducer: dense textbook elimination only.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "coarse/chain_complex.hpp"
#include "coarse/ring.hpp"

namespace oracle {

using coarse::BigInt;
using coarse::BigRational;
using Dense = std::vector<std::vector<BigInt>>;

inline Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi, double density) {
    std::uniform_int_distribution<int> val(lo, hi);
    std::bernoulli_distribution keep(density);
    Dense a(rows, std::vector<BigInt>(cols, 0));
    for (auto& row : a)
        for (auto& v : row)
            if (keep(rng)) v = val(rng);
    return a;
}

inline coarse::SparseMatrix<BigInt> to_sparse(const Dense& a, std::size_t cols) {
    coarse::Integers zz;
    return coarse::from_dense(zz, a, cols);
}

/// Invariant factors by repeated min-|entry| pivoting on a dense copy.
inline std::vector<BigInt> dense_invariant_factors(Dense a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry in the trailing block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) goto done;
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the rest; otherwise fold a row in and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(a[t][t]));
    }
done:
    return diag;
}

inline BigInt det(Dense a) {
    // Bareiss fraction-free elimination
    const std::size_t n = a.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Invariant factors from determinantal divisors d_k = gcd of k x k minors.
/// Exponential; small matrices only.
inline std::vector<BigInt> determinantal_factors(const Dense& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<BigInt> out;
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(m, k, 0, cur, rs);
        subsets(n, k, 0, cur, cs);
        BigInt g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Dense minor(k, std::vector<BigInt>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
                g = gcd(g, abs(det(minor)));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

/// Rank over Q by Gaussian elimination on rationals.
inline std::size_t rank_q(const Dense& a) {
    std::vector<std::vector<BigRational>> m;
    for (const auto& row : a) m.emplace_back(row.begin(), row.end());
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            BigRational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Rank over F_p by Gaussian elimination with machine integers.
inline std::size_t rank_mod(const Dense& a, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& row : a) {
        std::vector<std::int64_t> r;
        for (const auto& v : row) r.push_back(static_cast<std::int64_t>(((v % p) + p) % p));
        m.push_back(r);
    }
    auto inv = [p](std::int64_t x) {
        std::int64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t q = r;
        while (q < rows && m[q][c] == 0) ++q;
        if (q == rows) continue;
        std::swap(m[r], m[q]);
        const std::int64_t s = inv(m[r][c]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::int64_t f = m[i][c] * s % p;
            if (!f) continue;
            for (std::size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

inline Dense dense_of(const coarse::IntMatrix& m) {
    Dense d(m.rows(), std::vector<BigInt>(m.cols(), 0));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j)) d[i][j] = BigInt(v);
    return d;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
    Dense c(a.size(), std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// Chain complex with prescribed homology, disguised by unimodular base
/// changes. Expected H_k = Z^free[k] + sum Z/torsion[k].
struct PlantedComplex {
    coarse::ChainComplexData data;
    std::vector<std::size_t> free;
    std::vector<std::vector<std::int64_t>> torsion;
};

inline PlantedComplex planted_complex(std::mt19937_64& rng, int top, std::size_t max_block, const std::vector<std::int64_t>& torsion_pool) {
    // Blocks per degree: f free generators, then for the boundary into
    // degree k, pairs (target, source) carrying d = c (c = 1 trivial, c > 1 torsion).
    PlantedComplex out;
    const std::size_t levels = static_cast<std::size_t>(top) + 1;
    std::vector<std::size_t> rank(levels, 0);
    out.free.assign(levels, 0);
    out.torsion.assign(levels, {});
    struct Pair {
        std::size_t target_row, source_col;
        std::int64_t c;
    };
    std::vector<std::vector<Pair>> pairs(levels);  // pairs[k]: entries of d_k
    std::uniform_int_distribution<std::size_t> block(0, max_block);
    std::uniform_int_distribution<std::size_t> pick(0, torsion_pool.size() - 1);
    for (std::size_t k = 0; k < levels; ++k) {
        out.free[k] = block(rng);
        rank[k] += out.free[k];
    }
    for (std::size_t k = 1; k < levels; ++k) {
        const std::size_t npairs = block(rng);
        for (std::size_t q = 0; q < npairs; ++q) {
            std::int64_t c = torsion_pool[pick(rng)];
            pairs[k].push_back({rank[k - 1]++, rank[k]++, c});
            if (c > 1) out.torsion[k - 1].push_back(c);
        }
    }
    // diagonal boundaries, then conjugate by random unimodular P_k
    std::vector<Dense> d(levels), p(levels), pinv(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        const std::size_t n = rank[k];
        p[k] = Dense(n, std::vector<BigInt>(n, 0));
        pinv[k] = p[k];
        for (std::size_t i = 0; i < n; ++i) p[k][i][i] = pinv[k][i][i] = 1;
        if (n >= 2) {
            std::uniform_int_distribution<std::size_t> idx(0, n - 1);
            std::uniform_int_distribution<int> mult(-2, 2);
            for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
                std::size_t a = idx(rng), b = idx(rng);
                if (a == b) continue;
                int t = mult(rng);
                // P <- E P with E = I + t e_ab (row a += t row b); P^-1 <- P^-1 E^-1
                for (std::size_t j = 0; j < n; ++j) p[k][a][j] += t * p[k][b][j];
                for (std::size_t i = 0; i < n; ++i) pinv[k][i][b] -= t * pinv[k][i][a];
            }
        }
    }
    out.data.ranks = rank;
    out.data.boundaries.push_back(coarse::IntMatrix(0, rank[0]));
    for (std::size_t k = 1; k < levels; ++k) {
        Dense diag(rank[k - 1], std::vector<BigInt>(rank[k], 0));
        for (const auto& pr : pairs[k]) diag[pr.target_row][pr.source_col] = pr.c;
        Dense full = multiply(multiply(p[k - 1], diag, rank[k - 1], rank[k]), pinv[k], rank[k], rank[k]);
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> trip;
        for (std::size_t i = 0; i < rank[k - 1]; ++i)
            for (std::size_t j = 0; j < rank[k]; ++j)
                if (full[i][j] != 0) trip.emplace_back(i, j, static_cast<std::int64_t>(full[i][j]));
        coarse::MachineIntegers mi;
        out.data.boundaries.push_back(coarse::IntMatrix::from_triplets(mi, rank[k - 1], rank[k], trip));
    }
    return out;
}

}  // namespace oracle
