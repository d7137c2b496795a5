#pragma once

// Homology of a pair of composable maps  A --in--> M --out--> B  at M,
// i.e. ker(out) / im(in), with optional generators and coordinates.
//
// Chain homology H_k uses (in, out) = (d_{k+1}, d_k); cochain cohomology
// uses (delta_{k-1}, delta_k). Everything is exact over Z, Q or Z/p.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/ring.hpp"
#include "coarse/smith.hpp"
#include "coarse/sparse_matrix.hpp"

namespace coarse {

template <class Ring>
struct HomologyGroup {
    using V = typename Ring::value_type;

    std::size_t free_rank = 0;
    /// Invariant factors greater than one, in divisibility order.
    std::vector<V> torsion;
    /// Representative cycles (coordinate vectors in the basis of M):
    /// torsion generators first, in the order of `torsion`, then free ones.
    std::optional<std::vector<std::vector<V>>> generators;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    std::size_t summands() const { return free_rank + torsion.size(); }

    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

template <class Ring>
class HomologyPresentation {
public:
    using V = typename Ring::value_type;

    /// in: n x m, out: p x n. Requires out * in = 0.
    HomologyPresentation(const Ring& ring, const SparseMatrix<V>& in, const SparseMatrix<V>& out,
                         bool with_generators)
        : ring_(ring), out_(out), with_generators_(with_generators) {
        n_ = in.rows();
        if (out.cols() != n_)
            fail(ErrorKind::DimensionMismatch, "composable maps expected: in has " + std::to_string(in.rows()) +
                                                   " rows, out has " + std::to_string(out.cols()) + " columns");
        if (!with_generators) {
            auto s_in = smith_normal_form(ring, in, false);
            auto s_out = smith_normal_form(ring, out, false);
            for (const auto& d : s_in.factors)
                if (!ring.is_unit(d)) group_.torsion.push_back(d);
            group_.free_rank = n_ - s_in.rank() - s_out.rank();
            return;
        }
        in_snf_ = smith_normal_form(ring, in, true);
        const std::size_t r = in_snf_.rank();
        // out expressed in the adapted basis; its first r columns vanish.
        SparseMatrix<V> adapted = multiply(ring, out, in_snf_.left_inverse);
        for (std::size_t q = 0; q < r; ++q)
            if (!adapted.column(q).empty())
                fail(ErrorKind::DimensionMismatch, "maps do not compose to zero (out * in != 0)");
        std::vector<std::size_t> all_rows(adapted.rows()), tail(n_ - r);
        for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
        for (std::size_t q = 0; q < tail.size(); ++q) tail[q] = r + q;
        rest_snf_ = smith_normal_form(ring, submatrix(adapted, all_rows, tail), true);
        const std::size_t w = rest_snf_.rank();

        std::vector<std::vector<V>> gens;
        for (std::size_t q = 0; q < r; ++q) {
            if (ring.is_unit(in_snf_.factors[q])) continue;
            group_.torsion.push_back(in_snf_.factors[q]);
            torsion_slots_.push_back(q);
            gens.push_back(column_dense(in_snf_.left_inverse, q));
        }
        group_.free_rank = tail.size() - w;
        for (std::size_t t = w; t < tail.size(); ++t) {
            // left_inverse[:, r:] * right[:, t]
            std::vector<V> coeffs(n_, ring.zero());
            for (const auto& [k, v] : rest_snf_.right.column(t)) coeffs[r + k] = v;
            gens.push_back(apply(ring, in_snf_.left_inverse, coeffs));
        }
        group_.generators = std::move(gens);
    }

    const HomologyGroup<Ring>& group() const { return group_; }
    std::size_t module_rank() const { return n_; }

    bool is_cycle(const std::vector<V>& z) const {
        for (const auto& v : apply(ring_, out_, z))
            if (!ring_.is_zero(v)) return false;
        return true;
    }

    /// Coordinates of the class of cycle z in the generator basis: torsion
    /// coordinates reduced to canonical residues, then free coordinates.
    std::vector<V> coordinates(const std::vector<V>& z) const {
        if (!with_generators_) fail(ErrorKind::Precondition, "coordinates need a presentation built with generators");
        if (z.size() != n_) fail(ErrorKind::DimensionMismatch, "cycle length does not match the chain module");
        if (!is_cycle(z)) fail(ErrorKind::DimensionMismatch, "coordinates requested for a non-cycle");
        const std::size_t r = in_snf_.rank();
        auto y = apply(ring_, in_snf_.left, z);
        std::vector<V> coords;
        for (std::size_t slot = 0; slot < torsion_slots_.size(); ++slot)
            coords.push_back(ring_.reduce(y[torsion_slots_[slot]], in_snf_.factors[torsion_slots_[slot]]));
        std::vector<V> rest(y.begin() + static_cast<std::ptrdiff_t>(r), y.end());
        auto k = apply(ring_, rest_snf_.right_inverse, rest);
        const std::size_t w = rest_snf_.rank();
        for (std::size_t t = w; t < k.size(); ++t) coords.push_back(k[t]);
        return coords;
    }

    bool is_boundary(const std::vector<V>& z) const {
        for (const auto& c : coordinates(z))
            if (!ring_.is_zero(c)) return false;
        return true;
    }

private:
    std::vector<V> column_dense(const SparseMatrix<V>& m, std::size_t j) const {
        std::vector<V> v(m.rows(), ring_.zero());
        for (const auto& [i, x] : m.column(j)) v[i] = x;
        return v;
    }

    Ring ring_;
    SparseMatrix<V> out_;
    bool with_generators_;
    std::size_t n_ = 0;
    SmithResult<Ring> in_snf_;
    SmithResult<Ring> rest_snf_;
    std::vector<std::size_t> torsion_slots_;
    HomologyGroup<Ring> group_;
};

/// Map between two presentations given as a matrix acting on the underlying
/// modules (e.g. an inclusion of simplices), expressed on generators.
template <class Ring>
struct InducedMap {
    using V = typename Ring::value_type;
    /// matrix[target_coordinate][source_generator]
    std::vector<std::vector<V>> matrix;
    bool is_zero = true;
};

template <class Ring>
InducedMap<Ring> induced_map(const Ring& ring, const HomologyPresentation<Ring>& source,
                             const HomologyPresentation<Ring>& target,
                             const SparseMatrix<typename Ring::value_type>& chain_map) {
    using V = typename Ring::value_type;
    if (chain_map.cols() != source.module_rank() || chain_map.rows() != target.module_rank())
        fail(ErrorKind::DimensionMismatch, "chain map shape does not match the presentations");
    const auto& gens = *source.group().generators;
    const std::size_t target_dim = target.group().summands();
    InducedMap<Ring> out;
    out.matrix.assign(target_dim, std::vector<V>(gens.size(), ring.zero()));
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto coords = target.coordinates(apply(ring, chain_map, gens[g]));
        for (std::size_t t = 0; t < target_dim; ++t) {
            out.matrix[t][g] = coords[t];
            if (!ring.is_zero(coords[t])) out.is_zero = false;
        }
    }
    return out;
}

/// Invariants of the image of an induced map inside the target group, plus
/// whether the map is injective / surjective on homology.
template <class Ring>
struct ImageSummary {
    HomologyGroup<Ring> image;
    bool injective = false;
    bool surjective = false;
};

template <class Ring>
ImageSummary<Ring> image_summary(const Ring& ring, const InducedMap<Ring>& map, const HomologyGroup<Ring>& source,
                                 const HomologyGroup<Ring>& target) {
    using V = typename Ring::value_type;
    const std::size_t n = target.summands();
    const std::size_t m = source.summands();
    const std::size_t t = target.torsion.size();
    // Image = (span(F) + L) / L in Z^n, with L = relations of the torsion part.
    std::vector<std::tuple<std::size_t, std::size_t, V>> trip;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!ring.is_zero(map.matrix[i][j])) trip.emplace_back(i, j, map.matrix[i][j]);
    for (std::size_t q = 0; q < t; ++q) trip.emplace_back(q, m + q, target.torsion[q]);
    auto span = SparseMatrix<V>::from_triplets(ring, n, m + t, trip);
    auto s = smith_normal_form(ring, span, true);
    const std::size_t r = s.rank();

    ImageSummary<Ring> out;
    out.surjective = r == n;
    for (const auto& d : s.factors)
        if (!ring.is_unit(d)) out.surjective = false;

    // Express L in the basis d_q * left_inverse[:, q] of span(F) + L.
    std::vector<std::tuple<std::size_t, std::size_t, V>> rel;
    for (std::size_t q = 0; q < t; ++q) {
        std::vector<V> l(n, ring.zero());
        l[q] = target.torsion[q];
        auto y = apply(ring, s.left, l);
        for (std::size_t p = 0; p < r; ++p)
            if (!ring.is_zero(y[p])) rel.emplace_back(p, q, ring.exact_div(y[p], s.factors[p]));
    }
    auto relations = SparseMatrix<V>::from_triplets(ring, r, t, rel);
    auto sr = smith_normal_form(ring, relations, false);
    out.image.free_rank = r - sr.rank();
    for (const auto& d : sr.factors)
        if (!ring.is_unit(d)) out.image.torsion.push_back(d);
    // A surjection from a finitely generated module onto an isomorphic one is an isomorphism.
    out.injective = out.image == source;
    return out;
}

}  // namespace coarse
