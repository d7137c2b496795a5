#pragma once

// Homology of window complexes and direct chain complexes, and maps induced
// by inclusions of window complexes.

#include <json.hpp>

#include <string>

#include "coarse/chain_complex.hpp"
#include "coarse/homology.hpp"

namespace coarse {

/// d_{k+1} : C_{k+1} -> C_k, or the zero map from 0 at the top dimension.
template <class Ring>
SparseMatrix<typename Ring::value_type> incoming_boundary(const Ring& ring, const WindowComplex& cx, int k) {
    if (k + 1 > cx.max_dim()) return SparseMatrix<typename Ring::value_type>(cx.count(k), 0);
    return convert(ring, cx.boundary(k + 1));
}

/// d_k, or the augmentation in dimension 0 when reduced.
template <class Ring>
SparseMatrix<typename Ring::value_type> outgoing_boundary(const Ring& ring, const WindowComplex& cx, int k, bool reduced) {
    if (k == 0 && reduced) return convert(ring, cx.augmentation());
    return convert(ring, cx.boundary(k));
}

template <class Ring>
HomologyPresentation<Ring> homology_presentation(const Ring& ring, const WindowComplex& cx, int k, bool reduced,
                                                 bool with_generators = true) {
    if (k < 0 || k > cx.max_dim())
        fail(ErrorKind::DimensionMismatch, "homology in dimension " + std::to_string(k) + " of a complex truncated at " +
                                               std::to_string(cx.max_dim()));
    return HomologyPresentation<Ring>(ring, incoming_boundary(ring, cx, k), outgoing_boundary(ring, cx, k, reduced),
                                      with_generators);
}

/// H_k (or reduced H~_k). At k = max_dim this is the homology of the
/// truncated complex, i.e. the cycle group.
template <class Ring>
HomologyGroup<Ring> homology(const Ring& ring, const WindowComplex& cx, int k, bool reduced, bool with_generators = false) {
    return homology_presentation(ring, cx, k, reduced, with_generators).group();
}

template <class Ring>
HomologyGroup<Ring> homology(const Ring& ring, const ChainComplexData& cc, int k) {
    if (k < 0 || k > cc.top_dim()) fail(ErrorKind::DimensionMismatch, "no chain group in dimension " + std::to_string(k));
    return HomologyPresentation<Ring>(ring, convert(ring, cc.boundary_or_zero(k + 1)), convert(ring, cc.boundary(k)), false)
        .group();
}

/// Map H_k(a) -> H_k(b) induced by the inclusion a into b.
template <class Ring>
InducedMap<Ring> induced_map(const Ring& ring, const WindowComplex& a, const WindowComplex& b, int k, bool reduced) {
    if (!a.is_subcomplex_of(b)) fail(ErrorKind::NotASubcomplex, "source window complex is not contained in the target");
    auto source = homology_presentation(ring, a, k, reduced);
    auto target = homology_presentation(ring, b, k, reduced);
    return induced_map(ring, source, target, convert(ring, a.inclusion(b, k)));
}

template <class Ring>
nlohmann::ordered_json value_json(const Ring& ring, const typename Ring::value_type& v) {
    std::string s = ring.to_string(v);
    try {
        std::size_t used = 0;
        long long n = std::stoll(s, &used);
        if (used == s.size()) return n;
    } catch (const std::exception&) {
    }
    return s;
}

template <class Ring>
nlohmann::ordered_json group_json(const Ring& ring, const HomologyGroup<Ring>& g) {
    nlohmann::ordered_json j;
    j["free_rank"] = g.free_rank;
    j["torsion"] = nlohmann::ordered_json::array();
    for (const auto& d : g.torsion) j["torsion"].push_back(value_json(ring, d));
    return j;
}

template <class Ring>
std::string group_string(const Ring& ring, const HomologyGroup<Ring>& g) {
    std::string s;
    auto base = ring.name() == "Z" ? std::string("Z") : ring.name();
    if (g.free_rank > 0) s = base + (g.free_rank > 1 ? "^" + std::to_string(g.free_rank) : "");
    for (const auto& d : g.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + ring.to_string(d);
    return s.empty() ? "0" : s;
}

}  // namespace coarse
