#pragma once

// Ordered standard resolution truncated by scale, window and dimension.
//
// A k-simplex is a strictly increasing (k+1)-tuple of point indices whose
// pairwise distances are all <= the scale; with the index order fixed this is
// the ordered Rips chain complex of the window.

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coarse/distance.hpp"
#include "coarse/error.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/ring.hpp"
#include "coarse/sparse_matrix.hpp"

namespace coarse {

using Vertices = std::vector<PointId>;

struct SimplexKey {
    Vertices vertices;
    Dist scale;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

inline std::string to_string(const Vertices& v) {
    std::string s = "[";
    for (std::size_t a = 0; a < v.size(); ++a) s += (a ? "," : "") + std::to_string(v[a]);
    return s + "]";
}

inline Vertices remove_vertex(const Vertices& v, std::size_t a) {
    Vertices face;
    face.reserve(v.size() - 1);
    for (std::size_t b = 0; b < v.size(); ++b)
        if (b != a) face.push_back(v[b]);
    return face;
}

inline constexpr std::size_t kDefaultSimplexCap = 2'000'000;

class WindowComplex {
public:
    /// All ordered simplices of scale <= `scale` with vertices in `window`
    /// and dimension <= max_dim. Throws SizeExceeded above `simplex_cap`.
    static WindowComplex build(const MetricSpace& space, const Dist& scale, PointSet window, int max_dim,
                               std::size_t simplex_cap = kDefaultSimplexCap) {
        if (max_dim < 0) fail(ErrorKind::Precondition, "max_dim must be >= 0");
        std::sort(window.begin(), window.end());
        window.erase(std::unique(window.begin(), window.end()), window.end());
        for (PointId p : window)
            if (p >= space.size()) fail(ErrorKind::UnknownPoint, "window point " + std::to_string(p) + " outside space");

        WindowComplex cx;
        cx.space_ = &space;
        cx.scale_ = scale;
        cx.window_ = window;
        cx.max_dim_ = max_dim;
        cx.simplices_.resize(static_cast<std::size_t>(max_dim) + 1);

        // lower neighbours of each window point, ascending
        std::vector<std::vector<PointId>> lower(window.size());
        for (std::size_t a = 0; a < window.size(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (space.within(window[a], window[b], scale)) lower[a].push_back(static_cast<PointId>(b));

        std::size_t total = 0;
        // Expansion by largest vertex: a simplex with top vertex v is v plus a
        // simplex in the lower link of v. Positions index into `window`.
        std::vector<PointId> stack;
        auto expand = [&](auto&& self, const std::vector<PointId>& candidates, Dist sc) -> void {
            Vertices verts;
            verts.reserve(stack.size());
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) verts.push_back(window[*it]);
            cx.simplices_[stack.size() - 1].push_back({std::move(verts), sc});
            if (++total > simplex_cap)
                fail(ErrorKind::SizeExceeded, "window complex exceeds the simplex cap of " + std::to_string(simplex_cap) +
                                                  " (scale " + scale.str() + ", " + std::to_string(window.size()) +
                                                  " window points, max_dim " + std::to_string(max_dim) + ")");
            if (static_cast<int>(stack.size()) > max_dim) return;
            for (PointId u : candidates) {
                Dist next = sc;
                for (PointId w : stack) {
                    Dist d = space.dist(window[u], window[w]);
                    if (d > next) next = d;
                }
                std::vector<PointId> inter;
                std::set_intersection(candidates.begin(), candidates.end(), lower[u].begin(), lower[u].end(),
                                      std::back_inserter(inter));
                stack.push_back(u);
                self(self, inter, next);
                stack.pop_back();
            }
        };
        for (std::size_t a = 0; a < window.size(); ++a) {
            stack.assign(1, static_cast<PointId>(a));
            expand(expand, lower[a], Dist(0));
        }
        for (auto& level : cx.simplices_)
            std::sort(level.begin(), level.end(),
                      [](const SimplexKey& x, const SimplexKey& y) { return x.vertices < y.vertices; });
        cx.build_boundaries();
        return cx;
    }

    /// Complex on the closed ball N_radius(center).
    static WindowComplex build_ball(const MetricSpace& space, PointId center, const Dist& radius, const Dist& scale,
                                    int max_dim, std::size_t simplex_cap = kDefaultSimplexCap) {
        WindowComplex cx = build(space, scale, neighborhood(space, center, radius), max_dim, simplex_cap);
        cx.center_ = center;
        cx.radius_ = radius;
        return cx;
    }

    const MetricSpace& space() const { return *space_; }
    const Dist& scale() const { return scale_; }
    const PointSet& window() const { return window_; }
    int max_dim() const { return max_dim_; }
    const std::optional<PointId>& center() const { return center_; }
    const std::optional<Dist>& radius() const { return radius_; }

    std::size_t count(int k) const {
        return k < 0 || k > max_dim_ ? 0 : simplices_[static_cast<std::size_t>(k)].size();
    }
    const std::vector<SimplexKey>& simplices(int k) const {
        static const std::vector<SimplexKey> none;
        return k < 0 || k > max_dim_ ? none : simplices_[static_cast<std::size_t>(k)];
    }
    const SimplexKey& simplex(int k, std::size_t index) const { return simplices(k).at(index); }

    std::optional<std::size_t> index_of(const Vertices& v) const {
        const int k = static_cast<int>(v.size()) - 1;
        const auto& level = simplices(k);
        auto it = std::lower_bound(level.begin(), level.end(), v,
                                   [](const SimplexKey& s, const Vertices& x) { return s.vertices < x; });
        if (it == level.end() || it->vertices != v) return std::nullopt;
        return static_cast<std::size_t>(it - level.begin());
    }
    bool contains(const Vertices& v) const { return index_of(v).has_value(); }

    /// Boundary d_k : C_k -> C_{k-1} for 1 <= k <= max_dim (0 x n_0 for k = 0).
    const IntMatrix& boundary(int k) const {
        if (k < 0 || k > max_dim_) fail(ErrorKind::DimensionMismatch, "no boundary in dimension " + std::to_string(k));
        return boundaries_[static_cast<std::size_t>(k)];
    }

    /// Augmentation row: 1 x n_0, all ones.
    IntMatrix augmentation() const {
        IntMatrix e(1, count(0));
        for (std::size_t j = 0; j < count(0); ++j) e.set_column(j, {{0, 1}});
        return e;
    }

    bool is_subcomplex_of(const WindowComplex& other) const {
        if (max_dim_ > other.max_dim_ && count(other.max_dim_ + 1) > 0) return false;
        for (int k = 0; k <= max_dim_; ++k)
            for (const auto& s : simplices(k))
                if (!other.contains(s.vertices)) return false;
        return true;
    }

    /// Inclusion C_k(this) -> C_k(other) as an other.count(k) x count(k) matrix.
    IntMatrix inclusion(const WindowComplex& other, int k) const {
        IntMatrix m(other.count(k), count(k));
        for (std::size_t j = 0; j < count(k); ++j) {
            auto idx = other.index_of(simplices(k)[j].vertices);
            if (!idx)
                fail(ErrorKind::NotASubcomplex, "simplex " + to_string(simplices(k)[j].vertices) + " missing from the larger complex");
            m.set_column(j, {{*idx, 1}});
        }
        return m;
    }

    std::size_t total_simplices() const {
        std::size_t n = 0;
        for (const auto& level : simplices_) n += level.size();
        return n;
    }

private:
    void build_boundaries() {
        boundaries_.clear();
        boundaries_.emplace_back(0, count(0));
        for (int k = 1; k <= max_dim_; ++k) {
            IntMatrix d(count(k - 1), count(k));
            const auto& level = simplices(k);
            for (std::size_t j = 0; j < level.size(); ++j) {
                IntMatrix::Column col;
                for (std::size_t a = 0; a < level[j].vertices.size(); ++a) {
                    auto face = index_of(remove_vertex(level[j].vertices, a));
                    if (!face) fail(ErrorKind::DimensionMismatch, "face of " + to_string(level[j].vertices) + " missing");
                    col.emplace_back(*face, a % 2 == 0 ? 1 : -1);
                }
                std::sort(col.begin(), col.end());
                d.set_column(j, std::move(col));
            }
            boundaries_.push_back(std::move(d));
        }
    }

    const MetricSpace* space_ = nullptr;
    Dist scale_;
    PointSet window_;
    int max_dim_ = 0;
    std::optional<PointId> center_;
    std::optional<Dist> radius_;
    std::vector<std::vector<SimplexKey>> simplices_;
    std::vector<IntMatrix> boundaries_;
};

/// The space must outlive the returned complex.
inline WindowComplex build_window_complex(const MetricSpace& space, const Dist& scale, const PointSet& window,
                                          int max_dim, std::size_t simplex_cap = kDefaultSimplexCap) {
    return WindowComplex::build(space, scale, window, max_dim, simplex_cap);
}

inline nlohmann::ordered_json complex_summary(const WindowComplex& cx) {
    nlohmann::ordered_json j;
    j["scale"] = cx.scale().str();
    j["max_dim"] = cx.max_dim();
    nlohmann::ordered_json window;
    window["points"] = cx.window().size();
    if (cx.center()) window["center"] = cx.space().label(*cx.center());
    if (cx.radius()) window["radius"] = cx.radius()->str();
    j["window"] = window;
    std::vector<std::size_t> counts;
    for (int k = 0; k <= cx.max_dim(); ++k) counts.push_back(cx.count(k));
    j["simplex_counts"] = counts;
    return j;
}

// ---------------------------------------------------------------------------
// Chains and cochains

struct ChainTag {};
struct CochainTag {};

/// Sparse function on k-simplices; no stored zeros.
template <class Ring, class Kind>
struct CellFunction {
    using V = typename Ring::value_type;

    int dim = 0;
    std::map<Vertices, V> terms;

    CellFunction() = default;
    explicit CellFunction(int k) : dim(k) {}

    bool is_zero() const { return terms.empty(); }

    V at(const Vertices& s, const Ring& ring) const {
        auto it = terms.find(s);
        return it == terms.end() ? ring.zero() : it->second;
    }

    void add_term(const Ring& ring, const Vertices& s, const V& coeff) {
        if (static_cast<int>(s.size()) != dim + 1)
            fail(ErrorKind::DimensionMismatch, "simplex " + to_string(s) + " in a " + std::to_string(dim) + "-dimensional function");
        if (ring.is_zero(coeff)) return;
        auto [it, inserted] = terms.try_emplace(s, coeff);
        if (!inserted) {
            it->second = ring.add(it->second, coeff);
            if (ring.is_zero(it->second)) terms.erase(it);
        }
    }

    friend bool operator==(const CellFunction& a, const CellFunction& b) {
        return (a.dim == b.dim || (a.terms.empty() && b.terms.empty())) && a.terms == b.terms;
    }
};

template <class Ring>
using Chain = CellFunction<Ring, ChainTag>;
template <class Ring>
using Cochain = CellFunction<Ring, CochainTag>;

template <class Ring, class Kind>
CellFunction<Ring, Kind> plus(const Ring& ring, const CellFunction<Ring, Kind>& a, const CellFunction<Ring, Kind>& b) {
    if (a.dim != b.dim && !a.is_zero() && !b.is_zero()) fail(ErrorKind::DimensionMismatch, "adding functions of different dimension");
    CellFunction<Ring, Kind> out = a.is_zero() ? CellFunction<Ring, Kind>(b.dim) : a;
    for (const auto& [s, v] : b.terms) out.add_term(ring, s, v);
    return out;
}

template <class Ring, class Kind>
CellFunction<Ring, Kind> times(const Ring& ring, const typename Ring::value_type& c, const CellFunction<Ring, Kind>& a) {
    CellFunction<Ring, Kind> out(a.dim);
    for (const auto& [s, v] : a.terms) out.add_term(ring, s, ring.mul(c, v));
    return out;
}

template <class Ring, class Kind>
CellFunction<Ring, Kind> minus(const Ring& ring, const CellFunction<Ring, Kind>& a, const CellFunction<Ring, Kind>& b) {
    return plus(ring, a, times(ring, ring.neg(ring.one()), b));
}

template <class Ring>
Chain<Ring> simplex_chain(const Ring& ring, const Vertices& s, std::int64_t coeff = 1) {
    Chain<Ring> c(static_cast<int>(s.size()) - 1);
    c.add_term(ring, s, embed(ring, coeff));
    return c;
}

template <class Ring>
Cochain<Ring> dual_cochain(const Ring& ring, const Vertices& s) {
    Cochain<Ring> c(static_cast<int>(s.size()) - 1);
    c.add_term(ring, s, ring.one());
    return c;
}

/// Coordinate vector of f in the basis of k-simplices of cx.
template <class Ring, class Kind>
std::vector<typename Ring::value_type> to_vector(const Ring& ring, const WindowComplex& cx, const CellFunction<Ring, Kind>& f) {
    std::vector<typename Ring::value_type> v(cx.count(f.dim), ring.zero());
    for (const auto& [s, c] : f.terms) {
        auto idx = cx.index_of(s);
        if (!idx) fail(ErrorKind::DimensionMismatch, "simplex " + to_string(s) + " is not in the complex");
        v[*idx] = c;
    }
    return v;
}

template <class Kind, class Ring>
CellFunction<Ring, Kind> from_vector(const Ring& ring, const WindowComplex& cx, int k,
                                     const std::vector<typename Ring::value_type>& v) {
    if (v.size() != cx.count(k)) fail(ErrorKind::DimensionMismatch, "vector length does not match C_" + std::to_string(k));
    CellFunction<Ring, Kind> f(k);
    for (std::size_t i = 0; i < v.size(); ++i) f.add_term(ring, cx.simplices(k)[i].vertices, v[i]);
    return f;
}

template <class Ring>
Chain<Ring> boundary(const Ring& ring, const Chain<Ring>& c) {
    Chain<Ring> out(c.dim - 1);
    if (c.dim <= 0) return out;
    for (const auto& [s, v] : c.terms)
        for (std::size_t a = 0; a < s.size(); ++a)
            out.add_term(ring, remove_vertex(s, a), a % 2 == 0 ? v : ring.neg(v));
    return out;
}

template <class Ring>
typename Ring::value_type augment(const Ring& ring, const Chain<Ring>& c) {
    if (c.dim != 0 && !c.is_zero()) fail(ErrorKind::DimensionMismatch, "augmentation is defined on 0-chains only");
    auto sum = ring.zero();
    for (const auto& [s, v] : c.terms) sum = ring.add(sum, v);
    return sum;
}

/// supp: first vertices of simplices carrying a nonzero coefficient.
template <class Ring, class Kind>
PointSet support(const CellFunction<Ring, Kind>& c) {
    PointSet out;
    for (const auto& [s, v] : c.terms) out.push_back(s.front());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Every vertex of every simplex carrying a nonzero coefficient.
template <class Ring, class Kind>
PointSet vertex_set(const CellFunction<Ring, Kind>& c) {
    PointSet out;
    for (const auto& [s, v] : c.terms) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Cone operator h^x: inserts x into sorted position p with sign (-1)^p;
/// simplices already containing x cone to zero. Satisfies
/// d h(c) + h(d c) = c for reduced cycles (and all chains of positive dimension
/// whose cones exist).
template <class Ring>
Chain<Ring> cone_homotopy(const Ring& ring, const WindowComplex& cx, PointId x, const Chain<Ring>& c) {
    if (!std::binary_search(cx.window().begin(), cx.window().end(), x))
        fail(ErrorKind::UnknownPoint, "cone point " + std::to_string(x) + " is not in the window");
    Chain<Ring> out(c.dim + 1);
    for (const auto& [s, v] : c.terms) {
        auto pos = std::lower_bound(s.begin(), s.end(), x);
        if (pos != s.end() && *pos == x) continue;
        Vertices coned(s.begin(), pos);
        coned.push_back(x);
        coned.insert(coned.end(), pos, s.end());
        if (!cx.contains(coned))
            fail(ErrorKind::ConeOutOfScale, "coned simplex " + to_string(coned) + " exceeds scale " + cx.scale().str() +
                                                " or max_dim " + std::to_string(cx.max_dim()));
        auto p = pos - s.begin();
        out.add_term(ring, coned, p % 2 == 0 ? v : ring.neg(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Direct chain-complex input

/// Free chain complex given by ranks and integer boundary matrices;
/// boundaries[k] : C_k -> C_{k-1} (boundaries[0] is 0 x n_0).
struct ChainComplexData {
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> boundaries;

    int top_dim() const { return static_cast<int>(ranks.size()) - 1; }

    const IntMatrix& boundary(int k) const { return boundaries.at(static_cast<std::size_t>(k)); }

    /// Empty map C_{top+1} = 0 -> C_top.
    IntMatrix boundary_or_zero(int k) const {
        if (k >= 0 && k <= top_dim()) return boundary(k);
        std::size_t target = k - 1 >= 0 && k - 1 <= top_dim() ? ranks[static_cast<std::size_t>(k - 1)] : 0;
        std::size_t source = k >= 0 && k <= top_dim() ? ranks[static_cast<std::size_t>(k)] : 0;
        return IntMatrix(target, source);
    }

    void validate() const {
        if (boundaries.size() != ranks.size())
            fail(ErrorKind::DimensionMismatch, "chain complex needs one boundary per dimension");
        for (int k = 0; k <= top_dim(); ++k) {
            const auto& d = boundary(k);
            std::size_t rows = k == 0 ? 0 : ranks[static_cast<std::size_t>(k - 1)];
            if (d.rows() != rows || d.cols() != ranks[static_cast<std::size_t>(k)])
                fail(ErrorKind::DimensionMismatch, "boundary " + std::to_string(k) + " has the wrong shape");
        }
        Integers zz;
        for (int k = 2; k <= top_dim(); ++k) {
            auto dd = multiply(zz, convert(zz, boundary(k - 1)), convert(zz, boundary(k)));
            if (!is_zero_matrix(dd)) fail(ErrorKind::DimensionMismatch, "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0");
        }
    }

    static ChainComplexData from_window(const WindowComplex& cx) {
        ChainComplexData d;
        for (int k = 0; k <= cx.max_dim(); ++k) {
            d.ranks.push_back(cx.count(k));
            d.boundaries.push_back(cx.boundary(k));
        }
        return d;
    }
};

inline ChainComplexData parse_chain_complex(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dims") || !doc["dims"].is_array())
        fail(ErrorKind::ParseError, "chain complex JSON needs a 'dims' array");
    ChainComplexData cc;
    for (const auto& n : doc["dims"]) {
        if (!n.is_number_integer() || n.get<long long>() < 0) fail(ErrorKind::ParseError, "'dims' entries must be non-negative integers");
        cc.ranks.push_back(n.get<std::size_t>());
    }
    for (int k = 0; k <= cc.top_dim(); ++k)
        cc.boundaries.emplace_back(k == 0 ? 0 : cc.ranks[static_cast<std::size_t>(k - 1)], cc.ranks[static_cast<std::size_t>(k)]);
    if (doc.contains("boundaries")) {
        for (const auto& b : doc["boundaries"]) {
            if (!b.contains("dim") || !b.contains("entries")) fail(ErrorKind::ParseError, "boundary needs 'dim' and 'entries'");
            int k = b["dim"].get<int>();
            if (k < 1 || k > cc.top_dim()) fail(ErrorKind::ParseError, "boundary dim " + std::to_string(k) + " out of range");
            std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
            for (const auto& e : b["entries"]) {
                if (!e.is_array() || e.size() != 3) fail(ErrorKind::ParseError, "boundary entries are [row, col, value]");
                t.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::int64_t>());
            }
            cc.boundaries[static_cast<std::size_t>(k)] = IntMatrix::from_triplets(
                MachineIntegers{}, cc.ranks[static_cast<std::size_t>(k - 1)], cc.ranks[static_cast<std::size_t>(k)], t);
        }
    }
    cc.validate();
    return cc;
}

inline nlohmann::json chain_complex_json(const ChainComplexData& cc) {
    nlohmann::json doc;
    doc["dims"] = cc.ranks;
    doc["boundaries"] = nlohmann::json::array();
    for (int k = 1; k <= cc.top_dim(); ++k) {
        nlohmann::json entries = nlohmann::json::array();
        const auto& d = cc.boundary(k);
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (const auto& [i, v] : d.column(j)) entries.push_back({i, j, v});
        doc["boundaries"].push_back({{"dim", k}, {"entries", entries}});
    }
    return doc;
}

}  // namespace coarse
