#pragma once

// Finite metric spaces with exact distances and a fixed total order on
// points (index order).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coarse/distance.hpp"
#include "coarse/error.hpp"

namespace coarse {

using PointId = std::uint32_t;
using PointSet = std::vector<PointId>;  // sorted, duplicate-free

class MetricSpace {
public:
    using Adjacency = std::vector<std::vector<PointId>>;

    /// Full square distance matrix; validated (symmetry, zero diagonal,
    /// positivity off the diagonal). The O(n^3) triangle check is separate.
    static MetricSpace from_matrix(std::vector<std::string> labels, const std::vector<Dist>& entries) {
        const std::size_t n = labels.size();
        if (entries.size() != n * n) fail(ErrorKind::InvalidMetric, "distance matrix is not square");
        std::int64_t den = 1;
        for (const auto& d : entries) {
            den = std::lcm(den, d.den());
            if (den <= 0 || den > (std::int64_t{1} << 40))
                fail(ErrorKind::InvalidMetric, "common denominator of distances is too large");
        }
        MetricSpace s;
        s.labels_ = std::move(labels);
        s.den_ = den;
        s.num_.resize(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            const Dist& d = entries[i];
            __int128 v = static_cast<__int128>(d.num()) * (den / d.den());
            if (v > INT64_MAX / 4) fail(ErrorKind::InvalidMetric, "distance too large");
            s.num_[i] = static_cast<std::int64_t>(v);
        }
        s.check_axioms();
        return s;
    }

    /// Shortest-path metric of an unweighted connected graph.
    static MetricSpace from_graph(std::vector<std::string> labels, Adjacency adjacency) {
        const std::size_t n = labels.size();
        if (adjacency.size() != n) fail(ErrorKind::InvalidMetric, "adjacency size does not match labels");
        for (auto& nb : adjacency) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
        MetricSpace s;
        s.labels_ = std::move(labels);
        s.num_.assign(n * n, -1);
        std::vector<PointId> queue(n);
        for (PointId src = 0; src < n; ++src) {
            std::int64_t* row = &s.num_[std::size_t{src} * n];
            std::size_t head = 0, tail = 0;
            row[src] = 0;
            queue[tail++] = src;
            while (head < tail) {
                PointId u = queue[head++];
                for (PointId v : adjacency[u])
                    if (row[v] < 0) {
                        row[v] = row[u] + 1;
                        queue[tail++] = v;
                    }
            }
            if (tail != n) fail(ErrorKind::InvalidMetric, "graph is disconnected; shortest-path metric undefined");
        }
        s.graph_ = std::move(adjacency);
        return s;
    }

    /// Shortest-path metric of a connected graph with positive rational weights.
    static MetricSpace from_weighted_graph(std::vector<std::string> labels,
                                           const std::vector<std::tuple<PointId, PointId, Dist>>& edges) {
        const std::size_t n = labels.size();
        bool unit = std::all_of(edges.begin(), edges.end(), [](const auto& e) { return std::get<2>(e) == Dist(1); });
        if (unit) {
            Adjacency adj(n);
            for (const auto& [u, v, w] : edges) {
                if (u == v) continue;
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            return from_graph(std::move(labels), std::move(adj));
        }
        std::vector<std::vector<std::pair<PointId, Dist>>> adj(n);
        for (const auto& [u, v, w] : edges) {
            if (w <= Dist(0)) fail(ErrorKind::InvalidMetric, "edge weights must be positive");
            adj[u].emplace_back(v, w);
            adj[v].emplace_back(u, w);
        }
        std::vector<Dist> entries(n * n);
        for (PointId src = 0; src < n; ++src) {
            std::vector<std::optional<Dist>> best(n);
            std::vector<bool> done(n, false);
            best[src] = Dist(0);
            for (std::size_t round = 0; round < n; ++round) {
                std::optional<PointId> u;
                for (PointId c = 0; c < n; ++c)
                    if (!done[c] && best[c] && (!u || *best[c] < *best[*u])) u = c;
                if (!u) fail(ErrorKind::InvalidMetric, "graph is disconnected; shortest-path metric undefined");
                done[*u] = true;
                for (const auto& [v, w] : adj[*u]) {
                    Dist cand = *best[*u] + w;
                    if (!best[v] || cand < *best[v]) best[v] = cand;
                }
            }
            for (PointId t = 0; t < n; ++t) entries[std::size_t{src} * n + t] = *best[t];
        }
        return from_matrix(std::move(labels), entries);
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(PointId p) const { return labels_.at(p); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<PointId> find(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<PointId>(it - labels_.begin());
    }

    Dist dist(PointId p, PointId q) const { return Dist(num_[index(p, q)], den_); }

    /// d(p, q) <= r without building a Dist.
    bool within(PointId p, PointId q, const Dist& r) const {
        return static_cast<__int128>(num_[index(p, q)]) * r.den() <= static_cast<__int128>(r.num()) * den_;
    }

    /// Present when the metric is the path metric of an unweighted graph.
    const std::optional<Adjacency>& graph() const { return graph_; }
    bool is_graph_metric() const { return graph_.has_value(); }

    PointId basepoint() const { return basepoint_; }
    /// True when the points are the whole space rather than a ball sampled
    /// from an unbounded one.
    bool complete() const { return complete_; }
    /// Radius of the sampled ball around the basepoint (diameter proxy for complete spaces).
    Dist sample_radius() const {
        std::int64_t best = 0;
        for (PointId q = 0; q < size(); ++q) best = std::max(best, num_[index(basepoint_, q)]);
        return Dist(best, den_);
    }
    const std::string& description() const { return description_; }

    void set_basepoint(PointId p) {
        if (p >= size()) fail(ErrorKind::UnknownPoint, "basepoint " + std::to_string(p) + " outside space");
        basepoint_ = p;
    }
    void set_complete(bool complete) { complete_ = complete; }
    void set_description(std::string d) { description_ = std::move(d); }

    Dist diameter() const {
        std::int64_t best = 0;
        for (auto v : num_) best = std::max(best, v);
        return Dist(best, den_);
    }

    /// First violating triple (p, q, m) with d(p,q) > d(p,m) + d(m,q), if any.
    std::optional<std::tuple<PointId, PointId, PointId>> triangle_violation() const {
        const std::size_t n = size();
        for (PointId p = 0; p < n; ++p)
            for (PointId q = p + 1; q < n; ++q)
                for (PointId m = 0; m < n; ++m)
                    if (num_[index(p, q)] > num_[index(p, m)] + num_[index(m, q)]) return std::tuple{p, q, m};
        return std::nullopt;
    }

    void validate_triangle_inequality() const {
        if (auto bad = triangle_violation()) {
            auto [p, q, m] = *bad;
            fail(ErrorKind::InvalidMetric, "triangle inequality fails: d(" + label(p) + "," + label(q) + ") > d(" +
                                               label(p) + "," + label(m) + ") + d(" + label(m) + "," + label(q) + ")");
        }
    }

private:
    std::size_t index(PointId p, PointId q) const {
        if (p >= size() || q >= size()) fail(ErrorKind::UnknownPoint, "point index outside space");
        return std::size_t{p} * size() + q;
    }

    void check_axioms() const {
        const std::size_t n = size();
        for (PointId p = 0; p < n; ++p) {
            if (num_[index(p, p)] != 0) fail(ErrorKind::InvalidMetric, "d(" + label(p) + "," + label(p) + ") != 0");
            for (PointId q = p + 1; q < n; ++q) {
                if (num_[index(p, q)] != num_[index(q, p)])
                    fail(ErrorKind::InvalidMetric, "distance matrix not symmetric at (" + label(p) + "," + label(q) + ")");
                if (num_[index(p, q)] <= 0)
                    fail(ErrorKind::InvalidMetric, "distinct points " + label(p) + "," + label(q) + " at distance <= 0");
            }
        }
    }

    std::vector<std::string> labels_;
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 1;
    std::optional<Adjacency> graph_;
    PointId basepoint_ = 0;
    bool complete_ = true;
    std::string description_;
};

namespace detail {

/// Largest radius around x whose ball stays inside the sample.
inline std::optional<Dist> sample_room(const MetricSpace& space, PointId x) {
    if (space.complete()) return std::nullopt;
    return space.sample_radius() - space.dist(space.basepoint(), x);
}

inline void require_in_sample(const MetricSpace& space, PointId x, const Dist& r, const std::string& what) {
    auto room = sample_room(space, x);
    if (room && r > *room)
        fail(ErrorKind::ScheduleExceedsSample, what + " radius " + r.str() + " around " + space.label(x) +
                                                   " leaves the sampled ball (room " + room->str() + ")");
}

}  // namespace detail

/// Closed ball { y : d(center, y) <= r }, in point order.
inline PointSet neighborhood(const MetricSpace& space, PointId center, const Dist& r) {
    if (center >= space.size()) fail(ErrorKind::UnknownPoint, "center " + std::to_string(center) + " outside space");
    PointSet out;
    for (PointId y = 0; y < space.size(); ++y)
        if (space.within(center, y, r)) out.push_back(y);
    return out;
}

/// Closed r-neighbourhood of a set.
inline PointSet neighborhood(const MetricSpace& space, const PointSet& centers, const Dist& r) {
    PointSet out;
    for (PointId y = 0; y < space.size(); ++y)
        for (PointId c : centers)
            if (space.within(c, y, r)) {
                out.push_back(y);
                break;
            }
    return out;
}

/// Greedy maximal separated subset in point order: kept points are pairwise
/// at distance >= separation and every point is within separation of one.
inline PointSet net(const MetricSpace& space, const Dist& separation) {
    if (separation <= Dist(0)) fail(ErrorKind::Precondition, "net separation must be positive");
    PointSet kept;
    for (PointId p = 0; p < space.size(); ++p) {
        bool far = true;
        for (PointId q : kept)
            if (space.dist(p, q) < separation) {
                far = false;
                break;
            }
        if (far) kept.push_back(p);
    }
    return kept;
}

}  // namespace coarse
