#pragma once

// Coarse invariants computed on finite samples: ends, uniform acyclicity
// probes, cycle filling, chain/path conversion, the bottleneck test for
// quasi-trees, ccd estimates and the PD_n probe.

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coarse/chain_complex.hpp"
#include "coarse/cohomology.hpp"
#include "coarse/homology.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/smith.hpp"
#include "coarse/window_homology.hpp"

namespace coarse {

namespace detail {


class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Ends

struct EndsReport {
    Dist scale;
    PointId basepoint = 0;
    std::vector<Dist> radii;
    std::vector<std::size_t> counts;
    std::optional<std::size_t> stabilized;
    std::string classification = "inconclusive";  // "0", "1", "2", "infinity", "inconclusive"
};

/// Components of the scale-i Rips graph on {y : d(x0, y) >= r} that reach
/// the outer shell of the sample. Complete spaces have no shell.
inline EndsReport ends(const MetricSpace& space, PointId basepoint, const Dist& scale, const std::vector<Dist>& radii) {
    if (radii.empty()) fail(ErrorKind::Precondition, "ends needs at least one radius");
    if (basepoint >= space.size()) fail(ErrorKind::UnknownPoint, "basepoint outside space");
    EndsReport report;
    report.scale = scale;
    report.basepoint = basepoint;
    report.radii = radii;
    const Dist sample = space.sample_radius();
    std::vector<bool> shell(space.size(), false);
    if (!space.complete())
        for (PointId y = 0; y < space.size(); ++y) shell[y] = space.dist(space.basepoint(), y) >= sample;
    for (const auto& r : radii) {
        if (!space.complete()) detail::require_in_sample(space, basepoint, r + scale, "ends");
        std::vector<PointId> outside;
        for (PointId y = 0; y < space.size(); ++y)
            if (space.dist(basepoint, y) >= r) outside.push_back(y);
        detail::UnionFind uf(outside.size());
        for (std::size_t a = 0; a < outside.size(); ++a)
            for (std::size_t b = a + 1; b < outside.size(); ++b)
                if (space.within(outside[a], outside[b], scale)) uf.unite(a, b);
        std::vector<std::size_t> roots;
        for (std::size_t a = 0; a < outside.size(); ++a)
            if (shell[outside[a]]) roots.push_back(uf.find(a));
        std::sort(roots.begin(), roots.end());
        report.counts.push_back(static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin()));
    }
    const std::size_t n = report.counts.size();
    if (n >= 2) {
        std::size_t a = report.counts[n - 2], b = report.counts[n - 1];
        if (a >= 3 && b >= 3) {
            report.classification = "infinity";
            report.stabilized = b;
        } else if (a == b) {
            report.classification = std::to_string(b);
            report.stabilized = b;
        }
    }
    return report;
}

inline nlohmann::ordered_json ends_json(const MetricSpace& space, const EndsReport& r) {
    nlohmann::ordered_json j;
    j["scale"] = r.scale.str();
    j["basepoint"] = space.label(r.basepoint);
    j["stages"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < r.radii.size(); ++s) j["stages"].push_back({{"radius", r.radii[s].str()}, {"components", r.counts[s]}});
    if (r.stabilized) j["stabilized_count"] = *r.stabilized;
    j["classification"] = r.classification;
    return j;
}

// ---------------------------------------------------------------------------
// Uniform acyclicity

/// True iff H~_k(C(i, N_r(x))) -> H~_k(C(j, N_s(x))) is zero.
template <class Ring>
bool acyclicity_probe(const Ring& ring, const MetricSpace& space, int k, const Dist& i, const Dist& r, PointId x,
                      const Dist& j, const Dist& s, std::size_t simplex_cap = kDefaultSimplexCap) {
    if (k < 0) fail(ErrorKind::Precondition, "degree must be >= 0");
    if (j < i || s < r) fail(ErrorKind::Precondition, "probe needs i <= j and r <= s");
    detail::require_in_sample(space, x, s, "probe");
    auto small = WindowComplex::build_ball(space, x, r, i, k + 1, simplex_cap);
    auto big = WindowComplex::build_ball(space, x, s, j, k + 1, simplex_cap);
    return induced_map(ring, small, big, k, true).is_zero;
}

struct ProbeCell {
    Dist i;
    Dist r;
    std::optional<std::pair<Dist, Dist>> found;  // smallest (j, s) with zero map
    std::string skipped;
};

struct AcyclicityProfile {
    int k = 0;
    PointId center = 0;
    std::vector<ProbeCell> cells;
    /// lambda(i): largest j needed over the probed radii (none if some cell failed).
    std::vector<std::pair<Dist, std::optional<Dist>>> lambda;
};

/// For each (i, r) on the grid, the first (j, s) in (j, s) order with j >= i,
/// s >= r whose induced map vanishes.
template <class Ring>
AcyclicityProfile acyclicity_profile(const Ring& ring, const MetricSpace& space, int k, PointId x,
                                     const std::vector<Dist>& scales, const std::vector<Dist>& radii,
                                     std::size_t simplex_cap = kDefaultSimplexCap) {
    AcyclicityProfile prof;
    prof.k = k;
    prof.center = x;
    for (const auto& i : scales) {
        std::optional<Dist> lam = i;
        bool all_found = true;
        for (const auto& r : radii) {
            ProbeCell cell{i, r, std::nullopt, ""};
            try {
                for (const auto& j : scales) {
                    if (j < i || cell.found) continue;
                    for (const auto& s : radii) {
                        if (s < r) continue;
                        if (acyclicity_probe(ring, space, k, i, r, x, j, s, simplex_cap)) {
                            cell.found = std::pair{j, s};
                            break;
                        }
                    }
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ScheduleExceedsSample && e.kind() != ErrorKind::SizeExceeded) throw;
                cell.skipped = e.what();
            }
            if (cell.found) {
                if (cell.found->first > *lam) lam = cell.found->first;
            } else {
                all_found = false;
            }
            prof.cells.push_back(cell);
        }
        prof.lambda.emplace_back(i, all_found ? lam : std::nullopt);
    }
    return prof;
}

inline nlohmann::ordered_json profile_json(const MetricSpace& space, const AcyclicityProfile& p) {
    nlohmann::ordered_json j;
    j["k"] = p.k;
    j["center"] = space.label(p.center);
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : p.cells) {
        nlohmann::ordered_json e{{"i", c.i.str()}, {"r", c.r.str()}};
        if (c.found) {
            e["j"] = c.found->first.str();
            e["s"] = c.found->second.str();
        } else {
            e["found"] = false;
        }
        if (!c.skipped.empty()) e["skipped"] = c.skipped;
        j["cells"].push_back(e);
    }
    j["lambda"] = nlohmann::ordered_json::array();
    for (const auto& [i, l] : p.lambda) j["lambda"].push_back({{"i", i.str()}, {"lambda", l ? nlohmann::ordered_json(l->str()) : nlohmann::ordered_json(nullptr)}});
    return j;
}

inline std::string profile_csv(const AcyclicityProfile& p) {
    std::string out = "k,i,r,j,s\n";
    for (const auto& c : p.cells)
        out += std::to_string(p.k) + "," + c.i.str() + "," + c.r.str() + "," + (c.found ? c.found->first.str() : "none") + "," +
               (c.found ? c.found->second.str() : "none") + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Filling

class NotFillableError : public Error {
public:
    NotFillableError(const std::string& message, bool rational_solution)
        : Error(ErrorKind::NotFillable, message), rational_(rational_solution) {}
    bool rational_solution_exists() const noexcept { return rational_; }

private:
    bool rational_;
};

template <class Ring>
struct FillResult {
    Chain<Ring> omega;
    PointSet support;
    Dist excess;  // max distance from supp(omega) to supp(sigma)
};

/// omega in big with boundary(omega) = sigma, for a reduced cycle sigma of small.
template <class Ring>
FillResult<Ring> fill_cycle(const Ring& ring, const WindowComplex& small, const Chain<Ring>& sigma, const WindowComplex& big) {
    const int k = sigma.dim;
    if (!small.is_subcomplex_of(big)) fail(ErrorKind::NotASubcomplex, "small window complex is not inside the big one");
    if (k < 0 || k > small.max_dim()) fail(ErrorKind::DimensionMismatch, "cycle dimension outside the small complex");
    to_vector(ring, small, sigma);  // membership check
    if (!boundary(ring, sigma).is_zero()) fail(ErrorKind::Precondition, "sigma is not a cycle");
    if (k == 0 && !ring.is_zero(augment(ring, sigma))) fail(ErrorKind::Precondition, "0-cycle has nonzero augmentation");

    FillResult<Ring> out;
    out.omega = Chain<Ring>(k + 1);
    if (sigma.is_zero()) return out;
    auto rhs = to_vector(ring, big, sigma);
    // a truncated big complex has no (k+1)-chains: only zero bounds
    auto d = k + 1 > big.max_dim() ? SparseMatrix<typename Ring::value_type>(big.count(k), 0) : convert(ring, big.boundary(k + 1));
    auto sol = solve_linear(ring, d, rhs);
    if (!sol.solved()) {
        bool rational = sol.status == SolveStatus::NotIntegral;
        if constexpr (Ring::is_field) rational = false;
        throw NotFillableError("cycle does not bound in the big window (rational solution " +
                                   std::string(rational ? "exists" : "does not exist") + ")",
                               rational);
    }
    out.omega = from_vector<ChainTag>(ring, big, k + 1, sol.x);
    if (!(boundary(ring, out.omega) == sigma)) fail(ErrorKind::Precondition, "filling failed exact re-verification");
    out.support = support(out.omega);
    auto base = support(sigma);
    for (PointId p : out.support) {
        std::optional<Dist> best;
        for (PointId q : base) {
            Dist dd = big.space().dist(p, q);
            if (!best || dd < *best) best = dd;
        }
        if (best && *best > out.excess) out.excess = *best;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chains and paths

/// Path x = x_0, ..., x_n = y along edges of sigma, where boundary(sigma) = [y] - [x].
template <class Ring>
std::vector<PointId> chain_to_path(const Ring& ring, const MetricSpace& space, const Chain<Ring>& sigma, const Dist& scale) {
    if (sigma.dim != 1) fail(ErrorKind::DimensionMismatch, "chain_to_path needs a 1-chain");
    auto b = boundary(ring, sigma);
    std::optional<PointId> x, y;
    for (const auto& [v, c] : b.terms) {
        if (c == ring.one() && !y)
            y = v.front();
        else if (c == ring.neg(ring.one()) && !x)
            x = v.front();
        else
            fail(ErrorKind::Precondition, "boundary is not of the form [y] - [x]");
    }
    if (!x || !y) fail(ErrorKind::Precondition, "boundary is not of the form [y] - [x]");
    std::map<PointId, std::vector<PointId>> adj;
    for (const auto& [v, c] : sigma.terms) {
        adj[v[0]].push_back(v[1]);
        adj[v[1]].push_back(v[0]);
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
    std::map<PointId, PointId> parent{{*x, *x}};
    std::deque<PointId> queue{*x};
    while (!queue.empty() && !parent.count(*y)) {
        PointId u = queue.front();
        queue.pop_front();
        for (PointId w : adj[u])
            if (parent.emplace(w, u).second) queue.push_back(w);
    }
    if (!parent.count(*y)) fail(ErrorKind::NoPathInSupport, "no path from x to y along the chain's edges");
    std::vector<PointId> path{*y};
    while (path.back() != *x) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    for (std::size_t a = 1; a < path.size(); ++a)
        if (!space.within(path[a - 1], path[a], scale)) fail(ErrorKind::EdgeOutOfScale, "chain edge exceeds the scale");
    return path;
}

/// sum of +-[x_{a-1}, x_a] oriented by vertex order.
template <class Ring>
Chain<Ring> path_to_chain(const Ring& ring, const std::vector<PointId>& path, const WindowComplex& cx) {
    Chain<Ring> out(1);
    for (PointId p : path)
        if (!std::binary_search(cx.window().begin(), cx.window().end(), p))
            fail(ErrorKind::UnknownPoint, "path point " + std::to_string(p) + " outside the window");
    for (std::size_t a = 1; a < path.size(); ++a) {
        PointId u = path[a - 1], v = path[a];
        if (u == v) continue;
        if (!cx.space().within(u, v, cx.scale()))
            fail(ErrorKind::EdgeOutOfScale, "step " + cx.space().label(u) + " -> " + cx.space().label(v) + " exceeds scale " + cx.scale().str());
        if (u < v)
            out.add_term(ring, {u, v}, ring.one());
        else
            out.add_term(ring, {v, u}, ring.neg(ring.one()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bottleneck property

struct PairVerdict {
    PointId x = 0;
    PointId y = 0;
    std::optional<int> min_delta;  // least passing delta, none if fails throughout
};

struct BottleneckReport {
    int delta_max = 0;
    std::size_t pairs_tested = 0;
    std::vector<std::size_t> failing_per_delta;
    std::optional<int> passes_at;
    std::optional<std::pair<PointId, PointId>> witness;
    std::optional<PointId> witness_midpoint;
    std::vector<PointId> witness_path;  // avoids B_{delta_max}(midpoint)
    std::vector<PairVerdict> failing_pairs;  // at delta_max, first 50
};

struct BottleneckOptions {
    std::optional<std::size_t> sample_pairs;  // all pairs when empty
    std::uint64_t seed = 0;
};

inline BottleneckReport bottleneck_check(const MetricSpace& space, int delta_max, const BottleneckOptions& opts = {}) {
    if (!space.is_graph_metric()) fail(ErrorKind::NotAGraphMetric, "bottleneck test needs a graph metric (generated family or edge list)");
    if (delta_max < 0) fail(ErrorKind::Precondition, "delta_max must be >= 0");
    const auto& adj = *space.graph();
    const std::size_t n = space.size();
    if (static_cast<double>(n) * static_cast<double>(n) * (delta_max + 1) > 4e8)
        fail(ErrorKind::SizeExceeded, "bottleneck cache for " + std::to_string(n) + " points exceeds the memory cap");
    auto d = [&](PointId a, PointId b) { return space.dist(a, b).num(); };

    // comp[m][delta][v]: component of v in G minus B_delta(m), -1 inside the ball
    std::vector<std::vector<std::vector<int>>> comp(n);
    auto components = [&](PointId m) -> const std::vector<std::vector<int>>& {
        auto& c = comp[m];
        if (!c.empty()) return c;
        c.assign(static_cast<std::size_t>(delta_max) + 1, std::vector<int>(n, -2));
        for (int delta = 0; delta <= delta_max; ++delta) {
            auto& lab = c[static_cast<std::size_t>(delta)];
            for (PointId v = 0; v < n; ++v)
                if (d(m, v) <= delta) lab[v] = -1;
            int next = 0;
            for (PointId s = 0; s < n; ++s) {
                if (lab[s] != -2) continue;
                lab[s] = next;
                std::deque<PointId> queue{s};
                while (!queue.empty()) {
                    PointId u = queue.front();
                    queue.pop_front();
                    for (PointId w : adj[u])
                        if (lab[w] == -2) {
                            lab[w] = next;
                            queue.push_back(w);
                        }
                }
                ++next;
            }
        }
        return c;
    };

    std::vector<std::pair<PointId, PointId>> pairs;
    if (opts.sample_pairs) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
        // distinct pairs, as many as asked for (all of them if fewer exist)
        const std::size_t want = std::min<std::size_t>(*opts.sample_pairs, n * (n - 1) / 2);
        std::set<std::pair<PointId, PointId>> drawn;
        while (drawn.size() < want) {
            PointId a = pick(rng), b = pick(rng);
            if (a != b) drawn.emplace(std::min(a, b), std::max(a, b));
        }
        pairs.assign(drawn.begin(), drawn.end());
    } else {
        for (PointId a = 0; a < n; ++a)
            for (PointId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }

    BottleneckReport report;
    report.delta_max = delta_max;
    report.pairs_tested = pairs.size();
    report.failing_per_delta.assign(static_cast<std::size_t>(delta_max) + 1, 0);
    std::optional<std::int64_t> witness_dist;
    for (const auto& [x, y] : pairs) {
        const std::int64_t dxy = d(x, y);
        std::vector<PointId> mids;
        for (PointId m = 0; m < n; ++m)
            if (std::abs(2 * d(x, m) - dxy) <= 1 && std::abs(2 * d(y, m) - dxy) <= 1) mids.push_back(m);
        PairVerdict pv{x, y, std::nullopt};
        for (int delta = 0; delta <= delta_max; ++delta) {
            bool pass = false;
            for (PointId m : mids) {
                const auto& lab = components(m)[static_cast<std::size_t>(delta)];
                if (lab[x] < 0 || lab[y] < 0 || lab[x] != lab[y]) {
                    pass = true;
                    break;
                }
            }
            if (pass && !pv.min_delta) pv.min_delta = delta;
            if (!pass && pv.min_delta) fail(ErrorKind::Precondition, "bottleneck pass is not monotone in delta");
            if (!pass) ++report.failing_per_delta[static_cast<std::size_t>(delta)];
        }
        if (!pv.min_delta) {
            if (report.failing_pairs.size() < 50) report.failing_pairs.push_back(pv);
            if (!witness_dist || dxy > *witness_dist) {
                witness_dist = dxy;
                report.witness = std::pair{x, y};
                report.witness_midpoint = mids.empty() ? std::nullopt : std::optional<PointId>(mids.front());
            }
        }
    }
    for (int delta = 0; delta <= delta_max; ++delta)
        if (report.failing_per_delta[static_cast<std::size_t>(delta)] == 0) {
            report.passes_at = delta;
            break;
        }
    if (report.witness && report.witness_midpoint) {
        auto [x, y] = *report.witness;
        const auto& lab = components(*report.witness_midpoint)[static_cast<std::size_t>(delta_max)];
        std::vector<std::optional<PointId>> parent(n);
        parent[x] = x;
        std::deque<PointId> queue{x};
        while (!queue.empty() && !parent[y]) {
            PointId u = queue.front();
            queue.pop_front();
            for (PointId w : adj[u])
                if (lab[w] >= 0 && !parent[w]) {
                    parent[w] = u;
                    queue.push_back(w);
                }
        }
        if (parent[y]) {
            for (PointId v = y; v != x; v = *parent[v]) report.witness_path.push_back(v);
            report.witness_path.push_back(x);
            std::reverse(report.witness_path.begin(), report.witness_path.end());
        }
    }
    return report;
}

inline nlohmann::ordered_json bottleneck_json(const MetricSpace& space, const BottleneckReport& r) {
    nlohmann::ordered_json j;
    j["delta_max"] = r.delta_max;
    j["pairs_tested"] = r.pairs_tested;
    j["failing_pairs_per_delta"] = r.failing_per_delta;
    j["verdict"] = r.passes_at ? "passes" : "fails";
    if (r.passes_at) j["passes_at"] = *r.passes_at;
    if (r.witness) {
        j["witness"] = {space.label(r.witness->first), space.label(r.witness->second)};
        if (r.witness_midpoint) j["witness_midpoint"] = space.label(*r.witness_midpoint);
        nlohmann::ordered_json path = nlohmann::ordered_json::array();
        for (PointId p : r.witness_path) path.push_back(space.label(p));
        j["witness_avoiding_path"] = path;
    }
    nlohmann::ordered_json failing = nlohmann::ordered_json::array();
    for (const auto& pv : r.failing_pairs) failing.push_back({space.label(pv.x), space.label(pv.y)});
    j["failing_pairs"] = failing;
    return j;
}

// ---------------------------------------------------------------------------
// ccd estimate

template <class Ring>
struct CcdReport {
    std::vector<StabilizationReport<Ring>> scans;
    std::optional<int> estimate;  // none when no degree carries a nonzero group
};

/// Largest k whose compact cohomology is stably nonzero or persistently
/// nonzero (classes surviving every extension in the tail).
template <class Ring>
CcdReport<Ring> ccd_estimate(const Ring& ring, const MetricSpace& space, const std::vector<StageSpec>& schedule, int k_max,
                             const ScanOptions& opts = {}) {
    if (k_max < 0) fail(ErrorKind::Precondition, "k_max must be >= 0");
    CcdReport<Ring> report;
    for (int k = 0; k <= k_max; ++k) {
        auto scan = stabilization_scan(space, k, ring, schedule, opts);
        bool stably = scan.verdict == Verdict::Stable && !scan.stabilized->is_zero();
        if (stably || scan.persistently_nonzero) report.estimate = k;
        report.scans.push_back(std::move(scan));
    }
    return report;
}

template <class Ring>
nlohmann::ordered_json ccd_json(const Ring& ring, const CcdReport<Ring>& r) {
    nlohmann::ordered_json j;
    j["degrees"] = nlohmann::ordered_json::array();
    for (const auto& s : r.scans) {
        nlohmann::ordered_json e;
        e["k"] = s.k;
        e["verdict"] = to_string(s.verdict);
        if (s.stabilized) e["stabilized"] = group_json(ring, *s.stabilized);
        e["persistently_nonzero"] = s.persistently_nonzero;
        nlohmann::ordered_json ranks = nlohmann::ordered_json::array();
        for (const auto& st : s.stages) ranks.push_back(st.group ? nlohmann::ordered_json(st.group->free_rank) : nlohmann::ordered_json(nullptr));
        e["stage_ranks"] = ranks;
        j["degrees"].push_back(e);
    }
    j["estimate"] = r.estimate ? nlohmann::ordered_json(*r.estimate) : nlohmann::ordered_json(nullptr);
    j["assumptions"] = {"coarse finite type", "coarse homogeneity",
                        "finite schedule stands in for the limit over all windows"};
    return j;
}

// ---------------------------------------------------------------------------
// PD_n probe

template <class Ring>
struct PdReport {
    int n = 0;
    std::vector<StabilizationReport<Ring>> scans;
    bool lower_vanish = false;
    bool top_rank_one = false;
    std::string candidate;  // "oriented top simplices", "relative homology generator", or empty
    std::optional<typename Ring::value_type> pairing;
    bool consistent = false;
    std::string failed;  // which condition failed
};

namespace detail {

/// Sum of all n-simplices with signs making interior faces cancel; every
/// unmatched face must lie in the collar. None when orientation fails.
template <class Ring>
std::optional<Chain<Ring>> oriented_top_chain(const Ring& ring, const CochainWindow<Ring>& ccx, int n) {
    const WindowComplex& cx = ccx.complex();
    const auto& top = cx.simplices(n);
    if (top.empty() || n < 1) return std::nullopt;
    std::map<Vertices, std::vector<std::pair<std::size_t, int>>> faces;
    for (std::size_t t = 0; t < top.size(); ++t)
        for (std::size_t a = 0; a < top[t].vertices.size(); ++a)
            faces[remove_vertex(top[t].vertices, a)].emplace_back(t, a % 2 == 0 ? 1 : -1);
    std::vector<std::vector<std::pair<std::size_t, int>>> links(top.size());  // neighbour, required sign ratio
    for (const auto& [f, inc] : faces) {
        if (inc.size() > 2) return std::nullopt;
        if (inc.size() == 1) {
            auto idx = cx.index_of(f);
            if (idx && ccx.slot(n - 1, *idx)) return std::nullopt;  // free face outside the collar
            continue;
        }
        // s_a * c_a + s_b * c_b = 0  =>  s_b = -s_a * c_a / c_b
        int ratio = -inc[0].second * inc[1].second;
        links[inc[0].first].emplace_back(inc[1].first, ratio);
        links[inc[1].first].emplace_back(inc[0].first, ratio);
    }
    std::vector<int> sign(top.size(), 0);
    for (std::size_t start = 0; start < top.size(); ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (auto [w, ratio] : links[u]) {
                int want = sign[u] * ratio;
                if (!sign[w]) {
                    sign[w] = want;
                    queue.push_back(w);
                } else if (sign[w] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    Chain<Ring> tau(n);
    for (std::size_t t = 0; t < top.size(); ++t) tau.add_term(ring, top[t].vertices, embed(ring, sign[t]));
    return tau;
}

/// Generator of H_n of the window relative to its collar, when that group is R.
template <class Ring>
std::optional<Chain<Ring>> relative_generator(const Ring& ring, const CochainWindow<Ring>& ccx, int n) {
    const WindowComplex& cx = ccx.complex();
    auto restrict = [&](int k) {
        // boundary d_k restricted to simplices outside the collar
        if (k > cx.max_dim()) return SparseMatrix<typename Ring::value_type>(ccx.masked_count(k - 1), 0);
        return submatrix(convert(ring, cx.boundary(k)), k >= 1 ? ccx.masked(k - 1) : std::vector<std::size_t>{}, ccx.masked(k));
    };
    HomologyPresentation<Ring> h(ring, restrict(n + 1), restrict(n), true);
    if (h.group().free_rank != 1 || !h.group().torsion.empty()) return std::nullopt;
    const auto& gen = h.group().generators->back();
    Chain<Ring> tau(n);
    for (std::size_t s = 0; s < gen.size(); ++s) tau.add_term(ring, cx.simplices(n)[ccx.masked(n)[s]].vertices, gen[s]);
    return tau;
}

}  // namespace detail

/// Consistent with coarse PD_n when H^k_c is stably 0 below n, stably R at n,
/// and the top cocycle generator pairs to a unit with the fundamental candidate.
template <class Ring>
PdReport<Ring> pd_probe(const Ring& ring, const MetricSpace& space, int n, const std::vector<StageSpec>& schedule,
                        const ScanOptions& opts = {}) {
    if (n < 1) fail(ErrorKind::Precondition, "pd_probe needs n >= 1");
    PdReport<Ring> report;
    report.n = n;
    for (int k = 0; k <= n; ++k) report.scans.push_back(stabilization_scan(space, k, ring, schedule, opts));
    report.lower_vanish = true;
    for (int k = 0; k < n; ++k) {
        const auto& s = report.scans[static_cast<std::size_t>(k)];
        if (s.verdict != Verdict::Stable || !s.stabilized->is_zero()) {
            report.lower_vanish = false;
            if (report.failed.empty()) report.failed = "H^" + std::to_string(k) + "_c is not stably zero";
        }
    }
    const auto& top = report.scans.back();
    report.top_rank_one = top.verdict == Verdict::Stable && top.stabilized->free_rank == 1 && top.stabilized->torsion.empty();
    if (!report.top_rank_one && report.failed.empty())
        report.failed = "H^" + std::to_string(n) + "_c is not stably free of rank 1 (verdict " + to_string(top.verdict) + ")";
    if (!report.failed.empty()) return report;

    const auto& last = schedule.back();
    const Dist collar = last.collar ? *last.collar : default_collar(last.scale, n + 1);
    auto cx = WindowComplex::build_ball(space, space.basepoint(), last.radius, last.scale, n + 1, opts.simplex_cap);
    CochainWindow<Ring> ccx(cx, ring, collar);
    auto pres = ccx.presentation(n, true);
    auto alpha = ccx.to_cochain(n, pres.group().generators->back());

    std::optional<Chain<Ring>> tau = detail::oriented_top_chain(ring, ccx, n);
    report.candidate = "oriented top simplices";
    if (!tau) {
        tau = detail::relative_generator(ring, ccx, n);
        report.candidate = "relative homology generator";
    }
    if (!tau)
        fail(ErrorKind::NoFundamentalCandidate, "no consistently oriented top chain and H_" + std::to_string(n) +
                                                    " of the window relative to its collar is not free of rank 1");
    report.pairing = pair(ring, *tau, alpha);
    report.consistent = ring.is_unit(*report.pairing);
    if (!report.consistent) report.failed = "fundamental pairing " + ring.to_string(*report.pairing) + " is not a unit";
    return report;
}

template <class Ring>
nlohmann::ordered_json pd_json(const Ring& ring, const PdReport<Ring>& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["degrees"] = nlohmann::ordered_json::array();
    for (const auto& s : r.scans) {
        nlohmann::ordered_json e{{"k", s.k}, {"verdict", to_string(s.verdict)}};
        if (s.stabilized) e["stabilized"] = group_json(ring, *s.stabilized);
        j["degrees"].push_back(e);
    }
    j["lower_degrees_vanish"] = r.lower_vanish;
    j["top_degree_rank_one"] = r.top_rank_one;
    if (!r.candidate.empty()) j["fundamental_candidate"] = r.candidate;
    if (r.pairing) j["pairing"] = value_json(ring, *r.pairing);
    j["verdict"] = r.consistent ? "consistent with coarse PD_" + std::to_string(r.n) + " over " + ring.name()
                                : std::string("not consistent");
    if (!r.failed.empty()) j["failed_condition"] = r.failed;
    j["note"] = "pairing evaluated on the last window of the schedule; not certified for the infinite space";
    return j;
}

}  // namespace coarse
