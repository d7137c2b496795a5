#pragma once

// Cochain complexes with coboundary d_k = (-1)^{k+1} (boundary_{k+1})^T,
// collar-vanishing cochains as a finite model of compact support, and
// stabilization across nested windows.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <future>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/chain_complex.hpp"
#include "coarse/homology.hpp"
#include "coarse/window_homology.hpp"

namespace coarse {

/// Transpose of d_{k+1} times (-1)^{k+1}; rows C^{k+1}, cols C^k.
template <class Ring>
SparseMatrix<typename Ring::value_type> coboundary_matrix(const Ring& ring, const IntMatrix& boundary_next, int k) {
    auto t = convert(ring, boundary_next.transpose());
    return k % 2 == 0 ? scaled(ring, t, ring.neg(ring.one())) : t;
}

/// Collar default: i * (max_dim + 2).
inline Dist default_collar(const Dist& scale, int max_dim) { return static_cast<std::int64_t>(max_dim + 2) * scale; }

template <class Ring>
class CochainWindow {
public:
    using V = typename Ring::value_type;

    /// Relative cochains of (window, collar): a cochain is compactly supported
    /// when it vanishes on every simplex lying entirely in the collar
    /// {y : d(center, y) > radius - collar}.
    CochainWindow(const WindowComplex& cx, const Ring& ring, const Dist& collar) : cx_(&cx), ring_(ring), collar_(collar) {
        if (!cx.center() || !cx.radius())
            fail(ErrorKind::Precondition, "compact supports need a ball window (center and radius)");
        if (collar < Dist(0)) fail(ErrorKind::Precondition, "collar must be non-negative");
        if (collar >= *cx.radius())
            fail(ErrorKind::CollarTooWide, "collar " + collar.str() + " must be smaller than the window radius " + cx.radius()->str());
        inner_ = *cx.radius() - collar;
        const MetricSpace& space = cx.space();
        const PointId c = *cx.center();
        slot_.resize(static_cast<std::size_t>(cx.max_dim()) + 1);
        masked_.resize(slot_.size());
        for (int k = 0; k <= cx.max_dim(); ++k) {
            const auto& level = cx.simplices(k);
            auto& slots = slot_[static_cast<std::size_t>(k)];
            slots.assign(level.size(), kNone);
            for (std::size_t j = 0; j < level.size(); ++j) {
                bool inner = std::any_of(level[j].vertices.begin(), level[j].vertices.end(),
                                         [&](PointId v) { return space.within(c, v, inner_); });
                if (inner) {
                    slots[j] = masked_[static_cast<std::size_t>(k)].size();
                    masked_[static_cast<std::size_t>(k)].push_back(j);
                }
            }
        }
    }

    const WindowComplex& complex() const { return *cx_; }
    const Ring& ring() const { return ring_; }
    const Dist& collar() const { return collar_; }
    const Dist& inner_radius() const { return inner_; }
    int max_dim() const { return cx_->max_dim(); }

    /// Indices (into cx.simplices(k)) of the compactly supported basis.
    const std::vector<std::size_t>& masked(int k) const { return masked_.at(static_cast<std::size_t>(k)); }
    std::size_t masked_count(int k) const { return k < 0 || k > max_dim() ? 0 : masked(k).size(); }
    std::optional<std::size_t> slot(int k, std::size_t simplex_index) const {
        auto s = slot_.at(static_cast<std::size_t>(k)).at(simplex_index);
        return s == kNone ? std::nullopt : std::optional<std::size_t>(s);
    }

    /// Full coboundary C^k -> C^{k+1} (zero map out of the top dimension).
    SparseMatrix<V> coboundary(int k) const {
        if (k < 0 || k > max_dim()) fail(ErrorKind::DimensionMismatch, "no cochains in dimension " + std::to_string(k));
        if (k == max_dim()) return SparseMatrix<V>(0, cx_->count(k));
        return coboundary_matrix(ring_, cx_->boundary(k + 1), k);
    }

    /// Coboundary restricted to the compactly supported basis.
    SparseMatrix<V> compact_coboundary(int k) const {
        if (k < 0) return SparseMatrix<V>(masked_count(0), 0);
        if (k >= max_dim()) return SparseMatrix<V>(0, masked_count(k));
        return submatrix(coboundary(k), masked(k + 1), masked(k));
    }

    HomologyPresentation<Ring> presentation(int k, bool with_generators = true) const {
        if (k < 0 || k + 1 > max_dim())
            fail(ErrorKind::DimensionMismatch, "compact cohomology in degree " + std::to_string(k) +
                                                   " needs cochains up to degree " + std::to_string(k + 1) +
                                                   " (max_dim is " + std::to_string(max_dim()) + ")");
        return HomologyPresentation<Ring>(ring_, compact_coboundary(k - 1), compact_coboundary(k), with_generators);
    }

    /// Vector on the compactly supported k-basis as a cochain.
    Cochain<Ring> to_cochain(int k, const std::vector<V>& coords) const {
        if (coords.size() != masked_count(k)) fail(ErrorKind::DimensionMismatch, "coordinate vector does not match the mask");
        Cochain<Ring> out(k);
        for (std::size_t s = 0; s < coords.size(); ++s) out.add_term(ring_, cx_->simplices(k)[masked(k)[s]].vertices, coords[s]);
        return out;
    }

    /// Compactly supported coordinates of a cochain; it must vanish on the collar.
    std::vector<V> to_coordinates(const Cochain<Ring>& alpha) const {
        std::vector<V> coords(masked_count(alpha.dim), ring_.zero());
        for (const auto& [s, v] : alpha.terms) {
            auto idx = cx_->index_of(s);
            if (!idx) fail(ErrorKind::DimensionMismatch, "simplex " + to_string(s) + " is not in the complex");
            auto sl = slot(alpha.dim, *idx);
            if (!sl) fail(ErrorKind::DimensionMismatch, "cochain does not vanish on the collar at " + to_string(s));
            coords[*sl] = v;
        }
        return coords;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    const WindowComplex* cx_;
    Ring ring_;
    Dist collar_;
    Dist inner_;
    std::vector<std::vector<std::size_t>> masked_;
    std::vector<std::vector<std::size_t>> slot_;
};

template <class Ring>
CochainWindow<Ring> build_cochain_window(const WindowComplex& cx, const Ring& ring, const Dist& collar) {
    return CochainWindow<Ring>(cx, ring, collar);
}

template <class Ring>
HomologyGroup<Ring> compact_cohomology(const CochainWindow<Ring>& ccx, int k) {
    return ccx.presentation(k, false).group();
}

/// Kronecker pairing sum_s tau(s) * alpha(s).
template <class Ring>
typename Ring::value_type pair(const Ring& ring, const Chain<Ring>& tau, const Cochain<Ring>& alpha) {
    if (tau.dim != alpha.dim && !tau.is_zero() && !alpha.is_zero())
        fail(ErrorKind::DimensionMismatch, "pairing a " + std::to_string(tau.dim) + "-chain with a " + std::to_string(alpha.dim) + "-cochain");
    auto sum = ring.zero();
    for (const auto& [s, v] : tau.terms) {
        auto it = alpha.terms.find(s);
        if (it != alpha.terms.end()) sum = ring.add(sum, ring.mul(v, it->second));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Stabilization

struct StageSpec {
    Dist scale;
    Dist radius;
    std::optional<Dist> collar;  // default: scale * (max_dim + 2)
};

template <class Ring>
struct StageResult {
    StageSpec spec;
    Dist collar;
    std::optional<HomologyGroup<Ring>> group;
    std::vector<std::size_t> masked_counts;
    std::size_t simplices = 0;
    std::string skipped;  // reason when group is empty
};

template <class Ring>
struct ConnectingMap {
    std::size_t from = 0;  // stage index; maps stage `from` to `from + 1`
    bool defined = false;
    std::string reason;  // why undefined
    std::optional<ImageSummary<Ring>> image;
    bool isomorphism = false;
    bool nonzero = false;
};

enum class Verdict { Stable, Unstable, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

template <class Ring>
struct StabilizationReport {
    int k = 0;
    std::string ring;
    PointId center = 0;
    std::vector<StageResult<Ring>> stages;
    std::vector<ConnectingMap<Ring>> maps;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::size_t> stable_from;
    std::optional<HomologyGroup<Ring>> stabilized;
    /// The last two connecting maps exist and have nonzero image: the classes
    /// survive every extension in the tail even if the groups keep growing.
    bool persistently_nonzero = false;
};

struct ScanOptions {
    std::size_t simplex_cap = kDefaultSimplexCap;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool parallel = true;
};

namespace detail {

template <class Ring>
struct StageWork {
    std::shared_ptr<const WindowComplex> cx;  // heap-held: the cochain window points into it
    std::optional<CochainWindow<Ring>> ccx;
    std::optional<HomologyPresentation<Ring>> pres;
    StageResult<Ring> result;
};

template <class Ring>
StageWork<Ring> run_stage(const MetricSpace& space, PointId center, int k, const Ring& ring, const StageSpec& spec,
                          const ScanOptions& opts) {
    StageWork<Ring> w;
    w.result.spec = spec;
    const int max_dim = k + 1;
    w.result.collar = spec.collar ? *spec.collar : default_collar(spec.scale, max_dim);
    if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
        w.result.skipped = "time budget exhausted";
        return w;
    }
    try {
        w.cx = std::make_shared<const WindowComplex>(
            WindowComplex::build_ball(space, center, spec.radius, spec.scale, max_dim, opts.simplex_cap));
        w.result.simplices = w.cx->total_simplices();
        w.ccx.emplace(*w.cx, ring, w.result.collar);
        for (int d = 0; d <= max_dim; ++d) w.result.masked_counts.push_back(w.ccx->masked_count(d));
        w.pres.emplace(w.ccx->presentation(k, true));
        w.result.group = w.pres->group();
        w.result.group->generators.reset();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SizeExceeded && e.kind() != ErrorKind::CollarTooWide) throw;
        w.result.skipped = e.what();
        w.pres.reset();
        w.ccx.reset();
        w.cx.reset();
    }
    return w;
}

/// Extension by zero from stage a to stage b is a cochain map when both have
/// the same scale i, collar_a >= i (so new simplices only meet a's collar)
/// and the inner radius does not shrink.
template <class Ring>
ConnectingMap<Ring> connect(const Ring& ring, std::size_t index, StageWork<Ring>& a, StageWork<Ring>& b, int k) {
    ConnectingMap<Ring> m;
    m.from = index;
    if (!a.result.group || !b.result.group) {
        m.reason = "stage skipped";
        return m;
    }
    const bool both_zero = a.result.group->is_zero() && b.result.group->is_zero();
    if (both_zero) {
        // the zero map between zero groups is an isomorphism whatever the window change
        m.defined = true;
        m.isomorphism = true;
        m.image = ImageSummary<Ring>{HomologyGroup<Ring>{}, true, true};
        return m;
    }
    const Dist& i = a.result.spec.scale;
    if (!(b.result.spec.scale == i)) {
        m.reason = "scale changes between stages";
        return m;
    }
    if (a.result.collar < i) {
        m.reason = "collar narrower than the scale";
        return m;
    }
    if (b.ccx->inner_radius() < a.ccx->inner_radius()) {
        m.reason = "inner radius shrinks";
        return m;
    }
    const auto& src = a.ccx->masked(k);
    std::vector<std::tuple<std::size_t, std::size_t, typename Ring::value_type>> trip;
    for (std::size_t s = 0; s < src.size(); ++s) {
        const auto& verts = a.cx->simplices(k)[src[s]].vertices;
        auto idx = b.cx->index_of(verts);
        auto slot = idx ? b.ccx->slot(k, *idx) : std::nullopt;
        if (!slot) fail(ErrorKind::NotASubcomplex, "extension by zero leaves the compact support at " + to_string(verts));
        trip.emplace_back(*slot, s, ring.one());
    }
    auto ext = SparseMatrix<typename Ring::value_type>::from_triplets(ring, b.ccx->masked_count(k), src.size(), trip);
    auto induced = induced_map(ring, *a.pres, *b.pres, ext);
    m.defined = true;
    m.image = image_summary(ring, induced, *a.result.group, *b.result.group);
    m.isomorphism = m.image->injective && m.image->surjective;
    m.nonzero = !m.image->image.is_zero();
    return m;
}

}  // namespace detail

/// Compact cohomology H^k_c over a schedule of growing balls around the
/// basepoint, with extension-by-zero maps between consecutive stages.
/// Stable from stage s when stages s..end (at least 3) have equal groups
/// joined by isomorphisms.
template <class Ring>
StabilizationReport<Ring> stabilization_scan(const MetricSpace& space, int k, const Ring& ring,
                                             const std::vector<StageSpec>& schedule, const ScanOptions& opts = {}) {
    if (schedule.size() < 3)
        fail(ErrorKind::Precondition, "stabilization needs at least 3 stages, got " + std::to_string(schedule.size()));
    if (k < 0) fail(ErrorKind::Precondition, "degree must be >= 0");
    for (std::size_t s = 1; s < schedule.size(); ++s) {
        const auto& p = schedule[s - 1];
        const auto& q = schedule[s];
        if (q.scale < p.scale || q.radius < p.radius || (q.scale == p.scale && q.radius == p.radius))
            fail(ErrorKind::Precondition, "schedule stages must increase in (scale, radius)");
    }
    detail::require_in_sample(space, space.basepoint(), schedule.back().radius, "stage");
    StabilizationReport<Ring> report;
    report.k = k;
    report.ring = ring.name();
    report.center = space.basepoint();

    std::vector<detail::StageWork<Ring>> work(schedule.size());
    if (opts.parallel) {
        std::vector<std::future<detail::StageWork<Ring>>> jobs;
        for (const auto& spec : schedule)
            jobs.push_back(std::async(std::launch::async, [&, spec] {
                return detail::run_stage(space, report.center, k, ring, spec, opts);
            }));
        for (std::size_t s = 0; s < jobs.size(); ++s) work[s] = jobs[s].get();
    } else {
        for (std::size_t s = 0; s < schedule.size(); ++s) work[s] = detail::run_stage(space, report.center, k, ring, schedule[s], opts);
    }
    for (std::size_t s = 0; s + 1 < work.size(); ++s) report.maps.push_back(detail::connect(ring, s, work[s], work[s + 1], k));
    for (auto& w : work) report.stages.push_back(std::move(w.result));

    const std::size_t n = report.stages.size();
    for (std::size_t s = 0; s + 3 <= n; ++s) {
        bool ok = true;
        for (std::size_t t = s; t < n && ok; ++t) ok = report.stages[t].group && *report.stages[t].group == *report.stages[s].group;
        for (std::size_t t = s; t + 1 < n && ok; ++t) ok = report.maps[t].defined && report.maps[t].isomorphism;
        if (ok) {
            report.verdict = Verdict::Stable;
            report.stable_from = s;
            report.stabilized = report.stages[s].group;
            break;
        }
    }
    if (report.verdict != Verdict::Stable) {
        bool tail_measured = true;
        for (std::size_t t = n - 3; t < n; ++t) tail_measured = tail_measured && report.stages[t].group.has_value();
        for (std::size_t t = n - 3; t + 1 < n; ++t) tail_measured = tail_measured && report.maps[t].defined;
        report.verdict = tail_measured ? Verdict::Unstable : Verdict::Inconclusive;
    }
    const auto& last = report.maps.back();
    const auto& prev = report.maps[report.maps.size() - 2];
    report.persistently_nonzero = last.defined && prev.defined && (last.nonzero || (last.isomorphism && !report.stages.back().group->is_zero())) &&
                                  (prev.nonzero || (prev.isomorphism && !report.stages[n - 2].group->is_zero()));
    return report;
}

template <class Ring>
nlohmann::ordered_json report_json(const Ring& ring, const StabilizationReport<Ring>& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["ring"] = r.ring;
    j["center"] = r.center;
    j["stages"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < r.stages.size(); ++s) {
        const auto& st = r.stages[s];
        nlohmann::ordered_json e;
        e["stage"] = s;
        e["scale"] = st.spec.scale.str();
        e["radius"] = st.spec.radius.str();
        e["collar"] = st.collar.str();
        if (st.group) {
            e["group"] = group_json(ring, *st.group);
            e["simplices"] = st.simplices;
            e["compact_basis"] = st.masked_counts;
        } else {
            e["skipped"] = st.skipped;
        }
        j["stages"].push_back(e);
    }
    j["connecting_maps"] = nlohmann::ordered_json::array();
    for (const auto& m : r.maps) {
        nlohmann::ordered_json e;
        e["from"] = m.from;
        e["to"] = m.from + 1;
        e["defined"] = m.defined;
        if (m.defined) {
            e["image"] = group_json(ring, m.image->image);
            e["injective"] = m.image->injective;
            e["surjective"] = m.image->surjective;
        } else {
            e["reason"] = m.reason;
        }
        j["connecting_maps"].push_back(e);
    }
    j["verdict"] = to_string(r.verdict);
    if (r.stable_from) j["stable_from"] = *r.stable_from;
    if (r.stabilized) j["stabilized"] = group_json(ring, *r.stabilized);
    j["persistently_nonzero"] = r.persistently_nonzero;
    j["note"] = "stable at desk scale over the given schedule; no claim about the infinite space";
    return j;
}

template <class Ring>
std::string report_csv(const Ring& ring, const StabilizationReport<Ring>& r) {
    std::ostringstream out;
    out << "stage,scale,radius,collar,k,rank,torsion\n";
    for (std::size_t s = 0; s < r.stages.size(); ++s) {
        const auto& st = r.stages[s];
        out << s << ',' << st.spec.scale.str() << ',' << st.spec.radius.str() << ',' << st.collar.str() << ',' << r.k << ',';
        if (st.group) {
            out << st.group->free_rank << ',';
            for (std::size_t t = 0; t < st.group->torsion.size(); ++t) out << (t ? ";" : "") << ring.to_string(st.group->torsion[t]);
        } else {
            out << "skipped,";
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Universal coefficients

struct UctReport {
    int k = 0;
    std::int64_t p = 2;
    std::size_t lhs = 0;  // dim over F_p of H^k(C (x) F_p)
    std::size_t free_rank = 0;
    std::size_t p_torsion_k = 0;
    std::size_t p_torsion_next = 0;
    std::size_t rhs() const { return free_rank + p_torsion_k + p_torsion_next; }
    bool pass() const { return lhs == rhs(); }
};

namespace detail {

template <class Ring>
SparseMatrix<typename Ring::value_type> dual_coboundary(const Ring& ring, const ChainComplexData& cc, int k) {
    // d^k : C^k -> C^{k+1}, zero outside the stored range
    std::size_t nk = k >= 0 && k <= cc.top_dim() ? cc.ranks[static_cast<std::size_t>(k)] : 0;
    if (k < 0) return SparseMatrix<typename Ring::value_type>(cc.ranks.empty() ? 0 : cc.ranks[0], 0);
    if (k >= cc.top_dim()) return SparseMatrix<typename Ring::value_type>(0, nk);
    return coboundary_matrix(ring, cc.boundary(k + 1), k);
}

template <class Ring>
HomologyGroup<Ring> cohomology_group(const Ring& ring, const ChainComplexData& cc, int k) {
    if (k > cc.top_dim()) return {};
    return HomologyPresentation<Ring>(ring, dual_coboundary(ring, cc, k - 1), dual_coboundary(ring, cc, k), false).group();
}

}  // namespace detail

/// Cohomology of the dual cochain complex Hom(C, R).
template <class Ring>
HomologyGroup<Ring> cohomology(const Ring& ring, const ChainComplexData& cc, int k) {
    if (k < 0 || k > cc.top_dim()) fail(ErrorKind::DimensionMismatch, "no cochain group in degree " + std::to_string(k));
    return detail::cohomology_group(ring, cc, k);
}

/// dim_{F_p} H^k(C ; F_p) = rank H^k + #{p | d in tors H^k} + #{p | d in tors H^{k+1}}.
inline UctReport uct_check(const ChainComplexData& cc, int k, std::int64_t p) {
    if (k < 0 || k > cc.top_dim()) fail(ErrorKind::DimensionMismatch, "no cochain group in degree " + std::to_string(k));
    Integers zz;
    PrimeField fp(p);
    UctReport r;
    r.k = k;
    r.p = p;
    r.lhs = detail::cohomology_group(fp, cc, k).free_rank;
    auto hk = detail::cohomology_group(zz, cc, k);
    auto hk1 = detail::cohomology_group(zz, cc, k + 1);
    r.free_rank = hk.free_rank;
    const BigInt bp(p);
    for (const auto& d : hk.torsion)
        if (zz.divides(bp, d)) ++r.p_torsion_k;
    for (const auto& d : hk1.torsion)
        if (zz.divides(bp, d)) ++r.p_torsion_next;
    return r;
}

inline nlohmann::ordered_json uct_json(const UctReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["p"] = r.p;
    j["dim_Fp_Hk"] = r.lhs;
    j["rank_Hk"] = r.free_rank;
    j["p_torsion_Hk"] = r.p_torsion_k;
    j["p_torsion_Hk1"] = r.p_torsion_next;
    j["rhs"] = r.rhs();
    j["pass"] = r.pass();
    return j;
}

}  // namespace coarse
