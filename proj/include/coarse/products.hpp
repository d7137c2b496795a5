#pragma once

// Alexander-Whitney diagonal, cup and cap products on ordered simplices,
// and randomized exact checks of their chain-level identities.

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coarse/chain_complex.hpp"
#include "coarse/cohomology.hpp"

namespace coarse {

struct DiagonalTerm {
    Vertices front;  // [x_0..x_j]
    Vertices back;   // [x_j..x_k]
    int sign = 1;
};

/// Delta[x_0..x_k] = sum_j [x_0..x_j] (x) [x_j..x_k].
inline std::vector<DiagonalTerm> diagonal(const Vertices& sigma) {
    std::vector<DiagonalTerm> out;
    for (std::size_t j = 0; j < sigma.size(); ++j)
        out.push_back({Vertices(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(j) + 1),
                       Vertices(sigma.begin() + static_cast<std::ptrdiff_t>(j), sigma.end()), 1});
    return out;
}

/// Coboundary (d alpha)(tau) = (-1)^{k+1} alpha(boundary tau), over the
/// (k+1)-simplices of cx.
template <class Ring>
Cochain<Ring> coboundary(const Ring& ring, const WindowComplex& cx, const Cochain<Ring>& alpha) {
    const int k = alpha.dim;
    Cochain<Ring> out(k + 1);
    if (k + 1 > cx.max_dim()) return out;
    const MetricSpace& space = cx.space();
    const auto sign_all = k % 2 == 0 ? ring.neg(ring.one()) : ring.one();
    for (const auto& [s, v] : alpha.terms) {
        for (PointId w : cx.window()) {
            auto pos = std::lower_bound(s.begin(), s.end(), w);
            if (pos != s.end() && *pos == w) continue;
            bool close = std::all_of(s.begin(), s.end(), [&](PointId u) { return space.within(u, w, cx.scale()); });
            if (!close) continue;
            Vertices coface(s.begin(), pos);
            coface.push_back(w);
            coface.insert(coface.end(), pos, s.end());
            // w sits at position a of the coface; the face omitting it carries (-1)^a
            auto a = pos - s.begin();
            auto c = ring.mul(sign_all, v);
            out.add_term(ring, coface, a % 2 == 0 ? c : ring.neg(c));
        }
    }
    return out;
}

/// (alpha cup beta)(sigma) = alpha(front_j sigma) * beta(back_j sigma).
template <class Ring>
Cochain<Ring> cup(const Ring& ring, const WindowComplex& cx, const Cochain<Ring>& alpha, const Cochain<Ring>& beta) {
    const int n = alpha.dim + beta.dim;
    if (n > cx.max_dim())
        fail(ErrorKind::DimensionOverflow, "cup product lands in degree " + std::to_string(n) + " above max_dim " +
                                               std::to_string(cx.max_dim()));
    Cochain<Ring> out(n);
    for (const auto& [f, a] : alpha.terms)
        for (const auto& [b, c] : beta.terms) {
            if (f.back() != b.front()) continue;
            Vertices sigma = f;
            sigma.insert(sigma.end(), b.begin() + 1, b.end());
            if (!std::is_sorted(sigma.begin(), sigma.end()) || std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
                continue;
            if (!cx.contains(sigma)) continue;
            out.add_term(ring, sigma, ring.mul(a, c));
        }
    return out;
}

/// tau cap alpha = sum coeff * alpha(front_j sigma) * back_j sigma; zero when
/// j exceeds the chain dimension (no such front face).
template <class Ring>
Chain<Ring> cap_or_zero(const Ring& ring, const Chain<Ring>& tau, const Cochain<Ring>& alpha) {
    const int j = alpha.dim;
    Chain<Ring> out(tau.dim - j);
    if (j > tau.dim || j < 0) return out;
    for (const auto& [s, v] : tau.terms) {
        Vertices front(s.begin(), s.begin() + j + 1);
        auto it = alpha.terms.find(front);
        if (it == alpha.terms.end()) continue;
        out.add_term(ring, Vertices(s.begin() + j, s.end()), ring.mul(v, it->second));
    }
    return out;
}

template <class Ring>
Chain<Ring> cap(const Ring& ring, const Chain<Ring>& tau, const Cochain<Ring>& alpha) {
    if (alpha.dim > tau.dim)
        fail(ErrorKind::DimensionMismatch, "cap of a " + std::to_string(tau.dim) + "-chain with a " +
                                               std::to_string(alpha.dim) + "-cochain");
    return cap_or_zero(ring, tau, alpha);
}

/// Constant-one 0-cochain on the window (unit of the cup product).
template <class Ring>
Cochain<Ring> unit_cochain(const Ring& ring, const WindowComplex& cx) {
    Cochain<Ring> out(0);
    for (const auto& s : cx.simplices(0)) out.add_term(ring, s.vertices, ring.one());
    return out;
}

// ---------------------------------------------------------------------------
// Identity audit

struct IdentityCounts {
    std::size_t checked = 0;
    std::size_t passed = 0;
    std::optional<std::string> counterexample;
};

struct IdentityReport {
    std::string ring;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    IdentityCounts leibniz;       // d(a cup b) = (-1)^k da cup b + a cup db
    IdentityCounts cap_boundary;  // d(t cap a) = t cap da + (-1)^j dt cap a
    IdentityCounts augmentation;  // e(t cap a) = a(t)
    bool all_pass() const {
        return leibniz.passed == leibniz.checked && cap_boundary.passed == cap_boundary.checked &&
               augmentation.passed == augmentation.checked;
    }
};

namespace detail {

template <class Ring>
typename Ring::value_type random_value(const Ring& ring, std::mt19937_64& rng) {
    std::int64_t v = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
    if (v == 0) v = 1;
    return embed(ring, v);
}

template <class Ring, class Kind>
CellFunction<Ring, Kind> random_function(const Ring& ring, const WindowComplex& cx, int k, std::mt19937_64& rng) {
    CellFunction<Ring, Kind> f(k);
    const auto& level = cx.simplices(k);
    if (level.empty()) return f;
    std::size_t terms = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(level.size(), 6))(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        const auto& s = level[std::uniform_int_distribution<std::size_t>(0, level.size() - 1)(rng)];
        f.add_term(ring, s.vertices, random_value(ring, rng));
    }
    return f;
}

template <class Ring, class Kind>
std::string describe(const Ring& ring, const CellFunction<Ring, Kind>& f) {
    std::string s;
    for (const auto& [v, c] : f.terms) s += (s.empty() ? "" : " + ") + ring.to_string(c) + "*" + to_string(v);
    return s.empty() ? "0" : s;
}

inline void tally(IdentityCounts& c, bool ok, const std::function<std::string()>& explain) {
    ++c.checked;
    if (ok)
        ++c.passed;
    else if (!c.counterexample)
        c.counterexample = explain();
}

}  // namespace detail

/// Random cochains and chains of admissible degrees; every check is an exact
/// equality of sparse functions.
template <class Ring>
IdentityReport verify_identities(const Ring& ring, const WindowComplex& cx, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) fail(ErrorKind::Precondition, "trials must be >= 1");
    IdentityReport report;
    report.ring = ring.name();
    report.trials = trials;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    const int top = cx.max_dim();
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (std::size_t t = 0; t < trials; ++t) {
        // cup / coboundary: j + k + 1 <= top, or j + k <= top when top = 0
        {
            int total = std::max(0, top - 1);
            int j = pick(0, total);
            int k = pick(0, total - j);
            auto a = detail::random_function<Ring, CochainTag>(ring, cx, j, rng);
            auto b = detail::random_function<Ring, CochainTag>(ring, cx, k, rng);
            bool ok = true;
            if (j + k + 1 <= top) {
                auto lhs = coboundary(ring, cx, cup(ring, cx, a, b));
                auto first = cup(ring, cx, coboundary(ring, cx, a), b);
                if (k % 2 == 1) first = times(ring, ring.neg(ring.one()), first);
                auto rhs = plus(ring, first, cup(ring, cx, a, coboundary(ring, cx, b)));
                ok = lhs == rhs;
            }
            detail::tally(report.leibniz, ok, [&] {
                return "alpha=" + detail::describe(ring, a) + " beta=" + detail::describe(ring, b);
            });
        }
        // cap / boundary
        {
            int n = pick(0, top);
            int j = pick(0, n);
            auto tau = detail::random_function<Ring, ChainTag>(ring, cx, n, rng);
            auto a = detail::random_function<Ring, CochainTag>(ring, cx, j, rng);
            auto lhs = boundary(ring, cap_or_zero(ring, tau, a));
            auto second = cap_or_zero(ring, boundary(ring, tau), a);
            if (j % 2 == 1) second = times(ring, ring.neg(ring.one()), second);
            auto rhs = plus(ring, cap_or_zero(ring, tau, coboundary(ring, cx, a)), second);
            detail::tally(report.cap_boundary, lhs == rhs || (lhs.is_zero() && rhs.is_zero()), [&] {
                return "tau=" + detail::describe(ring, tau) + " alpha=" + detail::describe(ring, a);
            });
        }
        // augmentation on cycles and cocycles where they can be produced
        {
            int n = pick(0, top);
            auto tau = n + 1 <= top ? boundary(ring, detail::random_function<Ring, ChainTag>(ring, cx, n + 1, rng))
                                    : detail::random_function<Ring, ChainTag>(ring, cx, n, rng);
            tau.dim = n;
            auto a = n >= 1 ? coboundary(ring, cx, detail::random_function<Ring, CochainTag>(ring, cx, n - 1, rng))
                            : unit_cochain(ring, cx);
            a.dim = n;
            auto capped = cap_or_zero(ring, tau, a);
            capped.dim = 0;
            bool ok = augment(ring, capped) == pair(ring, tau, a);
            detail::tally(report.augmentation, ok, [&] {
                return "tau=" + detail::describe(ring, tau) + " alpha=" + detail::describe(ring, a);
            });
        }
    }
    return report;
}

inline nlohmann::ordered_json identity_json(const IdentityReport& r) {
    auto counts = [](const IdentityCounts& c) {
        nlohmann::ordered_json j;
        j["checked"] = c.checked;
        j["passed"] = c.passed;
        if (c.counterexample) j["counterexample"] = *c.counterexample;
        return j;
    };
    nlohmann::ordered_json j;
    j["ring"] = r.ring;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["coboundary_of_cup"] = counts(r.leibniz);
    j["boundary_of_cap"] = counts(r.cap_boundary);
    j["augmentation_of_cap"] = counts(r.augmentation);
    j["all_pass"] = r.all_pass();
    return j;
}

// ---------------------------------------------------------------------------
// Support bound audit

struct SupportAudit {
    Dist scale;
    std::size_t samples = 0;
    Dist measured;  // smallest Psi with supp(tau cap alpha) in N_Psi(supp tau)
};

namespace detail {

template <class Ring>
void measure_cap(const Ring& ring, const WindowComplex& cx, const Chain<Ring>& tau, const Cochain<Ring>& alpha, SupportAudit& audit) {
    ++audit.samples;
    auto out = cap_or_zero(ring, tau, alpha);
    auto base = support(tau);
    for (PointId p : support(out)) {
        std::optional<Dist> best;
        for (PointId q : base) {
            Dist d = cx.space().dist(p, q);
            if (!best || d < *best) best = d;
        }
        if (best && *best > audit.measured) audit.measured = *best;
    }
}

}  // namespace detail

/// Exhaustive mode caps each simplex by the dual of each of its front faces;
/// otherwise random chains and cochains are drawn.
template <class Ring>
SupportAudit support_bound_audit(const Ring& ring, const WindowComplex& cx, std::size_t trials, std::uint64_t seed,
                                 bool exhaustive = false) {
    if (trials < 1) fail(ErrorKind::Precondition, "trials must be >= 1");
    SupportAudit audit;
    audit.scale = cx.scale();
    if (exhaustive) {
        for (int n = 0; n <= cx.max_dim(); ++n)
            for (const auto& s : cx.simplices(n))
                for (int j = 0; j <= n; ++j)
                    detail::measure_cap(ring, cx, simplex_chain(ring, s.vertices),
                                        dual_cochain(ring, Vertices(s.vertices.begin(), s.vertices.begin() + j + 1)), audit);
        return audit;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        int n = std::uniform_int_distribution<int>(0, cx.max_dim())(rng);
        int j = std::uniform_int_distribution<int>(0, n)(rng);
        auto tau = detail::random_function<Ring, ChainTag>(ring, cx, n, rng);
        auto alpha = detail::random_function<Ring, CochainTag>(ring, cx, j, rng);
        detail::measure_cap(ring, cx, tau, alpha, audit);
    }
    return audit;
}

inline nlohmann::ordered_json support_json(const SupportAudit& a) {
    nlohmann::ordered_json j;
    j["scale"] = a.scale.str();
    j["samples"] = a.samples;
    j["measured_psi"] = a.measured.str();
    return j;
}

}  // namespace coarse
