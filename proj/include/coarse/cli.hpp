#pragma once

// Batch front end: one analysis per invocation, JSON report as the primary
// output, optional CSV table, human summary on stdout.
//
// Exit codes: 0 completed, 2 completed with a negative verdict, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/chain_complex.hpp"
#include "coarse/cohomology.hpp"
#include "coarse/invariants.hpp"
#include "coarse/products.hpp"
#include "coarse/ring.hpp"
#include "coarse/spaces.hpp"
#include "coarse/window_homology.hpp"

namespace coarse::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::string space;
    std::string ring = "Z";
    std::string scale = "1";
    std::string scales;  // comma list; overrides scale for schedules
    std::optional<int> max_dim;
    std::string collar;   // single value applied to every stage
    std::string collars;  // comma list, one per stage
    std::string radii;
    std::string radius;  // window radius (homology, products-audit)
    std::string center;  // point label; default basepoint
    int k = 1;
    int k_max = 2;
    int n = 1;
    int delta_max = 3;
    std::size_t trials = 100;
    std::size_t pairs = 0;  // 0 = all pairs
    std::string primes = "2,3,5";
    bool reduced = false;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::string json_path;
    std::string csv_path;
    std::size_t simplex_cap = kDefaultSimplexCap;
    double time_budget = 0;  // seconds, 0 = unlimited
    bool timing = false;
    std::string corpus_action;
    std::string corpus_family;
};

struct Outcome {
    nlohmann::ordered_json result;
    std::string summary;
    std::string csv;
    int exit_code = 0;
};

namespace detail {

inline std::vector<Dist> parse_list(const std::string& text, const std::string& what) {
    std::vector<Dist> out;
    if (text.empty()) return out;
    for (const auto& part : coarse::detail::split(text, ','))
        try {
            out.push_back(Dist::parse(coarse::detail::trim(part)));
        } catch (const Error&) {
            fail(ErrorKind::ConfigError, "bad value '" + part + "' in --" + what + " (expected integers or p/q, comma separated)");
        }
    return out;
}

inline Dist parse_one(const std::string& text, const std::string& what) {
    auto v = parse_list(text, what);
    if (v.size() != 1) fail(ErrorKind::ConfigError, "--" + what + " takes a single distance");
    return v.front();
}

inline std::vector<StageSpec> schedule(const RunConfig& c) {
    auto radii = parse_list(c.radii, "radii");
    if (radii.empty()) fail(ErrorKind::ConfigError, "this analysis needs --radii r1,r2,r3,...");
    auto scales = parse_list(c.scales.empty() ? c.scale : c.scales, "scales");
    if (scales.size() == 1) scales.assign(radii.size(), scales.front());
    if (scales.size() != radii.size()) fail(ErrorKind::ConfigError, "--scales needs one value per radius");
    std::vector<std::optional<Dist>> collars(radii.size());
    if (!c.collars.empty()) {
        auto list = parse_list(c.collars, "collars");
        if (list.size() != radii.size()) fail(ErrorKind::ConfigError, "--collars needs one value per radius");
        for (std::size_t s = 0; s < list.size(); ++s) collars[s] = list[s];
    } else if (!c.collar.empty()) {
        auto one = parse_one(c.collar, "collar");
        for (auto& v : collars) v = one;
    }
    std::vector<StageSpec> out;
    for (std::size_t s = 0; s < radii.size(); ++s) out.push_back({scales[s], radii[s], collars[s]});
    return out;
}

inline nlohmann::ordered_json schedule_json(const std::vector<StageSpec>& sch) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& s : sch) {
        nlohmann::ordered_json e{{"scale", s.scale.str()}, {"radius", s.radius.str()}};
        e["collar"] = s.collar ? nlohmann::ordered_json(s.collar->str()) : nlohmann::ordered_json("default");
        j.push_back(e);
    }
    return j;
}

inline PointId center_of(const MetricSpace& space, const RunConfig& c) {
    if (c.center.empty()) return space.basepoint();
    auto p = space.find(c.center);
    if (!p) fail(ErrorKind::ConfigError, "unknown point label '" + c.center + "'");
    return *p;
}

inline ScanOptions scan_options(const RunConfig& c) {
    ScanOptions o;
    o.simplex_cap = c.simplex_cap;
    if (c.time_budget > 0)
        o.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(c.time_budget));
    return o;
}

inline bool is_chain_complex_spec(const std::string& space) { return space.rfind("chaincx:", 0) == 0; }

inline ChainComplexData load_chain_complex(const std::string& space) {
    const std::string path = space.substr(8);
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IOFailure, "cannot open chain complex '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        fail(ErrorKind::ParseError, "chain complex '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_chain_complex(doc);
}

inline MetricSpace load(const RunConfig& c) {
    if (c.space.empty()) fail(ErrorKind::ConfigError, "--space is required (see 'corpus list')");
    return load_space(c.space);
}

inline WindowComplex window(const MetricSpace& space, const RunConfig& c, const Dist& scale, int max_dim) {
    if (c.radius.empty()) {
        PointSet all(space.size());
        for (PointId p = 0; p < space.size(); ++p) all[p] = p;
        return WindowComplex::build(space, scale, all, max_dim, c.simplex_cap);
    }
    return WindowComplex::build_ball(space, center_of(space, c), parse_one(c.radius, "radius"), scale, max_dim, c.simplex_cap);
}

// ---------------------------------------------------------------------------

template <class Ring>
Outcome homology_cmd(const Ring& ring, const RunConfig& c) {
    Outcome o;
    std::ostringstream sum;
    if (is_chain_complex_spec(c.space)) {
        auto cc = load_chain_complex(c.space);
        o.result["complex"] = {{"dims", cc.ranks}};
        o.result["groups"] = nlohmann::ordered_json::array();
        for (int k = 0; k <= cc.top_dim(); ++k) {
            auto g = homology(ring, cc, k);
            auto e = group_json(ring, g);
            e["k"] = k;
            o.result["groups"].push_back(e);
            sum << "H_" << k << " = " << group_string(ring, g) << '\n';
        }
        o.summary = sum.str();
        return o;
    }
    auto space = load(c);
    const int max_dim = c.max_dim.value_or(2);
    auto cx = window(space, c, parse_one(c.scale, "scale"), max_dim);
    o.result["complex"] = complex_summary(cx);
    o.result["reduced"] = c.reduced;
    o.result["groups"] = nlohmann::ordered_json::array();
    for (int k = 0; k <= max_dim; ++k) {
        auto g = homology(ring, cx, k, c.reduced);
        auto e = group_json(ring, g);
        e["k"] = k;
        if (k == max_dim) e["truncated"] = true;  // cycles of the top dimension, nothing above
        o.result["groups"].push_back(e);
        sum << (c.reduced ? "H~_" : "H_") << k << " = " << group_string(ring, g) << (k == max_dim ? "  (top of truncation)" : "")
            << '\n';
    }
    o.summary = sum.str();
    return o;
}

template <class Ring>
Outcome scan_cmd(const Ring& ring, const RunConfig& c) {
    auto space = load(c);
    auto sch = schedule(c);
    auto report = stabilization_scan(space, c.k, ring, sch, scan_options(c));
    Outcome o;
    o.result = report_json(ring, report);
    o.csv = report_csv(ring, report);
    std::ostringstream sum;
    sum << "stage  scale  radius  collar  H^" << c.k << "_c\n";
    for (std::size_t s = 0; s < report.stages.size(); ++s) {
        const auto& st = report.stages[s];
        sum << s << "  " << st.spec.scale.str() << "  " << st.spec.radius.str() << "  " << st.collar.str() << "  "
            << (st.group ? group_string(ring, *st.group) : "skipped") << '\n';
    }
    sum << "verdict: " << to_string(report.verdict);
    if (report.stable_from) sum << " from stage " << *report.stable_from << ", group " << group_string(ring, *report.stabilized);
    sum << '\n';
    o.summary = sum.str();
    return o;
}

inline Outcome ends_cmd(const RunConfig& c) {
    auto space = load(c);
    auto radii = parse_list(c.radii, "radii");
    auto report = ends(space, center_of(space, c), parse_one(c.scale, "scale"), radii);
    Outcome o;
    o.result = ends_json(space, report);
    std::ostringstream sum, csv;
    csv << "radius,components\n";
    for (std::size_t s = 0; s < radii.size(); ++s) {
        sum << "r=" << radii[s].str() << ": " << report.counts[s] << " components\n";
        csv << radii[s].str() << ',' << report.counts[s] << '\n';
    }
    sum << "ends: " << report.classification << '\n';
    o.summary = sum.str();
    o.csv = csv.str();
    return o;
}

inline Outcome bottleneck_cmd(const RunConfig& c) {
    auto space = load(c);
    BottleneckOptions opts;
    if (c.pairs > 0) opts.sample_pairs = c.pairs;
    opts.seed = c.seed;
    auto report = bottleneck_check(space, c.delta_max, opts);
    Outcome o;
    o.result = bottleneck_json(space, report);
    std::ostringstream sum, csv;
    csv << "delta,failing_pairs\n";
    for (std::size_t d = 0; d < report.failing_per_delta.size(); ++d) csv << d << ',' << report.failing_per_delta[d] << '\n';
    if (report.passes_at) {
        sum << "bottleneck passes at delta = " << *report.passes_at << " (" << report.pairs_tested << " pairs)\n";
    } else {
        sum << "bottleneck fails for all delta <= " << c.delta_max << "; witness " << space.label(report.witness->first) << " -> "
            << space.label(report.witness->second) << '\n';
        o.exit_code = 2;
    }
    o.summary = sum.str();
    o.csv = csv.str();
    return o;
}

template <class Ring>
Outcome acyclicity_cmd(const Ring& ring, const RunConfig& c) {
    auto space = load(c);
    auto scales = parse_list(c.scales.empty() ? c.scale : c.scales, "scales");
    auto radii = parse_list(c.radii, "radii");
    if (radii.empty()) fail(ErrorKind::ConfigError, "acyclicity needs --radii");
    auto prof = acyclicity_profile(ring, space, c.k, center_of(space, c), scales, radii, c.simplex_cap);
    Outcome o;
    o.result = profile_json(space, prof);
    o.csv = profile_csv(prof);
    std::ostringstream sum;
    for (const auto& cell : prof.cells)
        sum << "(i=" << cell.i.str() << ", r=" << cell.r.str() << ") -> "
            << (cell.found ? "(j=" + cell.found->first.str() + ", s=" + cell.found->second.str() + ")" : std::string("none")) << '\n';
    o.summary = sum.str();
    return o;
}

template <class Ring>
Outcome products_cmd(const Ring& ring, const RunConfig& c) {
    auto space = load(c);
    const int max_dim = c.max_dim.value_or(3);
    auto scales = parse_list(c.scales.empty() ? c.scale : c.scales, "scales");
    Outcome o;
    o.result["audits"] = nlohmann::ordered_json::array();
    std::ostringstream sum, csv;
    csv << "scale,samples,measured_psi\n";
    bool all = true;
    for (const auto& i : scales) {
        auto cx = window(space, c, i, max_dim);
        auto ids = verify_identities(ring, cx, c.trials, c.seed);
        auto sup = support_bound_audit(ring, cx, c.trials, c.seed, c.exhaustive);
        nlohmann::ordered_json e;
        e["complex"] = complex_summary(cx);
        e["identities"] = identity_json(ids);
        e["support"] = support_json(sup);
        o.result["audits"].push_back(e);
        all = all && ids.all_pass();
        sum << "scale " << i.str() << ": identities " << (ids.all_pass() ? "all pass" : "FAIL") << " ("
            << ids.leibniz.checked + ids.cap_boundary.checked + ids.augmentation.checked << " checks), measured psi "
            << sup.measured.str() << '\n';
        csv << i.str() << ',' << sup.samples << ',' << sup.measured.str() << '\n';
    }
    o.result["all_pass"] = all;
    o.exit_code = all ? 0 : 2;
    o.summary = sum.str();
    o.csv = csv.str();
    return o;
}

template <class Ring>
Outcome ccd_cmd(const Ring& ring, const RunConfig& c) {
    auto space = load(c);
    auto report = ccd_estimate(ring, space, schedule(c), c.k_max, scan_options(c));
    Outcome o;
    o.result = ccd_json(ring, report);
    std::ostringstream sum, csv;
    csv << "k,verdict,persistently_nonzero\n";
    for (const auto& s : report.scans) {
        sum << "H^" << s.k << "_c: " << to_string(s.verdict)
            << (s.stabilized ? " (" + group_string(ring, *s.stabilized) + ")" : std::string()) << '\n';
        csv << s.k << ',' << to_string(s.verdict) << ',' << (s.persistently_nonzero ? "true" : "false") << '\n';
    }
    sum << "ccd estimate: " << (report.estimate ? std::to_string(*report.estimate) : std::string("none")) << '\n';
    o.summary = sum.str();
    o.csv = csv.str();
    return o;
}

template <class Ring>
Outcome pd_cmd(const Ring& ring, const RunConfig& c) {
    auto space = load(c);
    auto report = pd_probe(ring, space, c.n, schedule(c), scan_options(c));
    Outcome o;
    o.result = pd_json(ring, report);
    std::ostringstream sum;
    sum << o.result["verdict"].get<std::string>();
    if (report.pairing) sum << ", pairing " << ring.to_string(*report.pairing);
    if (!report.failed.empty()) sum << " (" << report.failed << ")";
    sum << '\n';
    o.summary = sum.str();
    o.exit_code = report.consistent ? 0 : 2;
    return o;
}

inline Outcome uct_cmd(const RunConfig& c) {
    ChainComplexData cc;
    Outcome o;
    if (is_chain_complex_spec(c.space)) {
        cc = load_chain_complex(c.space);
    } else {
        auto space = load(c);
        auto cx = window(space, c, parse_one(c.scale, "scale"), c.max_dim.value_or(2));
        o.result["complex"] = complex_summary(cx);
        cc = ChainComplexData::from_window(cx);
    }
    std::vector<std::int64_t> primes;
    for (const auto& part : coarse::detail::split(c.primes, ',')) primes.push_back(coarse::detail::parse_int(part, "prime"));
    o.result["checks"] = nlohmann::ordered_json::array();
    std::ostringstream sum, csv;
    csv << "k,p,dim_Fp_Hk,rhs,pass\n";
    bool all = true;
    for (auto p : primes) {
        PrimeField validate(p);  // rejects non-primes
        (void)validate;
        for (int k = 0; k <= cc.top_dim(); ++k) {
            auto r = uct_check(cc, k, p);
            o.result["checks"].push_back(uct_json(r));
            all = all && r.pass();
            csv << k << ',' << p << ',' << r.lhs << ',' << r.rhs() << ',' << (r.pass() ? "true" : "false") << '\n';
            sum << "k=" << k << " p=" << p << ": " << r.lhs << " = " << r.free_rank << " + " << r.p_torsion_k << " + "
                << r.p_torsion_next << (r.pass() ? "  ok" : "  FAIL") << '\n';
        }
    }
    o.result["all_pass"] = all;
    o.exit_code = all ? 0 : 2;
    o.summary = sum.str();
    o.csv = csv.str();
    return o;
}

inline Outcome corpus_cmd(const RunConfig& c) {
    Outcome o;
    std::ostringstream sum;
    if (c.corpus_action == "list") {
        o.result["families"] = nlohmann::ordered_json::array();
        for (const auto& f : space_families()) {
            o.result["families"].push_back({{"name", f.name}, {"syntax", f.syntax}});
            sum << f.syntax << '\n';
        }
    } else if (c.corpus_action == "describe") {
        const auto& f = describe_family(c.corpus_family);
        o.result = {{"name", f.name}, {"syntax", f.syntax}, {"doc", f.doc}};
        sum << f.syntax << "\n  " << f.doc << '\n';
    } else {
        fail(ErrorKind::ConfigError, "corpus takes 'list' or 'describe <family>'");
    }
    o.summary = sum.str();
    return o;
}

inline Outcome dispatch(const RunConfig& c) {
    const auto& cmd = c.command;
    if (cmd == "corpus") return corpus_cmd(c);
    if (cmd == "ends") return ends_cmd(c);
    if (cmd == "bottleneck") return bottleneck_cmd(c);
    if (cmd == "uct") return uct_cmd(c);
    AnyRing ring = parse_ring(c.ring);
    return std::visit(
        [&](const auto& r) -> Outcome {
            if (cmd == "homology") return homology_cmd(r, c);
            if (cmd == "cohomology-scan") return scan_cmd(r, c);
            if (cmd == "acyclicity") return acyclicity_cmd(r, c);
            if (cmd == "products-audit") return products_cmd(r, c);
            if (cmd == "ccd") return ccd_cmd(r, c);
            if (cmd == "pd-probe") return pd_cmd(r, c);
            fail(ErrorKind::ConfigError, "unknown command '" + cmd + "'");
        },
        ring);
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = c.command;
    if (c.command == "corpus") {
        j["action"] = c.corpus_action;
        if (!c.corpus_family.empty()) j["family"] = c.corpus_family;
        return j;
    }
    j["space"] = c.space;
    j["ring"] = c.ring;
    j["scale"] = c.scales.empty() ? c.scale : c.scales;
    if (c.max_dim) j["max_dim"] = *c.max_dim;
    if (!c.collar.empty()) j["collar"] = c.collar;
    if (!c.collars.empty()) j["collars"] = c.collars;
    if (!c.radii.empty()) j["radii"] = c.radii;
    if (!c.radius.empty()) j["radius"] = c.radius;
    if (!c.center.empty()) j["center"] = c.center;
    if (c.command == "cohomology-scan" || c.command == "acyclicity") j["k"] = c.k;
    if (c.command == "ccd") j["k_max"] = c.k_max;
    if (c.command == "pd-probe") j["n"] = c.n;
    if (c.command == "bottleneck") {
        j["delta_max"] = c.delta_max;
        j["pairs"] = c.pairs == 0 ? nlohmann::ordered_json("all") : nlohmann::ordered_json(c.pairs);
    }
    if (c.command == "products-audit") {
        j["trials"] = c.trials;
        j["exhaustive"] = c.exhaustive;
    }
    if (c.command == "homology") j["reduced"] = c.reduced;
    if (c.command == "uct") j["primes"] = c.primes;
    j["seed"] = c.seed;
    j["simplex_cap"] = c.simplex_cap;
    j["time_budget_seconds"] = c.time_budget;
    return j;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IOFailure, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::IOFailure, "write to '" + path + "' failed");
}

}  // namespace detail

/// Runs one analysis; returns the process exit code.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome o = detail::dispatch(c);
        nlohmann::ordered_json doc;
        doc["tool"] = "coarsetk";
        doc["version"] = kVersion;
        doc["config"] = detail::config_json(c);
        doc["result"] = o.result;
        const std::string text = doc.dump(2) + "\n";
        if (!c.json_path.empty()) {
            detail::write_file(c.json_path, text);
            out << o.summary;
        } else {
            out << text;
        }
        if (!c.csv_path.empty()) {
            if (o.csv.empty()) fail(ErrorKind::ConfigError, "'" + c.command + "' has no CSV table");
            detail::write_file(c.csv_path, o.csv);
        }
        if (c.timing)
            err << "elapsed_seconds: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << '\n';
        return o.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::bad_alloc&) {
        err << "error: SizeExceeded: out of memory; lower the radius/scale or --simplex-cap\n";
        return 1;
    }
}

/// Parses argv with CLI11 and runs the selected analysis.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Coarse topology toolkit: Rips complexes, exact (co)homology and coarse invariants of finite metric spaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1, 1);
    RunConfig c;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--space", c.space, "Space spec, e.g. grid:2:6, free:2:4, tree:3:5, cyclic:7, matrix:<csv>, edges:<file>");
        sub->add_option("--ring", c.ring, "Coefficients: Z, Q or Fp:<p>");
        sub->add_option("--scale", c.scale, "Rips scale i (integer or p/q)");
        sub->add_option("--scales", c.scales, "Comma list of scales, one per stage");
        sub->add_option("--max-dim", c.max_dim, "Top simplex dimension kept");
        sub->add_option("--collar", c.collar, "Collar width for compact supports");
        sub->add_option("--collars", c.collars, "Comma list of collar widths, one per stage");
        sub->add_option("--radii", c.radii, "Comma list of window radii");
        sub->add_option("--radius", c.radius, "Window radius around the center (default: whole space)");
        sub->add_option("--center", c.center, "Center point label (default: basepoint)");
        sub->add_option("--seed", c.seed, "Seed for randomized audits and pair sampling");
        sub->add_option("--json", c.json_path, "Write the JSON report here (default: stdout)");
        sub->add_option("--csv", c.csv_path, "Write the CSV table here");
        sub->add_option("--simplex-cap", c.simplex_cap, "Abort a window above this many simplices");
        sub->add_option("--time-budget", c.time_budget, "Seconds; later stages are skipped once exceeded (0 = none)");
        sub->add_flag("--timing", c.timing, "Report elapsed seconds on stderr");
    };

    auto* homology = app.add_subcommand("homology", "Homology of a window complex or a chaincx input");
    common(homology);
    homology->add_flag("--reduced", c.reduced, "Reduced homology in degree 0");
    auto* scan = app.add_subcommand("cohomology-scan", "Compact cohomology over a schedule of windows");
    common(scan);
    scan->add_option("--k", c.k, "Degree");
    auto* ends = app.add_subcommand("ends", "Number of ends from complement components");
    common(ends);
    auto* bottleneck = app.add_subcommand("bottleneck", "Bottleneck (quasi-tree) test");
    common(bottleneck);
    bottleneck->add_option("--delta-max", c.delta_max, "Largest ball radius tried");
    bottleneck->add_option("--pairs", c.pairs, "Random sample of pairs (default: all)");
    auto* acyclicity = app.add_subcommand("acyclicity", "Uniform acyclicity probe grid");
    common(acyclicity);
    acyclicity->add_option("--k", c.k, "Degree");
    auto* products = app.add_subcommand("products-audit", "Cup/cap identity and support audit");
    common(products);
    products->add_option("--trials", c.trials, "Randomized trials per identity");
    products->add_flag("--exhaustive", c.exhaustive, "Exhaustive support audit over simplices");
    auto* ccd = app.add_subcommand("ccd", "Coarse cohomological dimension estimate");
    common(ccd);
    ccd->add_option("--k-max", c.k_max, "Highest degree scanned");
    auto* pd = app.add_subcommand("pd-probe", "Coarse PD_n signature probe");
    common(pd);
    pd->add_option("--n", c.n, "Dimension n");
    auto* uct = app.add_subcommand("uct", "Universal coefficient check");
    common(uct);
    uct->add_option("--primes", c.primes, "Comma list of primes");
    auto* corpus = app.add_subcommand("corpus", "List or describe built-in space families");
    corpus->add_option("action", c.corpus_action, "list | describe")->required();
    corpus->add_option("family", c.corpus_family, "Family name for describe");
    corpus->add_option("--json", c.json_path, "Write the JSON report here (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: ConfigError: " << e.what() << " (run with --help)\n";
        return 1;
    }
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    return run(c, out, err);
}

}  // namespace coarse::cli
