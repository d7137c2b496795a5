#pragma once

// Space families and loaders: Cayley balls of Z^n, F_k and Z/m, regular
// trees, a few non-group test spaces, and file inputs (distance-matrix CSV,
// edge lists, direct chain complexes).

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

enum class SpaceKind { Grid, Free, Tree, Cyclic, Path, Simplex, Matrix, Edges, ChainComplex };

enum class GridMetric { Chebyshev, L1 };

struct SpaceSpec {
    SpaceKind kind = SpaceKind::Grid;
    int dim = 1;          // grid
    int radius = 1;       // grid, free (ball radius), tree (depth)
    int rank = 2;         // free
    int degree = 3;       // tree
    int modulus = 1;      // cyclic; also point count for path, dimension for simplex
    GridMetric metric = GridMetric::Chebyshev;
    std::string path;     // matrix / edges / chaincx file
    std::size_t max_points = 10000;

    std::string describe() const;
};

struct FamilyInfo {
    std::string name;
    std::string syntax;
    std::string doc;
};

inline const std::vector<FamilyInfo>& space_families() {
    static const std::vector<FamilyInfo> families = {
        {"grid", "grid:<n>:<radius>[:chebyshev|:l1]",
         "Ball of radius <radius> in Z^n, i.e. the box [-r,r]^n. Default metric is Chebyshev (king-move word "
         "metric), so the scale-1 Rips complex triangulates every unit square/cube; ':l1' gives the standard "
         "generators (4-neighbour grid in the plane). Basepoint is the origin."},
        {"free", "free:<k>:<radius>",
         "Word-metric ball of radius <radius> in the free group F_k, points in shortlex order, identity first. "
         "Sphere sizes 2k(2k-1)^(r-1)."},
        {"tree", "tree:<degree>:<depth>",
         "Ball of radius <depth> around a vertex of the <degree>-regular tree (root has <degree> children, every "
         "other internal vertex <degree>-1)."},
        {"cyclic", "cyclic:<m>", "The whole group Z/m with the cycle-graph metric (a bounded space)."},
        {"path", "path:<n>", "The path graph P_n on n vertices (whole space, not a sample)."},
        {"simplex", "simplex:<n>", "The n-simplex: n+1 points at mutual distance 1."},
        {"matrix", "matrix:<file.csv>",
         "Distance-matrix CSV: a header row of point ids, then a square matrix of integers or rationals p/q. "
         "Triangle inequality is validated."},
        {"edges", "edges:<file>", "Edge list, one 'u v [weight]' per line (weight defaults to 1); shortest-path metric."},
        {"chaincx", "chaincx:<file.json>",
         "Direct chain-complex input: {\"dims\": [n0, n1, ...], \"boundaries\": [{\"dim\": k, \"entries\": [[row, "
         "col, value], ...]}, ...]}; boundary k maps C_k to C_{k-1}; validated for d^2 = 0."},
    };
    return families;
}

inline const FamilyInfo& describe_family(const std::string& name) {
    for (const auto& f : space_families())
        if (f.name == name) return f;
    fail(ErrorKind::ConfigError, "unknown space family '" + name + "' (see 'corpus list')");
}

inline std::string SpaceSpec::describe() const {
    switch (kind) {
        case SpaceKind::Grid:
            return "grid:" + std::to_string(dim) + ":" + std::to_string(radius) +
                   (metric == GridMetric::L1 ? ":l1" : ":chebyshev");
        case SpaceKind::Free: return "free:" + std::to_string(rank) + ":" + std::to_string(radius);
        case SpaceKind::Tree: return "tree:" + std::to_string(degree) + ":" + std::to_string(radius);
        case SpaceKind::Cyclic: return "cyclic:" + std::to_string(modulus);
        case SpaceKind::Path: return "path:" + std::to_string(modulus);
        case SpaceKind::Simplex: return "simplex:" + std::to_string(modulus);
        case SpaceKind::Matrix: return "matrix:" + path;
        case SpaceKind::Edges: return "edges:" + path;
        case SpaceKind::ChainComplex: return "chaincx:" + path;
    }
    return "unknown";
}

namespace detail {

inline int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::ConfigError, "bad " + what + " '" + text + "'");
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

SpaceSpec parse_space_json(const nlohmann::json& doc);

/// "grid:2:7", "free:2:6", "tree:3:8", "cyclic:7", "path:20", "simplex:3",
/// "matrix:<csv>", "edges:<file>", "chaincx:<json>", or "spec:<json file>".
inline SpaceSpec parse_space_spec(const std::string& text) {
    auto colon = text.find(':');
    std::string family = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
    auto args = rest.empty() ? std::vector<std::string>{} : detail::split(rest, ':');
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            fail(ErrorKind::ConfigError, "space '" + text + "': expected " + describe_family(family).syntax);
    };
    SpaceSpec spec;
    if (family == "grid") {
        need(2, 3);
        spec.kind = SpaceKind::Grid;
        spec.dim = detail::parse_int(args[0], "grid dimension");
        spec.radius = detail::parse_int(args[1], "grid radius");
        if (args.size() == 3) {
            if (args[2] == "l1")
                spec.metric = GridMetric::L1;
            else if (args[2] != "chebyshev")
                fail(ErrorKind::ConfigError, "grid metric must be 'chebyshev' or 'l1'");
        }
    } else if (family == "free") {
        need(2, 2);
        spec.kind = SpaceKind::Free;
        spec.rank = detail::parse_int(args[0], "free rank");
        spec.radius = detail::parse_int(args[1], "free radius");
    } else if (family == "tree") {
        need(2, 2);
        spec.kind = SpaceKind::Tree;
        spec.degree = detail::parse_int(args[0], "tree degree");
        spec.radius = detail::parse_int(args[1], "tree depth");
    } else if (family == "cyclic" || family == "path" || family == "simplex") {
        need(1, 1);
        spec.kind = family == "cyclic" ? SpaceKind::Cyclic : family == "path" ? SpaceKind::Path : SpaceKind::Simplex;
        spec.modulus = detail::parse_int(args[0], family + " size");
    } else if (family == "matrix" || family == "edges" || family == "chaincx") {
        if (rest.empty()) fail(ErrorKind::ConfigError, "space '" + text + "': missing file path");
        spec.kind = family == "matrix" ? SpaceKind::Matrix : family == "edges" ? SpaceKind::Edges : SpaceKind::ChainComplex;
        spec.path = rest;
    } else if (family == "spec") {
        std::ifstream in(rest);
        if (!in) fail(ErrorKind::IOFailure, "cannot open space spec '" + rest + "'");
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            fail(ErrorKind::ParseError, "space spec '" + rest + "': " + e.what());
        }
        return parse_space_json(doc);
    } else {
        describe_family(family);  // throws ConfigError
    }
    return spec;
}

/// {"kind": "grid", "dim": 2, "radius": 7, "metric": "l1"} and friends.
inline SpaceSpec parse_space_json(const nlohmann::json& doc) {
    if (doc.is_object() && doc.contains("spec") && doc["spec"].is_string()) return parse_space_spec(doc["spec"].get<std::string>());
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        fail(ErrorKind::ConfigError, "space spec must be an object with a string 'kind'");
    const std::string kind = doc["kind"];
    auto get = [&](const char* key, int fallback) {
        if (!doc.contains(key)) return fallback;
        if (!doc[key].is_number_integer()) fail(ErrorKind::ConfigError, std::string("space spec field '") + key + "' must be an integer");
        return doc[key].get<int>();
    };
    std::string text;
    if (kind == "grid") {
        text = "grid:" + std::to_string(get("dim", 1)) + ":" + std::to_string(get("radius", 1));
        if (doc.contains("metric")) text += ":" + doc["metric"].get<std::string>();
    } else if (kind == "free") {
        text = "free:" + std::to_string(get("rank", 2)) + ":" + std::to_string(get("radius", 1));
    } else if (kind == "tree") {
        text = "tree:" + std::to_string(get("degree", 3)) + ":" + std::to_string(get("depth", 1));
    } else if (kind == "cyclic") {
        text = "cyclic:" + std::to_string(get("modulus", 1));
    } else if (kind == "path" || kind == "simplex") {
        text = kind + ":" + std::to_string(get("size", 1));
    } else if (kind == "matrix" || kind == "edges" || kind == "chaincx") {
        if (!doc.contains("path")) fail(ErrorKind::ConfigError, "space spec '" + kind + "' needs a 'path'");
        text = kind + ":" + doc["path"].get<std::string>();
    } else {
        describe_family(kind);
    }
    SpaceSpec spec = parse_space_spec(text);
    if (doc.contains("max_points")) spec.max_points = doc["max_points"].get<std::size_t>();
    return spec;
}

inline nlohmann::ordered_json space_spec_json(const SpaceSpec& spec) {
    nlohmann::ordered_json j;
    const std::string text = spec.describe();
    j["kind"] = text.substr(0, text.find(':'));
    j["spec"] = text;
    return j;
}

namespace detail {

inline void check_size(std::size_t count, const SpaceSpec& spec) {
    if (count > spec.max_points)
        fail(ErrorKind::SizeExceeded, spec.describe() + " has " + std::to_string(count) + " points, above the cap of " +
                                          std::to_string(spec.max_points));
}

inline MetricSpace make_grid(const SpaceSpec& spec) {
    if (spec.dim < 1 || spec.radius < 0) fail(ErrorKind::ConfigError, "grid needs dimension >= 1 and radius >= 0");
    const int side = 2 * spec.radius + 1;
    std::size_t count = 1;
    for (int a = 0; a < spec.dim; ++a) {
        count *= static_cast<std::size_t>(side);
        check_size(count, spec);
    }
    std::vector<std::vector<int>> coords(count, std::vector<int>(spec.dim));
    std::vector<std::string> labels(count);
    for (std::size_t p = 0; p < count; ++p) {
        std::size_t rem = p;
        for (int a = spec.dim - 1; a >= 0; --a) {
            coords[p][a] = static_cast<int>(rem % side) - spec.radius;
            rem /= side;
        }
        std::string l = "(";
        for (int a = 0; a < spec.dim; ++a) l += (a ? "," : "") + std::to_string(coords[p][a]);
        labels[p] = l + ")";
    }
    auto index_of = [&](const std::vector<int>& c) {
        std::size_t idx = 0;
        for (int a = 0; a < spec.dim; ++a) idx = idx * side + static_cast<std::size_t>(c[a] + spec.radius);
        return static_cast<PointId>(idx);
    };
    MetricSpace::Adjacency adj(count);
    for (std::size_t p = 0; p < count; ++p) {
        // offsets in {-1,0,1}^n \ {0}; L1 keeps only the axis directions
        std::size_t total = 1;
        for (int a = 0; a < spec.dim; ++a) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<int> c = coords[p];
            std::size_t rem = code;
            int moved = 0;
            bool inside = true;
            for (int a = 0; a < spec.dim; ++a) {
                int off = static_cast<int>(rem % 3) - 1;
                rem /= 3;
                if (off != 0) ++moved;
                c[a] += off;
                if (c[a] < -spec.radius || c[a] > spec.radius) inside = false;
            }
            if (moved == 0 || !inside) continue;
            if (spec.metric == GridMetric::L1 && moved != 1) continue;
            adj[p].push_back(index_of(c));
        }
    }
    MetricSpace s = MetricSpace::from_graph(std::move(labels), std::move(adj));
    s.set_basepoint(index_of(std::vector<int>(spec.dim, 0)));
    s.set_complete(false);
    return s;
}

inline MetricSpace make_free(const SpaceSpec& spec) {
    if (spec.rank < 1 || spec.radius < 0) fail(ErrorKind::ConfigError, "free group needs rank >= 1 and radius >= 0");
    // letters: generator g is 2g, its inverse 2g+1
    const int letters = 2 * spec.rank;
    auto letter_name = [](int l) {
        char c = static_cast<char>('a' + l / 2);
        return std::string(1, l % 2 ? static_cast<char>(c - 'a' + 'A') : c);
    };
    std::vector<std::vector<int>> words{{}};
    MetricSpace::Adjacency adj(1);
    std::size_t level_begin = 0, level_end = 1;
    for (int r = 1; r <= spec.radius; ++r) {
        for (std::size_t w = level_begin; w < level_end; ++w)
            for (int l = 0; l < letters; ++l) {
                if (!words[w].empty() && (words[w].back() ^ 1) == l) continue;
                auto next = words[w];
                next.push_back(l);
                words.push_back(std::move(next));
                check_size(words.size(), spec);
                adj.emplace_back();
                PointId child = static_cast<PointId>(words.size() - 1);
                adj[w].push_back(child);
                adj[child].push_back(static_cast<PointId>(w));
            }
        level_begin = level_end;
        level_end = words.size();
    }
    std::vector<std::string> labels;
    for (const auto& w : words) {
        std::string l;
        for (int x : w) l += letter_name(x);
        labels.push_back(l.empty() ? "e" : l);
    }
    MetricSpace s = MetricSpace::from_graph(std::move(labels), std::move(adj));
    s.set_basepoint(0);
    s.set_complete(false);
    return s;
}

inline MetricSpace make_tree(const SpaceSpec& spec) {
    if (spec.degree < 2 || spec.radius < 0) fail(ErrorKind::ConfigError, "tree needs degree >= 2 and depth >= 0");
    std::vector<std::string> labels{"r"};
    MetricSpace::Adjacency adj(1);
    std::size_t level_begin = 0, level_end = 1;
    for (int d = 1; d <= spec.radius; ++d) {
        for (std::size_t v = level_begin; v < level_end; ++v) {
            int children = v == 0 ? spec.degree : spec.degree - 1;
            for (int c = 0; c < children; ++c) {
                labels.push_back(labels[v] + "." + std::to_string(c));
                check_size(labels.size(), spec);
                adj.emplace_back();
                PointId child = static_cast<PointId>(labels.size() - 1);
                adj[v].push_back(child);
                adj[child].push_back(static_cast<PointId>(v));
            }
        }
        level_begin = level_end;
        level_end = labels.size();
    }
    MetricSpace s = MetricSpace::from_graph(std::move(labels), std::move(adj));
    s.set_basepoint(0);
    s.set_complete(false);
    return s;
}

inline MetricSpace make_cycle_or_path(const SpaceSpec& spec, bool cyclic) {
    const int n = spec.modulus;
    if (n < 1) fail(ErrorKind::ConfigError, "size must be >= 1");
    check_size(static_cast<std::size_t>(n), spec);
    std::vector<std::string> labels;
    MetricSpace::Adjacency adj(n);
    for (int v = 0; v < n; ++v) {
        labels.push_back(std::to_string(v));
        if (v + 1 < n) {
            adj[v].push_back(v + 1);
            adj[v + 1].push_back(v);
        }
    }
    if (cyclic && n > 2) {
        adj[0].push_back(n - 1);
        adj[n - 1].push_back(0);
    }
    MetricSpace s = MetricSpace::from_graph(std::move(labels), std::move(adj));
    s.set_complete(true);
    return s;
}

inline MetricSpace make_simplex(const SpaceSpec& spec) {
    const int n = spec.modulus + 1;
    if (spec.modulus < 0) fail(ErrorKind::ConfigError, "simplex dimension must be >= 0");
    check_size(static_cast<std::size_t>(n), spec);
    std::vector<std::string> labels;
    MetricSpace::Adjacency adj(n);
    for (int v = 0; v < n; ++v) {
        labels.push_back(std::string(1, static_cast<char>('a' + v % 26)) + (v >= 26 ? std::to_string(v / 26) : ""));
        for (int w = 0; w < n; ++w)
            if (w != v) adj[v].push_back(w);
    }
    return MetricSpace::from_graph(std::move(labels), std::move(adj));
}

}  // namespace detail

inline MetricSpace read_distance_csv(std::istream& in, std::size_t max_points = 10000) {
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split(line, ',');
        for (auto& c : cells) c = detail::trim(c);
        rows.push_back(cells);
    }
    if (rows.empty()) fail(ErrorKind::ParseError, "distance CSV is empty");
    auto labels = rows.front();
    const std::size_t n = labels.size();
    if (n > max_points) fail(ErrorKind::SizeExceeded, "distance CSV has " + std::to_string(n) + " points");
    if (rows.size() != n + 1)
        fail(ErrorKind::ParseError, "distance CSV: expected " + std::to_string(n) + " matrix rows, found " +
                                        std::to_string(rows.size() - 1));
    std::vector<Dist> entries;
    entries.reserve(n * n);
    for (std::size_t r = 1; r <= n; ++r) {
        auto cells = rows[r];
        if (cells.size() == n + 1) cells.erase(cells.begin());  // tolerate a leading id column
        if (cells.size() != n)
            fail(ErrorKind::ParseError, "distance CSV row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                                            " entries, expected " + std::to_string(n));
        for (const auto& c : cells) entries.push_back(Dist::parse(c));
    }
    MetricSpace s = MetricSpace::from_matrix(labels, entries);
    s.validate_triangle_inequality();
    return s;
}

inline MetricSpace read_edge_list(std::istream& in, std::size_t max_points = 10000) {
    std::vector<std::string> labels;
    std::map<std::string, PointId> ids;
    std::vector<std::tuple<PointId, PointId, Dist>> edges;
    auto id = [&](const std::string& name) {
        auto [it, inserted] = ids.try_emplace(name, static_cast<PointId>(labels.size()));
        if (inserted) {
            labels.push_back(name);
            if (labels.size() > max_points) fail(ErrorKind::SizeExceeded, "edge list exceeds point cap");
        }
        return it->second;
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string u, v, w;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) fail(ErrorKind::ParseError, "edge list line " + std::to_string(lineno) + ": expected 'u v [weight]'");
        Dist weight(1);
        if (ls >> w) weight = Dist::parse(w);
        edges.emplace_back(id(u), id(v), weight);
    }
    if (labels.empty()) fail(ErrorKind::ParseError, "edge list is empty");
    return MetricSpace::from_weighted_graph(std::move(labels), edges);
}

/// Materializes a family member or file input as a validated metric space.
inline MetricSpace load_space(const SpaceSpec& spec) {
    MetricSpace s;
    switch (spec.kind) {
        case SpaceKind::Grid: s = detail::make_grid(spec); break;
        case SpaceKind::Free: s = detail::make_free(spec); break;
        case SpaceKind::Tree: s = detail::make_tree(spec); break;
        case SpaceKind::Cyclic: s = detail::make_cycle_or_path(spec, true); break;
        case SpaceKind::Path: s = detail::make_cycle_or_path(spec, false); break;
        case SpaceKind::Simplex: s = detail::make_simplex(spec); break;
        case SpaceKind::Matrix: {
            std::ifstream in(spec.path);
            if (!in) fail(ErrorKind::IOFailure, "cannot open distance matrix '" + spec.path + "'");
            s = read_distance_csv(in, spec.max_points);
            break;
        }
        case SpaceKind::Edges: {
            std::ifstream in(spec.path);
            if (!in) fail(ErrorKind::IOFailure, "cannot open edge list '" + spec.path + "'");
            s = read_edge_list(in, spec.max_points);
            break;
        }
        case SpaceKind::ChainComplex:
            fail(ErrorKind::ConfigError, "chaincx inputs are chain complexes, not metric spaces (use with homology/uct)");
    }
    s.set_description(spec.describe());
    return s;
}

inline MetricSpace load_space(const std::string& text) { return load_space(parse_space_spec(text)); }

}  // namespace coarse
