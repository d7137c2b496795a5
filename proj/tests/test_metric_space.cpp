#include <catch_amalgamated.hpp>

#include <sstream>

#include "coarse/spaces.hpp"

using namespace coarse;

namespace {

PointId at(const MetricSpace& s, const std::string& label) {
    auto p = s.find(label);
    REQUIRE(p);
    return *p;
}

std::vector<std::string> labels_of(const MetricSpace& s, const PointSet& set) {
    std::vector<std::string> out;
    for (PointId p : set) out.push_back(s.label(p));
    return out;
}

}  // namespace

TEST_CASE("generated families have the expected sizes") {
    auto line = load_space("grid:1:3");
    CHECK(line.size() == 7);
    CHECK(line.dist(at(line, "(-3)"), at(line, "(3)")) == Dist(6));
    CHECK(load_space("free:2:2").size() == 17);
    CHECK(load_space("free:2:3").size() == 53);
    CHECK(load_space("grid:2:2").size() == 25);
    CHECK(load_space("tree:3:2").size() == 1 + 3 + 6);
    CHECK(load_space("cyclic:7").diameter() == Dist(3));
    CHECK(load_space("simplex:3").size() == 4);
}

TEST_CASE("Chebyshev and l1 grids differ on the diagonal") {
    auto cheb = load_space("grid:2:2");
    auto l1 = load_space("grid:2:2:l1");
    CHECK(cheb.dist(at(cheb, "(0,0)"), at(cheb, "(2,2)")) == Dist(2));
    CHECK(l1.dist(at(l1, "(0,0)"), at(l1, "(2,2)")) == Dist(4));
    CHECK(l1.size() == 25);  // still the square sample
}

TEST_CASE("free group words are reduced and distances are word lengths") {
    auto f = load_space("free:2:2");
    CHECK(f.label(f.basepoint()) == "e");
    CHECK(f.dist(at(f, "ab"), at(f, "AB")) == Dist(4));
    CHECK(f.dist(at(f, "ab"), at(f, "a")) == Dist(1));
    CHECK_FALSE(f.find("aA"));
}

TEST_CASE("distance matrix input") {
    auto two = MetricSpace::from_matrix({"p", "q"}, {0, 1, 1, 0});
    CHECK(two.size() == 2);
    CHECK(two.dist(0, 1) == Dist(1));
    CHECK_THROWS_AS(MetricSpace::from_matrix({"p", "q"}, {0, 1, 2, 0}), Error);  // asymmetric
    CHECK_THROWS_AS(MetricSpace::from_matrix({"p", "q"}, {0, 0, 0, 0}), Error);  // identity of indiscernibles
    CHECK_THROWS_AS(MetricSpace::from_matrix({"p", "q"}, {1, 1, 1, 0}), Error);  // nonzero diagonal
    auto bad = MetricSpace::from_matrix({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0});
    CHECK(bad.triangle_violation());
    CHECK_THROWS_AS(bad.validate_triangle_inequality(), Error);
}

TEST_CASE("CSV reader keeps fractions exact") {
    std::istringstream in("a,b,c\n0,1/2,1\n1/2,0,1/2\n1,1/2,0\n");
    auto s = read_distance_csv(in);
    CHECK(s.dist(0, 1) == Dist(1, 2));
    CHECK(s.diameter() == Dist(1));
    std::istringstream ragged("a,b\n0,1\n");
    CHECK_THROWS_AS(read_distance_csv(ragged), Error);
}

TEST_CASE("edge list reader builds the path metric") {
    std::istringstream in("# square\nu v\nv w\nw x\nx u\n");
    auto s = read_edge_list(in);
    CHECK(s.size() == 4);
    CHECK(s.dist(at(s, "u"), at(s, "w")) == Dist(2));
    CHECK(s.is_graph_metric());
    std::istringstream broken("u\n");
    CHECK_THROWS_AS(read_edge_list(broken), Error);
    std::istringstream split_graph("a b\nc d\n");
    CHECK_THROWS_AS(read_edge_list(split_graph), Error);
}

TEST_CASE("neighborhoods") {
    auto line = load_space("grid:1:3");
    CHECK(labels_of(line, neighborhood(line, at(line, "(0)"), 1)) == std::vector<std::string>{"(-1)", "(0)", "(1)"});
    CHECK(neighborhood(line, at(line, "(2)"), 0) == PointSet{at(line, "(2)")});
    auto f = load_space("free:2:2");
    CHECK(neighborhood(f, f.basepoint(), 2).size() == 17);
    CHECK(neighborhood(line, PointSet{at(line, "(-3)"), at(line, "(3)")}, 1).size() == 4);
}

TEST_CASE("greedy nets") {
    auto line = load_space("grid:1:3");
    CHECK(net(line, 1).size() == 7);
    CHECK(labels_of(line, net(line, 2)) == std::vector<std::string>{"(-3)", "(-1)", "(1)", "(3)"});
    auto single = MetricSpace::from_matrix({"o"}, {0});
    CHECK(net(single, 5).size() == 1);
}

TEST_CASE("nets are separated and cover") {
    for (const char* spec : {"grid:2:4", "free:2:3", "tree:3:4"}) {
        auto s = load_space(spec);
        for (std::int64_t sep : {1, 2, 3}) {
            auto n = net(s, sep);
            for (std::size_t a = 0; a < n.size(); ++a)
                for (std::size_t b = a + 1; b < n.size(); ++b) CHECK(s.dist(n[a], n[b]) >= Dist(sep));
            CHECK(neighborhood(s, n, sep).size() == s.size());
        }
    }
}

TEST_CASE("space specs parse and round trip") {
    auto spec = parse_space_spec("grid:2:5:l1");
    CHECK(spec.kind == SpaceKind::Grid);
    CHECK(parse_space_spec(spec.describe()).describe() == spec.describe());
    CHECK(parse_space_json(space_spec_json(spec)).describe() == spec.describe());
    for (const char* bad : {"grid", "grid:x:2", "free:2", "warp:3", "grid:2:3:taxi", "cyclic:0"}) {
        INFO(bad);
        CHECK_THROWS_AS(load_space(bad), Error);
    }
    CHECK_THROWS_AS(load_space("matrix:/nonexistent.csv"), Error);
}

TEST_CASE("corpus catalogue") {
    std::vector<std::string> names;
    for (const auto& f : space_families()) names.push_back(f.name);
    for (const char* want : {"grid", "free", "tree", "cyclic", "matrix", "edges", "chaincx"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK(describe_family("grid").doc.find("Chebyshev") != std::string::npos);
    try {
        describe_family("nope");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConfigError);
    }
}

TEST_CASE("generated metrics satisfy the triangle inequality") {
    for (const char* spec : {"grid:2:3", "grid:2:3:l1", "free:2:2", "tree:2:4", "cyclic:9", "path:6"}) {
        INFO(spec);
        CHECK_FALSE(load_space(spec).triangle_violation());
    }
}
