#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "coarse/cohomology.hpp"
#include "coarse/products.hpp"
#include "coarse/spaces.hpp"
#include "support/oracles.hpp"

using namespace coarse;

namespace {

const Integers zz;

/// Rank of H^k_c over Q from first principles: dense coboundary on the
/// cochains that are allowed to be nonzero, ranks by Gaussian elimination.
std::size_t brute_compact_rank(const WindowComplex& cx, const Dist& collar, int k) {
    const MetricSpace& s = cx.space();
    const Dist inner = *cx.radius() - collar;
    auto allowed = [&](const Vertices& v) {
        for (PointId p : v)
            if (s.dist(*cx.center(), p) <= inner) return true;
        return false;
    };
    auto basis = [&](int dim) {
        std::vector<Vertices> out;
        if (dim < 0 || dim > cx.max_dim()) return out;
        for (const auto& sx : cx.simplices(dim))
            if (allowed(sx.vertices)) out.push_back(sx.vertices);
        return out;
    };
    auto delta = [&](int dim) {
        // rows: (dim+1)-simplices, columns: dim-simplices; <delta f, t> = f(d t)
        auto rows = basis(dim + 1), cols = basis(dim);
        std::map<Vertices, std::size_t> col_of;
        for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;
        oracle::Dense m(rows.size(), std::vector<BigInt>(cols.size(), 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t f = 0; f < rows[r].size(); ++f) {
                auto it = col_of.find(remove_vertex(rows[r], f));
                if (it != col_of.end()) m[r][it->second] += (f % 2 ? -1 : 1);
            }
        return std::make_pair(m, cols.size());
    };
    auto [out, n] = delta(k);
    std::size_t rank_out = out.empty() ? 0 : oracle::rank_q(out);
    std::size_t rank_in = 0;
    if (k > 0) {
        auto [in, m] = delta(k - 1);
        rank_in = in.empty() || m == 0 ? 0 : oracle::rank_q(in);
    }
    return n - rank_out - rank_in;
}

std::vector<StageSpec> stages(std::int64_t scale, std::initializer_list<std::int64_t> radii, std::int64_t collar) {
    std::vector<StageSpec> out;
    for (auto r : radii) out.push_back({scale, r, Dist(collar)});
    return out;
}

}  // namespace

TEST_CASE("coboundary sign convention") {
    auto path = load_space("path:3");
    auto cx = WindowComplex::build_ball(path, 0, 2, 1, 1);
    CochainWindow<Integers> ccx(cx, zz, 0);
    CHECK(ccx.masked_count(0) == 3);
    CHECK(ccx.masked_count(1) == 2);
    auto d0 = ccx.coboundary(0);
    auto want = scaled(zz, convert(zz, cx.boundary(1).transpose()), BigInt(-1));
    CHECK(d0 == want);
}

TEST_CASE("coboundary squares to zero") {
    auto line = load_space("grid:1:6");
    auto cx = WindowComplex::build_ball(line, line.basepoint(), 5, 1, 3);
    CochainWindow<Integers> ccx(cx, zz, 2);
    for (int k = 0; k + 2 <= 3; ++k) CHECK(is_zero_matrix(multiply(zz, ccx.coboundary(k + 1), ccx.coboundary(k))));
    auto grid = load_space("grid:2:3");
    auto g = WindowComplex::build_ball(grid, grid.basepoint(), 3, 1, 3);
    CochainWindow<Integers> gc(g, zz, 1);
    for (int k = 0; k + 2 <= 3; ++k) CHECK(is_zero_matrix(multiply(zz, gc.compact_coboundary(k + 1), gc.compact_coboundary(k))));
}

TEST_CASE("matrix coboundary agrees with the cochain-level coboundary") {
    auto grid = load_space("grid:2:2");
    auto cx = WindowComplex::build_ball(grid, grid.basepoint(), 2, 1, 2);
    CochainWindow<Integers> ccx(cx, zz, 1);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        const int k = static_cast<int>(rng() % 2);
        Cochain<Integers> alpha(k);
        for (int q = 0; q < 3; ++q) alpha.add_term(zz, cx.simplices(k)[rng() % cx.count(k)].vertices, static_cast<int>(rng() % 5) - 2);
        auto via_matrix = apply(zz, ccx.coboundary(k), to_vector(zz, cx, alpha));
        CHECK(from_vector<CochainTag>(zz, cx, k + 1, via_matrix) == coboundary(zz, cx, alpha));
    }
}

TEST_CASE("collar validation") {
    auto line = load_space("grid:1:6");
    auto cx = WindowComplex::build_ball(line, line.basepoint(), 4, 1, 2);
    try {
        CochainWindow<Integers>(cx, zz, 4);
        FAIL("expected CollarTooWide");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CollarTooWide);
    }
    PointSet all{0, 1, 2};
    auto no_ball = WindowComplex::build(line, 1, all, 1);
    CHECK_THROWS_AS(CochainWindow<Integers>(no_ball, zz, 1), Error);
}

TEST_CASE("compact cohomology of a segment of Z") {
    auto line = load_space("grid:1:10");
    auto cx = WindowComplex::build_ball(line, line.basepoint(), 8, 1, 2);
    CochainWindow<Integers> ccx(cx, zz, 2);
    CHECK(compact_cohomology(ccx, 1).free_rank == 1);
    CHECK(compact_cohomology(ccx, 1).torsion.empty());
    CHECK(compact_cohomology(ccx, 0).is_zero());
    CHECK(brute_compact_rank(cx, 2, 1) == 1);
    CHECK(brute_compact_rank(cx, 2, 0) == 0);
}

TEST_CASE("compact cohomology of a square of Z^2") {
    auto grid = load_space("grid:2:7");
    auto cx = WindowComplex::build_ball(grid, grid.basepoint(), 6, 1, 3);
    CochainWindow<Integers> ccx(cx, zz, 2);
    CHECK(compact_cohomology(ccx, 2).free_rank == 1);
    CHECK(compact_cohomology(ccx, 1).is_zero());
    CHECK(compact_cohomology(ccx, 0).is_zero());
    for (int k = 0; k <= 2; ++k) CHECK(brute_compact_rank(cx, 2, k) == compact_cohomology(ccx, k).free_rank);
}

TEST_CASE("compact ranks over Q match the brute-force oracle on assorted windows") {
    struct Case {
        const char* spec;
        std::int64_t radius, scale, collar;
    };
    Rationals qq;
    for (auto c : {Case{"tree:3:4", 4, 1, 2}, Case{"free:2:3", 3, 1, 1}, Case{"grid:2:3", 3, 1, 1}, Case{"cyclic:9", 4, 1, 1},
                   Case{"grid:1:6", 5, 2, 2}}) {
        auto s = load_space(c.spec);
        auto cx = WindowComplex::build_ball(s, s.basepoint(), c.radius, c.scale, 3);
        CochainWindow<Rationals> ccx(cx, qq, c.collar);
        for (int k = 0; k <= 2; ++k) {
            INFO(c.spec << " k=" << k);
            CHECK(compact_cohomology(ccx, k).free_rank == brute_compact_rank(cx, c.collar, k));
        }
    }
}

TEST_CASE("cohomology needs the next cochain degree") {
    auto line = load_space("grid:1:6");
    auto cx = WindowComplex::build_ball(line, line.basepoint(), 5, 1, 1);
    CochainWindow<Integers> ccx(cx, zz, 2);
    CHECK_THROWS_AS(compact_cohomology(ccx, 1), Error);
}

TEST_CASE("Kronecker pairing") {
    Chain<Integers> ab(1);
    ab.add_term(zz, {0, 1}, 1);
    CHECK(pair(zz, ab, dual_cochain(zz, Vertices{0, 1})) == 1);
    CHECK(pair(zz, ab, dual_cochain(zz, Vertices{1, 2})) == 0);
    auto line = load_space("grid:1:6");
    auto zero = *line.find("(0)");
    Chain<Integers> run(1);
    for (int j = -5; j <= 4; ++j) run.add_term(zz, {zero + j, zero + j + 1}, 1);
    CHECK(pair(zz, run, dual_cochain(zz, Vertices{zero, zero + 1})) == 1);
    CHECK_THROWS_AS(pair(zz, ab, dual_cochain(zz, Vertices{0})), Error);
}

TEST_CASE("stabilization on Z") {
    auto line = load_space("grid:1:14");
    auto h1 = stabilization_scan(line, 1, zz, stages(1, {6, 8, 10, 12}, 2));
    CHECK(h1.verdict == Verdict::Stable);
    CHECK(h1.stable_from == 0u);
    CHECK(h1.stabilized->free_rank == 1);
    CHECK(h1.persistently_nonzero);
    for (const auto& m : h1.maps) CHECK(m.isomorphism);
    auto h0 = stabilization_scan(line, 0, zz, stages(1, {6, 8, 10, 12}, 2));
    CHECK(h0.verdict == Verdict::Stable);
    CHECK(h0.stabilized->is_zero());
    CHECK_FALSE(h0.persistently_nonzero);
}

TEST_CASE("stabilization on Z^2") {
    auto grid = load_space("grid:2:8");
    std::vector<std::size_t> ranks;
    for (int k = 0; k <= 2; ++k) {
        auto rep = stabilization_scan(grid, k, zz, stages(1, {4, 5, 6}, 2));
        REQUIRE(rep.verdict == Verdict::Stable);
        ranks.push_back(rep.stabilized->free_rank);
    }
    CHECK(ranks == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("a bounded space stabilizes at zero past its diameter") {
    auto cyc = load_space("cyclic:5");
    std::vector<StageSpec> sch{{1, 2, Dist(1)}, {2, 3, Dist(2)}, {3, 4, Dist(3)}, {4, 5, Dist(4)}};
    auto rep = stabilization_scan(cyc, 1, zz, sch);
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.stabilized->is_zero());
}

TEST_CASE("scan preconditions and skipped stages") {
    auto line = load_space("grid:1:14");
    try {
        stabilization_scan(line, 1, zz, stages(1, {6, 8}, 2));
        FAIL("expected Precondition");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    CHECK_THROWS_AS(stabilization_scan(line, 1, zz, stages(1, {8, 6, 10}, 2)), Error);
    CHECK_THROWS_AS(stabilization_scan(line, 1, zz, stages(1, {6, 8, 20}, 2)), Error);  // beyond the sample
    // collar >= radius at the first stage: skipped, remaining tail still decides
    auto rep = stabilization_scan(line, 1, zz, {{1, 2, Dist(2)}, {1, 6, Dist(2)}, {1, 8, Dist(2)}, {1, 10, Dist(2)}});
    CHECK_FALSE(rep.stages[0].group);
    CHECK(rep.stages[0].skipped.find("CollarTooWide") != std::string::npos);
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.stable_from == 1u);
    ScanOptions tiny;
    tiny.simplex_cap = 10;
    CHECK(stabilization_scan(line, 1, zz, stages(1, {6, 8, 10}, 2), tiny).verdict == Verdict::Inconclusive);
}

TEST_CASE("a growing group is not stable") {
    auto f = load_space("free:2:6");
    auto rep = stabilization_scan(f, 1, zz, stages(1, {3, 4, 5}, 2));
    CHECK(rep.verdict == Verdict::Unstable);
    REQUIRE(rep.stages.back().group);
    CHECK(rep.stages.back().group->free_rank >= 3);
}

TEST_CASE("scan reports are deterministic and sequential mode agrees") {
    auto grid = load_space("grid:2:8");
    ScanOptions seq;
    seq.parallel = false;
    auto a = report_json(zz, stabilization_scan(grid, 2, zz, stages(1, {4, 5, 6}, 2)));
    auto b = report_json(zz, stabilization_scan(grid, 2, zz, stages(1, {4, 5, 6}, 2), seq));
    CHECK(a.dump() == b.dump());
    auto csv = report_csv(zz, stabilization_scan(grid, 2, zz, stages(1, {4, 5, 6}, 2)));
    CHECK(csv.rfind("stage,scale,radius,collar,k,rank,torsion\n", 0) == 0);
}

TEST_CASE("universal coefficients on the doubling complex") {
    ChainComplexData cc;
    cc.ranks = {1, 1};
    MachineIntegers mi;
    cc.boundaries = {IntMatrix(0, 1), IntMatrix::from_triplets(mi, 1, 1, {{0, 0, 2}})};
    for (int k = 0; k <= 1; ++k) {
        auto r = uct_check(cc, k, 2);
        CHECK(r.pass());
        CHECK(r.lhs == 1);
    }
    CHECK(uct_check(cc, 1, 3).lhs == 0);
    CHECK(cohomology(zz, cc, 1).torsion == std::vector<BigInt>{2});
    CHECK_THROWS_AS(uct_check(cc, 1, 4), Error);
}

TEST_CASE("universal coefficients on planted complexes, checked against elimination mod p") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 25; ++t) {
        auto pc = oracle::planted_complex(rng, 3, 2, {1, 2, 3, 5, 6});
        for (std::int64_t p : {2, 3, 5})
            for (int k = 0; k <= 3; ++k) {
                auto r = uct_check(pc.data, k, p);
                INFO("trial " << t << " p " << p << " k " << k);
                CHECK(r.pass());
                // dim H^k(C; F_p) from ranks of the boundary matrices mod p
                std::size_t out = k + 1 <= 3 ? oracle::rank_mod(oracle::dense_of(pc.data.boundary(k + 1)), p) : 0;
                std::size_t in = k >= 1 ? oracle::rank_mod(oracle::dense_of(pc.data.boundary(k)), p) : 0;
                CHECK(r.lhs == pc.data.ranks[k] - out - in);
            }
    }
}

TEST_CASE("torsion-free complexes: ranks over Z and Q agree") {
    auto grid = load_space("grid:2:2");
    auto cc = ChainComplexData::from_window(WindowComplex::build_ball(grid, grid.basepoint(), 2, 1, 2));
    Rationals qq;
    for (int k = 0; k <= 2; ++k) {
        CHECK(cohomology(zz, cc, k).free_rank == cohomology(qq, cc, k).free_rank);
        CHECK(uct_check(cc, k, 3).lhs == cohomology(zz, cc, k).free_rank);
    }
}
