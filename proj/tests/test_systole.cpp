#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "systolica/generators.hpp"
#include "systolica/systole.hpp"

using namespace systolica;

TEST_CASE("homology rank on standard fixtures") {
    CHECK(Z2HomologyBasis::compute(tetra_sphere()).rank() == 0);
    CHECK(Z2HomologyBasis::compute(csaszar_torus()).rank() == 2);
    CHECK(Z2HomologyBasis::compute(genus_polygon(2, 2)).rank() == 4);

    // dense-elimination oracle agrees on the whole small zoo
    for (const auto& s : {tetra_sphere(), csaszar_torus(), grid_torus(4), genus2_small(), genus_polygon(2, 2)})
        CHECK(Z2HomologyBasis::compute(s).rank() == oracles::homology_rank(s));
}

TEST_CASE("basis signature invariants") {
    auto s = csaszar_torus();
    auto b = Z2HomologyBasis::compute(s);

    // tree edges carry the zero class
    int tree_edges = 0;
    for (int e = 0; e < s.edge_count(); ++e) {
        if (b.tree_edge(e)) {
            ++tree_edges;
            CHECK_FALSE(b.edge_signature(e).any());
        }
    }
    CHECK(tree_edges == s.vertex_count() - 1);

    // every face boundary is trivial
    for (const auto& f : s.faces())
        CHECK_FALSE(cycle_signature(b, EdgeLoop{{f[0], f[1], f[2]}}).any());
}

TEST_CASE("signature is a homomorphism under concatenation at a basepoint") {
    auto s = grid_torus(4);
    auto b = Z2HomologyBasis::compute(s);
    // two loops through vertex 0: a meridian and a face boundary
    EdgeLoop p{{0, 4, 8, 12}};
    EdgeLoop q{{0, 4, 5}};
    EdgeLoop pq{{0, 4, 8, 12, 0, 4, 5}};
    BitVec expected = cycle_signature(b, p);
    expected ^= cycle_signature(b, q);
    CHECK(cycle_signature(b, pq) == expected);

    EdgeLoop off_surface{{0, 1, 7}};
    CHECK_THROWS_AS(cycle_signature(b, off_surface), Error);
}

TEST_CASE("homological systole matches brute force on grid tori") {
    for (int k : {3, 4, 5}) {
        auto s = grid_torus(k);
        auto r = homological_systole(s);
        CHECK(r.length == k);
        CHECK(is_simple_loop(s, r.loop));
        CHECK_FALSE(oracles::null_homologous(s, r.loop));
        CHECK(r.length == oracles::brute_force_sys_h(s, r.length + 1));
    }
}

TEST_CASE("sphere has no nontrivial loop") {
    CHECK_THROWS_AS(homological_systole(tetra_sphere()), Error);
    CHECK_THROWS_AS(homotopy_systole(tetra_sphere()), Error);
    try {
        homological_systole(tetra_sphere());
    } catch (const Error& e) {
        CHECK(e.code() == ErrCode::GenusZero);
    }
}

TEST_CASE("homotopy systole equals homological systole on tori") {
    for (const auto& s : {csaszar_torus(), grid_torus(3), grid_torus(5)}) {
        auto sys = homotopy_systole(s);
        auto hsys = homological_systole(s);
        CHECK(sys.length == hsys.length);
        CHECK(sys.loop == hsys.loop);
    }
    CHECK(homotopy_systole(csaszar_torus()).length == 3);
}

TEST_CASE("homotopy systole on genus-2 fixtures matches brute force") {
    for (const auto& s : {genus2_small(), genus_polygon(2, 2)}) {
        auto sys = homotopy_systole(s);
        auto hsys = homological_systole(s);
        CHECK(sys.length <= hsys.length);
        CHECK(is_simple_loop(s, sys.loop));
        CHECK_FALSE(oracles::contractible(s, sys.loop));
        CHECK(sys.length == oracles::brute_force_sys(s, sys.length + 1));
        CHECK(hsys.length == oracles::brute_force_sys_h(s, hsys.length + 1));
    }
}

TEST_CASE("shorten_to_simple") {
    auto s = grid_torus(4);
    auto b = Z2HomologyBasis::compute(s);

    SUBCASE("a simple loop is returned unchanged") {
        EdgeLoop p{{0, 4, 8, 12}};
        CHECK(shorten_to_simple(s, b, p) == p);
    }

    SUBCASE("figure-eight keeps the nontrivial lobe") {
        // trivial lobe (face boundary) followed by a meridian, both through 0
        EdgeLoop eight{{0, 1, 5, 0, 4, 8, 12}};
        EdgeLoop out = shorten_to_simple(s, b, eight);
        CHECK(out.vertices == std::vector<int>{0, 4, 8, 12});
    }

    SUBCASE("trivial class is rejected") {
        EdgeLoop face{{0, 1, 5}};
        CHECK_THROWS_AS(shorten_to_simple(s, b, face), Error);
    }

    SUBCASE("random nontrivial walks reduce to simple nontrivial loops") {
        std::mt19937_64 rng(7);
        auto sys = homological_systole(s);
        std::uniform_int_distribution<int> coin(0, 5);
        for (int trial = 0; trial < 200; ++trial) {
            // meridian padded with random bounce noise
            EdgeLoop walk = sys.loop;
            for (int i = 0; i < 3; ++i) {
                size_t at = std::uniform_int_distribution<size_t>(0, walk.vertices.size() - 1)(rng);
                int v = walk.vertices[at];
                std::vector<int> nbrs;
                for (int t : s.vertex_faces(v))
                    for (int w : s.face(t))
                        if (w != v) nbrs.push_back(w);
                int w = nbrs[static_cast<size_t>(coin(rng)) % nbrs.size()];
                walk.vertices.insert(walk.vertices.begin() + static_cast<long>(at),
                                     {walk.vertices[at], w});
            }
            if (!cycle_signature(b, walk).any()) continue;
            EdgeLoop out = shorten_to_simple(s, b, walk);
            CHECK(is_simple_loop(s, out));
            CHECK(cycle_signature(b, out).any());
            CHECK(out.length() <= walk.length());
        }
    }
}

TEST_CASE("split_into_simple_loops covers the walk") {
    EdgeLoop eight{{0, 1, 5, 0, 4, 8, 12}};
    auto pieces = split_into_simple_loops(eight);
    REQUIRE(pieces.size() == 2);
    int total = 0;
    for (const auto& p : pieces) total += p.length();
    CHECK(total == eight.length());

    // backtracks cancel entirely
    EdgeLoop backtrack{{0, 1, 0, 4}};
    CHECK(split_into_simple_loops(backtrack).empty());
}

TEST_CASE("separation test against the signature test") {
    auto s = grid_torus(4);
    auto b = Z2HomologyBasis::compute(s);

    // a face boundary separates (one side is the face itself)
    EdgeLoop face{{0, 1, 5}};
    CHECK_FALSE(is_nonseparating(s, face));
    CHECK(is_contractible(s, face));

    EdgeLoop meridian{{0, 4, 8, 12}};
    CHECK(is_nonseparating(s, meridian));
    CHECK_FALSE(is_contractible(s, meridian));

    CHECK_THROWS_AS(is_nonseparating(s, EdgeLoop{{0, 4, 8, 12, 0, 1, 5}}), Error);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        EdgeLoop p = random_simple_loop(s, rng);
        CHECK(is_nonseparating(s, p) == cycle_signature(b, p).any());
    }
}

TEST_CASE("deterministic output under different thread budgets") {
    auto s = genus_polygon(2, 2);
    setenv("SYSTOLICA_THREADS", "1", 1);
    auto serial_h = homological_systole(s);
    auto serial = homotopy_systole(s);
    setenv("SYSTOLICA_THREADS", "8", 1);
    auto parallel_h = homological_systole(s);
    auto parallel = homotopy_systole(s);
    unsetenv("SYSTOLICA_THREADS");
    CHECK(serial_h.loop == parallel_h.loop);
    CHECK(serial.loop == parallel.loop);
}
