#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "systolica/generators.hpp"
#include "systolica/mesh_io.hpp"
#include "systolica/systole.hpp"
#include "systolica/verify.hpp"

using namespace systolica;

TEST_CASE("generators produce valid surfaces with the advertised shapes") {
    auto g3 = grid_torus(3);
    CHECK(g3.vertex_count() == 9);
    CHECK(g3.edge_count() == 27);
    CHECK(g3.face_count() == 18);
    CHECK(g3.genus() == 1);

    auto sub = subdivide(g3, 1);
    CHECK(sub.face_count() == 72);
    CHECK(sub.euler_characteristic() == 0);

    auto gp = genus_polygon(2, 2);
    CHECK(gp.genus() == 2);
    CHECK(gp.orientable());

    CHECK_THROWS_AS(grid_torus(2), Error);
    CHECK_THROWS_AS(genus_polygon(2, 1), Error);
    CHECK_THROWS_AS(genus_polygon(0, 2), Error);
}

TEST_CASE("random flips preserve counts and genus") {
    auto s = grid_torus(5);
    auto f = random_flips(s, 25, 9);
    CHECK(f.vertex_count() == s.vertex_count());
    CHECK(f.edge_count() == s.edge_count());
    CHECK(f.face_count() == s.face_count());
    CHECK(f.genus() == s.genus());
    // same seed reproduces, flips actually happened
    CHECK(random_flips(s, 25, 9) == f);
    CHECK_FALSE(f == s);
}

TEST_CASE("generate dispatch") {
    GenerateParams p;
    p.k = 4;
    CHECK(generate("grid-torus", p, 0).face_count() == 32);
    CHECK(generate("sphere-tetra", {}, 0).face_count() == 4);
    CHECK(generate("csaszar-torus", {}, 0).face_count() == 14);
    CHECK(generate("genus2-small", {}, 0).genus() == 2);
    GenerateParams sub;
    sub.rounds = 1;
    auto host = csaszar_torus();
    CHECK(generate("subdivide", sub, 0, &host).face_count() == 56);
    CHECK_THROWS_AS(generate("subdivide", sub, 0, nullptr), Error);
    CHECK_THROWS_AS(generate("nope", {}, 0), Error);
}

TEST_CASE("TRI round trip is byte exact") {
    const std::string text = "TRI 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
    auto s = parse_tri(text);
    CHECK(s.face_count() == 4);
    CHECK(s.genus() == 0);
    CHECK(write_tri(s) == text);

    for (const auto& fixture : {csaszar_torus(), grid_torus(4), genus2_small()}) {
        auto round = parse_tri(write_tri(fixture));
        CHECK(round == fixture);
        CHECK(write_tri(round) == write_tri(fixture));
    }
}

TEST_CASE("TRI parser reports the offending line") {
    // truncated: promised 4 faces, delivers 2
    try {
        parse_tri("TRI 4 4\n0 1 2\n0 1 3\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrCode::ParseError);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_tri("TRI 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3"), Error);  // no trailing newline
    CHECK_THROWS_AS(parse_tri("TRI x 4\n"), Error);
    CHECK_THROWS_AS(parse_tri("0 1 2\n"), Error);
    CHECK_THROWS_AS(parse_tri("TRI 9 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"), Error); // vertex count mismatch

    // comments are fine
    auto s = parse_tri("# fixture\nTRI 4 4\n0 1 2\n0 1 3\n# middle\n0 2 3\n1 2 3\n");
    CHECK(s.face_count() == 4);
}

TEST_CASE("OFF reader ignores coordinates and accepts only triangles") {
    const std::string off = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";
    auto s = parse_off(off);
    CHECK(s.face_count() == 4);
    CHECK(s.genus() == 0);

    const std::string quad = "OFF\n4 1 4\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
    CHECK_THROWS_AS(parse_off(quad), Error);
}

TEST_CASE("PATH and SIMPLEX block parsing") {
    auto s = tetra_sphere();
    write_file("/tmp/systolica_test_tet.tri", write_tri(s));
    write_file("/tmp/systolica_test.path",
               "PATH systolica_test_tet.tri 3 closed\n"
               "0 0.5 0 0.5 0.5 0.5 0\n"
               "1 0.5 0.5 0 0.5 0 0.5\n"
               "2 0.5 0 0.5 0.5 0.5 0\n");
    auto lp = load_path_file("/tmp/systolica_test.path", "/tmp");
    CHECK(lp.path.segments.size() == 3);
    CHECK(lp.path.closed);
    CHECK(lp.surface->face_count() == 4);

    auto simplex = parse_simplex("SIMPLEX 2 2\n0 0\n1 0\n0 1\n");
    CHECK(simplex.dim() == 2);
    CHECK(simplex_volume(simplex) == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_simplex("SIMPLEX 2 2\n0 0\n1 0\n"), Error);
}

TEST_CASE("verification rows carry the expected assertions") {
    std::vector<CorpusEntry> corpus;
    corpus.push_back({"sphere", tetra_sphere(), "t"});
    corpus.push_back({"torus", csaszar_torus(), "c"});
    corpus.push_back({"genus2", genus2_small(), "g"});

    VerifyOptions opts;
    auto out = verify_corpus(corpus, opts);
    REQUIRE(out.rows.size() == 3);
    CHECK(out.all_ok);

    CHECK_FALSE(out.rows[0].sys.has_value());  // sphere: N/A columns
    CHECK_FALSE(out.rows[0].ratio1.has_value());
    CHECK(out.rows[0].fill_tets == 16);

    CHECK(out.rows[1].sys == 3);
    CHECK(out.rows[1].sys_h == 3);
    CHECK(*out.rows[1].sys <= *out.rows[1].sys_h);
    CHECK(out.rows[1].fill_tets == 80);

    CHECK(out.rows[2].ratio2.has_value());
}

TEST_CASE("subdivision keeps the systole in [sys, 2 sys]") {
    for (const auto& base : {csaszar_torus(), genus2_small()}) {
        int prev = homotopy_systole(base).length;
        auto cur = base;
        for (int round = 1; round <= 2; ++round) {
            cur = subdivide(cur, 1);
            int next = homotopy_systole(cur).length;
            CHECK(next >= prev);
            CHECK(next <= 2 * prev);
            prev = next;
        }
    }
}

TEST_CASE("verify emission is byte deterministic across thread budgets") {
    auto corpus = [&] {
        std::vector<CorpusEntry> c;
        c.push_back({"torus", csaszar_torus(), "c"});
        c.push_back({"grid", grid_torus(4), "g"});
        c.push_back({"genus2", genus2_small(), "h"});
        return c;
    }();

    VerifyOptions serial;
    serial.threads = 1;
    VerifyOptions parallel;
    parallel.threads = 8;

    setenv("SYSTOLICA_THREADS", "1", 1);
    auto a = verify_corpus(corpus, serial);
    unsetenv("SYSTOLICA_THREADS");
    auto b = verify_corpus(corpus, parallel);

    CHECK(rows_to_csv(a, 0) == rows_to_csv(b, 0));
    CHECK(rows_to_json(a, 0) == rows_to_json(b, 0));
}

TEST_CASE("fill report rendering") {
    auto r = fill_report(csaszar_torus());
    auto text = fill_report_to_text(r);
    CHECK(text.find("80") != std::string::npos);
    auto json = fill_report_to_json(r);
    CHECK(json.find("\"schema\": \"systolica/1\"") != std::string::npos);
    CHECK(json.find("\"tet_count\": 80") != std::string::npos);
}
