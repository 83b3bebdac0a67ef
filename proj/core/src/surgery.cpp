#include "systolica/surgery.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <string>
#include <unordered_map>

#include "cutting.hpp"
#include "systolica/systole.hpp"

namespace systolica {

namespace {

void require_closed_orientable(const TriangulatedSurface& s, const char* who) {
    require(s.closed(), ErrCode::NotClosed, std::string(who) + " needs a closed surface");
    require(s.orientable(), ErrCode::NotOrientable, std::string(who) + " refuses non-orientable surfaces");
}

std::array<int, 3> sorted_tri(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

} // namespace

std::pair<TriangulatedSurface, CutRecord> cut_along(const TriangulatedSurface& s, const EdgeLoop& p) {
    require_closed_orientable(s, "cut_along");
    require(is_simple_loop(s, p), ErrCode::NotSimple, "cut loop must be simple");
    require(is_nonseparating(s, p), ErrCode::SeparatingLoop, "loop separates the surface");

    auto raw = detail::cut_open(s, p);
    CutRecord rec;
    rec.loop = p;
    rec.copy_a = raw.copy_a;
    rec.copy_b = raw.copy_b;

    TriangulatedSurface cut = TriangulatedSurface::build(raw.triangles, /*allow_boundary=*/true);
    require(boundary_components(cut).size() == 2, ErrCode::InternalInvariant,
            "cut along a nonseparating loop must leave two boundary circles");
    return {std::move(cut), std::move(rec)};
}

std::pair<TriangulatedSurface, CutRecord> cone_boundaries(const TriangulatedSurface& cut, CutRecord rec) {
    auto circles = boundary_components(cut);
    require(circles.size() == 2, ErrCode::InvalidParams, "coning expects exactly two boundary circles");
    const int len = rec.loop.length();
    require(circles[0].length() == len && circles[1].length() == len, ErrCode::InvalidParams,
            "boundary circles disagree with the cut record");

    // match circles to the record's copies by vertex content
    auto is_copy = [](const EdgeLoop& circle, const std::vector<int>& copy) {
        std::vector<int> a = circle.vertices, b = copy;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    };
    const EdgeLoop* circ_a = nullptr;
    const EdgeLoop* circ_b = nullptr;
    if (is_copy(circles[0], rec.copy_a) && is_copy(circles[1], rec.copy_b)) {
        circ_a = &circles[0];
        circ_b = &circles[1];
    } else if (is_copy(circles[1], rec.copy_a) && is_copy(circles[0], rec.copy_b)) {
        circ_a = &circles[1];
        circ_b = &circles[0];
    } else {
        fail(ErrCode::InvalidParams, "boundary circles do not match the cut record copies");
    }

    rec.apex_a = cut.vertex_count();
    rec.apex_b = cut.vertex_count() + 1;

    std::vector<TriangulatedSurface::Tri> tris(cut.faces().begin(), cut.faces().end());
    auto cone = [&tris, len](const EdgeLoop& circle, int apex, std::vector<int>& ids) {
        for (int i = 0; i < len; ++i) {
            ids.push_back(static_cast<int>(tris.size()));
            tris.push_back({apex, circle.vertices[static_cast<size_t>(i)],
                            circle.vertices[static_cast<size_t>((i + 1) % len)]});
        }
    };
    cone(*circ_a, rec.apex_a, rec.cone_tris_a);
    cone(*circ_b, rec.apex_b, rec.cone_tris_b);

    TriangulatedSurface coned = [&] {
        try {
            return TriangulatedSurface::build(tris, /*allow_boundary=*/false);
        } catch (const Error& e) {
            if (e.code() == ErrCode::DuplicateTriangle)
                fail(ErrCode::ConingCollision,
                     std::string("cone triangle duplicates an existing one; surface not fillable at this "
                                 "triangulation (consider subdividing): ") +
                         e.what());
            throw;
        }
    }();
    return {std::move(coned), std::move(rec)};
}

std::pair<TriangulatedSurface, CutRecord> cut_and_cone_step(const TriangulatedSurface& s, int stage) {
    require_closed_orientable(s, "cut_and_cone_step");
    require(s.genus().value_or(0) >= 1, ErrCode::GenusZero, "nothing to cut on a sphere");

    const int facets_before = s.face_count();
    const int genus_before = *s.genus();

    SystoleResult sys = homological_systole(s);
    EdgeLoop loop = sys.loop;
    if (!is_simple_loop(s, loop)) loop = shorten_to_simple(s, Z2HomologyBasis::compute(s), loop);

    auto [cut, rec] = cut_along(s, loop);
    rec.stage = stage;
    auto [coned, done] = cone_boundaries(cut, std::move(rec));

    require(coned.face_count() == facets_before + 2 * loop.length(), ErrCode::InternalInvariant,
            "coning must add exactly 2*len triangles");
    require(coned.genus().value_or(-1) == genus_before - 1, ErrCode::InternalInvariant,
            "cut-and-cone must drop the genus by exactly one");
    return {std::move(coned), std::move(done)};
}

std::vector<Tetrahedralized3Complex::Tet> prism_shell(const TriangulatedSurface& sphere) {
    require_closed_orientable(sphere, "prism_shell");
    require(sphere.genus().value_or(-1) == 0, ErrCode::NotSphere, "prism shell is defined over a 2-sphere");

    const int V = sphere.vertex_count();
    std::vector<Tetrahedralized3Complex::Tet> tets;
    tets.reserve(static_cast<size_t>(sphere.face_count()) * 3);
    for (const auto& f : sphere.faces()) {
        // f is sorted ascending: the global vertex order
        const int v0 = f[0], v1 = f[1], v2 = f[2];
        const int w0 = v0 + V, w1 = v1 + V, w2 = v2 + V;
        tets.push_back({v0, v1, v2, w2});
        tets.push_back({v0, v1, w1, w2});
        tets.push_back({v0, w0, w1, w2});
    }
    return tets;
}

Filling3Complex cone_ball(const TriangulatedSurface& sphere) {
    auto tets = prism_shell(sphere);
    const int V = sphere.vertex_count();
    const int center = 2 * V;
    for (const auto& f : sphere.faces()) tets.push_back({f[0] + V, f[1] + V, f[2] + V, center});

    Filling3Complex ball = Tetrahedralized3Complex::build(tets);
    require(ball.tet_count() == 4 * sphere.face_count(), ErrCode::InternalInvariant,
            "ball must have exactly 4F tets");
    require(ball.boundary_triangles() ==
                [&] {
                    auto fs = sphere.faces();
                    std::sort(fs.begin(), fs.end());
                    return fs;
                }(),
            ErrCode::InternalInvariant, "ball boundary must be the input sphere, id for id");
    return ball;
}

Filling3Complex glue_back(const Filling3Complex& ball, std::span<const CutRecord> records) {
    std::vector<Tetrahedralized3Complex::Tet> tets = ball.tets();
    if (records.empty()) return Tetrahedralized3Complex::build(tets);

    Filling3Complex cur = ball;
    for (size_t k = records.size(); k-- > 0;) {
        const CutRecord& rec = records[k];
        const int len = rec.loop.length();
        require(static_cast<int>(rec.copy_a.size()) == len && static_cast<int>(rec.copy_b.size()) == len &&
                    rec.apex_a >= 0 && rec.apex_b >= 0,
                ErrCode::InvalidParams, "incomplete cut record at stage " + std::to_string(rec.stage));

        // both cone disks must be present in the current boundary
        auto disk_present = [&](int apex, const std::vector<int>& circle) {
            for (int i = 0; i < len; ++i) {
                auto tri = sorted_tri(apex, circle[static_cast<size_t>(i)],
                                      circle[static_cast<size_t>((i + 1) % len)]);
                auto tt = cur.triangle_tets(tri);
                if (tt.size() != 1) return false;
            }
            return true;
        };
        require(disk_present(rec.apex_a, rec.copy_a) && disk_present(rec.apex_b, rec.copy_b),
                ErrCode::MissingDisk,
                "cone disks of stage " + std::to_string(rec.stage) +
                    " are not in the current boundary; records must be glued in reverse cut order");

        std::unordered_map<int, int> rename;
        rename.reserve(static_cast<size_t>(len) + 1);
        rename[rec.apex_b] = rec.apex_a;
        for (int i = 0; i < len; ++i) rename[rec.copy_b[static_cast<size_t>(i)]] = rec.copy_a[static_cast<size_t>(i)];

        for (auto& t : tets) {
            for (int& v : t) {
                auto it = rename.find(v);
                if (it != rename.end()) v = it->second;
            }
        }

        try {
            cur = Tetrahedralized3Complex::build(tets);
        } catch (const Error& e) {
            if (e.code() == ErrCode::SimplicialityViolation)
                fail(ErrCode::SimplicialityViolation,
                     "gluing record of stage " + std::to_string(rec.stage) + " failed: " + e.what());
            throw;
        }

        // the identified cone triangles are now interior
        for (int i = 0; i < len; ++i) {
            auto tri = sorted_tri(rec.apex_a, rec.copy_a[static_cast<size_t>(i)],
                                  rec.copy_a[static_cast<size_t>((i + 1) % len)]);
            require(cur.triangle_tets(tri).size() == 2, ErrCode::InternalInvariant,
                    "identified cone triangle is not interior after gluing");
        }
    }
    return cur;
}

FillResult fill(const TriangulatedSurface& s) {
    require_closed_orientable(s, "fill");
    const auto t0 = std::chrono::steady_clock::now();

    FillingReport report;
    report.facet_counts.push_back(s.face_count());
    report.genus_sequence.push_back(*s.genus());

    std::vector<CutRecord> records;
    TriangulatedSurface cur = s;
    int stage = 0;
    while (*cur.genus() >= 1) {
        auto [next, rec] = cut_and_cone_step(cur, stage++);
        report.loop_lengths.push_back(rec.loop.length());
        report.facet_counts.push_back(next.face_count());
        report.genus_sequence.push_back(*next.genus());
        records.push_back(std::move(rec));
        cur = std::move(next);
    }

    Filling3Complex ball = cone_ball(cur);
    report.ball_tets = ball.tet_count();

    Filling3Complex filled = glue_back(ball, records);
    report.tet_count = filled.tet_count();
    report.ratio = static_cast<double>(report.tet_count) / static_cast<double>(s.face_count());

    // exact count identity: |T_N| = 4(|T_M| + 2*sum of loop lengths)
    long long sum_len = 0;
    for (int l : report.loop_lengths) sum_len += l;
    require(report.tet_count == 4 * (static_cast<long long>(s.face_count()) + 2 * sum_len),
            ErrCode::InternalInvariant, "tet count identity violated");

    // boundary must be the input triangulation, id for id
    auto bd = filled.boundary_triangles();
    auto in = s.faces();
    std::sort(in.begin(), in.end());
    report.boundary_matches_input = (bd == in);
    require(report.boundary_matches_input, ErrCode::InternalInvariant,
            "filling boundary differs from the input surface");

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(filled), std::move(report), std::move(records)};
}

TriangulatedSurface dehn_twist(const TriangulatedSurface& s, const EdgeLoop& p, int offset) {
    require_closed_orientable(s, "dehn_twist");
    require(is_simple_loop(s, p), ErrCode::NotSimple, "twist loop must be simple");
    require(is_nonseparating(s, p), ErrCode::SeparatingLoop, "twist loop must be nonseparating");
    const int len = p.length();
    require(offset >= 0 && offset < len, ErrCode::InvalidParams,
            "offset must lie in [0, loop length)");

    auto raw = detail::cut_open(s, p);
    // copy_b[j] reglues onto copy_a[(j - offset) mod len]
    std::unordered_map<int, int> rename;
    for (int j = 0; j < len; ++j)
        rename[raw.copy_b[static_cast<size_t>(j)]] =
            raw.copy_a[static_cast<size_t>(((j - offset) % len + len) % len)];

    std::vector<TriangulatedSurface::Tri> tris = std::move(raw.triangles);
    for (auto& t : tris) {
        for (int& v : t) {
            auto it = rename.find(v);
            if (it != rename.end()) v = it->second;
        }
        std::sort(t.begin(), t.end());
    }

    TriangulatedSurface twisted = [&] {
        try {
            return TriangulatedSurface::build(tris, /*allow_boundary=*/false);
        } catch (const Error& e) {
            if (e.category() == ErrCategory::Validation)
                fail(ErrCode::SimplicialityViolation,
                     std::string("regluing with offset ") + std::to_string(offset) +
                         " breaks simpliciality (consider subdividing first): " + e.what());
            throw;
        }
    }();

    require(twisted.vertex_count() == s.vertex_count() && twisted.face_count() == s.face_count() &&
                twisted.edge_count() == s.edge_count(),
            ErrCode::InternalInvariant, "twist must preserve V, E and F");
    return twisted;
}

} // namespace systolica
