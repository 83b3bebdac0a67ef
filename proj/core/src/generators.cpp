#include "systolica/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "systolica/surgery.hpp"
#include "systolica/systole.hpp"

namespace systolica {

namespace {

using Tri = TriangulatedSurface::Tri;

// A simplicial disk with its boundary tracked as ordered polylines, one per
// polygon side. Used to build identified-polygon surfaces.
struct Disk {
    int nverts = 0;
    std::vector<Tri> tris;
    std::vector<std::vector<int>> sides;
};

Disk coned_polygon(int sides) {
    Disk d;
    d.nverts = sides + 1; // center 0, corners 1..sides
    for (int i = 0; i < sides; ++i) {
        int a = 1 + i, b = 1 + (i + 1) % sides;
        d.tris.push_back({0, a, b});
        d.sides.push_back({a, b});
    }
    return d;
}

Disk barycentric_subdivide_disk(const Disk& in) {
    std::map<std::pair<int, int>, int> edge_id;
    auto eid = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto [it, fresh] = edge_id.try_emplace({a, b}, static_cast<int>(edge_id.size()));
        (void)fresh;
        return it->second;
    };
    for (const Tri& t : in.tris) {
        eid(t[0], t[1]);
        eid(t[1], t[2]);
        eid(t[0], t[2]);
    }
    const int V = in.nverts;
    const int E = static_cast<int>(edge_id.size());

    Disk out;
    out.nverts = V + E + static_cast<int>(in.tris.size());
    auto mid = [&](int a, int b) { return V + eid(a, b); };
    for (int f = 0; f < static_cast<int>(in.tris.size()); ++f) {
        const Tri& t = in.tris[static_cast<size_t>(f)];
        int ctr = V + E + f;
        const std::array<std::pair<int, int>, 3> es{{{t[0], t[1]}, {t[1], t[2]}, {t[0], t[2]}}};
        for (auto [a, b] : es) {
            out.tris.push_back({a, mid(a, b), ctr});
            out.tris.push_back({b, mid(a, b), ctr});
        }
    }
    for (const auto& side : in.sides) {
        std::vector<int> refined;
        for (size_t i = 0; i + 1 < side.size(); ++i) {
            refined.push_back(side[i]);
            refined.push_back(mid(side[i], side[i + 1]));
        }
        refined.push_back(side.back());
        out.sides.push_back(std::move(refined));
    }
    return out;
}

TriangulatedSurface build_sorted(std::vector<Tri> tris, bool allow_boundary = false) {
    for (Tri& t : tris) std::sort(t.begin(), t.end());
    return TriangulatedSurface::build(tris, allow_boundary);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace

TriangulatedSurface tetra_sphere() {
    return TriangulatedSurface::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

TriangulatedSurface csaszar_torus() {
    // faces {i, i+1, i+3} and {i, i+2, i+3} mod 7: every vertex pair is an
    // edge and every edge lies in exactly two faces
    std::vector<Tri> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return build_sorted(std::move(tris));
}

TriangulatedSurface genus2_small() {
    // remove face {0,1,3} from each of two 7-vertex tori and sew the copies
    // along the exposed triangle
    std::vector<Tri> tris;
    auto torus_faces = [] {
        std::vector<Tri> out;
        for (int i = 0; i < 7; ++i) {
            out.push_back({i, (i + 1) % 7, (i + 3) % 7});
            out.push_back({i, (i + 2) % 7, (i + 3) % 7});
        }
        return out;
    };
    const Tri removed{0, 1, 3};
    auto is_removed = [&removed](Tri t) {
        std::sort(t.begin(), t.end());
        return t == removed;
    };
    for (const Tri& t : torus_faces())
        if (!is_removed(t)) tris.push_back(t);
    // second copy: vertices 0,1,3 glue to the first copy's, others shift up
    auto remap = [](int v) {
        switch (v) {
        case 0: return 0;
        case 1: return 1;
        case 3: return 3;
        case 2: return 7;
        case 4: return 8;
        case 5: return 9;
        case 6: return 10;
        }
        return -1;
    };
    for (const Tri& t : torus_faces())
        if (!is_removed(t)) tris.push_back({remap(t[0]), remap(t[1]), remap(t[2])});
    return build_sorted(std::move(tris));
}

TriangulatedSurface grid_torus(int k) {
    require(k >= 3, ErrCode::InvalidParams, "grid torus needs k >= 3");
    auto id = [k](int i, int j) { return ((i % k + k) % k) * k + ((j % k + k) % k); };
    std::vector<Tri> tris;
    tris.reserve(static_cast<size_t>(2 * k * k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return build_sorted(std::move(tris));
}

TriangulatedSurface genus_polygon(int genus, int rounds) {
    require(genus >= 1, ErrCode::InvalidParams, "genus must be >= 1");
    require(rounds >= 2, ErrCode::InvalidParams,
            "identified polygons need at least 2 barycentric rounds to stay simplicial");

    Disk disk = coned_polygon(4 * genus);
    for (int r = 0; r < rounds; ++r) disk = barycentric_subdivide_disk(disk);

    // side word a b a^-1 b^-1 per handle: side 4j+2 is side 4j reversed,
    // side 4j+3 is side 4j+1 reversed
    UnionFind uf(disk.nverts);
    for (int j = 0; j < genus; ++j) {
        for (int off : {0, 1}) {
            const auto& fwd = disk.sides[static_cast<size_t>(4 * j + off)];
            const auto& rev = disk.sides[static_cast<size_t>(4 * j + 2 + off)];
            const size_t L = fwd.size();
            for (size_t t = 0; t < L; ++t) uf.unite(fwd[t], rev[L - 1 - t]);
        }
    }

    std::vector<int> dense(static_cast<size_t>(disk.nverts), -1);
    int next = 0;
    for (int v = 0; v < disk.nverts; ++v) {
        int r = uf.find(v);
        if (dense[static_cast<size_t>(r)] < 0) dense[static_cast<size_t>(r)] = next++;
        dense[static_cast<size_t>(v)] = dense[static_cast<size_t>(r)];
    }
    std::vector<Tri> tris;
    tris.reserve(disk.tris.size());
    for (const Tri& t : disk.tris)
        tris.push_back({dense[static_cast<size_t>(t[0])], dense[static_cast<size_t>(t[1])],
                        dense[static_cast<size_t>(t[2])]});

    TriangulatedSurface out = build_sorted(std::move(tris));
    require(out.genus().value_or(-1) == genus, ErrCode::InternalInvariant,
            "identified polygon has genus " + std::to_string(out.genus().value_or(-1)) +
                ", expected " + std::to_string(genus));
    return out;
}

TriangulatedSurface subdivide(const TriangulatedSurface& s, int rounds) {
    require(rounds >= 0, ErrCode::InvalidParams, "rounds must be >= 0");
    std::vector<Tri> tris(s.faces().begin(), s.faces().end());
    int nverts = s.vertex_count();
    bool bmode = s.boundary_mode();

    for (int r = 0; r < rounds; ++r) {
        std::map<std::pair<int, int>, int> mid_id;
        auto mid = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            auto [it, fresh] = mid_id.try_emplace({a, b}, 0);
            if (fresh) it->second = nverts + static_cast<int>(mid_id.size()) - 1;
            return it->second;
        };
        std::vector<Tri> next;
        next.reserve(tris.size() * 4);
        for (const Tri& t : tris) {
            int mab = mid(t[0], t[1]), mbc = mid(t[1], t[2]), mac = mid(t[0], t[2]);
            next.push_back({t[0], mab, mac});
            next.push_back({t[1], mbc, mab});
            next.push_back({t[2], mac, mbc});
            next.push_back({mab, mbc, mac});
        }
        nverts += static_cast<int>(mid_id.size());
        tris = std::move(next);
    }
    return build_sorted(std::move(tris), bmode);
}

std::vector<EdgeLoop> candidate_nonseparating_loops(const TriangulatedSurface& s, int max_count) {
    require(s.closed() && s.orientable() && s.genus().value_or(0) >= 1, ErrCode::GenusZero,
            "no nonseparating loop exists");
    auto basis = Z2HomologyBasis::compute(s);

    std::set<std::vector<int>> seen;
    const int V = s.vertex_count();
    std::vector<std::vector<int>> adj(static_cast<size_t>(V));
    for (int e = 0; e < s.edge_count(); ++e) {
        auto [a, b] = s.edge(e);
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    for (int src = 0; src < V; ++src) {
        std::vector<int> dist(static_cast<size_t>(V), -1), parent(static_cast<size_t>(V), -1);
        std::vector<int> order{src};
        dist[static_cast<size_t>(src)] = 0;
        for (size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int u : adj[static_cast<size_t>(v)]) {
                if (dist[static_cast<size_t>(u)] < 0) {
                    dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(v)] + 1;
                    parent[static_cast<size_t>(u)] = v;
                    order.push_back(u);
                }
            }
        }
        for (int e = 0; e < s.edge_count(); ++e) {
            auto [x, y] = s.edge(e);
            if (parent[static_cast<size_t>(x)] == y || parent[static_cast<size_t>(y)] == x) continue;
            std::vector<int> up;
            for (int v = x; v >= 0; v = parent[static_cast<size_t>(v)]) up.push_back(v);
            std::reverse(up.begin(), up.end());
            for (int v = y; parent[static_cast<size_t>(v)] >= 0; v = parent[static_cast<size_t>(v)]) up.push_back(v);
            EdgeLoop walk{std::move(up)};
            if (!basis.loop_signature(walk).any()) continue;
            EdgeLoop simple = shorten_to_simple(s, basis, walk);
            seen.insert(canonical_loop_form(simple).vertices);
        }
    }

    std::vector<EdgeLoop> out;
    out.reserve(seen.size());
    for (const auto& v : seen) out.push_back(EdgeLoop{v});
    std::sort(out.begin(), out.end(), [](const EdgeLoop& a, const EdgeLoop& b) {
        return a.length() != b.length() ? a.length() < b.length() : a.vertices < b.vertices;
    });
    if (max_count > 0 && static_cast<int>(out.size()) > max_count) out.resize(static_cast<size_t>(max_count));
    return out;
}

TriangulatedSurface twist_generator(const TriangulatedSurface& s, int offset, int loop_choice) {
    require(loop_choice >= 0, ErrCode::InvalidParams, "loop choice must be >= 0");
    auto loops = candidate_nonseparating_loops(s, loop_choice + 1);
    require(loop_choice < static_cast<int>(loops.size()), ErrCode::InvalidParams,
            "loop choice exceeds the candidate count");
    return dehn_twist(s, loops[static_cast<size_t>(loop_choice)], offset);
}

TriangulatedSurface random_flips(const TriangulatedSurface& s, int count, std::uint64_t seed) {
    require(count >= 0, ErrCode::InvalidParams, "flip count must be >= 0");
    std::mt19937_64 rng(seed);
    TriangulatedSurface cur = s;

    for (int done = 0; done < count;) {
        std::vector<int> edges(static_cast<size_t>(cur.edge_count()));
        std::iota(edges.begin(), edges.end(), 0);
        std::shuffle(edges.begin(), edges.end(), rng);

        bool flipped = false;
        for (int e : edges) {
            if (cur.edge_degree(e) != 2) continue;
            auto [u, v] = cur.edge(e);
            auto fs = cur.edge_faces(e);
            auto third = [&](int t) {
                for (int w : cur.face(t))
                    if (w != u && w != v) return w;
                return -1;
            };
            int x = third(fs[0]), y = third(fs[1]);
            if (cur.has_edge(x, y)) continue;

            std::vector<Tri> tris(cur.faces().begin(), cur.faces().end());
            for (int t : {fs[0], fs[1]}) {
                Tri& f = tris[static_cast<size_t>(t)];
                f = (t == fs[0]) ? Tri{x, y, u} : Tri{x, y, v};
                std::sort(f.begin(), f.end());
            }
            try {
                cur = TriangulatedSurface::build(tris, cur.boundary_mode());
                flipped = true;
                break;
            } catch (const Error&) {
                continue; // this flip breaks the complex; try another edge
            }
        }
        require(flipped, ErrCode::SimplicialityViolation,
                "no edge admits a flip after " + std::to_string(done) + " of " + std::to_string(count));
        ++done;
    }
    return cur;
}

TriangulatedSurface generate(const std::string& kind, const GenerateParams& params, std::uint64_t seed,
                             const TriangulatedSurface* input) {
    auto need_input = [&]() -> const TriangulatedSurface& {
        require(input != nullptr, ErrCode::InvalidParams, "kind '" + kind + "' transforms an input surface");
        return *input;
    };
    if (kind == "sphere-tetra") return tetra_sphere();
    if (kind == "csaszar-torus") return csaszar_torus();
    if (kind == "genus2-small") return genus2_small();
    if (kind == "grid-torus") return grid_torus(params.k);
    if (kind == "genus-polygon") return genus_polygon(params.genus, params.rounds == 0 ? 2 : params.rounds);
    if (kind == "subdivide") return subdivide(need_input(), params.rounds);
    if (kind == "twist") return twist_generator(need_input(), params.offset, params.loop_choice);
    if (kind == "random-flips") return random_flips(need_input(), params.count, seed);
    fail(ErrCode::InvalidParams, "unknown generator kind '" + kind + "'");
}

EdgeLoop random_simple_loop(const TriangulatedSurface& s, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick_v(0, s.vertex_count() - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> walk{pick_v(rng)};
        std::vector<int> at(static_cast<size_t>(s.vertex_count()), -1);
        at[static_cast<size_t>(walk[0])] = 0;
        for (int step = 0; step < 4 * s.vertex_count(); ++step) {
            int v = walk.back();
            std::vector<int> nbrs;
            for (int t : s.vertex_faces(v))
                for (int w : s.face(t))
                    if (w != v) nbrs.push_back(w);
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
            int u = nbrs[static_cast<size_t>(
                std::uniform_int_distribution<int>(0, static_cast<int>(nbrs.size()) - 1)(rng))];
            if (at[static_cast<size_t>(u)] >= 0) {
                std::vector<int> cycle(walk.begin() + at[static_cast<size_t>(u)], walk.end());
                if (cycle.size() >= 3) return EdgeLoop{std::move(cycle)};
                break; // immediate backtrack; start over
            }
            at[static_cast<size_t>(u)] = static_cast<int>(walk.size());
            walk.push_back(u);
        }
    }
    fail(ErrCode::InternalInvariant, "random walk failed to close a simple cycle");
}

PolygonalPath random_closed_path(const TriangulatedSurface& s, int steps, std::mt19937_64& rng) {
    require(steps >= 2, ErrCode::InvalidParams, "need at least 2 steps");

    // random walk on the dual graph, then a shortest dual path back home
    std::uniform_int_distribution<int> pick_f(0, s.face_count() - 1);
    const int start = pick_f(rng);
    std::vector<int> faces{start};
    std::vector<int> crossed; // edge crossed between consecutive faces
    auto dual_moves = [&s](int face) {
        const auto& f = s.face(face);
        std::vector<std::pair<int, int>> moves; // (edge, neighbor face)
        for (int e : {s.find_edge(f[0], f[1]), s.find_edge(f[1], f[2]), s.find_edge(f[0], f[2])}) {
            if (s.edge_degree(e) != 2) continue;
            auto ef = s.edge_faces(e);
            moves.emplace_back(e, ef[0] == face ? ef[1] : ef[0]);
        }
        return moves;
    };
    int cur = start;
    for (int i = 0; i < steps; ++i) {
        auto moves = dual_moves(cur);
        auto mv = moves[static_cast<size_t>(
            std::uniform_int_distribution<int>(0, static_cast<int>(moves.size()) - 1)(rng))];
        crossed.push_back(mv.first);
        faces.push_back(mv.second);
        cur = mv.second;
    }
    if (cur != start) {
        // BFS in the dual back to the start face
        std::vector<int> via_edge(static_cast<size_t>(s.face_count()), -1);
        std::vector<int> via_face(static_cast<size_t>(s.face_count()), -1);
        std::vector<int> order{cur};
        via_face[static_cast<size_t>(cur)] = cur;
        for (size_t head = 0; head < order.size() && via_face[static_cast<size_t>(start)] < 0; ++head) {
            for (auto [e, nxt] : dual_moves(order[head])) {
                if (via_face[static_cast<size_t>(nxt)] < 0) {
                    via_face[static_cast<size_t>(nxt)] = order[head];
                    via_edge[static_cast<size_t>(nxt)] = e;
                    order.push_back(nxt);
                }
            }
        }
        std::vector<std::pair<int, int>> back; // (edge, face) from cur to start
        for (int f = start; f != cur; f = via_face[static_cast<size_t>(f)])
            back.emplace_back(via_edge[static_cast<size_t>(f)], f);
        std::reverse(back.begin(), back.end());
        for (auto [e, f] : back) {
            crossed.push_back(e);
            faces.push_back(f);
        }
    }
    // the final face equals the start; drop it to make the walk cyclic
    faces.pop_back();

    // a junction point on each crossed edge
    std::uniform_real_distribution<double> pick_t(0.2, 0.8);
    std::vector<double> ts;
    ts.reserve(crossed.size());
    for (size_t i = 0; i < crossed.size(); ++i) ts.push_back(pick_t(rng));

    auto bary_on_edge = [&](int face, int e, double t) {
        const auto& f = s.face(face);
        auto [u, v] = s.edge(e); // u < v; t runs toward v
        Bary b{0.0, 0.0, 0.0};
        for (int c = 0; c < 3; ++c) {
            if (f[static_cast<size_t>(c)] == u) b[static_cast<size_t>(c)] = 1.0 - t;
            if (f[static_cast<size_t>(c)] == v) b[static_cast<size_t>(c)] = t;
        }
        return b;
    };

    PolygonalPath path;
    path.host = &s;
    path.closed = true;
    const size_t n = faces.size();
    for (size_t i = 0; i < n; ++i) {
        // segment inside faces[i]: from the junction behind it to the one ahead
        int e_in = crossed[(i + n - 1) % n];
        int e_out = crossed[i];
        path.segments.push_back({faces[i], bary_on_edge(faces[i], e_in, ts[(i + n - 1) % n]),
                                 bary_on_edge(faces[i], e_out, ts[i])});
    }
    validate_path(path);
    return path;
}

} // namespace systolica
