#include "cutting.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

namespace systolica::detail {

namespace {

long long key2(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
}

// Cyclic fan of faces around v, as (face, crossing-edge-to-next) pairs.
// Crossing edges are the link edges (v,u); on a closed surface the fan is a
// cycle.
std::vector<std::pair<int, int>> face_fan(const TriangulatedSurface& s, int v) {
    auto inc = s.vertex_faces(v);
    // neighbor pair of v inside face t
    auto others = [&](int t) {
        const auto& f = s.face(t);
        std::array<int, 2> o{};
        int k = 0;
        for (int u : f)
            if (u != v) o[static_cast<size_t>(k++)] = u;
        return o;
    };
    std::unordered_map<int, std::array<int, 2>> via; // neighbor u -> the <=2 faces with edge (v,u)
    for (int t : inc) {
        for (int u : others(t)) {
            auto it = via.find(u);
            if (it == via.end())
                via[u] = {t, -1};
            else
                it->second[1] = t;
        }
    }

    std::vector<std::pair<int, int>> fan;
    fan.reserve(inc.size());
    int cur = inc[0];
    auto o0 = others(cur);
    int enter = o0[0]; // pretend we came across edge (v, o0[0])
    for (size_t step = 0; step < inc.size(); ++step) {
        auto o = others(cur);
        int exit = (o[0] == enter) ? o[1] : o[0];
        fan.emplace_back(cur, exit);
        const auto& pair = via[exit];
        int nxt = (pair[0] == cur) ? pair[1] : pair[0];
        require(nxt >= 0, ErrCode::InternalInvariant, "open fan around vertex " + std::to_string(v));
        enter = exit;
        cur = nxt;
    }
    require(cur == inc[0], ErrCode::InternalInvariant, "fan around vertex " + std::to_string(v) + " did not close");
    return fan;
}

} // namespace

RawCut cut_open(const TriangulatedSurface& s, const EdgeLoop& loop) {
    validate_loop(s, loop);
    require(is_simple_loop(s, loop), ErrCode::NotSimple, "cut loop must be simple");
    require(s.closed(), ErrCode::NotClosed, "cut host must be closed");

    const int L = loop.length();
    const int V = s.vertex_count();
    std::vector<int> pos_of(static_cast<size_t>(V), -1);
    for (int i = 0; i < L; ++i) pos_of[static_cast<size_t>(loop.vertices[static_cast<size_t>(i)])] = i;

    // For each loop vertex, split its face fan at the two loop edges into
    // two arcs; side[face][corner] = 0/1 once arcs are labeled consistently.
    // arcs_at[i] maps face -> local arc id (0 or 1) around loop vertex i.
    std::vector<std::unordered_map<int, int>> arc_at(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i) {
        int v = loop.vertices[static_cast<size_t>(i)];
        int prv = loop.vertices[static_cast<size_t>((i + L - 1) % L)];
        int nxt = loop.vertices[static_cast<size_t>((i + 1) % L)];
        auto fan = face_fan(s, v);
        // walking the fan, an arc ends whenever the crossing edge is a loop
        // edge (v,prv) or (v,nxt)
        int arc = 0;
        int switches = 0;
        std::vector<std::pair<int, int>> assign;
        for (auto [t, exit] : fan) {
            assign.emplace_back(t, arc);
            if (exit == prv || exit == nxt) {
                arc ^= 1;
                ++switches;
            }
        }
        require(switches == 2, ErrCode::InternalInvariant, "loop edges do not split the fan in two");
        // the fan start may sit mid-arc: entries labeled before the first
        // switch belong with the entries after the second
        auto& m = arc_at[static_cast<size_t>(i)];
        for (auto [t, a] : assign) m[t] = a;
    }

    // Propagate a global side labeling: a face containing loop edge
    // (p[i], p[i+1]) must land on the same side at both endpoints.
    // flipped[i] says whether local arc 0 at vertex i means global side B.
    std::vector<int> flipped(static_cast<size_t>(L), -1);
    flipped[0] = 0;
    for (int i = 0; i < L; ++i) {
        int j = (i + 1) % L;
        int a = loop.vertices[static_cast<size_t>(i)], b = loop.vertices[static_cast<size_t>(j)];
        int e = s.find_edge(a, b);
        int t = s.edge_faces(e)[0];
        int side_at_i = arc_at[static_cast<size_t>(i)].at(t) ^ flipped[static_cast<size_t>(i)];
        int need = arc_at[static_cast<size_t>(j)].at(t) ^ side_at_i;
        if (flipped[static_cast<size_t>(j)] < 0)
            flipped[static_cast<size_t>(j)] = need;
        else
            require(flipped[static_cast<size_t>(j)] == need, ErrCode::NotOrientable,
                    "loop is one-sided; cutting needs a two-sided loop");
    }

    RawCut out;
    out.vertex_count = V + L;
    out.copy_a = loop.vertices;
    out.copy_b.resize(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i) out.copy_b[static_cast<size_t>(i)] = V + i;

    out.triangles.reserve(s.faces().size());
    for (int t = 0; t < s.face_count(); ++t) {
        TriangulatedSurface::Tri f = s.face(t);
        for (int& v : f) {
            int i = pos_of[static_cast<size_t>(v)];
            if (i < 0) continue;
            int side = arc_at[static_cast<size_t>(i)].at(t) ^ flipped[static_cast<size_t>(i)];
            if (side == 1) v = V + i;
        }
        std::sort(f.begin(), f.end());
        out.triangles.push_back(f);
    }
    return out;
}

bool contractible_lockstep(const TriangulatedSurface& s, const EdgeLoop& loop) {
    const size_t n = loop.vertices.size();
    std::vector<char> is_loop_edge(static_cast<size_t>(s.edge_count()), 0);
    for (size_t i = 0; i < n; ++i) {
        int e = s.find_edge(loop.vertices[i], loop.vertices[(i + 1) % n]);
        require(e >= 0, ErrCode::LoopNotOnSurface, "loop edge missing");
        is_loop_edge[static_cast<size_t>(e)] = 1;
    }

    struct Side {
        std::vector<int> queue;
        size_t head = 0;
        std::unordered_map<int, char> verts, edges;
        int faces = 0;
        int euler() const {
            return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + faces;
        }
    };
    std::vector<signed char> owner(static_cast<size_t>(s.face_count()), -1);
    Side side[2];
    {
        int e0 = s.find_edge(loop.vertices[0], loop.vertices[1]);
        auto fs = s.edge_faces(e0);
        for (int k = 0; k < 2; ++k) {
            owner[static_cast<size_t>(fs[k])] = static_cast<signed char>(k);
            side[k].queue.push_back(fs[k]);
        }
    }

    auto claim_cells = [&s](Side& sd, int face) {
        ++sd.faces;
        const auto& f = s.face(face);
        for (int v : f) sd.verts.emplace(v, 1);
        for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[1], f[2]}, std::pair{f[0], f[2]}})
            sd.edges.emplace(s.find_edge(a, b), 1);
    };
    claim_cells(side[0], side[0].queue[0]);
    claim_cells(side[1], side[1].queue[0]);

    // expands one face; returns -1 normally, the meeting side on contact
    auto step = [&](int k) -> bool {
        Side& sd = side[k];
        int face = sd.queue[sd.head++];
        const auto& f = s.face(face);
        for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[1], f[2]}, std::pair{f[0], f[2]}}) {
            int e = s.find_edge(a, b);
            if (is_loop_edge[static_cast<size_t>(e)]) continue;
            for (int nxt : s.edge_faces(e)) {
                if (owner[static_cast<size_t>(nxt)] == static_cast<signed char>(k)) continue;
                if (owner[static_cast<size_t>(nxt)] >= 0) return true; // floods met: nonseparating
                owner[static_cast<size_t>(nxt)] = static_cast<signed char>(k);
                claim_cells(sd, nxt);
                sd.queue.push_back(nxt);
            }
        }
        return false;
    };

    for (;;) {
        bool a_done = side[0].head == side[0].queue.size();
        bool b_done = side[1].head == side[1].queue.size();
        if (a_done || b_done) {
            const Side& done = a_done ? side[0] : side[1];
            int chi = done.euler();
            return chi == 1 || (s.euler_characteristic() - chi) == 1;
        }
        if (step(0)) return false;
        if (side[1].head < side[1].queue.size() && step(1)) return false;
    }
}

std::vector<ComponentStats> soup_components(const std::vector<TriangulatedSurface::Tri>& tris) {
    std::unordered_map<long long, std::array<int, 3>> edge_info; // key -> {count, face0, face1}
    edge_info.reserve(tris.size() * 2);
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        const auto& f = tris[static_cast<size_t>(t)];
        const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
        for (auto [a, b] : es) {
            auto& info = edge_info.try_emplace(key2(a, b), std::array<int, 3>{0, -1, -1}).first->second;
            require(info[0] < 2, ErrCode::InternalInvariant, "non-manifold edge in cut soup");
            info[static_cast<size_t>(1 + info[0])] = t;
            ++info[0];
        }
    }

    std::vector<int> comp(tris.size(), -1);
    int ncomp = 0;
    for (int seed = 0; seed < static_cast<int>(tris.size()); ++seed) {
        if (comp[static_cast<size_t>(seed)] >= 0) continue;
        int id = ncomp++;
        std::vector<int> stack{seed};
        comp[static_cast<size_t>(seed)] = id;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            const auto& f = tris[static_cast<size_t>(t)];
            const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
            for (auto [a, b] : es) {
                const auto& info = edge_info.at(key2(a, b));
                for (int k = 1; k <= info[0]; ++k) {
                    int u = info[static_cast<size_t>(k)];
                    if (comp[static_cast<size_t>(u)] < 0) {
                        comp[static_cast<size_t>(u)] = id;
                        stack.push_back(u);
                    }
                }
            }
        }
    }

    std::vector<ComponentStats> stats(static_cast<size_t>(ncomp));
    std::vector<std::map<int, std::vector<int>>> bnd(static_cast<size_t>(ncomp)); // vertex -> boundary nbrs
    std::vector<std::vector<int>> verts(static_cast<size_t>(ncomp));
    for (auto& [key, info] : edge_info) {
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xffffffffLL);
        int c = comp[static_cast<size_t>(info[1])];
        ++stats[static_cast<size_t>(c)].edges;
        verts[static_cast<size_t>(c)].push_back(a);
        verts[static_cast<size_t>(c)].push_back(b);
        if (info[0] == 1) {
            ++stats[static_cast<size_t>(c)].boundary_edges;
            bnd[static_cast<size_t>(c)][a].push_back(b);
            bnd[static_cast<size_t>(c)][b].push_back(a);
        }
    }
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) ++stats[static_cast<size_t>(comp[static_cast<size_t>(t)])].faces;

    for (int c = 0; c < ncomp; ++c) {
        auto& vs = verts[static_cast<size_t>(c)];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        stats[static_cast<size_t>(c)].vertices = static_cast<int>(vs.size());

        // count boundary circles by walking them off
        auto& g = bnd[static_cast<size_t>(c)];
        std::map<int, std::vector<int>> left = g;
        while (!left.empty()) {
            ++stats[static_cast<size_t>(c)].boundary_circles;
            int start = left.begin()->first;
            int prev = -1, cur = start;
            do {
                auto& nb = left.at(cur);
                int nxt = (nb.size() == 1 || nb[0] != prev) ? nb[0] : nb[1];
                prev = cur;
                cur = nxt;
                left.erase(prev);
            } while (cur != start && left.contains(cur));
        }
    }
    return stats;
}

} // namespace systolica::detail
