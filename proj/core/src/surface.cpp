#include "systolica/surface.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>

namespace systolica {

namespace {

long long edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
}

std::string tri_str(const TriangulatedSurface::Tri& t) {
    return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

} // namespace

TriangulatedSurface TriangulatedSurface::build(const std::vector<Tri>& triangles, bool allow_boundary) {
    require(!triangles.empty(), ErrCode::InvalidParams, "empty triangle list");

    TriangulatedSurface s;
    s.allow_boundary_ = allow_boundary;
    s.oriented_ = triangles; // orientation witness: input vertex order
    s.faces_.reserve(triangles.size());

    int max_id = -1;
    for (const Tri& t : triangles) {
        require(t[0] >= 0 && t[1] >= 0 && t[2] >= 0, ErrCode::InvalidParams,
                "negative vertex id in " + tri_str(t));
        require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], ErrCode::DegenerateTriangle,
                "repeated vertex in " + tri_str(t));
        Tri st = t;
        std::sort(st.begin(), st.end());
        s.faces_.push_back(st);
        max_id = std::max({max_id, t[0], t[1], t[2]});
    }
    s.vertex_count_ = max_id + 1;

    {
        std::vector<Tri> sorted = s.faces_;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        require(dup == sorted.end(), ErrCode::DuplicateTriangle,
                dup == sorted.end() ? "" : tri_str(*dup) + " appears more than once");
    }

    s.index_edges();

    // dense ids: every vertex id below vertex_count_ must occur
    {
        std::vector<char> used(static_cast<size_t>(s.vertex_count_), 0);
        for (const Tri& t : s.faces_)
            for (int v : t) used[static_cast<size_t>(v)] = 1;
        for (int v = 0; v < s.vertex_count_; ++v)
            require(used[static_cast<size_t>(v)], ErrCode::UnusedVertex,
                    "vertex " + std::to_string(v) + " appears in no triangle");
    }

    s.validate_links();
    s.validate_connected();
    s.orient();
    return s;
}

void TriangulatedSurface::index_edges() {
    edge_index_.reserve(faces_.size() * 2);
    for (int t = 0; t < face_count(); ++t) {
        const Tri& f = faces_[static_cast<size_t>(t)];
        const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
        for (auto [a, b] : es) {
            long long key = edge_key(a, b);
            auto it = edge_index_.find(key);
            int e;
            if (it == edge_index_.end()) {
                e = static_cast<int>(edges_.size());
                edge_index_.emplace(key, e);
                edges_.emplace_back(a, b);
                edge_face_.push_back({-1, -1});
                edge_face_count_.push_back(0);
            } else {
                e = it->second;
            }
            int& cnt = edge_face_count_[static_cast<size_t>(e)];
            require(cnt < 2, ErrCode::NonManifoldEdge,
                    "edge (" + std::to_string(a) + "," + std::to_string(b) + ") lies in more than 2 triangles");
            edge_face_[static_cast<size_t>(e)][static_cast<size_t>(cnt)] = t;
            ++cnt;
        }
    }

    for (int e = 0; e < edge_count(); ++e) {
        if (edge_face_count_[static_cast<size_t>(e)] == 1) {
            require(allow_boundary_, ErrCode::BoundaryNotAllowed,
                    "edge (" + std::to_string(edges_[static_cast<size_t>(e)].first) + "," +
                        std::to_string(edges_[static_cast<size_t>(e)].second) +
                        ") lies in a single triangle but surface was built in closed mode");
            ++boundary_edge_count_;
        }
    }

    // CSR vertex -> faces
    vtx_face_offset_.assign(static_cast<size_t>(vertex_count_) + 1, 0);
    for (const Tri& f : faces_)
        for (int v : f) ++vtx_face_offset_[static_cast<size_t>(v) + 1];
    std::partial_sum(vtx_face_offset_.begin(), vtx_face_offset_.end(), vtx_face_offset_.begin());
    vtx_face_.resize(faces_.size() * 3);
    std::vector<int> cursor(vtx_face_offset_.begin(), vtx_face_offset_.end() - 1);
    for (int t = 0; t < face_count(); ++t)
        for (int v : faces_[static_cast<size_t>(t)])
            vtx_face_[static_cast<size_t>(cursor[static_cast<size_t>(v)]++)] = t;
}

int TriangulatedSurface::find_edge(int a, int b) const {
    if (a == b || a < 0 || b < 0) return -1;
    auto it = edge_index_.find(edge_key(a, b));
    return it == edge_index_.end() ? -1 : it->second;
}

std::span<const int> TriangulatedSurface::edge_faces(int e) const {
    const auto& ef = edge_face_[static_cast<size_t>(e)];
    return {ef.data(), static_cast<size_t>(edge_face_count_[static_cast<size_t>(e)])};
}

std::span<const int> TriangulatedSurface::vertex_faces(int v) const {
    return {vtx_face_.data() + vtx_face_offset_[static_cast<size_t>(v)],
            static_cast<size_t>(vtx_face_offset_[static_cast<size_t>(v) + 1] - vtx_face_offset_[static_cast<size_t>(v)])};
}

void TriangulatedSurface::validate_links() const {
    // The link of v is the graph on its neighbors with one link edge (a,b)
    // per incident face {v,a,b}. It must be a single cycle (interior v) or a
    // single path (boundary v): all link-vertex degrees 2, or exactly two of
    // degree 1, and the link connected.
    std::vector<int> deg;
    for (int v = 0; v < vertex_count_; ++v) {
        auto inc = vertex_faces(v);
        std::vector<int> nbrs;
        std::vector<std::pair<int, int>> link_edges;
        for (int t : inc) {
            const Tri& f = faces_[static_cast<size_t>(t)];
            int a = -1, b = -1;
            for (int u : f)
                if (u != v) (a < 0 ? a : b) = u;
            link_edges.emplace_back(a, b);
            nbrs.push_back(a);
            nbrs.push_back(b);
        }
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());

        auto nbr_idx = [&](int u) {
            return static_cast<int>(std::lower_bound(nbrs.begin(), nbrs.end(), u) - nbrs.begin());
        };
        deg.assign(nbrs.size(), 0);
        std::vector<std::array<int, 2>> adj(nbrs.size(), {-1, -1});
        for (auto [a, b] : link_edges) {
            int ia = nbr_idx(a), ib = nbr_idx(b);
            require(deg[static_cast<size_t>(ia)] < 2 && deg[static_cast<size_t>(ib)] < 2, ErrCode::BadLink,
                    "link of vertex " + std::to_string(v) + " branches");
            adj[static_cast<size_t>(ia)][static_cast<size_t>(deg[static_cast<size_t>(ia)]++)] = ib;
            adj[static_cast<size_t>(ib)][static_cast<size_t>(deg[static_cast<size_t>(ib)]++)] = ia;
        }

        int ones = 0;
        for (int d : deg) {
            require(d == 1 || d == 2, ErrCode::BadLink,
                    "link of vertex " + std::to_string(v) + " has an isolated neighbor");
            if (d == 1) ++ones;
        }
        require(ones == 0 || ones == 2, ErrCode::BadLink,
                "link of vertex " + std::to_string(v) + " is not a single cycle or path");
        require(ones == 0 || allow_boundary_, ErrCode::BadLink,
                "boundary vertex " + std::to_string(v) + " in closed mode");

        // connectivity of the link: walk from any node and count
        std::vector<char> seen(nbrs.size(), 0);
        int start = 0;
        if (ones == 2)
            for (size_t i = 0; i < deg.size(); ++i)
                if (deg[i] == 1) { start = static_cast<int>(i); break; }
        int count = 0, prev = -1, cur = start;
        while (cur >= 0 && !seen[static_cast<size_t>(cur)]) {
            seen[static_cast<size_t>(cur)] = 1;
            ++count;
            int nxt = -1;
            for (int cand : adj[static_cast<size_t>(cur)])
                if (cand >= 0 && cand != prev) { nxt = cand; break; }
            // cycle closes back to start; path ends at the other degree-1 node
            if (nxt == start && ones == 0) break;
            prev = cur;
            cur = nxt;
        }
        require(count == static_cast<int>(nbrs.size()), ErrCode::BadLink,
                "link of vertex " + std::to_string(v) + " is disconnected");
    }
}

void TriangulatedSurface::validate_connected() const {
    std::vector<char> seen(faces_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        const Tri& f = faces_[static_cast<size_t>(t)];
        const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
        for (auto [a, b] : es) {
            for (int u : edge_faces(find_edge(a, b))) {
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    ++reached;
                    stack.push_back(u);
                }
            }
        }
    }
    require(reached == faces_.size(), ErrCode::Disconnected, "incidence graph has more than one component");
}

void TriangulatedSurface::orient() {
    // Propagate the input orientation witness across the dual graph: two
    // faces sharing an edge must traverse it in opposite directions. A face
    // receiving conflicting requirements makes the surface non-orientable.
    const int F = face_count();
    std::vector<int> flip(static_cast<size_t>(F), -1); // -1 unvisited, 0 keep, 1 reverse

    auto directed = [&](int t, int a, int b) {
        // true if face t (after its flip) traverses a->b
        const Tri& w = oriented_[static_cast<size_t>(t)];
        for (int i = 0; i < 3; ++i) {
            int u = w[static_cast<size_t>(i)], v = w[static_cast<size_t>((i + 1) % 3)];
            if (u == a && v == b) return flip[static_cast<size_t>(t)] == 0;
            if (u == b && v == a) return flip[static_cast<size_t>(t)] == 1;
        }
        fail(ErrCode::InternalInvariant, "edge not found in face during orientation");
    };

    orientable_ = true;
    std::vector<int> stack;
    flip[0] = 0;
    stack.push_back(0);
    while (!stack.empty() && orientable_) {
        int t = stack.back();
        stack.pop_back();
        const Tri& f = faces_[static_cast<size_t>(t)];
        const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
        for (auto [a, b] : es) {
            bool t_ab = directed(t, a, b);
            for (int u : edge_faces(find_edge(a, b))) {
                if (u == t) continue;
                // u must traverse b->a iff t traverses a->b
                const Tri& w = oriented_[static_cast<size_t>(u)];
                bool raw_ab = false;
                for (int i = 0; i < 3; ++i) {
                    if (w[static_cast<size_t>(i)] == a && w[static_cast<size_t>((i + 1) % 3)] == b) raw_ab = true;
                }
                int need = (raw_ab == t_ab) ? 1 : 0;
                if (flip[static_cast<size_t>(u)] < 0) {
                    flip[static_cast<size_t>(u)] = need;
                    stack.push_back(u);
                } else if (flip[static_cast<size_t>(u)] != need) {
                    orientable_ = false;
                    break;
                }
            }
        }
    }

    if (orientable_) {
        for (int t = 0; t < F; ++t)
            if (flip[static_cast<size_t>(t)] == 1)
                std::swap(oriented_[static_cast<size_t>(t)][1], oriented_[static_cast<size_t>(t)][2]);
    }
}

int TriangulatedSurface::euler_characteristic() const {
    return vertex_count_ - edge_count() + face_count();
}

std::optional<int> TriangulatedSurface::genus() const {
    if (!closed() || !orientable_) return std::nullopt;
    return (2 - euler_characteristic()) / 2;
}

TopologyInvariants topology_invariants(const TriangulatedSurface& s) {
    TopologyInvariants inv;
    inv.chi = s.euler_characteristic();
    inv.orientable = s.orientable();
    inv.genus = s.genus();
    inv.facets = s.face_count();
    inv.edges = s.edge_count();
    inv.vertices = s.vertex_count();
    return inv;
}

std::vector<EdgeLoop> boundary_components(const TriangulatedSurface& s) {
    // boundary edges have degree 1; each boundary vertex meets exactly two
    // of them (its link is a single path), so they partition into cycles
    std::unordered_map<int, std::vector<int>> next; // vertex -> boundary neighbors
    std::set<std::pair<int, int>> unused;
    for (int e = 0; e < s.edge_count(); ++e) {
        if (s.edge_degree(e) == 1) {
            auto [a, b] = s.edge(e);
            next[a].push_back(b);
            next[b].push_back(a);
            unused.insert({std::min(a, b), std::max(a, b)});
        }
    }
    std::vector<EdgeLoop> out;
    while (!unused.empty()) {
        auto [a0, b0] = *unused.begin();
        EdgeLoop loop;
        int prev = a0, cur = b0;
        loop.vertices.push_back(a0);
        while (cur != a0) {
            loop.vertices.push_back(cur);
            const auto& nb = next[cur];
            int nxt = (nb[0] == prev) ? nb[1] : nb[0];
            prev = cur;
            cur = nxt;
        }
        for (size_t i = 0; i < loop.vertices.size(); ++i) {
            int u = loop.vertices[i], v = loop.vertices[(i + 1) % loop.vertices.size()];
            unused.erase({std::min(u, v), std::max(u, v)});
        }
        out.push_back(std::move(loop));
    }
    // deterministic order: by smallest vertex id
    std::sort(out.begin(), out.end(), [](const EdgeLoop& x, const EdgeLoop& y) {
        return *std::min_element(x.vertices.begin(), x.vertices.end()) <
               *std::min_element(y.vertices.begin(), y.vertices.end());
    });
    return out;
}

int loop_length(const EdgeLoop& p) { return p.length(); }

void validate_loop(const TriangulatedSurface& s, const EdgeLoop& p) {
    require(p.length() >= 3, ErrCode::LoopNotOnSurface,
            "closed walk needs at least 3 vertices, got " + std::to_string(p.length()));
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        int a = p.vertices[i];
        int b = p.vertices[(i + 1) % p.vertices.size()];
        require(a >= 0 && a < s.vertex_count(), ErrCode::LoopNotOnSurface,
                "vertex " + std::to_string(a) + " not on surface");
        require(s.has_edge(a, b), ErrCode::LoopNotOnSurface,
                "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
    }
}

bool is_simple_loop(const TriangulatedSurface& s, const EdgeLoop& p) {
    validate_loop(s, p);
    std::vector<int> v = p.vertices;
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

EdgeLoop canonical_loop_form(const EdgeLoop& p) {
    const size_t n = p.vertices.size();
    if (n == 0) return p;
    std::vector<int> best;
    std::vector<int> cand(n);
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> seq = p.vertices;
        if (dir == 1) std::reverse(seq.begin(), seq.end());
        for (size_t r = 0; r < n; ++r) {
            for (size_t i = 0; i < n; ++i) cand[i] = seq[(r + i) % n];
            if (best.empty() || cand < best) best = cand;
        }
    }
    return EdgeLoop{std::move(best)};
}

} // namespace systolica
