#include "systolica/systole.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "cutting.hpp"
#include "systolica/parallel.hpp"

namespace systolica {

namespace {

struct Best {
    int length = std::numeric_limits<int>::max();
    EdgeLoop loop; // canonical

    void offer(int len, const EdgeLoop& canonical) {
        if (len < length || (len == length && canonical.vertices < loop.vertices)) {
            length = len;
            loop = canonical;
        }
    }
    void merge(const Best& o) {
        if (o.length != std::numeric_limits<int>::max()) offer(o.length, o.loop);
    }
    bool found() const { return length != std::numeric_limits<int>::max(); }
};

struct SourceSearch {
    std::vector<int> dist, parent;
    std::vector<BitVec> sig_to; // class of the tree path root -> v

    void run(const TriangulatedSurface& s, const Z2HomologyBasis* basis,
             const std::vector<std::vector<int>>& adj, int root) {
        const int V = s.vertex_count();
        dist.assign(static_cast<size_t>(V), -1);
        parent.assign(static_cast<size_t>(V), -1);
        if (basis) sig_to.assign(static_cast<size_t>(V), BitVec(basis->rank()));
        std::vector<int> order{root};
        dist[static_cast<size_t>(root)] = 0;
        for (size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int u : adj[static_cast<size_t>(v)]) {
                if (dist[static_cast<size_t>(u)] < 0) {
                    dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(v)] + 1;
                    parent[static_cast<size_t>(u)] = v;
                    if (basis) {
                        sig_to[static_cast<size_t>(u)] = sig_to[static_cast<size_t>(v)];
                        sig_to[static_cast<size_t>(u)] ^= basis->edge_signature(s.find_edge(u, v));
                    }
                    order.push_back(u);
                }
            }
        }
    }

    /// Candidate walk root -> x -> y -> root through tree paths and edge (x,y).
    EdgeLoop walk(int x, int y) const {
        std::vector<int> up;
        for (int v = x; v >= 0; v = parent[static_cast<size_t>(v)]) up.push_back(v);
        std::reverse(up.begin(), up.end()); // root .. x
        for (int v = y; parent[static_cast<size_t>(v)] >= 0; v = parent[static_cast<size_t>(v)])
            up.push_back(v); // y .. child-of-root
        return EdgeLoop{std::move(up)};
    }
};

std::vector<std::vector<int>> sorted_adjacency(const TriangulatedSurface& s) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(s.vertex_count()));
    for (int e = 0; e < s.edge_count(); ++e) {
        auto [a, b] = s.edge(e);
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

/// Positions (i, j), i < j, of the first repeated vertex, or (-1, -1).
std::pair<int, int> first_repeat(const EdgeLoop& p) {
    const int n = p.length();
    std::vector<std::pair<int, int>> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = {p.vertices[static_cast<size_t>(i)], i};
    std::sort(idx.begin(), idx.end());
    for (int i = 0; i + 1 < n; ++i) {
        if (idx[static_cast<size_t>(i)].first == idx[static_cast<size_t>(i) + 1].first) {
            int a = idx[static_cast<size_t>(i)].second, b = idx[static_cast<size_t>(i) + 1].second;
            return {std::min(a, b), std::max(a, b)};
        }
    }
    return {-1, -1};
}

std::pair<EdgeLoop, EdgeLoop> split_at(const EdgeLoop& p, int at, int bt) {
    EdgeLoop lobe1, lobe2;
    lobe1.vertices.assign(p.vertices.begin() + at, p.vertices.begin() + bt);
    lobe2.vertices.assign(p.vertices.begin() + bt, p.vertices.end());
    lobe2.vertices.insert(lobe2.vertices.end(), p.vertices.begin(), p.vertices.begin() + at);
    return {std::move(lobe1), std::move(lobe2)};
}

} // namespace

EdgeLoop shorten_to_simple(const TriangulatedSurface& s, const Z2HomologyBasis& basis, const EdgeLoop& p) {
    validate_loop(s, p);
    require(basis.loop_signature(p).any(), ErrCode::TrivialClass,
            "walk is Z/2 null-homologous; nothing forces a nontrivial simple representative");

    EdgeLoop cur = p;
    for (;;) {
        auto [at, bt] = first_repeat(cur);
        if (at < 0) return cur; // simple

        auto [lobe1, lobe2] = split_at(cur, at, bt);
        const bool n1 = basis.loop_signature(lobe1).any();
        const bool n2 = basis.loop_signature(lobe2).any();
        require(n1 || n2, ErrCode::InternalInvariant, "both halves of a nontrivial walk are trivial");
        if (n1 && n2) {
            // deterministic pick: shorter lobe, ties by canonical order
            if (lobe1.length() != lobe2.length())
                cur = (lobe1.length() < lobe2.length()) ? std::move(lobe1) : std::move(lobe2);
            else
                cur = (canonical_loop_form(lobe1).vertices < canonical_loop_form(lobe2).vertices)
                          ? std::move(lobe1)
                          : std::move(lobe2);
        } else {
            cur = n1 ? std::move(lobe1) : std::move(lobe2);
        }
    }
}

std::vector<EdgeLoop> split_into_simple_loops(const EdgeLoop& p) {
    std::vector<EdgeLoop> pending{p}, out;
    while (!pending.empty()) {
        EdgeLoop cur = std::move(pending.back());
        pending.pop_back();
        if (cur.length() < 3) continue; // backtracks cancel
        auto [at, bt] = first_repeat(cur);
        if (at < 0) {
            out.push_back(std::move(cur));
            continue;
        }
        auto [lobe1, lobe2] = split_at(cur, at, bt);
        pending.push_back(std::move(lobe1));
        pending.push_back(std::move(lobe2));
    }
    return out;
}

bool is_nonseparating(const TriangulatedSurface& s, const EdgeLoop& p) {
    require(is_simple_loop(s, p), ErrCode::NotSimple, "separation test needs a simple loop");
    auto cut = detail::cut_open(s, p);
    return detail::soup_components(cut.triangles).size() == 1;
}

bool is_contractible(const TriangulatedSurface& s, const EdgeLoop& p) {
    require(is_simple_loop(s, p), ErrCode::NotSimple, "cut test needs a simple loop");
    auto cut = detail::cut_open(s, p);
    auto comps = detail::soup_components(cut.triangles);
    if (comps.size() == 1) return false; // nonseparating loops are essential
    for (const auto& c : comps)
        if (c.is_disk()) return true;
    return false;
}

SystoleResult homological_systole(const TriangulatedSurface& s) {
    auto basis = Z2HomologyBasis::compute(s);
    require(basis.rank() > 0, ErrCode::GenusZero, "no homologically nontrivial loop exists");

    const auto adj = sorted_adjacency(s);
    const int V = s.vertex_count();
    const int T = thread_budget();

    // Pass 1: the minimal walk length of a nontrivial candidate. A shorter
    // nontrivial simple loop would itself give a shorter candidate, so the
    // minimum over raw candidate lengths is the systole.
    std::vector<int> min_len(static_cast<size_t>(T), std::numeric_limits<int>::max());
    std::vector<SourceSearch> scratch(static_cast<size_t>(T));
    parallel_for(V, T, [&](int worker, int src) {
        auto& ss = scratch[static_cast<size_t>(worker)];
        int& best = min_len[static_cast<size_t>(worker)];
        ss.run(s, &basis, adj, src);
        for (int e = 0; e < s.edge_count(); ++e) {
            auto [x, y] = s.edge(e);
            if (ss.parent[static_cast<size_t>(x)] == y || ss.parent[static_cast<size_t>(y)] == x) continue;
            int raw = ss.dist[static_cast<size_t>(x)] + ss.dist[static_cast<size_t>(y)] + 1;
            if (raw >= best) continue;
            BitVec sig = ss.sig_to[static_cast<size_t>(x)];
            sig ^= ss.sig_to[static_cast<size_t>(y)];
            sig ^= basis.edge_signature(e);
            if (sig.any()) best = raw;
        }
    });
    int target = *std::min_element(min_len.begin(), min_len.end());
    require(target != std::numeric_limits<int>::max(), ErrCode::InternalInvariant,
            "no nontrivial candidate found despite positive rank");

    // Pass 2: canonical tie-break over all nontrivial candidates of minimal
    // length (they are simple: a repeated vertex would split off a shorter
    // nontrivial piece).
    std::vector<Best> bests(static_cast<size_t>(T));
    parallel_for(V, T, [&](int worker, int src) {
        auto& ss = scratch[static_cast<size_t>(worker)];
        auto& best = bests[static_cast<size_t>(worker)];
        ss.run(s, &basis, adj, src);
        for (int e = 0; e < s.edge_count(); ++e) {
            auto [x, y] = s.edge(e);
            if (ss.parent[static_cast<size_t>(x)] == y || ss.parent[static_cast<size_t>(y)] == x) continue;
            int raw = ss.dist[static_cast<size_t>(x)] + ss.dist[static_cast<size_t>(y)] + 1;
            if (raw != target) continue;
            BitVec sig = ss.sig_to[static_cast<size_t>(x)];
            sig ^= ss.sig_to[static_cast<size_t>(y)];
            sig ^= basis.edge_signature(e);
            if (!sig.any()) continue;
            EdgeLoop walk = ss.walk(x, y);
            require(is_simple_loop(s, walk), ErrCode::InternalInvariant,
                    "minimal nontrivial candidate is not simple");
            best.offer(raw, canonical_loop_form(walk));
        }
    });
    Best total;
    for (const auto& b : bests) total.merge(b);
    return {total.length, total.loop};
}

SystoleResult homotopy_systole(const TriangulatedSurface& s) {
    require(s.closed(), ErrCode::NotClosed, "homotopy systole needs a closed surface");
    require(s.orientable(), ErrCode::NotOrientable, "homotopy systole implemented for orientable surfaces");
    auto genus = s.genus();
    require(genus.has_value() && *genus >= 1, ErrCode::GenusZero, "2-sphere has no non-contractible loop");

    SystoleResult hres = homological_systole(s);
    // On the torus simple non-contractible and nonseparating loops coincide,
    // so the homological answer already is the systole.
    if (*genus == 1) return hres;

    const auto adj = sorted_adjacency(s);
    const int V = s.vertex_count();
    const int T = thread_budget();
    // Pass 1: minimal length of a simple noncontractible candidate below
    // the homological systole (only null-homologous loops can beat it).
    std::vector<int> min_len(static_cast<size_t>(T), hres.length);
    std::vector<SourceSearch> scratch(static_cast<size_t>(T));
    auto for_candidates = [&](SourceSearch& ss, int bound, auto&& fn) {
        for (int e = 0; e < s.edge_count(); ++e) {
            auto [x, y] = s.edge(e);
            if (ss.parent[static_cast<size_t>(x)] == y || ss.parent[static_cast<size_t>(y)] == x) continue;
            int raw = ss.dist[static_cast<size_t>(x)] + ss.dist[static_cast<size_t>(y)] + 1;
            if (raw > bound) continue;
            fn(x, y, raw);
        }
    };
    parallel_for(V, T, [&](int worker, int src) {
        auto& ss = scratch[static_cast<size_t>(worker)];
        int& best = min_len[static_cast<size_t>(worker)];
        ss.run(s, nullptr, adj, src);
        for_candidates(ss, best - 1, [&](int x, int y, int raw) {
            if (raw >= best) return;
            EdgeLoop walk = ss.walk(x, y);
            if (!is_simple_loop(s, walk)) return;
            if (!detail::contractible_lockstep(s, walk)) best = raw;
        });
    });
    int target = *std::min_element(min_len.begin(), min_len.end());
    if (target == hres.length) return hres;

    // Pass 2: canonical tie-break among the noncontractible simple
    // candidates of that length.
    std::vector<std::set<std::vector<int>>> found(static_cast<size_t>(T));
    parallel_for(V, T, [&](int worker, int src) {
        auto& ss = scratch[static_cast<size_t>(worker)];
        ss.run(s, nullptr, adj, src);
        for_candidates(ss, target, [&](int x, int y, int raw) {
            if (raw != target) return;
            EdgeLoop walk = ss.walk(x, y);
            if (!is_simple_loop(s, walk)) return;
            found[static_cast<size_t>(worker)].insert(canonical_loop_form(walk).vertices);
        });
    });
    std::set<std::vector<int>> merged;
    for (auto& f : found) merged.merge(f);
    for (const auto& v : merged) {
        EdgeLoop cand{v};
        if (!detail::contractible_lockstep(s, cand)) return {cand.length(), cand};
    }
    fail(ErrCode::InternalInvariant, "candidate of the discovered minimal length vanished");
}

} // namespace systolica
