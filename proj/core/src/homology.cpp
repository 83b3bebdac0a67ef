#include "systolica/homology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

namespace systolica {

int BitVec::lowest_set() const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i) * 64 + std::countr_zero(w_[i]);
    return -1;
}

Z2HomologyBasis Z2HomologyBasis::compute(const TriangulatedSurface& s) {
    require(s.closed(), ErrCode::NotClosed, "homology basis needs a closed surface");

    const int V = s.vertex_count();
    const int E = s.edge_count();
    const int F = s.face_count();

    // BFS spanning tree from vertex 0, neighbors in ascending id order
    std::vector<std::vector<int>> adj(static_cast<size_t>(V));
    for (int e = 0; e < E; ++e) {
        auto [a, b] = s.edge(e);
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    std::vector<char> tree(static_cast<size_t>(E), 0);
    std::vector<int> parent(static_cast<size_t>(V), -1);
    {
        std::vector<int> order{0};
        std::vector<char> seen(static_cast<size_t>(V), 0);
        seen[0] = 1;
        for (size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int u : adj[static_cast<size_t>(v)]) {
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    parent[static_cast<size_t>(u)] = v;
                    tree[static_cast<size_t>(s.find_edge(u, v))] = 1;
                    order.push_back(u);
                }
            }
        }
    }

    // index the cotree edges: coordinates of the cycle space
    std::vector<int> cotree_col(static_cast<size_t>(E), -1);
    int C = 0;
    for (int e = 0; e < E; ++e)
        if (!tree[static_cast<size_t>(e)]) cotree_col[static_cast<size_t>(e)] = C++;
    // C = E - V + 1 for a connected graph

    // Face boundary cycles expressed in cotree coordinates, eliminated into
    // reduced row echelon form. The row space is exactly the Z/2-trivial
    // part of the cycle space.
    std::map<int, BitVec> echelon; // pivot column -> row
    for (int t = 0; t < F; ++t) {
        const auto& f = s.face(t);
        BitVec row(C);
        const std::array<std::pair<int, int>, 3> es{{{f[0], f[1]}, {f[1], f[2]}, {f[0], f[2]}}};
        for (auto [a, b] : es) {
            int col = cotree_col[static_cast<size_t>(s.find_edge(a, b))];
            if (col >= 0) row.set(col);
        }
        int p = row.lowest_set();
        while (p >= 0) {
            auto it = echelon.find(p);
            if (it == echelon.end()) break;
            row ^= it->second;
            p = row.lowest_set();
        }
        if (p >= 0) echelon.emplace(p, std::move(row));
    }

    // free (non-pivot) columns index the quotient H_1
    std::vector<int> free_pos(static_cast<size_t>(C), -1);
    int rank = 0;
    for (int c = 0; c < C; ++c)
        if (!echelon.contains(c)) free_pos[static_cast<size_t>(c)] = rank++;

    // Per-column class: a free column is a standard basis vector; a pivot
    // column is congruent to its row's tail, whose set columns all lie
    // beyond the pivot, so descending order resolves every reference.
    std::vector<BitVec> col_sig(static_cast<size_t>(C), BitVec(rank));
    for (int c = 0; c < C; ++c)
        if (free_pos[static_cast<size_t>(c)] >= 0) col_sig[static_cast<size_t>(c)].set(free_pos[static_cast<size_t>(c)]);
    for (auto it = echelon.rbegin(); it != echelon.rend(); ++it) {
        BitVec& sig = col_sig[static_cast<size_t>(it->first)];
        for (int c = it->first + 1; c < C; ++c)
            if (it->second.test(c)) sig ^= col_sig[static_cast<size_t>(c)];
    }

    Z2HomologyBasis basis;
    basis.host_ = &s;
    basis.rank_ = rank;
    basis.tree_ = std::move(tree);
    basis.sig_.assign(static_cast<size_t>(E), BitVec(rank));
    for (int e = 0; e < E; ++e) {
        int col = cotree_col[static_cast<size_t>(e)];
        if (col >= 0) basis.sig_[static_cast<size_t>(e)] = col_sig[static_cast<size_t>(col)];
    }

    if (s.orientable()) {
        int expected = 2 - s.euler_characteristic();
        require(rank == expected, ErrCode::InternalInvariant,
                "H_1 rank " + std::to_string(rank) + " != 2-chi = " + std::to_string(expected));
    }
    return basis;
}

BitVec Z2HomologyBasis::loop_signature(const EdgeLoop& p) const {
    BitVec sig(rank_);
    const auto& s = *host_;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        int a = p.vertices[i];
        int b = p.vertices[(i + 1) % p.vertices.size()];
        int e = s.find_edge(a, b);
        require(e >= 0, ErrCode::EdgeNotInSurface,
                "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge of the host surface");
        sig ^= sig_[static_cast<size_t>(e)];
    }
    return sig;
}

} // namespace systolica
