#include "systolica/tet_complex.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace systolica {

namespace {

std::string tet_str(const Tetrahedralized3Complex::Tet& t) {
    return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
           std::to_string(t[3]) + "}";
}

} // namespace

long long Tetrahedralized3Complex::tri_key(const std::array<int, 3>& t) const {
    // vertex ids stay well below 2^21 at the scales this library targets
    return (static_cast<long long>(t[0]) << 42) | (static_cast<long long>(t[1]) << 21) |
           static_cast<long long>(t[2]);
}

int Tetrahedralized3Complex::find_triangle(const std::array<int, 3>& t) const {
    std::array<int, 3> s = t;
    std::sort(s.begin(), s.end());
    auto it = tri_index_.find(tri_key(s));
    return it == tri_index_.end() ? -1 : it->second;
}

Tetrahedralized3Complex Tetrahedralized3Complex::build(const std::vector<Tet>& tets) {
    require(!tets.empty(), ErrCode::InvalidParams, "empty tetrahedron list");

    Tetrahedralized3Complex c;
    c.tets_.reserve(tets.size());
    int max_id = -1;
    for (const Tet& t : tets) {
        Tet s = t;
        std::sort(s.begin(), s.end());
        require(s[0] >= 0, ErrCode::InvalidParams, "negative vertex id in " + tet_str(t));
        require(s[0] != s[1] && s[1] != s[2] && s[2] != s[3], ErrCode::SimplicialityViolation,
                "repeated vertex in tet " + tet_str(t));
        c.tets_.push_back(s);
        max_id = std::max(max_id, s[3]);
    }
    c.vertex_count_ = max_id + 1;

    {
        std::vector<Tet> sorted = c.tets_;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        require(dup == sorted.end(), ErrCode::SimplicialityViolation,
                dup == sorted.end() ? "" : "duplicate tet " + tet_str(*dup));
    }

    for (int i = 0; i < c.tet_count(); ++i) {
        const Tet& t = c.tets_[static_cast<size_t>(i)];
        const std::array<std::array<int, 3>, 4> faces{{{t[0], t[1], t[2]},
                                                       {t[0], t[1], t[3]},
                                                       {t[0], t[2], t[3]},
                                                       {t[1], t[2], t[3]}}};
        for (const auto& f : faces) {
            long long key = c.tri_key(f);
            auto it = c.tri_index_.find(key);
            int idx;
            if (it == c.tri_index_.end()) {
                idx = static_cast<int>(c.tri_list_.size());
                c.tri_index_.emplace(key, idx);
                c.tri_list_.push_back(f);
                c.tri_tet_.push_back({-1, -1});
                c.tri_tet_count_.push_back(0);
            } else {
                idx = it->second;
            }
            int& cnt = c.tri_tet_count_[static_cast<size_t>(idx)];
            require(cnt < 2, ErrCode::SimplicialityViolation,
                    "triangle {" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," +
                        std::to_string(f[2]) + "} lies in more than 2 tets");
            c.tri_tet_[static_cast<size_t>(idx)][static_cast<size_t>(cnt)] = i;
            ++cnt;
        }
    }

    // the boundary must assemble into closed surfaces
    c.boundary_surfaces();
    return c;
}

std::span<const int> Tetrahedralized3Complex::triangle_tets(const std::array<int, 3>& tri) const {
    static const int none[1] = {-1};
    int idx = find_triangle(tri);
    if (idx < 0) return {none, size_t{0}};
    return {tri_tet_[static_cast<size_t>(idx)].data(), static_cast<size_t>(tri_tet_count_[static_cast<size_t>(idx)])};
}

std::vector<std::array<int, 3>> Tetrahedralized3Complex::boundary_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (size_t i = 0; i < tri_list_.size(); ++i)
        if (tri_tet_count_[i] == 1) out.push_back(tri_list_[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Tetrahedralized3Complex::Boundary> Tetrahedralized3Complex::boundary_surfaces() const {
    auto btris = boundary_triangles();
    require(!btris.empty(), ErrCode::SimplicialityViolation, "complex has empty boundary");

    // split into connected components through shared edges
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int i = 0; i < static_cast<int>(btris.size()); ++i) {
        const auto& t = btris[static_cast<size_t>(i)];
        for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]}, std::pair{t[0], t[2]}})
            edge_tris[{a, b}].push_back(i);
    }
    std::vector<int> comp(btris.size(), -1);
    int ncomp = 0;
    for (int seed = 0; seed < static_cast<int>(btris.size()); ++seed) {
        if (comp[static_cast<size_t>(seed)] >= 0) continue;
        int id = ncomp++;
        std::vector<int> stack{seed};
        comp[static_cast<size_t>(seed)] = id;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            const auto& t = btris[static_cast<size_t>(i)];
            for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]}, std::pair{t[0], t[2]}}) {
                for (int j : edge_tris.at({a, b})) {
                    if (comp[static_cast<size_t>(j)] < 0) {
                        comp[static_cast<size_t>(j)] = id;
                        stack.push_back(j);
                    }
                }
            }
        }
    }

    std::vector<Boundary> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(btris.size()); ++i)
            if (comp[static_cast<size_t>(i)] == c)
                for (int v : btris[static_cast<size_t>(i)]) ids.push_back(v);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        std::unordered_map<int, int> dense;
        dense.reserve(ids.size());
        for (size_t i = 0; i < ids.size(); ++i) dense[ids[i]] = static_cast<int>(i);

        std::vector<TriangulatedSurface::Tri> tris;
        for (int i = 0; i < static_cast<int>(btris.size()); ++i) {
            if (comp[static_cast<size_t>(i)] != c) continue;
            const auto& t = btris[static_cast<size_t>(i)];
            tris.push_back({dense[t[0]], dense[t[1]], dense[t[2]]});
        }
        out.push_back({TriangulatedSurface::build(tris, /*allow_boundary=*/false), std::move(ids)});
    }
    return out;
}

Tetrahedralized3Complex::Boundary Tetrahedralized3Complex::boundary_surface() const {
    auto all = boundary_surfaces();
    require(all.size() == 1, ErrCode::SimplicialityViolation,
            "boundary has " + std::to_string(all.size()) + " components, expected one");
    return std::move(all[0]);
}

} // namespace systolica
