#pragma once

#include <array>
#include <span>
#include <unordered_map>
#include <vector>

#include "systolica/surface.hpp"

namespace systolica {

/// A validated tetrahedral complex whose boundary (triangles in exactly one
/// tet) forms a closed triangulated surface. Vertex ids may be sparse: a
/// gluing step can retire ids, and renumbering would invalidate the cut
/// records that still reference them.
class Tetrahedralized3Complex {
public:
    using Tet = std::array<int, 4>;

    /// Validates a tet soup: no repeated vertex inside a tet, no duplicate
    /// tets, every triangle in at most 2 tets, and the degree-1 triangles
    /// assembling into a closed 2-manifold.
    static Tetrahedralized3Complex build(const std::vector<Tet>& tets);

    int vertex_count() const { return vertex_count_; }
    int tet_count() const { return static_cast<int>(tets_.size()); }
    const std::vector<Tet>& tets() const { return tets_; } // sorted 4-tuples

    /// Incident tets of the triangle {a,b,c} (0, 1 or 2 of them).
    std::span<const int> triangle_tets(const std::array<int, 3>& tri) const;
    int triangle_count() const { return static_cast<int>(tri_list_.size()); }
    const std::array<int, 3>& triangle(int i) const { return tri_list_[static_cast<size_t>(i)]; }
    int triangle_degree(int i) const { return tri_tet_count_[static_cast<size_t>(i)]; }

    /// Boundary triangles (degree 1), as sorted triples in complex ids.
    std::vector<std::array<int, 3>> boundary_triangles() const;

    /// Boundary as validated closed surfaces plus the map from their dense
    /// vertex ids back to complex ids. One entry per connected component
    /// (a prism shell, say, is bounded by two spheres).
    struct Boundary {
        TriangulatedSurface surface;
        std::vector<int> to_complex; // surface vertex id -> complex vertex id
    };
    std::vector<Boundary> boundary_surfaces() const;
    /// The boundary when it is connected; throws otherwise.
    Boundary boundary_surface() const;

private:
    Tetrahedralized3Complex() = default;

    int vertex_count_ = 0;
    std::vector<Tet> tets_;
    std::vector<std::array<int, 3>> tri_list_;
    std::vector<std::array<int, 2>> tri_tet_;
    std::vector<int> tri_tet_count_;
    std::unordered_map<long long, int> tri_index_;

    long long tri_key(const std::array<int, 3>& t) const;
    int find_triangle(const std::array<int, 3>& t) const;
};

/// The bounding 3-complex produced by the filling pipeline; its boundary
/// restricts to the input surface's triangulation.
using Filling3Complex = Tetrahedralized3Complex;

} // namespace systolica
