#pragma once

#include <cstdint>
#include <vector>

#include "systolica/error.hpp"

namespace systolica {

/// A k-simplex in R^m given by its k+1 affinely independent vertices.
/// Rejected as degenerate when the Gram determinant of its edge vectors
/// falls below 1e-24 relative to diam^(2k).
class EuclideanSimplex {
public:
    EuclideanSimplex(int ambient_dim, std::vector<std::vector<double>> vertices);

    int ambient_dim() const { return m_; }
    int dim() const { return k_; }
    const std::vector<double>& vertex(int i) const { return verts_[static_cast<size_t>(i)]; }
    const std::vector<std::vector<double>>& vertices() const { return verts_; }

    /// Sub-simplex spanned by a subset of vertices (indices ascending).
    EuclideanSimplex face(const std::vector<int>& vertex_indices) const;

private:
    int m_ = 0;
    int k_ = 0;
    std::vector<std::vector<double>> verts_;
};

/// k-dimensional volume, computed from the pairwise distances via the
/// bordered distance determinant.
double simplex_volume(const EuclideanSimplex& s);

/// Longest side.
double simplex_diameter(const EuclideanSimplex& s);

/// Vol / diam^k; scale invariant.
double fullness(const EuclideanSimplex& s);

struct BoundaryDistanceCheck {
    double lhs = 0.0; // exact distance from the point to the boundary
    double rhs = 0.0; // k! * fullness * diam * min barycentric coordinate
    bool holds = false;
};

/// Checks dist(p, boundary) >= k! * fullness * diam * min(mu) for the point
/// with barycentric coordinates mu (componentwise >= 0, summing to 1).
BoundaryDistanceCheck boundary_distance_bound_check(const EuclideanSimplex& s,
                                                    const std::vector<double>& mu);

/// Barycentric subdivision of the cube [0,h]^m: exactly 2^m * m! congruent
/// m-simplices, each of fullness 1/(m! * m^(m/2)).
std::vector<EuclideanSimplex> cube_barycentric_subdivision(int m, double h);

/// Minimum fullness over `trials` random perturbations of every vertex by
/// at most rho * diam. rho = 0 returns the exact fullness. Degenerate
/// perturbations count as 0.
double perturbed_min_fullness(const EuclideanSimplex& s, double rho, int trials, std::uint64_t seed);

/// Independence of the subspaces spanned by two orthonormal bases (columns
/// are basis vectors, given as vectors in R^m): the least distance from a
/// unit vector of one span to the other span. 1 iff orthogonal, 0 iff the
/// spans share a direction; symmetric.
double independence(const std::vector<std::vector<double>>& basis_p,
                    const std::vector<std::vector<double>>& basis_q);

/// Exact distance from a point to the convex hull of the simplex.
double point_to_simplex_distance(const std::vector<double>& point, const EuclideanSimplex& s);

} // namespace systolica
