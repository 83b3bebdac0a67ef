#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "systolica/homology.hpp"
#include "systolica/surface.hpp"

namespace systolica {

/// Side length of the regular n-simplex of unit volume: the edge length of
/// the piecewise-flat metric that makes every facet regular with volume 1.
/// Increasing in n, with value 1 at n = 1.
double equilateral_edge_length(int n);

using Bary = std::array<double, 3>;

/// A piecewise-straight closed or open path through the equilateral-metric
/// triangles of a surface. Each segment is straight inside one face and is
/// recorded by its endpoint barycentric triples; consecutive segments must
/// share their junction point (for distinct faces, on the shared edge).
struct PolygonalPath {
    const TriangulatedSurface* host = nullptr;
    struct Segment {
        int tri = -1;
        Bary a{};
        Bary b{};
    };
    std::vector<Segment> segments;
    bool closed = false;
};

/// Throws when barycentric triples are invalid or junction points disagree
/// between consecutive segments.
void validate_path(const PolygonalPath& path);

/// Total length of the path in the equilateral metric (each face a regular
/// triangle with unit area... precisely: volume 1, side e_2).
double path_length_gs(const PolygonalPath& path);

/// Facets the path meets: faces holding a positive-length segment, faces on
/// both sides of a junction edge, and both faces of any edge a segment runs
/// along.
std::set<int> support(const PolygonalPath& path);

/// Pushing one straight chord to the triangle boundary by the radial
/// projection from the barycenter. Chords through the barycenter are
/// deflected by a deterministic midpoint nudge before projecting.
struct BoundaryArc {
    std::vector<Bary> points;  // chord start, corners swept, chord end
    double input_length = 0.0;
    double output_length = 0.0;
    double ratio = 1.0; // output / input (1 for degenerate chords)
};

/// Projects a chord with endpoints on the triangle boundary to the boundary
/// arc it sweeps; homotopic to the chord relative to its endpoints.
BoundaryArc radial_straighten(const Bary& a, const Bary& b);

struct StraighteningResult {
    EdgeLoop loop;              // closed walk in the 1-skeleton
    double input_length = 0.0;  // equilateral-metric length of the input
    int count_length = 0;       // edge count of the output walk
    double ratio = 0.0;         // count_length / input_length
    std::set<int> support_set;  // facets met by the input path
};

/// Projects a closed path to a freely homotopic edge loop: each segment is
/// straightened to its triangle boundary, the assembled 1-skeleton walk is
/// reduced, and the remaining edge-interior turning points are snapped to
/// endpoints. When a homology basis of the host is supplied (or the host is
/// closed), the Z/2 class of the output is checked against the input's
/// carrier walk.
StraighteningResult project_to_skeleton(const PolygonalPath& path,
                                        const Z2HomologyBasis* check_basis = nullptr);

/// Edge loop obtained by replacing every junction with the smaller endpoint
/// of its edge; freely homotopic to the path. Used as the homology-class
/// reference for straightening.
EdgeLoop carrier_walk(const PolygonalPath& path);

} // namespace systolica
