#pragma once

// Internal: slicing a surface open along a simple closed loop, at the level
// of raw triangle lists. Shared by the systole tests (separation, disk
// recognition) and the surgery pipeline.

#include <array>
#include <vector>

#include "systolica/surface.hpp"

namespace systolica::detail {

struct RawCut {
    std::vector<TriangulatedSurface::Tri> triangles; // same faces, side-B corners renamed
    std::vector<int> copy_a;                         // original loop vertex ids
    std::vector<int> copy_b;                         // fresh duplicate ids, copy_b[i] twins copy_a[i]
    int vertex_count = 0;                            // host V + loop length
};

/// Slices the host open along a simple loop. Every (face, loop-vertex)
/// incidence is assigned to one of the two sides of the loop; side-B corners
/// are renamed to fresh ids, so the loop edges become boundary. The side
/// assignment is propagated along the loop for global consistency, which
/// requires the loop to be two-sided (always true on orientable hosts).
RawCut cut_open(const TriangulatedSurface& s, const EdgeLoop& loop);

struct ComponentStats {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int boundary_edges = 0;
    int boundary_circles = 0;
    int euler() const { return vertices - edges + faces; }
    bool is_disk() const { return euler() == 1 && boundary_circles == 1; }
};

/// Connected components of a triangle soup (assumed edge-manifold), with
/// per-component counts. Connectivity is through shared edges.
std::vector<ComponentStats> soup_components(const std::vector<TriangulatedSurface::Tri>& tris);

/// Contractibility of a simple loop on a closed surface without building
/// the cut complex: flood the two sides of the loop in lockstep. If the
/// floods meet the loop does not separate; otherwise the first side to
/// finish yields its Euler characteristic, the other side's follows from
/// chi(S), and the loop bounds a disk iff one of them is 1. Equivalent to
/// the cut test, at the cost of the smaller side.
bool contractible_lockstep(const TriangulatedSurface& s, const EdgeLoop& loop);

} // namespace systolica::detail
