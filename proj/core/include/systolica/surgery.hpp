#pragma once

#include <span>
#include <vector>

#include "systolica/surface.hpp"
#include "systolica/tet_complex.hpp"

namespace systolica {

/// Bookkeeping for one cut-and-cone stage. Copies A and B are the two
/// boundary circles created by the cut (copy_b[i] twins copy_a[i]); the
/// apexes and cone triangle lists are filled in by the coning step.
struct CutRecord {
    int stage = 0;
    EdgeLoop loop;
    std::vector<int> copy_a;
    std::vector<int> copy_b;
    int apex_a = -1;
    int apex_b = -1;
    std::vector<int> cone_tris_a; // face ids in the coned surface
    std::vector<int> cone_tris_b;
};

/// Per-run summary of the filling pipeline. Facet counts satisfy
/// facets[i+1] = facets[i] + 2*loop_lengths[i] exactly, and the ball has
/// 4*facets.back() tets.
struct FillingReport {
    std::vector<int> genus_sequence;  // genus per stage, ending at 0
    std::vector<int> loop_lengths;    // cut loop length per stage
    std::vector<int> facet_counts;    // |T_(i)| per stage
    long long ball_tets = 0;          // |B_3|
    long long tet_count = 0;          // |T_N|
    double ratio = 0.0;               // |T_N| / |T_M|
    double elapsed_seconds = 0.0;
    bool boundary_matches_input = false;
};

/// Cuts a closed orientable surface along a simple nonseparating loop:
/// same faces, loop vertices duplicated, two boundary circles of the loop's
/// length. The partial CutRecord carries the two copies.
std::pair<TriangulatedSurface, CutRecord> cut_along(const TriangulatedSurface& s, const EdgeLoop& p);

/// Cones the two boundary circles left by cut_along with fresh apex
/// vertices: exactly 2*len new triangles, genus drops by one.
std::pair<TriangulatedSurface, CutRecord> cone_boundaries(const TriangulatedSurface& cut, CutRecord rec);

/// One full stage: cut along the simplified homological-systole loop, then
/// cone. Genus drops by exactly one.
std::pair<TriangulatedSurface, CutRecord> cut_and_cone_step(const TriangulatedSurface& s, int stage = 0);

/// Prism triangulation of sphere x [0,1]: three tets per face, keyed to the
/// ascending vertex order so adjacent prisms split their shared
/// quadrilateral walls identically. Outer copy keeps the sphere's ids,
/// inner copy is shifted by the vertex count.
std::vector<Tetrahedralized3Complex::Tet> prism_shell(const TriangulatedSurface& sphere);

/// Prism shell plus a cone of the inner copy to a fresh center: a 3-ball
/// with exactly 4*F tets whose boundary is the input sphere, id for id.
Filling3Complex cone_ball(const TriangulatedSurface& sphere);

/// Undoes the cuts: records are processed last-cut-first; each gluing
/// identifies apex_b with apex_a and copy_b[i] with copy_a[i], turning the
/// 2*len cone triangles into len interior triangles and raising boundary
/// genus by one. Requires both cone disks of the record to be present in
/// the current boundary.
Filling3Complex glue_back(const Filling3Complex& ball, std::span<const CutRecord> records);

struct FillResult {
    Filling3Complex complex;
    FillingReport report;
    std::vector<CutRecord> records;
};

/// Full pipeline: genus(s) cut-and-cone stages, the ball, and the glue-back.
/// The boundary of the result is the input surface, id for id.
FillResult fill(const TriangulatedSurface& s);

/// Cuts along a simple nonseparating loop and reglues with the given cyclic
/// offset (copy_a[i] to copy_b[(i+offset) mod len]). Offset 0 reproduces
/// the input. V, E, F and chi are preserved.
TriangulatedSurface dehn_twist(const TriangulatedSurface& s, const EdgeLoop& p, int offset);

} // namespace systolica
