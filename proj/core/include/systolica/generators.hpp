#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "systolica/metric.hpp"
#include "systolica/surface.hpp"

namespace systolica {

// Small closed fixtures.
TriangulatedSurface tetra_sphere();
/// The 7-vertex torus (complete graph on 7 vertices, 14 faces).
TriangulatedSurface csaszar_torus();
/// Genus-2 surface on 11 vertices: two 7-vertex tori joined along a removed
/// face.
TriangulatedSurface genus2_small();

/// k x k vertex grid with wraparound, each quad split along one diagonal;
/// V = k^2, F = 2k^2, genus 1. Needs k >= 3.
TriangulatedSurface grid_torus(int k);

/// Genus-g surface from the canonical 4g-gon: cone the polygon into a disk,
/// apply `rounds` (>= 2) barycentric subdivisions, then identify the sides
/// in opposing pairs. The result is validated, not assumed.
TriangulatedSurface genus_polygon(int genus, int rounds);

/// Edge-midpoint refinement, one round maps every face to 4.
TriangulatedSurface subdivide(const TriangulatedSurface& s, int rounds);

/// Simple nonseparating loops found by the two-shortest-paths candidate
/// sweep, deduplicated and sorted by (length, canonical form).
std::vector<EdgeLoop> candidate_nonseparating_loops(const TriangulatedSurface& s, int max_count);

/// Dehn twist along a chosen loop: loop_choice indexes the candidate list
/// above (0 picks the shortest).
TriangulatedSurface twist_generator(const TriangulatedSurface& s, int offset, int loop_choice);

/// Applies `count` random edge flips (diagonal exchanges); picks that break
/// simpliciality or manifoldness are skipped and retried.
TriangulatedSurface random_flips(const TriangulatedSurface& s, int count, std::uint64_t seed);

struct GenerateParams {
    int k = 0;
    int genus = 0;
    int rounds = 0;
    int offset = 0;
    int loop_choice = 0;
    int count = 0;
};

/// Kind-dispatched generator used by the CLI: sphere-tetra, csaszar-torus,
/// genus2-small, grid-torus, genus-polygon, subdivide, twist, random-flips.
/// Kinds transforming a surface take it through `input`.
TriangulatedSurface generate(const std::string& kind, const GenerateParams& params, std::uint64_t seed,
                             const TriangulatedSurface* input = nullptr);

/// Random simple loop: walks randomly until a vertex repeats and keeps the
/// enclosed cycle (length >= 3).
EdgeLoop random_simple_loop(const TriangulatedSurface& s, std::mt19937_64& rng);

/// Random closed piecewise-straight path: a closed walk on the dual graph
/// with junctions at random interior points of the crossed edges.
PolygonalPath random_closed_path(const TriangulatedSurface& s, int steps, std::mt19937_64& rng);

} // namespace systolica
