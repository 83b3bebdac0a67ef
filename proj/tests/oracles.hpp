#pragma once

// Independent reference implementations used to pin expected values. These
// deliberately avoid the library's tree-cotree, cut and determinant paths.

#include <cstdint>
#include <vector>

#include "systolica/surface.hpp"

namespace oracles {

using systolica::EdgeLoop;
using systolica::TriangulatedSurface;

/// All simple cycles of length <= max_len, canonicalized (least rotation of
/// the lexicographically smaller direction, starting at the cycle's minimal
/// vertex).
std::vector<EdgeLoop> enumerate_simple_cycles(const TriangulatedSurface& s, int max_len);

/// Z/2 null-homology test by direct elimination against the face-boundary
/// matrix over all E edge columns.
bool null_homologous(const TriangulatedSurface& s, const EdgeLoop& cycle);

/// Rank of the Z/2 cycle space modulo face boundaries, by dense elimination
/// of the full boundary matrix.
int homology_rank(const TriangulatedSurface& s);

/// Contractibility of a simple cycle: null-homologous, and removing its
/// edges from the dual adjacency leaves a side that is a disk.
bool contractible(const TriangulatedSurface& s, const EdgeLoop& cycle);

/// Shortest homologically nontrivial / noncontractible simple cycle by
/// exhaustive enumeration (increasing length; length cap as a guard).
int brute_force_sys_h(const TriangulatedSurface& s, int max_len);
int brute_force_sys(const TriangulatedSurface& s, int max_len);

/// Orientability by trying all 2^F orientation assignments (F <= 20).
bool brute_force_orientable(const TriangulatedSurface& s);

/// Gram-determinant volume: sqrt(det(A^T A)) / k! with a hand-rolled LU.
double gram_volume(const std::vector<std::vector<double>>& vertices);

} // namespace oracles
