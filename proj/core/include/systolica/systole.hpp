#pragma once

#include "systolica/homology.hpp"
#include "systolica/surface.hpp"

namespace systolica {

struct SystoleResult {
    int length = 0;
    EdgeLoop loop; // simple, in canonical form
};

/// Shortest Z/2-homologically nontrivial loop of a closed surface with
/// genus >= 1. The returned loop is simple and canonical; ties are broken
/// by canonical form, so repeated and parallel runs agree.
SystoleResult homological_systole(const TriangulatedSurface& s);

/// Shortest non-contractible loop; always <= the homological systole.
/// Candidates that are null-homologous are screened with the cut test
/// (a simple loop is contractible iff cutting disconnects the surface and
/// one side is a disk).
SystoleResult homotopy_systole(const TriangulatedSurface& s);

/// Reduces a closed walk with nontrivial Z/2 class to a simple loop of the
/// same or smaller length whose class is still nontrivial: split at a
/// repeated vertex and recurse into a nontrivial sub-loop (classes XOR, so
/// one of the two pieces is nontrivial).
EdgeLoop shorten_to_simple(const TriangulatedSurface& s, const Z2HomologyBasis& basis, const EdgeLoop& p);

/// True iff cutting s along the simple loop p leaves one component.
bool is_nonseparating(const TriangulatedSurface& s, const EdgeLoop& p);

/// Cut test for simple loops: contractible iff the cut disconnects s and
/// one component is a disk.
bool is_contractible(const TriangulatedSurface& s, const EdgeLoop& p);

/// Splits a closed walk into simple sub-loops (length >= 3); backtrack
/// pairs cancel. If the walk is noncontractible, so is at least one piece.
std::vector<EdgeLoop> split_into_simple_loops(const EdgeLoop& p);

} // namespace systolica
