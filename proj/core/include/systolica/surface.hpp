#pragma once

#include <array>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "systolica/error.hpp"

namespace systolica {

/// A closed walk in the 1-skeleton, stored as its cyclic vertex sequence.
/// Consecutive vertices (including last->first) must span an edge of the
/// host surface; walks need not be simple.
struct EdgeLoop {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
    bool empty() const { return vertices.empty(); }
    bool operator==(const EdgeLoop&) const = default;
};

/// A validated simplicial 2-manifold, closed or (when built in boundary
/// mode) with boundary. Immutable after construction; all queries are
/// pure reads and safe to share across threads.
///
/// Vertex ids are dense 0-based integers. Faces keep their input order;
/// each face is stored as a sorted triple for identity checks, with the
/// original vertex order kept separately as the orientation witness.
class TriangulatedSurface {
public:
    using Tri = std::array<int, 3>;

    /// Validates and indexes a triangle soup. Rejects non-manifold input:
    /// duplicate or degenerate triangles, edges in >2 faces (or in 1 face
    /// when boundary is not allowed), vertex links that are not a single
    /// cycle/path, unused vertex ids, and disconnected complexes.
    static TriangulatedSurface build(const std::vector<Tri>& triangles, bool allow_boundary = false);

    int vertex_count() const { return vertex_count_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Faces as sorted vertex triples, in input order.
    const std::vector<Tri>& faces() const { return faces_; }
    const Tri& face(int t) const { return faces_[static_cast<size_t>(t)]; }

    /// Faces in a globally consistent orientation (only meaningful when
    /// orientable(); otherwise returns the input orientation witness).
    const std::vector<Tri>& oriented_faces() const { return oriented_; }

    const std::pair<int, int>& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
    /// Edge index for {a,b}, or -1 when absent.
    int find_edge(int a, int b) const;
    bool has_edge(int a, int b) const { return find_edge(a, b) >= 0; }

    /// Faces incident to an edge (1 or 2).
    std::span<const int> edge_faces(int e) const;
    /// Faces incident to a vertex.
    std::span<const int> vertex_faces(int v) const;
    /// Number of faces incident to an edge.
    int edge_degree(int e) const { return edge_face_count_[static_cast<size_t>(e)]; }

    bool boundary_mode() const { return allow_boundary_; }
    bool has_boundary() const { return boundary_edge_count_ > 0; }
    bool closed() const { return boundary_edge_count_ == 0; }
    int boundary_edge_count() const { return boundary_edge_count_; }

    bool orientable() const { return orientable_; }
    int euler_characteristic() const;
    /// Genus (2-2g = chi); defined only for closed orientable surfaces.
    std::optional<int> genus() const;

    bool operator==(const TriangulatedSurface& o) const {
        return vertex_count_ == o.vertex_count_ && faces_ == o.faces_;
    }

private:
    TriangulatedSurface() = default;
    void index_edges();
    void validate_links() const;
    void validate_connected() const;
    void orient();

    int vertex_count_ = 0;
    bool allow_boundary_ = false;
    bool orientable_ = false;
    int boundary_edge_count_ = 0;

    std::vector<Tri> faces_;    // sorted triples, input order
    std::vector<Tri> oriented_; // consistent orientation when orientable
    std::vector<std::pair<int, int>> edges_;
    std::unordered_map<long long, int> edge_index_;
    std::vector<std::array<int, 2>> edge_face_;
    std::vector<int> edge_face_count_;
    // CSR vertex -> incident faces
    std::vector<int> vtx_face_offset_;
    std::vector<int> vtx_face_;
};

struct TopologyInvariants {
    int chi = 0;
    bool orientable = false;
    std::optional<int> genus;
    int facets = 0;
    int edges = 0;
    int vertices = 0;
};

TopologyInvariants topology_invariants(const TriangulatedSurface& s);

/// Partitions the boundary edges (edges in exactly one face) into disjoint
/// cycles. Empty for closed surfaces.
std::vector<EdgeLoop> boundary_components(const TriangulatedSurface& s);

/// Number of edges in the cyclic walk (equals the vertex count of the
/// sequence).
int loop_length(const EdgeLoop& p);

/// Throws LoopNotOnSurface unless every consecutive pair (cyclically) is an
/// edge of s and the walk has at least 3 steps.
void validate_loop(const TriangulatedSurface& s, const EdgeLoop& p);

/// True iff no vertex repeats in the cyclic sequence. Requires a valid walk.
bool is_simple_loop(const TriangulatedSurface& s, const EdgeLoop& p);

/// Rotation/reflection-invariant form: lexicographically least over all
/// rotations of both traversal directions, so equal-length ties between
/// loops can be broken deterministically.
EdgeLoop canonical_loop_form(const EdgeLoop& p);

} // namespace systolica
