#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "systolica/metric.hpp"
#include "systolica/simplex.hpp"
#include "systolica/surface.hpp"

namespace systolica {

enum class MeshFormat { Tri, Off };

MeshFormat format_from_name(const std::string& name);

/// TRI format, bit-exact:
///   TRI <V> <F>\n
///   a b c\n                (F lines, 0-based decimal ids, single spaces)
/// Lines starting with '#' are comments; a trailing newline is required.
TriangulatedSurface parse_tri(const std::string& text, bool allow_boundary = false);
std::string write_tri(const TriangulatedSurface& s);

/// OFF reader (read-only): coordinates are parsed and discarded, faces must
/// be triangles.
TriangulatedSurface parse_off(const std::string& text, bool allow_boundary = false);

TriangulatedSurface parse_surface(const std::string& text, MeshFormat format, bool allow_boundary = false);
std::string write_surface(const TriangulatedSurface& s, MeshFormat format);

TriangulatedSurface load_surface(const std::string& path, MeshFormat format, bool allow_boundary = false);
void save_surface(const TriangulatedSurface& s, const std::string& path, MeshFormat format);

/// PATH block:
///   PATH <surface-file> <n-segments> closed|open\n
///   tri a0 a1 a2 b0 b1 b2\n   (one line per segment)
/// The referenced surface file is resolved relative to `base_dir` unless
/// absolute. The path's host points at the owned surface.
struct LoadedPath {
    std::unique_ptr<TriangulatedSurface> surface;
    PolygonalPath path;
    std::string surface_file;
};
LoadedPath load_path_file(const std::string& path, const std::string& base_dir);

/// SIMPLEX block:
///   SIMPLEX <m> <k>\n
///   x1 ... xm\n               (k+1 coordinate lines)
EuclideanSimplex parse_simplex(const std::string& text);
EuclideanSimplex load_simplex(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace systolica
