#include "systolica/mesh_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace systolica {

namespace {

struct LineReader {
    const std::string& text;
    size_t pos = 0;
    int line_no = 0;

    explicit LineReader(const std::string& t) : text(t) {}

    /// Next non-comment line; returns false at end. `required_newline`
    /// reports a line missing its trailing newline.
    bool next(std::string& out, bool* missing_newline = nullptr) {
        while (pos < text.size()) {
            size_t nl = text.find('\n', pos);
            bool has_nl = nl != std::string::npos;
            std::string line = text.substr(pos, has_nl ? nl - pos : std::string::npos);
            pos = has_nl ? nl + 1 : text.size();
            ++line_no;
            if (missing_newline) *missing_newline = !has_nl;
            if (!line.empty() && line[0] == '#') continue;
            if (line.empty() && pos >= text.size() && !has_nl) return false;
            out = std::move(line);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail_here(const std::string& what) const {
        fail(ErrCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
    }
};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

int parse_int(LineReader& r, const std::string& tok) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) r.fail_here("expected integer, got '" + tok + "'");
    return v;
}

double parse_double(LineReader& r, const std::string& tok) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        r.fail_here("expected number, got '" + tok + "'");
    }
}

} // namespace

MeshFormat format_from_name(const std::string& name) {
    if (name == "tri") return MeshFormat::Tri;
    if (name == "off") return MeshFormat::Off;
    fail(ErrCode::InvalidParams, "unknown format '" + name + "' (expected tri or off)");
}

TriangulatedSurface parse_tri(const std::string& text, bool allow_boundary) {
    LineReader r(text);
    std::string line;
    bool missing_nl = false;
    if (!r.next(line, &missing_nl)) fail(ErrCode::ParseError, "empty TRI input");
    auto head = split_ws(line);
    if (head.size() != 3 || head[0] != "TRI") r.fail_here("expected header 'TRI <V> <F>'");
    const int v_decl = parse_int(r, head[1]);
    const int f_decl = parse_int(r, head[2]);
    if (v_decl <= 0 || f_decl <= 0) r.fail_here("vertex and face counts must be positive");

    std::vector<TriangulatedSurface::Tri> tris;
    tris.reserve(static_cast<size_t>(f_decl));
    for (int i = 0; i < f_decl; ++i) {
        if (!r.next(line, &missing_nl)) fail(ErrCode::ParseError,
                                             "line " + std::to_string(r.line_no + 1) + ": expected " +
                                                 std::to_string(f_decl) + " face lines, got " + std::to_string(i));
        if (missing_nl) r.fail_here("missing trailing newline");
        auto toks = split_ws(line);
        if (toks.size() != 3) r.fail_here("expected 'a b c'");
        tris.push_back({parse_int(r, toks[0]), parse_int(r, toks[1]), parse_int(r, toks[2])});
    }
    if (r.next(line)) r.fail_here("unexpected trailing content");

    TriangulatedSurface s = TriangulatedSurface::build(tris, allow_boundary);
    require(s.vertex_count() == v_decl, ErrCode::ParseError,
            "header declares " + std::to_string(v_decl) + " vertices, faces reference " +
                std::to_string(s.vertex_count()));
    return s;
}

std::string write_tri(const TriangulatedSurface& s) {
    std::string out = "TRI " + std::to_string(s.vertex_count()) + " " + std::to_string(s.face_count()) + "\n";
    for (const auto& f : s.faces())
        out += std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + "\n";
    return out;
}

TriangulatedSurface parse_off(const std::string& text, bool allow_boundary) {
    LineReader r(text);
    std::string line;
    if (!r.next(line)) fail(ErrCode::ParseError, "empty OFF input");
    if (split_ws(line) != std::vector<std::string>{"OFF"}) r.fail_here("expected 'OFF' header");
    if (!r.next(line)) fail(ErrCode::ParseError, "missing OFF count line");
    auto counts = split_ws(line);
    if (counts.size() != 3) r.fail_here("expected '<V> <F> <E>'");
    const int v_decl = parse_int(r, counts[0]);
    const int f_decl = parse_int(r, counts[1]);

    for (int i = 0; i < v_decl; ++i) {
        if (!r.next(line)) fail(ErrCode::ParseError, "unexpected end of file in vertex block");
        auto toks = split_ws(line);
        if (toks.size() < 3) r.fail_here("expected 3 coordinates");
        for (int c = 0; c < 3; ++c) parse_double(r, toks[static_cast<size_t>(c)]); // validated, discarded
    }
    std::vector<TriangulatedSurface::Tri> tris;
    tris.reserve(static_cast<size_t>(f_decl));
    for (int i = 0; i < f_decl; ++i) {
        if (!r.next(line)) fail(ErrCode::ParseError, "unexpected end of file in face block");
        auto toks = split_ws(line);
        if (toks.empty()) r.fail_here("empty face line");
        int arity = parse_int(r, toks[0]);
        if (arity != 3) r.fail_here("only triangle faces are supported");
        if (toks.size() < 4) r.fail_here("expected '3 a b c'");
        tris.push_back({parse_int(r, toks[1]), parse_int(r, toks[2]), parse_int(r, toks[3])});
    }
    return TriangulatedSurface::build(tris, allow_boundary);
}

TriangulatedSurface parse_surface(const std::string& text, MeshFormat format, bool allow_boundary) {
    return format == MeshFormat::Tri ? parse_tri(text, allow_boundary) : parse_off(text, allow_boundary);
}

std::string write_surface(const TriangulatedSurface& s, MeshFormat format) {
    require(format == MeshFormat::Tri, ErrCode::InvalidParams, "OFF output is not supported; use tri");
    return write_tri(s);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrCode::ParseError, "cannot write '" + path + "'");
    out << content;
}

TriangulatedSurface load_surface(const std::string& path, MeshFormat format, bool allow_boundary) {
    return parse_surface(read_file(path), format, allow_boundary);
}

void save_surface(const TriangulatedSurface& s, const std::string& path, MeshFormat format) {
    write_file(path, write_surface(s, format));
}

LoadedPath load_path_file(const std::string& path, const std::string& base_dir) {
    const std::string text = read_file(path);
    LineReader r(text);
    std::string line;
    if (!r.next(line)) fail(ErrCode::ParseError, "empty PATH input");
    auto head = split_ws(line);
    if (head.size() != 4 || head[0] != "PATH") r.fail_here("expected 'PATH <surface-file> <n> closed|open'");
    const std::string surf_file = head[1];
    const int nseg = parse_int(r, head[2]);
    bool closed;
    if (head[3] == "closed")
        closed = true;
    else if (head[3] == "open")
        closed = false;
    else
        r.fail_here("expected 'closed' or 'open'");

    std::filesystem::path sp(surf_file);
    if (sp.is_relative() && !base_dir.empty()) sp = std::filesystem::path(base_dir) / sp;

    LoadedPath out;
    out.surface = std::make_unique<TriangulatedSurface>(load_surface(sp.string(), MeshFormat::Tri));
    out.surface_file = sp.string();
    out.path.host = out.surface.get();
    out.path.closed = closed;
    for (int i = 0; i < nseg; ++i) {
        if (!r.next(line)) fail(ErrCode::ParseError, "expected " + std::to_string(nseg) + " segment lines");
        auto toks = split_ws(line);
        if (toks.size() != 7) r.fail_here("expected 'tri a0 a1 a2 b0 b1 b2'");
        PolygonalPath::Segment seg;
        seg.tri = parse_int(r, toks[0]);
        for (int c = 0; c < 3; ++c) seg.a[static_cast<size_t>(c)] = parse_double(r, toks[static_cast<size_t>(1 + c)]);
        for (int c = 0; c < 3; ++c) seg.b[static_cast<size_t>(c)] = parse_double(r, toks[static_cast<size_t>(4 + c)]);
        out.path.segments.push_back(seg);
    }
    validate_path(out.path);
    return out;
}

EuclideanSimplex parse_simplex(const std::string& text) {
    LineReader r(text);
    std::string line;
    if (!r.next(line)) fail(ErrCode::ParseError, "empty SIMPLEX input");
    auto head = split_ws(line);
    if (head.size() != 3 || head[0] != "SIMPLEX") r.fail_here("expected 'SIMPLEX <m> <k>'");
    const int m = parse_int(r, head[1]);
    const int k = parse_int(r, head[2]);
    std::vector<std::vector<double>> verts;
    for (int i = 0; i <= k; ++i) {
        if (!r.next(line)) fail(ErrCode::ParseError, "expected " + std::to_string(k + 1) + " coordinate lines");
        auto toks = split_ws(line);
        if (static_cast<int>(toks.size()) != m) r.fail_here("expected " + std::to_string(m) + " coordinates");
        std::vector<double> v;
        v.reserve(static_cast<size_t>(m));
        for (const auto& t : toks) v.push_back(parse_double(r, t));
        verts.push_back(std::move(v));
    }
    return EuclideanSimplex(m, std::move(verts));
}

EuclideanSimplex load_simplex(const std::string& path) { return parse_simplex(read_file(path)); }

} // namespace systolica
