#include "systolica/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace systolica {

namespace {

constexpr double kZeroTol = 1e-9;     // barycentric component treated as zero
constexpr double kJunctionTol = 1e-9; // junction agreement between frames
constexpr double kVertexNudge = 1e-6; // moves a vertex junction onto its edge

struct Vec2 {
    double x = 0.0, y = 0.0;
};

Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Chart of one face: the regular triangle of side e_2 with corners at
/// barycentric indices 0, 1, 2.
struct Chart {
    double side;
    std::array<Vec2, 3> corner;
    Vec2 center;

    Chart()
        : side(equilateral_edge_length(2)),
          corner{Vec2{0.0, 0.0}, Vec2{side, 0.0}, Vec2{side / 2.0, side * std::numbers::sqrt3 / 2.0}},
          center{(corner[0].x + corner[1].x + corner[2].x) / 3.0,
                 (corner[0].y + corner[1].y + corner[2].y) / 3.0} {}

    Vec2 to_cart(const Bary& b) const {
        return b[0] * corner[0] + b[1] * corner[1] + b[2] * corner[2];
    }
    Bary to_bary(Vec2 p) const {
        double b2 = p.y / corner[2].y;
        double b1 = (p.x - b2 * corner[2].x) / corner[1].x;
        Bary b{1.0 - b1 - b2, b1, b2};
        for (double& c : b)
            if (c > -1e-9 && c < 0.0) c = 0.0;
        double s = b[0] + b[1] + b[2];
        for (double& c : b) c /= s;
        return b;
    }
};

const Chart& chart() {
    static const Chart c;
    return c;
}

void check_bary(const Bary& b) {
    double sum = 0.0;
    for (double c : b) {
        require(c >= -1e-12, ErrCode::BadBarycentric, "negative barycentric coordinate");
        sum += c;
    }
    require(std::abs(sum - 1.0) <= 1e-9, ErrCode::BadBarycentric, "barycentric coordinates must sum to 1");
}

double seg_len(const PolygonalPath::Segment& s) {
    return norm(chart().to_cart(s.b) - chart().to_cart(s.a));
}

/// Index of the (single) zero component, or -1.
int zero_component(const Bary& b) {
    int idx = -1;
    int zeros = 0;
    for (int i = 0; i < 3; ++i) {
        if (b[static_cast<size_t>(i)] <= kZeroTol) {
            idx = i;
            ++zeros;
        }
    }
    return zeros == 1 ? idx : (zeros == 0 ? -1 : -2 - zeros);
}

/// Shared vertices of two faces, as (index in t1's triple, index in t2's).
std::vector<std::pair<int, int>> shared_corners(const TriangulatedSurface& s, int t1, int t2) {
    std::vector<std::pair<int, int>> out;
    const auto& f1 = s.face(t1);
    const auto& f2 = s.face(t2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (f1[static_cast<size_t>(i)] == f2[static_cast<size_t>(j)]) out.emplace_back(i, j);
    return out;
}

} // namespace

double equilateral_edge_length(int n) {
    require(n >= 1, ErrCode::InvalidParams, "dimension must be >= 1");
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return std::pow(fact * std::pow(2.0, n / 2.0) / std::sqrt(n + 1.0), 1.0 / n);
}

void validate_path(const PolygonalPath& path) {
    require(path.host != nullptr, ErrCode::InvalidParams, "path has no host surface");
    require(!path.segments.empty(), ErrCode::InvalidParams, "path has no segments");
    const auto& s = *path.host;

    for (const auto& seg : path.segments) {
        require(seg.tri >= 0 && seg.tri < s.face_count(), ErrCode::InvalidParams,
                "segment references face " + std::to_string(seg.tri));
        check_bary(seg.a);
        check_bary(seg.b);
    }

    const size_t n = path.segments.size();
    const size_t junctions = path.closed ? n : n - 1;
    for (size_t i = 0; i < junctions; ++i) {
        const auto& cur = path.segments[i];
        const auto& nxt = path.segments[(i + 1) % n];
        if (cur.tri == nxt.tri) {
            for (int c = 0; c < 3; ++c)
                require(std::abs(cur.b[static_cast<size_t>(c)] - nxt.a[static_cast<size_t>(c)]) <= kJunctionTol,
                        ErrCode::InvalidParams, "consecutive segments in one face disagree at their junction");
            continue;
        }
        auto shared = shared_corners(s, cur.tri, nxt.tri);
        require(!shared.empty(), ErrCode::InvalidParams,
                "consecutive segments lie in faces sharing no vertex");
        // the junction must live on the shared edge (or at the shared vertex)
        double off_cur = 0.0, off_nxt = 0.0;
        std::array<char, 3> on_cur{}, on_nxt{};
        for (auto [ci, ni] : shared) {
            on_cur[static_cast<size_t>(ci)] = 1;
            on_nxt[static_cast<size_t>(ni)] = 1;
        }
        for (int c = 0; c < 3; ++c) {
            if (!on_cur[static_cast<size_t>(c)]) off_cur += cur.b[static_cast<size_t>(c)];
            if (!on_nxt[static_cast<size_t>(c)]) off_nxt += nxt.a[static_cast<size_t>(c)];
        }
        require(off_cur <= kJunctionTol && off_nxt <= kJunctionTol, ErrCode::InvalidParams,
                "junction point is not carried by the shared simplex of its two faces");
        for (auto [ci, ni] : shared)
            require(std::abs(cur.b[static_cast<size_t>(ci)] - nxt.a[static_cast<size_t>(ni)]) <= kJunctionTol,
                    ErrCode::InvalidParams, "junction point differs between the two face frames");
    }
}

double path_length_gs(const PolygonalPath& path) {
    validate_path(path);
    double len = 0.0;
    for (const auto& seg : path.segments) len += seg_len(seg);
    return len;
}

std::set<int> support(const PolygonalPath& path) {
    validate_path(path);
    const auto& s = *path.host;
    std::set<int> out;

    auto other_face_of_edge = [&](int tri, int zero_idx) {
        const auto& f = s.face(tri);
        int u = f[static_cast<size_t>((zero_idx + 1) % 3)];
        int v = f[static_cast<size_t>((zero_idx + 2) % 3)];
        for (int t : s.edge_faces(s.find_edge(u, v)))
            if (t != tri) out.insert(t);
    };

    for (const auto& seg : path.segments) {
        if (seg_len(seg) > 0.0) {
            out.insert(seg.tri);
            // a segment running inside an edge also meets the face across it
            int za = zero_component(seg.a);
            int zb = zero_component(seg.b);
            if (za >= 0 && za == zb) other_face_of_edge(seg.tri, za);
        }
    }
    const size_t n = path.segments.size();
    const size_t junctions = path.closed ? n : n - 1;
    for (size_t i = 0; i < junctions; ++i) {
        out.insert(path.segments[i].tri);
        out.insert(path.segments[(i + 1) % n].tri);
    }
    return out;
}

BoundaryArc radial_straighten(const Bary& a, const Bary& b) {
    check_bary(a);
    check_bary(b);
    require(*std::min_element(a.begin(), a.end()) <= kZeroTol &&
                *std::min_element(b.begin(), b.end()) <= kZeroTol,
            ErrCode::BadBarycentric, "chord endpoints must lie on the triangle boundary");

    const Chart& ch = chart();
    const Vec2 pa = ch.to_cart(a);
    const Vec2 pb = ch.to_cart(b);
    const double chord = norm(pb - pa);

    BoundaryArc arc;
    arc.input_length = chord;
    if (chord < 1e-15) {
        arc.points = {a, b};
        arc.output_length = 0.0;
        arc.ratio = 1.0;
        return arc;
    }

    auto dist_to_segment = [](Vec2 p, Vec2 q, Vec2 x) {
        Vec2 d = q - p;
        double len2 = d.x * d.x + d.y * d.y;
        double t = len2 > 0.0 ? ((x.x - p.x) * d.x + (x.y - p.y) * d.y) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return norm(x - (p + t * d));
    };

    // deflect chords that run through the projection center
    const double eps_center = 1e-12 * ch.side;
    std::vector<Vec2> polyline{pa, pb};
    if (dist_to_segment(pa, pb, ch.center) < eps_center) {
        const double delta = 1e-9 * ch.side;
        Vec2 mid = 0.5 * (pa + pb);
        for (Vec2 dir : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
            Vec2 w = mid + delta * dir;
            if (dist_to_segment(pa, w, ch.center) >= eps_center &&
                dist_to_segment(w, pb, ch.center) >= eps_center) {
                polyline = {pa, w, pb};
                break;
            }
        }
        require(polyline.size() == 3, ErrCode::ThroughBarycenter,
                "chord runs through the barycenter and both nudges failed");
    }

    auto angle = [&](Vec2 p) { return std::atan2(p.y - ch.center.y, p.x - ch.center.x); };

    // continuous angle sweep along the polyline
    double theta0 = angle(polyline.front());
    double theta = theta0;
    for (size_t i = 0; i + 1 < polyline.size(); ++i) {
        double d = angle(polyline[i + 1]) - angle(polyline[i]);
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        theta += d;
    }
    const double lo = std::min(theta0, theta), hi = std::max(theta0, theta);

    // corners swept strictly inside the interval, in sweep order
    std::vector<std::pair<double, int>> hits;
    for (int c = 0; c < 3; ++c) {
        double g = angle(ch.corner[static_cast<size_t>(c)]);
        for (int k = -1; k <= 1; ++k) {
            double t = g + 2.0 * std::numbers::pi * k;
            if (t > lo + 1e-12 && t < hi - 1e-12) hits.emplace_back(t, c);
        }
    }
    std::sort(hits.begin(), hits.end());
    if (theta < theta0) std::reverse(hits.begin(), hits.end());

    arc.points.push_back(a);
    for (auto [t, c] : hits) {
        Bary corner{0.0, 0.0, 0.0};
        corner[static_cast<size_t>(c)] = 1.0;
        arc.points.push_back(corner);
    }
    arc.points.push_back(b);

    arc.output_length = 0.0;
    for (size_t i = 0; i + 1 < arc.points.size(); ++i)
        arc.output_length += norm(ch.to_cart(arc.points[i + 1]) - ch.to_cart(arc.points[i]));
    arc.ratio = arc.output_length / chord;
    return arc;
}

EdgeLoop carrier_walk(const PolygonalPath& path) {
    validate_path(path);
    require(path.closed, ErrCode::InvalidParams, "carrier walk is defined for closed paths");
    const auto& s = *path.host;
    const size_t n = path.segments.size();

    std::vector<int> walk;
    for (size_t i = 0; i < n; ++i) {
        const auto& cur = path.segments[i];
        const auto& nxt = path.segments[(i + 1) % n];
        if (cur.tri == nxt.tri) continue;
        auto shared = shared_corners(s, cur.tri, nxt.tri);
        // smaller endpoint of the junction edge, or the lone shared vertex
        int v = s.face(cur.tri)[static_cast<size_t>(shared[0].first)];
        for (auto [ci, ni] : shared)
            v = std::min(v, s.face(cur.tri)[static_cast<size_t>(ci)]);
        if (walk.empty() || walk.back() != v) walk.push_back(v);
    }
    while (walk.size() > 1 && walk.front() == walk.back()) walk.pop_back();
    return EdgeLoop{std::move(walk)};
}

namespace {

struct Node {
    // vertex >= 0 means a surface vertex; otherwise a point inside an edge
    int vertex = -1;
    int edge = -1;
    double t = 0.0; // position toward the edge's larger endpoint
};

Node to_node(const TriangulatedSurface& s, int tri, const Bary& b) {
    const auto& f = s.face(tri);
    std::array<int, 3> zero{};
    int zeros = 0;
    for (int c = 0; c < 3; ++c)
        if (b[static_cast<size_t>(c)] <= kZeroTol) zero[static_cast<size_t>(zeros++)] = c;
    if (zeros == 2) {
        int live = 3 - zero[0] - zero[1];
        return {f[static_cast<size_t>(live)], -1, 0.0};
    }
    require(zeros == 1, ErrCode::InternalInvariant, "straightened point is not on the boundary");
    int u = f[static_cast<size_t>((zero[0] + 1) % 3)];
    int v = f[static_cast<size_t>((zero[0] + 2) % 3)];
    double coeff_v = b[static_cast<size_t>((zero[0] + 2) % 3)];
    if (u > v) {
        std::swap(u, v);
        coeff_v = 1.0 - coeff_v;
    }
    return {-1, s.find_edge(u, v), coeff_v};
}

bool same_node(const Node& a, const Node& b) {
    if (a.vertex >= 0 || b.vertex >= 0) return a.vertex == b.vertex;
    return a.edge == b.edge && std::abs(a.t - b.t) <= 1e-8;
}

/// Position of a node on the line of edge e, or NaN when it is not on it.
double line_position(const TriangulatedSurface& s, const Node& n, int e) {
    auto [u, v] = s.edge(e);
    if (n.vertex >= 0) {
        if (n.vertex == u) return 0.0;
        if (n.vertex == v) return 1.0;
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (n.edge == e) return n.t;
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

StraighteningResult project_to_skeleton(const PolygonalPath& path, const Z2HomologyBasis* check_basis) {
    validate_path(path);
    require(path.closed, ErrCode::InvalidParams, "projection is defined for closed paths");
    const auto& s = *path.host;

    StraighteningResult res;
    res.input_length = path_length_gs(path);
    res.support_set = support(path);

    PolygonalPath work = path;

    // interior bends inside one face flatten to a single chord (the face is
    // a disk, so this is a homotopy rel endpoints and only shortens)
    for (bool merged = true; merged;) {
        merged = false;
        const size_t m = work.segments.size();
        if (m < 2) break;
        for (size_t i = 0; i < m; ++i) {
            const size_t j = (i + 1) % m;
            const auto& cur = work.segments[i];
            const auto& nxt = work.segments[j];
            if (cur.tri != nxt.tri) continue;
            if (*std::min_element(cur.b.begin(), cur.b.end()) <= kZeroTol) continue;
            PolygonalPath::Segment joined{cur.tri, cur.a, nxt.b};
            std::vector<PolygonalPath::Segment> rest;
            for (size_t k = (j + 1) % m; k != i; k = (k + 1) % m) rest.push_back(work.segments[k]);
            rest.insert(rest.begin(), joined);
            work.segments = std::move(rest);
            merged = true;
            break;
        }
    }

    // a closed path inside a single face is null-homotopic
    if (work.segments.size() == 1 &&
        *std::min_element(work.segments[0].a.begin(), work.segments[0].a.end()) > kZeroTol) {
        res.loop = EdgeLoop{};
        res.count_length = 0;
        res.ratio = 0.0;
        return res;
    }

    // move vertex junctions a nudge along their junction edge
    const size_t n = work.segments.size();
    for (size_t i = 0; i < n; ++i) {
        auto& cur = work.segments[i];
        auto& nxt = work.segments[(i + 1) % n];
        if (cur.tri == nxt.tri) continue;
        int at_vertex = -1;
        for (int c = 0; c < 3; ++c)
            if (cur.b[static_cast<size_t>(c)] >= 1.0 - kZeroTol) at_vertex = c;
        if (at_vertex < 0) continue;

        auto shared = shared_corners(s, cur.tri, nxt.tri);
        require(shared.size() == 2, ErrCode::InvalidParams,
                "junction at a vertex whose faces share no edge; route the path through the face fan");
        int vtx = s.face(cur.tri)[static_cast<size_t>(at_vertex)];
        // partner corner on the shared edge, in each frame
        int other_cur = -1, other_nxt = -1, vtx_nxt = -1;
        for (auto [ci, ni] : shared) {
            if (s.face(cur.tri)[static_cast<size_t>(ci)] == vtx) {
                vtx_nxt = ni;
            } else {
                other_cur = ci;
                other_nxt = ni;
            }
        }
        require(other_cur >= 0 && vtx_nxt >= 0, ErrCode::InvalidParams,
                "vertex junction does not lie on the shared edge");
        cur.b = Bary{0.0, 0.0, 0.0};
        cur.b[static_cast<size_t>(at_vertex)] = 1.0 - kVertexNudge;
        cur.b[static_cast<size_t>(other_cur)] = kVertexNudge;
        nxt.a = Bary{0.0, 0.0, 0.0};
        nxt.a[static_cast<size_t>(vtx_nxt)] = 1.0 - kVertexNudge;
        nxt.a[static_cast<size_t>(other_nxt)] = kVertexNudge;
    }

    // straighten each segment and assemble the boundary walk
    std::vector<Node> nodes;
    for (const auto& seg : work.segments) {
        BoundaryArc arc = radial_straighten(seg.a, seg.b);
        for (const Bary& b : arc.points) nodes.push_back(to_node(s, seg.tri, b));
    }

    // reduce the cyclic walk until only vertices remain
    for (bool changed = true; changed && !nodes.empty();) {
        changed = false;
        // consecutive duplicates (cyclically)
        std::vector<Node> dedup;
        for (const Node& nd : nodes)
            if (dedup.empty() || !same_node(dedup.back(), nd))
                dedup.push_back(nd);
            else
                changed = true;
        while (dedup.size() > 1 && same_node(dedup.front(), dedup.back())) {
            dedup.pop_back();
            changed = true;
        }
        nodes = std::move(dedup);

        const int cnt = static_cast<int>(nodes.size());
        if (cnt < 2) break;
        for (int i = 0; i < cnt; ++i) {
            Node& nd = nodes[static_cast<size_t>(i)];
            if (nd.vertex >= 0) continue;
            const Node& prev = nodes[static_cast<size_t>((i + cnt - 1) % cnt)];
            const Node& next = nodes[static_cast<size_t>((i + 1) % cnt)];
            double tp = line_position(s, prev, nd.edge);
            double tn = line_position(s, next, nd.edge);
            require(!std::isnan(tp) && !std::isnan(tn), ErrCode::InternalInvariant,
                    "walk neighbor left the edge of an interior node");
            if ((tp - nd.t) * (tn - nd.t) < 0.0) {
                // passes straight through: drop
                nodes.erase(nodes.begin() + i);
                changed = true;
                break;
            }
            // turning point: snap to the endpoint that adds the least length
            double cost0 = tp + tn;
            double cost1 = (1.0 - tp) + (1.0 - tn);
            auto [u, v] = s.edge(nd.edge);
            nd = Node{cost0 <= cost1 ? u : v, -1, 0.0};
            changed = true;
            break;
        }
    }

    if (nodes.size() < 2) nodes.clear(); // constant loop

    EdgeLoop out;
    for (const Node& nd : nodes) {
        require(nd.vertex >= 0, ErrCode::InternalInvariant, "interior node survived the reduction");
        out.vertices.push_back(nd.vertex);
    }
    res.loop = out;
    res.count_length = out.length();
    res.ratio = res.input_length > 0.0 ? res.count_length / res.input_length : 0.0;

    // homology-class tripwire: the output must be in the class of the
    // input's carrier walk
    Z2HomologyBasis local;
    const Z2HomologyBasis* basis = check_basis;
    if (basis == nullptr && s.closed()) {
        local = Z2HomologyBasis::compute(s);
        basis = &local;
    }
    if (basis != nullptr) {
        auto sig_of = [&](const EdgeLoop& l) {
            if (l.length() <= 1) return BitVec(basis->rank());
            return basis->loop_signature(l);
        };
        require(sig_of(out) == sig_of(carrier_walk(work)), ErrCode::InternalInvariant,
                "straightened loop left the Z/2 class of its input");
    }
    return res;
}

} // namespace systolica
