#include "systolica/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace systolica {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Eigen::MatrixXd edge_matrix(const EuclideanSimplex& s) {
    const int m = s.ambient_dim(), k = s.dim();
    Eigen::MatrixXd a(m, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i)
            a(i, j) = s.vertex(j + 1)[static_cast<size_t>(i)] - s.vertex(0)[static_cast<size_t>(i)];
    return a;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

} // namespace

EuclideanSimplex::EuclideanSimplex(int ambient_dim, std::vector<std::vector<double>> vertices)
    : m_(ambient_dim), k_(static_cast<int>(vertices.size()) - 1), verts_(std::move(vertices)) {
    require(m_ >= 1, ErrCode::InvalidParams, "ambient dimension must be positive");
    require(k_ >= 0, ErrCode::InvalidParams, "a simplex needs at least one vertex");
    require(k_ <= m_, ErrCode::DegenerateSimplex,
            "a " + std::to_string(k_) + "-simplex cannot be affinely independent in R^" + std::to_string(m_));
    for (const auto& v : verts_)
        require(static_cast<int>(v.size()) == m_, ErrCode::InvalidParams,
                "vertex coordinate count differs from the ambient dimension");
    if (k_ >= 1) {
        Eigen::MatrixXd a = edge_matrix(*this);
        double gram = (a.transpose() * a).determinant();
        double d2 = 0.0;
        for (int i = 0; i <= k_; ++i)
            for (int j = i + 1; j <= k_; ++j)
                d2 = std::max(d2, sq_dist(verts_[static_cast<size_t>(i)], verts_[static_cast<size_t>(j)]));
        double scale = std::pow(d2, k_); // diam^(2k)
        require(scale > 0.0 && gram >= 1e-24 * scale, ErrCode::DegenerateSimplex,
                "vertices are (nearly) affinely dependent");
    }
}

EuclideanSimplex EuclideanSimplex::face(const std::vector<int>& vertex_indices) const {
    std::vector<std::vector<double>> vs;
    vs.reserve(vertex_indices.size());
    for (int i : vertex_indices) vs.push_back(verts_[static_cast<size_t>(i)]);
    return EuclideanSimplex(m_, std::move(vs));
}

double simplex_volume(const EuclideanSimplex& s) {
    const int k = s.dim();
    if (k == 0) return 1.0;
    // bordered determinant of squared distances:
    //   vol^2 = (-1)^(k+1) / (2^k (k!)^2) * det B
    const int n = k + 2;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        b(0, i) = 1.0;
        b(i, 0) = 1.0;
    }
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            b(i + 1, j + 1) = sq_dist(s.vertex(i), s.vertex(j));
    double det = b.determinant();
    double sign = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^(k+1)
    double v2 = sign * det / (std::pow(2.0, k) * factorial(k) * factorial(k));
    require(v2 > 0.0, ErrCode::DegenerateSimplex, "non-positive squared volume");
    return std::sqrt(v2);
}

double simplex_diameter(const EuclideanSimplex& s) {
    require(s.dim() >= 1, ErrCode::InvalidParams, "diameter needs at least two vertices");
    double d2 = 0.0;
    for (int i = 0; i <= s.dim(); ++i)
        for (int j = i + 1; j <= s.dim(); ++j) d2 = std::max(d2, sq_dist(s.vertex(i), s.vertex(j)));
    return std::sqrt(d2);
}

double fullness(const EuclideanSimplex& s) {
    return simplex_volume(s) / std::pow(simplex_diameter(s), s.dim());
}

double point_to_simplex_distance(const std::vector<double>& point, const EuclideanSimplex& s) {
    const int m = s.ambient_dim(), k = s.dim();
    require(static_cast<int>(point.size()) == m, ErrCode::InvalidParams, "point dimension mismatch");

    Eigen::VectorXd p(m), v0(m);
    for (int i = 0; i < m; ++i) {
        p(i) = point[static_cast<size_t>(i)];
        v0(i) = s.vertex(0)[static_cast<size_t>(i)];
    }
    if (k == 0) return (p - v0).norm();

    // project onto the affine hull; if the projection lands inside the
    // simplex this is the distance, otherwise recurse into the facets
    Eigen::MatrixXd a = edge_matrix(s);
    Eigen::VectorXd coef = (a.transpose() * a).ldlt().solve(a.transpose() * (p - v0));
    double rest = 1.0;
    bool inside = true;
    for (int j = 0; j < k; ++j) {
        rest -= coef(j);
        if (coef(j) < -1e-12) inside = false;
    }
    if (rest < -1e-12) inside = false;
    if (inside) return (p - v0 - a * coef).norm();

    double best = std::numeric_limits<double>::infinity();
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<int> facet;
        for (int i = 0; i <= k; ++i)
            if (i != drop) facet.push_back(i);
        best = std::min(best, point_to_simplex_distance(point, s.face(facet)));
    }
    return best;
}

BoundaryDistanceCheck boundary_distance_bound_check(const EuclideanSimplex& s,
                                                    const std::vector<double>& mu) {
    const int k = s.dim();
    require(static_cast<int>(mu.size()) == k + 1, ErrCode::BadBarycentric,
            "need one barycentric coordinate per vertex");
    double sum = 0.0, mn = std::numeric_limits<double>::infinity();
    for (double c : mu) {
        require(c >= -1e-12, ErrCode::BadBarycentric, "negative barycentric coordinate");
        sum += c;
        mn = std::min(mn, c);
    }
    require(std::abs(sum - 1.0) <= 1e-9, ErrCode::BadBarycentric, "barycentric coordinates must sum to 1");
    mn = std::max(mn, 0.0);

    const int m = s.ambient_dim();
    std::vector<double> point(static_cast<size_t>(m), 0.0);
    for (int i = 0; i <= k; ++i)
        for (int d = 0; d < m; ++d)
            point[static_cast<size_t>(d)] += mu[static_cast<size_t>(i)] * s.vertex(i)[static_cast<size_t>(d)];

    BoundaryDistanceCheck out;
    out.lhs = std::numeric_limits<double>::infinity();
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<int> facet;
        for (int i = 0; i <= k; ++i)
            if (i != drop) facet.push_back(i);
        out.lhs = std::min(out.lhs, point_to_simplex_distance(point, s.face(facet)));
    }
    out.rhs = factorial(k) * fullness(s) * simplex_diameter(s) * mn;
    out.holds = out.lhs >= out.rhs - 1e-9;
    return out;
}

std::vector<EuclideanSimplex> cube_barycentric_subdivision(int m, double h) {
    require(m >= 1 && m <= 5, ErrCode::InvalidParams, "supported dimensions are 1..5");
    require(h > 0.0, ErrCode::InvalidParams, "side length must be positive");

    // one simplex per (corner, coordinate order): walk from the corner to
    // the cube center, centering one coordinate at a time
    std::vector<int> perm(static_cast<size_t>(m));
    std::vector<EuclideanSimplex> out;
    out.reserve((size_t{1} << m) * static_cast<size_t>(factorial(m)));
    for (unsigned corner = 0; corner < (1u << m); ++corner) {
        for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
        do {
            std::vector<std::vector<double>> vs;
            vs.reserve(static_cast<size_t>(m) + 1);
            std::vector<double> cur(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) cur[static_cast<size_t>(i)] = (corner >> i & 1u) ? h : 0.0;
            vs.push_back(cur);
            for (int step = 0; step < m; ++step) {
                cur[static_cast<size_t>(perm[static_cast<size_t>(step)])] = h / 2.0;
                vs.push_back(cur);
            }
            out.emplace_back(m, std::move(vs));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

double perturbed_min_fullness(const EuclideanSimplex& s, double rho, int trials, std::uint64_t seed) {
    require(rho >= 0.0, ErrCode::InvalidParams, "perturbation radius must be >= 0");
    if (rho == 0.0 || trials <= 0) return fullness(s);

    const int m = s.ambient_dim(), k = s.dim();
    const double radius = rho * simplex_diameter(s);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    double mn = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        std::vector<std::vector<double>> vs = s.vertices();
        for (int i = 0; i <= k; ++i) {
            std::vector<double> dir(static_cast<size_t>(m));
            double norm2 = 0.0;
            for (double& d : dir) {
                d = gauss(rng);
                norm2 += d * d;
            }
            double r = radius * std::pow(unif(rng), 1.0 / m) / std::sqrt(std::max(norm2, 1e-300));
            for (int d = 0; d < m; ++d) vs[static_cast<size_t>(i)][static_cast<size_t>(d)] += r * dir[static_cast<size_t>(d)];
        }
        double theta = 0.0;
        try {
            theta = fullness(EuclideanSimplex(m, std::move(vs)));
        } catch (const Error& e) {
            if (e.code() != ErrCode::DegenerateSimplex) throw; // collapsed: fullness 0
        }
        mn = std::min(mn, theta);
    }
    return mn;
}

double independence(const std::vector<std::vector<double>>& basis_p,
                    const std::vector<std::vector<double>>& basis_q) {
    require(!basis_p.empty() && !basis_q.empty(), ErrCode::BadBasis, "empty basis");
    const int m = static_cast<int>(basis_p[0].size());
    require(static_cast<int>(basis_q[0].size()) == m, ErrCode::BadBasis, "ambient dimensions differ");

    auto pack = [m](const std::vector<std::vector<double>>& basis) {
        Eigen::MatrixXd b(m, static_cast<int>(basis.size()));
        for (int j = 0; j < b.cols(); ++j) {
            require(static_cast<int>(basis[static_cast<size_t>(j)].size()) == m, ErrCode::BadBasis,
                    "inconsistent vector dimensions");
            for (int i = 0; i < m; ++i) b(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
        }
        Eigen::MatrixXd gram = b.transpose() * b;
        require((gram - Eigen::MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() <= 1e-8,
                ErrCode::BadBasis, "vectors are not orthonormal");
        return b;
    };
    Eigen::MatrixXd p = pack(basis_p);
    Eigen::MatrixXd q = pack(basis_q);

    // largest singular value of P^T Q is the largest cosine between the
    // spans; the least residual of a unit vector is sqrt(1 - cos^2)
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.transpose() * q);
    double cosmax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    cosmax = std::min(cosmax, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - cosmax * cosmax));
}

} // namespace systolica
