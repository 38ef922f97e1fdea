#include "irl_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irl_lab/errors.hpp"

namespace irl_lab {

RotationMap rotation_to_hyperplane(int n) {
    if (n < 2) throw DimensionMismatchError("rotation_to_hyperplane: n must be >= 2");
    // Householder reflection sending 1/sqrt(n) to e_n, then a sign flip of
    // the first coordinate to restore det +1.
    Vec v(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) v[i] = inv_sqrt_n;
    v[n - 1] -= 1.0;
    const double vv = dot(v, v);
    Mat h = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
    for (int j = 0; j < n; ++j) h(0, j) = -h(0, j);
    return {n, std::move(h)};
}

Vec rotate(const RotationMap& rot, const Vec& x) { return mat_vec(rot.matrix, x); }

Vec rotate_back(const RotationMap& rot, const Vec& x) { return vec_mat(x, rot.matrix); }

Vec lift_to_hyperplane(const RotationMap& rot, const Vec& y) {
    if (static_cast<int>(y.size()) != rot.n - 1)
        throw DimensionMismatchError("lift_to_hyperplane: expected an (n-1)-vector");
    Vec full(y);
    full.push_back(0.0);
    return rotate_back(rot, full);
}

SphericalCode simplex_code(int d) {
    if (d < 2) throw DimensionMismatchError("simplex_code: d must be >= 2");
    const int n = d + 1;
    const RotationMap rot = rotation_to_hyperplane(n);
    SphericalCode code;
    code.kind = CodeKind::Simplex;
    code.dim = d;
    code.cos_theta = -1.0 / d;
    for (int i = 0; i < n; ++i) {
        Vec e(n, -1.0 / n);
        e[i] += 1.0;
        Vec r = rotate(rot, e);
        r.resize(d);  // last coordinate is 0 for zero-sum inputs
        const double nr = norm2(r);
        for (double& x : r) x /= nr;
        code.points.push_back(std::move(r));
    }
    return code;
}

SphericalCode icosahedron_code() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double s = 1.0 / std::sqrt(1.0 + phi * phi);
    SphericalCode code;
    code.kind = CodeKind::Icosahedron;
    code.dim = 3;
    code.cos_theta = 1.0 / std::sqrt(5.0);
    for (double a : {1.0, -1.0})
        for (double b : {phi, -phi}) {
            code.points.push_back({0.0, a * s, b * s});
            code.points.push_back({a * s, b * s, 0.0});
            code.points.push_back({b * s, 0.0, a * s});
        }
    return code;
}

SphericalCode make_code(std::vector<Vec> points) {
    if (points.empty()) throw DimensionMismatchError("make_code: empty point set");
    SphericalCode code;
    code.kind = CodeKind::Other;
    code.dim = static_cast<int>(points[0].size());
    for (const Vec& p : points) {
        if (static_cast<int>(p.size()) != code.dim)
            throw DimensionMismatchError("make_code: inconsistent dimensions");
        if (std::fabs(norm2(p) - 1.0) > 1e-10)
            throw Error("make_code: points must be unit vectors");
    }
    code.points = std::move(points);
    double max_dot = -1.0;
    for (size_t i = 0; i < code.points.size(); ++i)
        for (size_t j = i + 1; j < code.points.size(); ++j)
            max_dot = std::max(max_dot, dot(code.points[i], code.points[j]));
    code.cos_theta = max_dot;
    return code;
}

double min_angle(const SphericalCode& code) {
    if (code.points.size() < 2) throw DimensionMismatchError("min_angle: need at least two points");
    double max_dot = -1.0;
    for (size_t i = 0; i < code.points.size(); ++i)
        for (size_t j = i + 1; j < code.points.size(); ++j)
            max_dot = std::max(max_dot, dot(code.points[i], code.points[j]));
    return std::acos(std::clamp(max_dot, -1.0, 1.0));
}

Vec facet_centroid(const SphericalCode& code, const Facet& facet) {
    Vec c(code.dim, 0.0);
    for (int idx : facet.vertex_indices)
        for (int j = 0; j < code.dim; ++j) c[j] += code.points[idx][j];
    for (double& x : c) x /= static_cast<double>(facet.vertex_indices.size());
    return c;
}

namespace {

Facet make_facet(const SphericalCode& code, std::vector<int> idx) {
    Facet f;
    f.vertex_indices = std::move(idx);
    f.centroid = facet_centroid(code, f);
    f.unit_centroid = scaled(f.centroid, 1.0 / norm2(f.centroid));
    return f;
}

std::vector<Facet> hull_triangles(const SphericalCode& code) {
    const auto& p = code.points;
    const int n = static_cast<int>(p.size());
    std::vector<Facet> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const Vec u = sub(p[j], p[i]);
                const Vec v = sub(p[k], p[i]);
                const Vec nrm = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                 u[0] * v[1] - u[1] * v[0]};
                bool pos = false, neg = false;
                for (int l = 0; l < n && !(pos && neg); ++l) {
                    if (l == i || l == j || l == k) continue;
                    const double s = dot(nrm, sub(p[l], p[i]));
                    if (s > 1e-9) pos = true;
                    if (s < -1e-9) neg = true;
                }
                if (pos != neg) out.push_back(make_facet(code, {i, j, k}));
            }
    return out;
}

}  // namespace

std::vector<Facet> facets_of_code(const SphericalCode& code) {
    switch (code.kind) {
        case CodeKind::Simplex: {
            std::vector<Facet> out;
            const int n_points = static_cast<int>(code.points.size());
            for (int omit = 0; omit < n_points; ++omit) {
                std::vector<int> idx;
                for (int i = 0; i < n_points; ++i)
                    if (i != omit) idx.push_back(i);
                out.push_back(make_facet(code, std::move(idx)));
            }
            return out;
        }
        case CodeKind::Icosahedron:
            return hull_triangles(code);
        case CodeKind::Other:
            break;
    }
    throw UnsupportedCodeError("facets_of_code: only simplex and icosahedron codes are supported");
}

std::vector<Vec> facet_normals(const SphericalCode& code, const Facet& facet, double eps) {
    if (eps <= 0.0) throw Error("facet_normals: eps must be positive");
    const int d = code.dim;
    if (static_cast<int>(facet.vertex_indices.size()) != d)
        throw DimensionMismatchError("facet_normals: facet must have dim vertices");
    const Vec centroid = facet_centroid(code, facet);
    std::vector<Vec> normals;
    normals.reserve(d);
    for (int j = 0; j < d; ++j) {
        std::vector<Vec> rows;
        for (int t = 0; t < d; ++t)
            if (t != j) rows.push_back(code.points[facet.vertex_indices[t]]);
        Vec p = nullspace_vector(rows, d);
        const double c = dot(p, centroid);
        if (std::fabs(c) < 1e-12)
            throw DegenerateFacetError("facet_normals: centroid lies on a leave-one-out hyperplane");
        const double s = (c > 0.0 ? eps : -eps);
        for (double& x : p) x *= s;
        normals.push_back(std::move(p));
    }
    return normals;
}

Facet with_normals(const SphericalCode& code, const Facet& facet, double eps) {
    Facet f = facet;
    f.normals = facet_normals(code, facet, eps);
    f.eps = eps;
    return f;
}

}  // namespace irl_lab
