#pragma once

#include <vector>

#include "irl_lab/linalg.hpp"

namespace irl_lab {

// Orthogonal map (det +1) sending the all-ones direction of R^n to e_n, so
// the zero-sum hyperplane H_n lands in span(e_1..e_{n-1}).
struct RotationMap {
    int n = 0;
    Mat matrix;
};

RotationMap rotation_to_hyperplane(int n);

Vec rotate(const RotationMap& rot, const Vec& x);
Vec rotate_back(const RotationMap& rot, const Vec& x);  // applies the transpose

// Embeds a (n-1)-dimensional vector as [y; 0] and maps it back into H_n.
Vec lift_to_hyperplane(const RotationMap& rot, const Vec& y);

enum class CodeKind { Simplex, Icosahedron, Other };

// N unit points in R^dim with pairwise inner products <= cos_theta.
struct SphericalCode {
    CodeKind kind = CodeKind::Other;
    int dim = 0;
    std::vector<Vec> points;
    double cos_theta = 1.0;
};

// Regular simplex: d+1 unit points in R^d, pairwise inner product -1/d.
// Realized by mapping the canonical basis of R^{d+1} through centering and
// the hyperplane rotation, so the symmetry is inherited exactly.
SphericalCode simplex_code(int d);

// The 12 golden-ratio vertices; cos_theta = 1/sqrt(5).
SphericalCode icosahedron_code();

// Arbitrary point set (for tests and tooling); validates unit norms.
SphericalCode make_code(std::vector<Vec> points);

// Minimum pairwise angle theta = arccos(max pairwise inner product).
double min_angle(const SphericalCode& code);

// A facet of the code's simplicial polytope: dim vertices whose centroid
// direction becomes a reward, with one leave-one-out hyperplane normal per
// vertex (norm eps each, oriented toward the centroid).
struct Facet {
    std::vector<int> vertex_indices;
    Vec centroid;
    Vec unit_centroid;
    std::vector<Vec> normals;  // empty until facet_normals is attached
    double eps = 0.0;
};

// Facets without normals. Simplex code: the d+1 leave-one-out subsets.
// Icosahedron: the 20 hull triangles. Anything else is unsupported.
std::vector<Facet> facets_of_code(const SphericalCode& code);

Vec facet_centroid(const SphericalCode& code, const Facet& facet);

// Leave-one-out normals: p_j spans the orthogonal complement of the other
// facet vertices, scaled to norm eps, sign fixed by p_j . centroid > 0.
std::vector<Vec> facet_normals(const SphericalCode& code, const Facet& facet, double eps);

// Convenience: copy of the facet with normals (and eps) attached.
Facet with_normals(const SphericalCode& code, const Facet& facet, double eps);

}  // namespace irl_lab
