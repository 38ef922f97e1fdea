#include "irl_lab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "irl_lab/errors.hpp"

namespace irl_lab {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

Vec vec_mat(const Vec& x, const Mat& a) {
    Vec y(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        auto r = a.row(i);
        for (int j = 0; j < a.cols(); ++j) y[j] += xi * r[j];
    }
    return y;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm1(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += std::fabs(v);
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::fabs(v));
    return s;
}

Vec scaled(const Vec& a, double c) {
    Vec r(a);
    for (double& v : r) v *= c;
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

namespace {

struct LuFactors {
    Mat lu;
    std::vector<int> perm;
};

LuFactors lu_factor(const Mat& a) {
    const int n = a.rows();
    if (a.cols() != n) throw DimensionMismatchError("lu_factor: matrix not square");
    LuFactors f{a, std::vector<int>(n)};
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(f.lu(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::fabs(f.lu(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-300) throw SingularSystemError("lu_factor: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(piv, j), f.lu(col, j));
            std::swap(f.perm[piv], f.perm[col]);
        }
        const double d = f.lu(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double m = f.lu(r, col) / d;
            f.lu(r, col) = m;
            if (m == 0.0) continue;
            for (int j = col + 1; j < n; ++j) f.lu(r, j) -= m * f.lu(col, j);
        }
    }
    return f;
}

Vec lu_apply(const LuFactors& f, const Vec& b) {
    const int n = f.lu.rows();
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

}  // namespace

Vec lu_solve(const Mat& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionMismatchError("lu_solve: rhs size mismatch");
    return lu_apply(lu_factor(a), b);
}

Mat lu_solve_multi(const Mat& a, const Mat& b) {
    if (b.rows() != a.rows()) throw DimensionMismatchError("lu_solve_multi: rhs rows mismatch");
    const LuFactors f = lu_factor(a);
    Mat x(b.rows(), b.cols());
    Vec col(b.rows());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        Vec s = lu_apply(f, col);
        for (int i = 0; i < b.rows(); ++i) x(i, j) = s[i];
    }
    return x;
}

double determinant(const Mat& a) {
    const int n = a.rows();
    Mat m = a;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
        if (std::fabs(m(piv, col)) < 1e-300) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

Vec nullspace_vector(const std::vector<Vec>& constraint_rows, int dim) {
    // Orthonormalize the constraints (modified Gram-Schmidt with
    // reorthogonalization), then project coordinate vectors to find the
    // orthogonal complement.
    std::vector<Vec> basis;
    for (const Vec& r : constraint_rows) {
        Vec v = r;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) {
                const double c = dot(v, b);
                for (int i = 0; i < dim; ++i) v[i] -= c * b[i];
            }
        const double nv = norm2(v);
        if (nv > 1e-10 * (1.0 + norm2(r))) {
            for (double& x : v) x /= nv;
            basis.push_back(std::move(v));
        }
    }
    if (static_cast<int>(basis.size()) != dim - 1)
        throw DegenerateFacetError("nullspace_vector: constraint rows not of rank dim-1");
    for (int e = 0; e < dim; ++e) {
        Vec v(dim, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) {
                const double c = dot(v, b);
                for (int i = 0; i < dim; ++i) v[i] -= c * b[i];
            }
        const double nv = norm2(v);
        if (nv > 1e-8) {
            for (double& x : v) x /= nv;
            return v;
        }
    }
    throw DegenerateFacetError("nullspace_vector: failed to complete basis");
}

}  // namespace irl_lab
