#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irl_lab/errors.hpp"
#include "irl_lab/linalg.hpp"
#include "irl_lab/rng.hpp"

using namespace irl_lab;

namespace {

Mat random_matrix(int n, Rng& rng) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.next_gaussian();
    return m;
}

}  // namespace

TEST_CASE("lu_solve recovers known solutions") {
    Mat a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 3.0;
    const Vec x = lu_solve(a, {5.0, 10.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lu_solve residuals on random systems") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_below(12);
        Mat a = random_matrix(n, rng);
        for (int i = 0; i < n; ++i) a(i, i) += 4.0;  // keep well-conditioned
        Vec b(n);
        for (double& v : b) v = rng.next_gaussian();
        const Vec x = lu_solve(a, b);
        const Vec r = sub(mat_vec(a, x), b);
        CHECK(norm_inf(r) <= 1e-10 * (1.0 + norm_inf(b)));
    }
}

TEST_CASE("lu_solve rejects singular systems") {
    Mat a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK_THROWS_AS(lu_solve(a, {1.0, 1.0}), SingularSystemError);
}

TEST_CASE("lu_solve_multi matches per-column solves") {
    Rng rng(3);
    Mat a = random_matrix(4, rng);
    for (int i = 0; i < 4; ++i) a(i, i) += 3.0;
    Mat b(4, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) b(i, j) = rng.next_gaussian();
    const Mat x = lu_solve_multi(a, b);
    for (int j = 0; j < 2; ++j) {
        Vec col(4);
        for (int i = 0; i < 4; ++i) col[i] = b(i, j);
        const Vec xc = lu_solve(a, col);
        for (int i = 0; i < 4; ++i) CHECK(x(i, j) == doctest::Approx(xc[i]).epsilon(1e-12));
    }
}

TEST_CASE("determinant basics") {
    Mat a(2, 2);
    a(0, 0) = 3.0;
    a(0, 1) = 1.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK(determinant(a) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(determinant(Mat::identity(5)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nullspace_vector spans the orthogonal complement") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 3 + rng.next_below(8);
        std::vector<Vec> rows;
        for (int i = 0; i < d - 1; ++i) {
            Vec v(d);
            for (double& x : v) x = rng.next_gaussian();
            rows.push_back(std::move(v));
        }
        const Vec p = nullspace_vector(rows, d);
        CHECK(norm2(p) == doctest::Approx(1.0).epsilon(1e-10));
        for (const Vec& r : rows) CHECK(std::fabs(dot(p, r)) <= 1e-9 * (1.0 + norm2(r)));
    }
}

TEST_CASE("nullspace_vector rejects rank-deficient constraints") {
    std::vector<Vec> rows = {{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};  // rank 1, need rank 2
    CHECK_THROWS_AS(nullspace_vector(rows, 3), DegenerateFacetError);
}

TEST_CASE("vec_mat is the transpose action") {
    Rng rng(5);
    const Mat a = random_matrix(5, rng);
    Vec x(5);
    for (double& v : x) v = rng.next_gaussian();
    const Vec left = vec_mat(x, a);
    const Vec right = mat_vec(transpose(a), x);
    for (int i = 0; i < 5; ++i) CHECK(left[i] == doctest::Approx(right[i]).epsilon(1e-12));
}
