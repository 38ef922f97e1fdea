#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace irl_lab {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense row-major matrix. Sizes here are small (n up to a few hundred),
// so everything below is direct O(n^3) with partial pivoting.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<const double> row(int i) const {
        return {a_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }
    std::span<double> row(int i) {
        return {a_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    const std::vector<double>& data() const { return a_; }

    bool operator==(const Mat&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);
Vec vec_mat(const Vec& x, const Mat& a);  // row-vector times matrix
Mat transpose(const Mat& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> a);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

Vec scaled(const Vec& a, double c);
Vec sub(const Vec& a, const Vec& b);

// Solves Ax = b by LU with partial pivoting. Throws SingularSystemError.
Vec lu_solve(const Mat& a, const Vec& b);

// Solves AX = B column-by-column from one factorization.
Mat lu_solve_multi(const Mat& a, const Mat& b);

double determinant(const Mat& a);

// Unit-norm vector spanning the 1-dimensional nullspace of the given
// constraint rows (each row is one orthogonality constraint in R^dim).
// Requires rank == dim - 1; throws DegenerateFacetError otherwise.
Vec nullspace_vector(const std::vector<Vec>& constraint_rows, int dim);

}  // namespace irl_lab
