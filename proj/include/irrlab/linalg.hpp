#pragma once

#include <cstddef>
#include <vector>

namespace irrlab {

/// Dense row-major matrix, sized for the small systems that show up here
/// (state dimensions <= 3, Van Loan blocks, regression Gram matrices).
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n);
  static Mat diag(const std::vector<double>& d);

  Mat transposed() const;
  double norm_inf() const;
  bool finite() const;
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);

std::vector<double> matvec(const Mat& m, const std::vector<double>& v);

/// Matrix exponential by scaling-and-squaring with a Taylor core.
Mat expm(const Mat& m);

/// Cholesky factor L (lower) of a symmetric positive semi-definite matrix.
/// Ridge `jitter * trace/n` is added on the diagonal when a pivot dips below
/// zero; `regularized` reports whether that happened.
Mat cholesky(const Mat& spd, bool* regularized = nullptr);

/// Solve L L^T x = b given the lower factor L.
std::vector<double> cholesky_solve(const Mat& l, const std::vector<double>& b);

/// Gaussian elimination with partial pivoting; throws on singular input.
std::vector<double> solve_lu(Mat m, std::vector<double> b);

double det3(const Mat& m);
Mat inverse_small(const Mat& m);

/// Least-squares slope/intercept fit of y against x, with R^2.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double mean_of(const std::vector<double>& v);
double median_of(std::vector<double> v);

}  // namespace irrlab
