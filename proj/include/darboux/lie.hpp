#pragma once

#include <Eigen/Dense>

#include <array>
#include <string_view>

namespace darboux::lie {

using Mat = Eigen::MatrixXcd;

/// Matrix exponential by scaling and squaring with a Taylor kernel.
Mat exp_matrix(const Mat& x);

enum class Algebra { su, so, sl, u, gl };

/// Parses "su", "so", "sl", "u" or "gl"; throws DimensionError otherwise.
Algebra parse_algebra(std::string_view name);

/// Defining identities of the matrix Lie algebra, checked entrywise
/// within `tol`: su (X* = -X, tr X = 0), u (X* = -X), sl (tr X = 0),
/// so (real, X^T = -X), gl (any square matrix).
bool algebra_membership(const Mat& x, Algebra which, double tol = 1e-10);

/// g X g^-1. Throws DivisionByZeroError if |det g| <= 1e-12.
Mat Ad(const Mat& g, const Mat& x);

/// [X, Y] = XY - YX.
Mat ad(const Mat& x, const Mat& y);

/// u1 = [[0,i],[i,0]], u2 = [[0,-1],[1,0]], u3 = [[i,0],[0,-i]];
/// [u1,u2] = 2u3, [u2,u3] = 2u1, [u3,u1] = 2u2.
std::array<Mat, 3> su2_basis();

}  // namespace darboux::lie
