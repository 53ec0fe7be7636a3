#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

namespace eqc {

// Kronecker product a (x) b.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Column-major vectorization of a matrix and its inverse.
Eigen::VectorXd vec(const Eigen::MatrixXd& m);
Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int rows, int cols);

// Orthonormal basis of the nullspace of `a` (rows = constraints).
// Singular values below `rel_tol * max(largest singular value, 1)` count
// as zero. The returned columns are canonicalized: reduced row echelon
// form of the span, re-orthonormalized in order, first nonzero
// coordinate of each column made positive. This makes the basis a
// function of the subspace alone, not of solver internals.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

// Nullspace of a tall sparse constraint stack through its Gram matrix;
// thresholds match `nullspace`.
Eigen::MatrixXd nullspace_sparse(const Eigen::SparseMatrix<double>& a,
                                 double rel_tol = 1e-9);

// Same canonicalization applied to the column span of `vectors`.
Eigen::MatrixXd canonical_span(const Eigen::MatrixXd& vectors,
                               double rel_tol = 1e-9);

// Rank of the column span with the same relative threshold.
int span_rank(const Eigen::MatrixXd& vectors, double rel_tol = 1e-9);

// Largest distance between a column of `probe` and its orthogonal
// projection onto the column span of `basis`, relative to the column
// norm. Columns of `basis` must be orthonormal.
double span_projection_residual(const Eigen::MatrixXd& basis,
                                const Eigen::MatrixXd& probe);

}  // namespace eqc
