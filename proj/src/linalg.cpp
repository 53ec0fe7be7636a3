#include "equiconv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace eqc {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int rows, int cols) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

namespace {

// Reduced row echelon form in place; returns the rank. Rows below
// `pivot_tol` (relative to the largest row entry seen) are zeroed.
int rref(Eigen::MatrixXd& m, double pivot_tol) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  double scale = m.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return 0;
  const double tol = pivot_tol * scale;
  int rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = rank;
    double best = std::abs(m(pivot, col));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        pivot = r;
      }
    }
    if (best <= tol) continue;
    m.row(rank).swap(m.row(pivot));
    m.row(rank) /= m(rank, col);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r != rank && std::abs(m(r, col)) > 0.0) m.row(r) -= m(r, col) * m.row(rank);
    }
    ++rank;
  }
  for (Eigen::Index r = rank; r < rows; ++r) m.row(r).setZero();
  return rank;
}

Eigen::MatrixXd orthonormalize_rows_as_columns(const Eigen::MatrixXd& rows_in,
                                               int rank) {
  const Eigen::Index n = rows_in.cols();
  Eigen::MatrixXd out(n, rank);
  int kept = 0;
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXd v = rows_in.row(r).transpose();
    for (int k = 0; k < kept; ++k) v -= out.col(k).dot(v) * out.col(k);
    const double nrm = v.norm();
    if (nrm < 1e-12) continue;
    v /= nrm;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    out.col(kept++) = v;
  }
  return out.leftCols(kept);
}

}  // namespace

Eigen::MatrixXd canonical_span(const Eigen::MatrixXd& vectors, double rel_tol) {
  if (vectors.cols() == 0) return Eigen::MatrixXd(vectors.rows(), 0);
  Eigen::MatrixXd rows = vectors.transpose();
  const int rank = rref(rows, rel_tol);
  return orthonormalize_rows_as_columns(rows, rank);
}

namespace {

// Eigendecomposing the Gram matrix squares the condition number, so true
// zero directions surface with residual sqrt(eps * lambda_max). The Gram
// spectrum is therefore only used to pre-select candidates (loose factor
// 1e4 on the target threshold); each candidate is kept by evaluating the
// exact singular value ||A v|| directly against the stated threshold.
template <typename MatVec>
Eigen::MatrixXd nullspace_via_gram(const Eigen::MatrixXd& gram, double rel_tol,
                                   const MatVec& apply_a) {
  const Eigen::Index n = gram.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double sv_max = std::sqrt(std::max(eig.eigenvalues().maxCoeff(), 0.0));
  const double thresh = rel_tol * std::max(sv_max, 1.0);
  const double loose = 1e4 * thresh;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::sqrt(std::max(eig.eigenvalues()(i), 0.0)) >= loose) continue;
    const Eigen::VectorXd v = eig.eigenvectors().col(i);
    if (apply_a(v).norm() < thresh) keep.push_back(i);
  }
  Eigen::MatrixXd null_raw(n, static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i)
    null_raw.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors().col(keep[i]);
  return canonical_span(null_raw, rel_tol);
}

}  // namespace

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || a.cwiseAbs().maxCoeff() == 0.0)
    return Eigen::MatrixXd::Identity(n, n);

  if (a.rows() > 4 * n) {
    const Eigen::MatrixXd gram = a.transpose() * a;
    return nullspace_via_gram(gram, rel_tol,
                              [&](const Eigen::VectorXd& v) { return a * v; });
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const double sv_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double thresh = rel_tol * std::max(sv_max, 1.0);
  int count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < thresh) ++count;
  // Columns of V past the numerical rank span the nullspace.
  const Eigen::Index rank = std::min<Eigen::Index>(a.rows(), n) - count;
  const Eigen::MatrixXd null_raw = svd.matrixV().rightCols(n - rank);
  return canonical_span(null_raw, rel_tol);
}

Eigen::MatrixXd nullspace_sparse(const Eigen::SparseMatrix<double>& a,
                                 double rel_tol) {
  const Eigen::MatrixXd gram = Eigen::MatrixXd(a.transpose() * a);
  return nullspace_via_gram(gram, rel_tol,
                            [&](const Eigen::VectorXd& v) { return a * v; });
}

int span_rank(const Eigen::MatrixXd& vectors, double rel_tol) {
  if (vectors.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors);
  const double sv_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double thresh = rel_tol * std::max(sv_max, 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) >= thresh) ++rank;
  return rank;
}

double span_projection_residual(const Eigen::MatrixXd& basis,
                                const Eigen::MatrixXd& probe) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < probe.cols(); ++j) {
    const Eigen::VectorXd v = probe.col(j);
    const Eigen::VectorXd res = v - basis * (basis.transpose() * v);
    const double denom = std::max(v.norm(), 1e-30);
    worst = std::max(worst, res.norm() / denom);
  }
  return worst;
}

}  // namespace eqc
