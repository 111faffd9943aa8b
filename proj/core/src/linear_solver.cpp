#include "dcmd/linear_solver.hpp"

#include <cmath>
#include <sstream>

#include "dcmd/errors.hpp"

namespace dcmd {

SparseLinearSolver::SparseLinearSolver(const SparseMatrix& matrix, double rtol)
    : matrix_(matrix), rtol_(rtol) {
  if (matrix.rows() != matrix.cols()) throw ValidationError("linear system must be square");
  matrix_.makeCompressed();
  lu_ = std::make_shared<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>();
  lu_->analyzePattern(matrix_);
  lu_->factorize(matrix_);
  if (lu_->info() != Eigen::Success) {
    throw NumericalError("sparse LU failed, matrix is structurally or numerically singular: " +
                         lu_->lastErrorMessage());
  }
}

SolveReport SparseLinearSolver::solve_with_report(const Vector& rhs) const {
  if (rhs.size() != matrix_.rows()) throw ValidationError("right-hand side size mismatch");
  SolveReport report;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    report.x = Vector::Zero(rhs.size());
    return report;
  }
  report.x = lu_->solve(rhs);
  Vector residual = rhs - matrix_ * report.x;
  report.relative_residual = residual.norm() / rhs_norm;
  while (report.relative_residual > rtol_ && report.refinement_steps < kMaxRefinement) {
    report.x += lu_->solve(residual);
    residual = rhs - matrix_ * report.x;
    report.relative_residual = residual.norm() / rhs_norm;
    ++report.refinement_steps;
  }
  if (!std::isfinite(report.relative_residual) || report.relative_residual > rtol_) {
    std::ostringstream msg;
    msg << "linear solve did not reach relative residual " << rtol_ << " after "
        << report.refinement_steps << " refinement steps (residual " << report.relative_residual
        << ")";
    throw NumericalError(msg.str());
  }
  return report;
}

Vector solve_linear(const SparseMatrix& matrix, const Vector& rhs, double rtol) {
  return SparseLinearSolver(matrix, rtol).solve(rhs);
}

}  // namespace dcmd
