#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>

namespace dcmd {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct SolveReport {
  Vector x;
  double relative_residual = 0.0;
  int refinement_steps = 0;
};

/// Sparse LU factorization with iterative refinement. The contract is the residual:
/// every returned solution satisfies |b - A x| <= rtol |b|, otherwise NumericalError.
class SparseLinearSolver {
 public:
  static constexpr double kDefaultRtol = 1e-10;
  static constexpr int kMaxRefinement = 5;

  explicit SparseLinearSolver(const SparseMatrix& matrix, double rtol = kDefaultRtol);

  Vector solve(const Vector& rhs) const { return solve_with_report(rhs).x; }
  SolveReport solve_with_report(const Vector& rhs) const;

  Eigen::Index size() const noexcept { return matrix_.rows(); }
  double rtol() const noexcept { return rtol_; }

 private:
  Eigen::SparseMatrix<double> matrix_;
  std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>> lu_;
  double rtol_;
};

Vector solve_linear(const SparseMatrix& matrix, const Vector& rhs,
                    double rtol = SparseLinearSolver::kDefaultRtol);

}  // namespace dcmd
