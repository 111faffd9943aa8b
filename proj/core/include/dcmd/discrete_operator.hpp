#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcmd/boundary.hpp"
#include "dcmd/fields.hpp"
#include "dcmd/grid.hpp"
#include "dcmd/linear_solver.hpp"

namespace dcmd {

enum class AdvectionScheme { Centered, Upwind };

/// Per-component coefficients of  w_t = a lap w - v w_y - k w  plus the membrane constants.
struct OperatorCoefficients {
  std::array<double, 2> diffusion{1.0, 1.0};
  std::array<double, 2> velocity{0.0, 0.0};
  std::array<double, 2> decay{0.0, 0.0};
  double gamma_f = 0.0;
  double gamma_p = 0.0;
  AdvectionScheme scheme = AdvectionScheme::Centered;

  /// Coefficients of the physical model; advection scaled by advection_scale (1 = full).
  static OperatorCoefficients from(const PhysicalParams& params, double advection_scale = 1.0,
                                   AdvectionScheme scheme = AdvectionScheme::Centered);
};

/// Space-discretized operator: dw/dt = A w + b(data) on free rows, w = data on Dirichlet rows.
///
/// Unknowns are ordered [f(0..n-1), p(0..n-1)] with n = nx*ny. Dirichlet rows of A are
/// zero; rhs_bc() puts the affine boundary contribution b on free rows and the Dirichlet
/// value itself on Dirichlet rows.
class DiscreteOperator {
 public:
  const Grid& grid() const noexcept { return grid_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  const OperatorCoefficients& coefficients() const noexcept { return coeffs_; }
  const BcSpec& bc() const noexcept { return bc_; }
  const std::optional<PhysicalParams>& params() const noexcept { return params_; }

  std::size_t unknowns() const noexcept { return 2 * grid_.size(); }
  bool is_dirichlet(std::size_t row) const { return dirichlet_[row] != 0; }
  const std::vector<std::uint8_t>& dirichlet_rows() const noexcept { return dirichlet_; }

  Vector rhs_bc(const BoundaryData& data) const;
  /// Data taken from the BcSpec signals at time t.
  Vector rhs_bc(double t) const;

  /// A w (no boundary data).
  Vector apply(const Vector& w) const { return matrix_ * w; }
  FieldPair apply(const FieldPair& w) const;

  /// Steady residual: A w + b on free rows, w - g on Dirichlet rows.
  Vector residual(const FieldPair& w, const BoundaryData& data) const;

 private:
  friend DiscreteOperator assemble(const Grid&, const OperatorCoefficients&, const BcSpec&);

  struct DataTerm {
    std::uint32_t row;
    std::uint8_t segment;
    std::uint8_t component;
    std::uint32_t position;
    double coefficient;
  };

  explicit DiscreteOperator(const Grid& grid) : grid_(grid) {}
  static double data_value(const BoundaryData& data, const DataTerm& term);

  Grid grid_;
  OperatorCoefficients coeffs_;
  BcSpec bc_;
  std::optional<PhysicalParams> params_;
  SparseMatrix matrix_;
  std::vector<std::uint8_t> dirichlet_;
  std::vector<DataTerm> flux_terms_;
  std::vector<DataTerm> dirichlet_terms_;

  friend DiscreteOperator assemble(const Grid&, const PhysicalParams&, const BcSpec&, double,
                                   AdvectionScheme);
};

DiscreteOperator assemble(const Grid& grid, const OperatorCoefficients& coeffs, const BcSpec& bc);
DiscreteOperator assemble(const Grid& grid, const PhysicalParams& params, const BcSpec& bc,
                          double advection_scale = 1.0,
                          AdvectionScheme scheme = AdvectionScheme::Centered);

Vector pack(const FieldPair& w);
FieldPair unpack(const Grid& grid, const Vector& v);

/// Backward Euler for one assembled operator and a fixed step; the system matrix is
/// factorized once at construction.
class BackwardEuler {
 public:
  BackwardEuler(DiscreteOperator op, double dt, double rtol = SparseLinearSolver::kDefaultRtol);

  /// Solves (I - dt A) w+ = w + dt (b(data_next) + source) on free rows and w+ = g on
  /// Dirichlet rows. data_next is the boundary data at the new time level.
  FieldPair step(const FieldPair& w, const BoundaryData& data_next,
                 const FieldPair* source = nullptr) const;
  SolveReport step_with_report(const FieldPair& w, const BoundaryData& data_next,
                               const FieldPair* source = nullptr) const;

  const DiscreteOperator& op() const noexcept { return op_; }
  double dt() const noexcept { return dt_; }

 private:
  DiscreteOperator op_;
  double dt_;
  SparseLinearSolver solver_;
};

/// One step from t to t + dt with data from the operator's BcSpec signals at t + dt.
FieldPair step_backward_euler(const DiscreteOperator& op, const FieldPair& w, double t, double dt);

}  // namespace dcmd
