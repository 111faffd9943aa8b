#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dcmd/discrete_operator.hpp"
#include "dcmd/fields.hpp"
#include "dcmd/grid.hpp"

namespace dcmd {

/// Generator with homogeneous inlet conditions: Dirichlet-zero inlets, insulated outlets and
/// walls, membrane coupling on Gamma4. advection_scale = 0 gives A0, 1 gives the full A.
DiscreteOperator assemble_generator(const Grid& grid, const PhysicalParams& params,
                                    double advection_scale = 1.0,
                                    AdvectionScheme scheme = AdvectionScheme::Centered);

/// Diagonal of the weighted inner product on packed unknowns:
/// alpha_p gamma_p * quadrature weight on f rows, alpha_f gamma_f * quadrature weight on p rows.
Vector weight_vector(const Grid& grid, const PhysicalParams& params);

/// 1 on free rows, 0 on Dirichlet rows.
Vector free_mask(const DiscreteOperator& op);

/// max |<M a, b>_W - <a, M b>_W| / (|a|_W |b|_W) over random pairs supported on the free
/// rows (mask entries nonzero). W is the diagonal weight vector.
double weighted_asymmetry(const SparseMatrix& matrix, const Vector& weights, const Vector& mask,
                          std::size_t trials, std::uint64_t seed = 1);

/// Weighted symmetry defect of op, with the metric built from params (which may differ from
/// the params the operator was assembled with).
double check_weighted_symmetry(const DiscreteOperator& op, const PhysicalParams& params,
                               std::size_t trials, std::uint64_t seed = 1);

/// <A w, w>_W / <w, w>_W on the free rows of w.
double rayleigh_quotient(const DiscreteOperator& op, const PhysicalParams& params,
                         const FieldPair& w);

/// Max Rayleigh quotient over random states plus the sin(k pi x) sin(m pi y / L) family
/// (k, m <= 3) and the constant pair, all restricted to the free rows.
double check_dissipativity(const DiscreteOperator& op, const PhysicalParams& params,
                           std::size_t trials, std::uint64_t seed = 1);
double check_dissipativity(const Grid& grid, const PhysicalParams& params, double t,
                           std::size_t trials, std::uint64_t seed = 1);

/// Dense eigenvalues of A restricted to the free rows. Meant for small grids only.
std::vector<std::complex<double>> spectrum(const DiscreteOperator& op);
double max_real_eigenvalue(const DiscreteOperator& op);

enum class Direction { Forward, Inverse };

/// g = f exp(-beta_f y / 2 alpha_f), q = p exp(-beta_p y / 2 alpha_p) and its inverse.
/// Requires co-current flow.
FieldPair cocurrent_transform(const Grid& grid, const FieldPair& w, const PhysicalParams& params,
                              Direction direction);

/// Simulates the co-current plant and, independently, the diagonalized system (reaction
/// beta^2 / 4 alpha, Robin dg/dnu = -kappa g on Gamma3), both from transformed data. Returns
/// max_t |T w(t) - z(t)|_W / max_t |z(t)|_W. Throws ValidationError unless
/// beta_f / 2 alpha_f = beta_p / 2 alpha_p within 1e-12.
double check_diagonalization(const PhysicalParams& params, const Grid& grid, double horizon,
                             double dt);

enum class Comparison { LessEqual, Less };

struct VerificationCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::LessEqual;
  bool passed = false;
};

/// Advection speeds used where a check needs nonzero flow (kappa = 0.1 for both streams).
PhysicalParams sample_flow(const PhysicalParams& params);

/// Symmetry, dissipativity, spectrum and diagonalization checks on one grid.
std::vector<VerificationCheck> run_verification(const Grid& grid, const PhysicalParams& params,
                                                std::size_t trials = 50, std::uint64_t seed = 1);

}  // namespace dcmd
