#include "dcmd/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "dcmd/errors.hpp"
#include "dcmd/steady.hpp"

namespace dcmd {

DiscreteOperator assemble_generator(const Grid& grid, const PhysicalParams& params,
                                    double advection_scale, AdvectionScheme scheme) {
  return assemble(grid, params, inlet_bc(params.orientation), advection_scale, scheme);
}

Vector weight_vector(const Grid& grid, const PhysicalParams& params) {
  const auto w = grid.domain_weights();
  const auto n = static_cast<Eigen::Index>(grid.size());
  Vector out(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k] = params.alpha_p * params.gamma_p * w[static_cast<std::size_t>(k)];
    out[n + k] = params.alpha_f * params.gamma_f * w[static_cast<std::size_t>(k)];
  }
  return out;
}

Vector free_mask(const DiscreteOperator& op) {
  Vector mask(static_cast<Eigen::Index>(op.unknowns()));
  for (std::size_t r = 0; r < op.unknowns(); ++r) {
    mask[static_cast<Eigen::Index>(r)] = op.is_dirichlet(r) ? 0.0 : 1.0;
  }
  return mask;
}

namespace {

Vector random_state(std::mt19937_64& rng, const Vector& mask) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(mask.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = dist(rng);
  return v.cwiseProduct(mask);
}

double weighted_dot(const Vector& a, const Vector& b, const Vector& w) {
  return (a.cwiseProduct(w)).dot(b);
}

}  // namespace

double weighted_asymmetry(const SparseMatrix& matrix, const Vector& weights, const Vector& mask,
                          std::size_t trials, std::uint64_t seed) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != weights.size() ||
      weights.size() != mask.size()) {
    throw ValidationError("matrix, weights and mask sizes disagree");
  }
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Vector a = random_state(rng, mask);
    const Vector b = random_state(rng, mask);
    const double na = std::sqrt(weighted_dot(a, a, weights));
    const double nb = std::sqrt(weighted_dot(b, b, weights));
    if (na == 0.0 || nb == 0.0) continue;
    const Vector ma = (matrix * a).cwiseProduct(mask);
    const Vector mb = (matrix * b).cwiseProduct(mask);
    const double defect = std::abs(weighted_dot(ma, b, weights) - weighted_dot(a, mb, weights));
    worst = std::max(worst, defect / (na * nb));
  }
  return worst;
}

double check_weighted_symmetry(const DiscreteOperator& op, const PhysicalParams& params,
                               std::size_t trials, std::uint64_t seed) {
  return weighted_asymmetry(op.matrix(), weight_vector(op.grid(), params), free_mask(op), trials,
                            seed);
}

namespace {

double quotient(const DiscreteOperator& op, const Vector& weights, const Vector& mask,
                const Vector& w) {
  const Vector v = w.cwiseProduct(mask);
  const double denom = weighted_dot(v, v, weights);
  if (denom == 0.0) return -std::numeric_limits<double>::infinity();
  return weighted_dot(op.apply(v), v, weights) / denom;
}

}  // namespace

double rayleigh_quotient(const DiscreteOperator& op, const PhysicalParams& params,
                         const FieldPair& w) {
  check_matches(op.grid(), w);
  const Vector v = pack(w).cwiseProduct(free_mask(op));
  if (v.isZero(0.0)) throw ValidationError("rayleigh quotient of the zero state");
  return quotient(op, weight_vector(op.grid(), params), free_mask(op), v);
}

double check_dissipativity(const DiscreteOperator& op, const PhysicalParams& params,
                           std::size_t trials, std::uint64_t seed) {
  using std::numbers::pi;
  const auto& grid = op.grid();
  const Vector weights = weight_vector(grid, params);
  const Vector mask = free_mask(op);
  double worst = -std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    worst = std::max(worst, quotient(op, weights, mask, random_state(rng, mask)));
  }
  for (int k = 1; k <= 3; ++k) {
    for (int m = 1; m <= 3; ++m) {
      auto mode = [&](double x, double y) {
        return std::sin(k * pi * x) * std::sin(m * pi * y / grid.length());
      };
      worst = std::max(worst, quotient(op, weights, mask, pack(FieldPair::sample(grid, mode, mode))));
    }
  }
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(op.unknowns()));
  worst = std::max(worst, quotient(op, weights, mask, ones));
  return worst;
}

double check_dissipativity(const Grid& grid, const PhysicalParams& params, double t,
                           std::size_t trials, std::uint64_t seed) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("advection scaling t must lie in [0, 1]");
  return check_dissipativity(assemble_generator(grid, params, t), params, trials, seed);
}

std::vector<std::complex<double>> spectrum(const DiscreteOperator& op) {
  std::vector<Eigen::Index> free;
  for (std::size_t r = 0; r < op.unknowns(); ++r) {
    if (!op.is_dirichlet(r)) free.push_back(static_cast<Eigen::Index>(r));
  }
  if (free.size() > 4000) throw ValidationError("dense spectrum is limited to small grids");
  const Eigen::MatrixXd full = Eigen::MatrixXd(op.matrix());
  const auto m = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) sub(r, c) = full(free[r], free[c]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(sub, false);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double max_real_eigenvalue(const DiscreteOperator& op) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum(op)) worst = std::max(worst, z.real());
  return worst;
}

FieldPair cocurrent_transform(const Grid& grid, const FieldPair& w, const PhysicalParams& params,
                              Direction direction) {
  if (params.orientation != Orientation::CoCurrent) {
    throw ValidationError("the diagonalizing transform needs co-current flow");
  }
  check_matches(grid, w);
  const double sign = direction == Direction::Forward ? -1.0 : 1.0;
  const double kf = params.beta_f / (2.0 * params.alpha_f);
  const double kp = params.beta_p / (2.0 * params.alpha_p);
  FieldPair out = w;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double ef = std::exp(sign * kf * grid.y(j));
    const double ep = std::exp(sign * kp * grid.y(j));
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const auto k = grid.index(i, j);
      out.f[k] *= ef;
      out.p[k] *= ep;
    }
  }
  return out;
}

double check_diagonalization(const PhysicalParams& params, const Grid& grid, double horizon,
                             double dt) {
  using std::numbers::pi;
  params.validate();
  if (params.orientation != Orientation::CoCurrent) {
    throw ValidationError("diagonalization check needs co-current flow");
  }
  const double kappa_f = params.beta_f / (2.0 * params.alpha_f);
  const double kappa_p = params.beta_p / (2.0 * params.alpha_p);
  if (std::abs(kappa_f - kappa_p) > 1e-12) {
    throw ValidationError("diagonalization needs beta_f / 2 alpha_f = beta_p / 2 alpha_p");
  }
  if (!(dt > 0.0) || !(horizon >= dt)) throw ValidationError("need 0 < dt <= horizon");
  const double kappa = kappa_f;
  const double length = grid.length();

  // Inlet temperatures at y = 0 are left unchanged by the transform.
  constexpr double inlet_f = 1.0;
  constexpr double inlet_p = 0.5;
  const FieldPair w0 = FieldPair::sample(
      grid,
      [&](double x, double y) { return inlet_f + 0.5 * std::sin(pi * x) * std::sin(pi * y / (2.0 * length)); },
      [&](double x, double y) { return inlet_p + 0.25 * std::cos(pi * x) * std::sin(pi * y / (2.0 * length)); });

  const BcSpec plant = inlet_bc(Orientation::CoCurrent);
  BcSpec diag = plant;
  diag.set(Segment::Gamma3, BoundaryCondition::robin(-kappa));

  OperatorCoefficients coeffs;
  coeffs.diffusion = {params.alpha_f, params.alpha_p};
  coeffs.decay = {params.beta_f * params.beta_f / (4.0 * params.alpha_f),
                  params.beta_p * params.beta_p / (4.0 * params.alpha_p)};
  coeffs.gamma_f = params.gamma_f;
  coeffs.gamma_p = params.gamma_p;

  const BackwardEuler original(assemble(grid, params, plant), dt);
  const BackwardEuler diagonal(assemble(grid, coeffs, diag), dt);

  const std::vector<double> tf(grid.nx(), inlet_f);
  const std::vector<double> tp(grid.nx(), inlet_p);
  const BoundaryData data = inlet_data(grid, Orientation::CoCurrent, tf, tp);

  FieldPair w = w0;
  FieldPair z = cocurrent_transform(grid, w0, params, Direction::Forward);
  double gap = 0.0;
  double scale = weighted_norm(grid, z, params);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  for (std::size_t n = 0; n < steps; ++n) {
    w = original.step(w, data);
    z = diagonal.step(z, data);
    const auto tw = cocurrent_transform(grid, w, params, Direction::Forward);
    gap = std::max(gap, weighted_norm(grid, tw - z, params));
    scale = std::max(scale, weighted_norm(grid, z, params));
  }
  return scale > 0.0 ? gap / scale : gap;
}

PhysicalParams sample_flow(const PhysicalParams& params) {
  PhysicalParams out = params;
  out.beta_f = 0.2 * params.alpha_f;
  out.beta_p = 0.2 * params.alpha_p;
  return out;
}

namespace {

VerificationCheck make_check(std::string name, double value, double threshold, Comparison cmp) {
  VerificationCheck c{std::move(name), value, threshold, cmp, false};
  c.passed = cmp == Comparison::Less ? value < threshold : value <= threshold;
  return c;
}

const char* orientation_tag(Orientation o) {
  return o == Orientation::CoCurrent ? "cocurrent" : "countercurrent";
}

}  // namespace

std::vector<VerificationCheck> run_verification(const Grid& grid, const PhysicalParams& params,
                                                std::size_t trials, std::uint64_t seed) {
  params.validate();
  std::vector<VerificationCheck> out;
  for (auto orientation : {Orientation::CounterCurrent, Orientation::CoCurrent}) {
    PhysicalParams base = params;
    base.orientation = orientation;
    const PhysicalParams flow = sample_flow(base);
    const std::string tag = orientation_tag(orientation);

    const auto a0 = assemble_generator(grid, base, 0.0);
    out.push_back(make_check("weighted_symmetry_A0_" + tag,
                             check_weighted_symmetry(a0, base, trials, seed), 1e-10,
                             Comparison::LessEqual));
    out.push_back(make_check("max_real_eigenvalue_A_" + tag,
                             max_real_eigenvalue(assemble_generator(grid, base, 1.0)), -1e-8,
                             Comparison::Less));
    for (double t : {0.0, 0.5, 1.0}) {
      const auto op = assemble_generator(grid, flow, t);
      char label[64];
      std::snprintf(label, sizeof label, "_t%.1f_", t);
      out.push_back(make_check("dissipativity_flow" + std::string(label) + tag,
                               check_dissipativity(op, flow, trials, seed), 1e-10,
                               Comparison::LessEqual));
      out.push_back(make_check("max_real_eigenvalue_flow" + std::string(label) + tag,
                               max_real_eigenvalue(op), -1e-8, Comparison::Less));
    }
  }
  PhysicalParams co = sample_flow(params);
  co.orientation = Orientation::CoCurrent;
  out.push_back(make_check("diagonalization_discrepancy", check_diagonalization(co, grid, 0.5, 0.01),
                           1e-3, Comparison::LessEqual));
  return out;
}

}  // namespace dcmd
