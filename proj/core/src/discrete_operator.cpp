#include "dcmd/discrete_operator.hpp"

#include <map>
#include <string>

#include "dcmd/errors.hpp"

namespace dcmd {

OperatorCoefficients OperatorCoefficients::from(const PhysicalParams& params,
                                                double advection_scale,
                                                AdvectionScheme scheme) {
  params.validate();
  OperatorCoefficients c;
  c.diffusion = {params.alpha_f, params.alpha_p};
  const auto v = params.velocity();
  c.velocity = {advection_scale * v[0], advection_scale * v[1]};
  c.gamma_f = params.gamma_f;
  c.gamma_p = params.gamma_p;
  c.scheme = scheme;
  return c;
}

namespace {

constexpr std::array<Component, 2> kComponents = {Component::Feed, Component::Permeate};

/// Affine expression  sum coef * w[col] + sum coef * data(segment, component, position).
struct Affine {
  std::vector<std::pair<std::size_t, double>> terms;
  struct Data {
    Segment segment;
    Component component;
    std::size_t position;
    double coefficient;
  };
  std::vector<Data> data;

  void add(std::size_t col, double coef) { terms.emplace_back(col, coef); }
  void add(const Affine& other, double scale) {
    for (const auto& [col, coef] : other.terms) terms.emplace_back(col, scale * coef);
    for (const auto& d : other.data) {
      data.push_back({d.segment, d.component, d.position, scale * d.coefficient});
    }
  }
};

class Assembler {
 public:
  Assembler(const Grid& grid, const OperatorCoefficients& coeffs, const BcSpec& bc)
      : grid_(grid), coeffs_(coeffs), bc_(bc), n_(grid.size()) {}

  std::size_t unknown(Component c, std::size_t k) const {
    return static_cast<std::size_t>(c) * n_ + k;
  }

  std::size_t position_on(Segment s, std::size_t i, std::size_t j) const {
    return is_vertical(s) ? j : i;
  }

  /// Outward normal derivative of component c at node (i,j) on segment s, expressed in
  /// terms of unknowns and boundary data.
  Affine flux(Component c, Segment s, std::size_t i, std::size_t j) const {
    const auto& cond = bc_.at(s, c);
    const auto k = grid_.index(i, j);
    Affine a;
    a.data.push_back({s, c, position_on(s, i, j), 1.0});
    switch (cond.kind) {
      case BcKind::NeumannFlux:
        break;
      case BcKind::Robin:
        a.add(unknown(c, k), cond.robin_coefficient);
        break;
      case BcKind::RobinCoupled: {
        // f_x = -gamma_f (f - p),  p_x = gamma_p (f - p)
        const double g = c == Component::Feed ? -coeffs_.gamma_f : coeffs_.gamma_p;
        a.add(unknown(Component::Feed, k), g);
        a.add(unknown(Component::Permeate, k), -g);
        break;
      }
      case BcKind::Dirichlet:
        throw ValidationError("internal: ghost node requested on a Dirichlet segment");
    }
    return a;
  }

  /// Value of component c at (i+di, j+dj); off-grid neighbours are ghost nodes eliminated
  /// through the flux condition:  w_ghost = w_mirror + 2 h dw/dnu.
  Affine neighbour(Component c, std::size_t i, std::size_t j, int di, int dj) const {
    const long ii = static_cast<long>(i) + di;
    const long jj = static_cast<long>(j) + dj;
    Affine a;
    const long nx = static_cast<long>(grid_.nx());
    const long ny = static_cast<long>(grid_.ny());
    if (ii >= 0 && ii < nx && jj >= 0 && jj < ny) {
      a.add(unknown(c, grid_.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj))),
            1.0);
      return a;
    }
    Segment s{};
    double h = 0.0;
    if (ii < 0) { s = Segment::Gamma2; h = grid_.hx(); }
    else if (ii >= nx) { s = Segment::Gamma4; h = grid_.hx(); }
    else if (jj < 0) { s = Segment::Gamma1; h = grid_.hy(); }
    else { s = Segment::Gamma3; h = grid_.hy(); }
    const auto mi = static_cast<std::size_t>(static_cast<long>(i) - di);
    const auto mj = static_cast<std::size_t>(static_cast<long>(j) - dj);
    a.add(unknown(c, grid_.index(mi, mj)), 1.0);
    a.add(flux(c, s, i, j), 2.0 * h);
    return a;
  }

  const Grid& grid_;
  const OperatorCoefficients& coeffs_;
  const BcSpec& bc_;
  std::size_t n_;
};

}  // namespace

DiscreteOperator assemble(const Grid& grid, const OperatorCoefficients& coeffs, const BcSpec& bc) {
  bc.validate();
  for (int c = 0; c < 2; ++c) {
    if (!(coeffs.diffusion[c] > 0.0)) throw ValidationError("diffusion must be positive");
  }

  DiscreteOperator op(grid);
  op.coeffs_ = coeffs;
  op.bc_ = bc;
  const std::size_t n = grid.size();
  op.dirichlet_.assign(2 * n, 0);

  Assembler as(grid, coeffs, bc);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * n * 7);
  const double hx2 = grid.hx() * grid.hx();
  const double hy2 = grid.hy() * grid.hy();

  for (auto comp : kComponents) {
    const auto ci = static_cast<std::size_t>(comp);
    const auto dirichlet = bc.dirichlet_mask(comp);
    const double a = coeffs.diffusion[ci];
    const double v = coeffs.velocity[ci];
    const double decay = coeffs.decay[ci];

    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) {
        const auto k = grid.index(i, j);
        const auto row = as.unknown(comp, k);

        if (const auto owner = owning_segment(grid, i, j, dirichlet);
            owner && dirichlet[segment_index(*owner)]) {
          op.dirichlet_[row] = 1;
          op.dirichlet_terms_.push_back({static_cast<std::uint32_t>(row),
                                         static_cast<std::uint8_t>(segment_index(*owner)),
                                         static_cast<std::uint8_t>(ci),
                                         static_cast<std::uint32_t>(as.position_on(*owner, i, j)),
                                         1.0});
          continue;
        }

        Affine form;
        // a (w_{i-1} - 2 w_i + w_{i+1}) / hx^2 + a (w_{j-1} - 2 w_j + w_{j+1}) / hy^2
        form.add(as.neighbour(comp, i, j, -1, 0), a / hx2);
        form.add(as.neighbour(comp, i, j, +1, 0), a / hx2);
        form.add(as.neighbour(comp, i, j, 0, -1), a / hy2);
        form.add(as.neighbour(comp, i, j, 0, +1), a / hy2);
        form.add(row, -2.0 * a / hx2 - 2.0 * a / hy2 - decay);

        if (v != 0.0) {
          if (coeffs.scheme == AdvectionScheme::Centered) {
            // -v (w_{j+1} - w_{j-1}) / (2 hy)
            form.add(as.neighbour(comp, i, j, 0, +1), -v / (2.0 * grid.hy()));
            form.add(as.neighbour(comp, i, j, 0, -1), v / (2.0 * grid.hy()));
          } else if (v > 0.0) {
            form.add(row, -v / grid.hy());
            form.add(as.neighbour(comp, i, j, 0, -1), v / grid.hy());
          } else {
            form.add(row, v / grid.hy());
            form.add(as.neighbour(comp, i, j, 0, +1), -v / grid.hy());
          }
        }

        std::map<std::size_t, double> merged;
        for (const auto& [col, coef] : form.terms) merged[col] += coef;
        for (const auto& [col, coef] : merged) {
          if (coef != 0.0) triplets.emplace_back(row, col, coef);
        }
        for (const auto& d : form.data) {
          op.flux_terms_.push_back({static_cast<std::uint32_t>(row),
                                    static_cast<std::uint8_t>(segment_index(d.segment)),
                                    static_cast<std::uint8_t>(d.component),
                                    static_cast<std::uint32_t>(d.position), d.coefficient});
        }
      }
    }
  }

  op.matrix_.resize(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  op.matrix_.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix_.makeCompressed();
  return op;
}

DiscreteOperator assemble(const Grid& grid, const PhysicalParams& params, const BcSpec& bc,
                          double advection_scale, AdvectionScheme scheme) {
  auto op = assemble(grid, OperatorCoefficients::from(params, advection_scale, scheme), bc);
  op.params_ = params;
  return op;
}

double DiscreteOperator::data_value(const BoundaryData& data, const DataTerm& term) {
  const auto& tr = data.traces[term.segment];
  const auto& values = term.component == 0 ? tr.f : tr.p;
  if (values.empty()) return 0.0;
  return values.at(term.position);
}

Vector DiscreteOperator::rhs_bc(const BoundaryData& data) const {
  for (auto s : kAllSegments) {
    const auto& tr = data[s];
    const auto expected = grid_.segment(s).nodes.size();
    if ((!tr.f.empty() && tr.f.size() != expected) || (!tr.p.empty() && tr.p.size() != expected)) {
      throw ValidationError(std::string("boundary data on ") + segment_name(s) +
                            " has the wrong length");
    }
  }
  Vector b = Vector::Zero(static_cast<Eigen::Index>(unknowns()));
  for (const auto& term : flux_terms_) b[term.row] += term.coefficient * data_value(data, term);
  for (const auto& term : dirichlet_terms_) b[term.row] = data_value(data, term);
  return b;
}

Vector DiscreteOperator::rhs_bc(double t) const {
  return rhs_bc(BoundaryData::from_signals(grid_, bc_, t));
}

FieldPair DiscreteOperator::apply(const FieldPair& w) const {
  check_matches(grid_, w);
  return unpack(grid_, matrix_ * pack(w));
}

Vector DiscreteOperator::residual(const FieldPair& w, const BoundaryData& data) const {
  check_matches(grid_, w);
  const Vector x = pack(w);
  const Vector b = rhs_bc(data);
  Vector r = matrix_ * x + b;
  for (std::size_t row = 0; row < unknowns(); ++row) {
    if (dirichlet_[row]) r[static_cast<Eigen::Index>(row)] = x[row] - b[row];
  }
  return r;
}

Vector pack(const FieldPair& w) {
  const auto n = static_cast<Eigen::Index>(w.f.size());
  Vector v(2 * n);
  v.head(n) = Eigen::Map<const Vector>(w.f.data(), n);
  v.tail(n) = Eigen::Map<const Vector>(w.p.data(), n);
  return v;
}

FieldPair unpack(const Grid& grid, const Vector& v) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (v.size() != 2 * n) throw ValidationError("vector size does not match grid");
  FieldPair w(grid);
  Eigen::Map<Vector>(w.f.data(), n) = v.head(n);
  Eigen::Map<Vector>(w.p.data(), n) = v.tail(n);
  return w;
}

namespace {

SparseMatrix implicit_system(const DiscreteOperator& op, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  const auto n = static_cast<Eigen::Index>(op.unknowns());
  SparseMatrix identity(n, n);
  identity.setIdentity();
  SparseMatrix system = identity - dt * op.matrix();
  // Dirichlet rows of A are empty, so these rows are already identity rows.
  system.makeCompressed();
  return system;
}

}  // namespace

BackwardEuler::BackwardEuler(DiscreteOperator op, double dt, double rtol)
    : op_(std::move(op)), dt_(dt), solver_(implicit_system(op_, dt), rtol) {}

SolveReport BackwardEuler::step_with_report(const FieldPair& w, const BoundaryData& data_next,
                                            const FieldPair* source) const {
  check_matches(op_.grid(), w);
  const Vector b = op_.rhs_bc(data_next);
  Vector rhs = pack(w) + dt_ * b;
  if (source) rhs += dt_ * pack(*source);
  for (std::size_t row = 0; row < op_.unknowns(); ++row) {
    if (op_.is_dirichlet(row)) rhs[static_cast<Eigen::Index>(row)] = b[static_cast<Eigen::Index>(row)];
  }
  return solver_.solve_with_report(rhs);
}

FieldPair BackwardEuler::step(const FieldPair& w, const BoundaryData& data_next,
                              const FieldPair* source) const {
  return unpack(op_.grid(), step_with_report(w, data_next, source).x);
}

FieldPair step_backward_euler(const DiscreteOperator& op, const FieldPair& w, double t, double dt) {
  BackwardEuler stepper(op, dt);
  return stepper.step(w, BoundaryData::from_signals(op.grid(), op.bc(), t + dt));
}

}  // namespace dcmd
