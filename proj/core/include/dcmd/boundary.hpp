#pragma once

#include <array>
#include <optional>

#include "dcmd/fields.hpp"
#include "dcmd/grid.hpp"

namespace dcmd {

enum class BcKind {
  /// w = g
  Dirichlet,
  /// dw/dnu = g
  NeumannFlux,
  /// Membrane law on Gamma4: f_x = -gamma_f (f - p) + g, p_x = gamma_p (f - p) + g.
  RobinCoupled,
  /// dw/dnu = c w + g for a scalar coefficient c (used by the co-current transformed system).
  Robin,
};

struct BoundaryCondition {
  BcKind kind = BcKind::NeumannFlux;
  double robin_coefficient = 0.0;

  static BoundaryCondition dirichlet() { return {BcKind::Dirichlet, 0.0}; }
  static BoundaryCondition neumann() { return {BcKind::NeumannFlux, 0.0}; }
  static BoundaryCondition robin_coupled() { return {BcKind::RobinCoupled, 0.0}; }
  static BoundaryCondition robin(double c) { return {BcKind::Robin, c}; }
};

/// Boundary conditions for both components on all four segments, plus optional data
/// signals (absent means homogeneous data).
class BcSpec {
 public:
  BcSpec();

  BcSpec& set(Segment s, Component c, BoundaryCondition bc);
  BcSpec& set(Segment s, BoundaryCondition bc);
  BcSpec& set_signal(Segment s, BoundarySignal signal);
  BcSpec& set_signal(BoundarySignal signal);

  const BoundaryCondition& at(Segment s, Component c) const;
  const std::optional<BoundarySignal>& signal(Segment s) const;
  bool is_dirichlet(Segment s, Component c) const {
    return at(s, c).kind == BcKind::Dirichlet;
  }
  std::array<bool, 4> dirichlet_mask(Component c) const;

  /// Throws ValidationError on RobinCoupled off Gamma4 or signal/segment mismatch.
  void validate() const;

 private:
  std::array<std::array<BoundaryCondition, 2>, 4> conditions_;
  std::array<std::optional<BoundarySignal>, 4> signals_;
};

/// Boundary data values at one instant: for each segment, a (feed, permeate) trace.
/// Dirichlet segments hold values, flux-type segments hold dw/dnu (the additive part for
/// Robin kinds). Empty traces mean zero.
struct BoundaryData {
  std::array<TracePair, 4> traces;

  TracePair& operator[](Segment s) { return traces[segment_index(s)]; }
  const TracePair& operator[](Segment s) const { return traces[segment_index(s)]; }

  static BoundaryData from_signals(const Grid& grid, const BcSpec& bc, double t);
};

}  // namespace dcmd
