#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dcmd/grid.hpp"

namespace dcmd {

/// Component selector for the (feed, permeate) pair.
enum class Component { Feed = 0, Permeate = 1 };

/// Nodal samples of the two temperature fields on one grid.
struct FieldPair {
  std::vector<double> f;
  std::vector<double> p;

  FieldPair() = default;
  explicit FieldPair(const Grid& grid) : f(grid.size(), 0.0), p(grid.size(), 0.0) {}
  FieldPair(std::vector<double> feed, std::vector<double> permeate)
      : f(std::move(feed)), p(std::move(permeate)) {}

  std::vector<double>& operator[](Component c) { return c == Component::Feed ? f : p; }
  const std::vector<double>& operator[](Component c) const {
    return c == Component::Feed ? f : p;
  }
  std::size_t size() const noexcept { return f.size(); }

  /// Samples (fn_f(x,y), fn_p(x,y)) at every node.
  static FieldPair sample(const Grid& grid, const std::function<double(double, double)>& fn_f,
                          const std::function<double(double, double)>& fn_p);

  friend bool operator==(const FieldPair&, const FieldPair&) = default;
};

FieldPair operator-(const FieldPair& a, const FieldPair& b);
FieldPair operator+(const FieldPair& a, const FieldPair& b);

/// Throws ValidationError unless both components have grid.size() entries, all finite.
void check_matches(const Grid& grid, const FieldPair& w);

enum class Orientation { CoCurrent, CounterCurrent };

/// Coefficients of the coupled advection-diffusion model.
///
/// beta_p is the permeate speed; the orientation decides its direction. In the solver's
/// convention the permeate equation reads
///   counter-current:  p_t = alpha_p lap p + beta_p p_y
///   co-current:       p_t = alpha_p lap p - beta_p p_y
/// and the feed equation is always f_t = alpha_f lap f - beta_f f_y.
struct PhysicalParams {
  double alpha_f = 3.0;
  double alpha_p = 3.5;
  double beta_f = 0.0;
  double beta_p = 0.0;
  double gamma_f = 0.2;
  double gamma_p = 0.1;
  Orientation orientation = Orientation::CoCurrent;

  void validate() const;

  /// Signed y-velocity of each component's advection term (term enters as -v * d/dy).
  std::array<double, 2> velocity() const;

  /// Constants of the nominal closed-loop example (no advection, co-current).
  static PhysicalParams nominal();

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

/// One value per segment node for each component.
struct TracePair {
  std::vector<double> f;
  std::vector<double> p;

  TracePair() = default;
  TracePair(std::vector<double> feed, std::vector<double> permeate)
      : f(std::move(feed)), p(std::move(permeate)) {}
  static TracePair zeros(const Grid& grid, Segment s);

  std::vector<double>& operator[](Component c) { return c == Component::Feed ? f : p; }
  const std::vector<double>& operator[](Component c) const {
    return c == Component::Feed ? f : p;
  }
  std::size_t size() const noexcept { return f.size(); }
  bool empty() const noexcept { return f.empty() && p.empty(); }
};

TracePair operator-(const TracePair& a, const TracePair& b);
TracePair operator+(const TracePair& a, const TracePair& b);

/// sqrt(|a.f|^2 + |a.p|^2) with trapezoidal quadrature along the segment.
double l2_norm_boundary(const Grid& grid, Segment s, const TracePair& trace);

/// Time-dependent data on one boundary segment: (t, arclength) -> (feed, permeate).
class BoundarySignal {
 public:
  using Evaluator = std::function<std::array<double, 2>(double t, double s)>;

  BoundarySignal(Segment segment, Evaluator evaluator);
  static BoundarySignal zero(Segment segment);
  static BoundarySignal constant(Segment segment, double feed, double permeate);

  Segment segment() const noexcept { return segment_; }
  std::array<double, 2> operator()(double t, double s) const { return evaluator_(t, s); }
  TracePair sample(const Grid& grid, double t) const;

 private:
  Segment segment_;
  Evaluator evaluator_;
};

/// alpha_p gamma_p <a.f, b.f> + alpha_f gamma_f <a.p, b.p>, trapezoidal in both directions.
double weighted_inner_product(const Grid& grid, const FieldPair& a, const FieldPair& b,
                              const PhysicalParams& params);
double weighted_norm(const Grid& grid, const FieldPair& w, const PhysicalParams& params);

/// Unweighted pair norm sqrt(|f|^2 + |p|^2).
double l2_norm_domain(const Grid& grid, const FieldPair& w);

/// Nodal restriction to a segment, ordered along the segment.
TracePair trace(const Grid& grid, const FieldPair& w, Segment s);

/// Outward normal derivative on a segment from the one-sided second-order stencil
/// (3 w_b - 4 w_{b-1} + w_{b-2}) / (2h), signed for the outward normal.
TracePair normal_derivative(const Grid& grid, const FieldPair& w, Segment s);
std::vector<double> normal_derivative(const Grid& grid, std::span<const double> field, Segment s);

}  // namespace dcmd
