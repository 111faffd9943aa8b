#include "dcmd/fields.hpp"

#include <cmath>

#include "dcmd/errors.hpp"

namespace dcmd {

FieldPair FieldPair::sample(const Grid& grid, const std::function<double(double, double)>& fn_f,
                            const std::function<double(double, double)>& fn_p) {
  FieldPair w(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const auto k = grid.index(i, j);
      w.f[k] = fn_f(grid.x(i), grid.y(j));
      w.p[k] = fn_p(grid.x(i), grid.y(j));
    }
  }
  return w;
}

namespace {

std::vector<double> combine(const std::vector<double>& a, const std::vector<double>& b,
                            double sign) {
  if (a.size() != b.size()) throw ValidationError("size mismatch in field arithmetic");
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + sign * b[k];
  return out;
}

}  // namespace

FieldPair operator-(const FieldPair& a, const FieldPair& b) {
  return {combine(a.f, b.f, -1.0), combine(a.p, b.p, -1.0)};
}
FieldPair operator+(const FieldPair& a, const FieldPair& b) {
  return {combine(a.f, b.f, 1.0), combine(a.p, b.p, 1.0)};
}
TracePair operator-(const TracePair& a, const TracePair& b) {
  return {combine(a.f, b.f, -1.0), combine(a.p, b.p, -1.0)};
}
TracePair operator+(const TracePair& a, const TracePair& b) {
  return {combine(a.f, b.f, 1.0), combine(a.p, b.p, 1.0)};
}

void check_matches(const Grid& grid, const FieldPair& w) {
  if (w.f.size() != grid.size() || w.p.size() != grid.size()) {
    throw ValidationError("field pair does not match grid (" + std::to_string(w.f.size()) + "/" +
                          std::to_string(w.p.size()) + " vs " + std::to_string(grid.size()) +
                          " nodes)");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(w.f[k]) || !std::isfinite(w.p[k])) {
      throw ValidationError("field pair has a non-finite entry at node " + std::to_string(k));
    }
  }
}

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be positive and finite");
    }
  };
  positive(alpha_f, "alpha_f");
  positive(alpha_p, "alpha_p");
  positive(gamma_f, "gamma_f");
  positive(gamma_p, "gamma_p");
  if (!(beta_f >= 0.0) || !std::isfinite(beta_f)) {
    throw ValidationError("beta_f must be non-negative and finite");
  }
  if (!std::isfinite(beta_p)) throw ValidationError("beta_p must be finite");
}

std::array<double, 2> PhysicalParams::velocity() const {
  const double vp = orientation == Orientation::CoCurrent ? beta_p : -beta_p;
  return {beta_f, vp};
}

PhysicalParams PhysicalParams::nominal() { return {}; }

TracePair TracePair::zeros(const Grid& grid, Segment s) {
  const auto n = grid.segment(s).nodes.size();
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

double l2_norm_boundary(const Grid& grid, Segment s, const TracePair& trace) {
  const double a = l2_norm_boundary(grid, s, std::span<const double>(trace.f));
  const double b = l2_norm_boundary(grid, s, std::span<const double>(trace.p));
  return std::sqrt(a * a + b * b);
}

BoundarySignal::BoundarySignal(Segment segment, Evaluator evaluator)
    : segment_(segment), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw ValidationError("boundary signal needs an evaluator");
}

BoundarySignal BoundarySignal::zero(Segment segment) {
  return {segment, [](double, double) { return std::array<double, 2>{0.0, 0.0}; }};
}

BoundarySignal BoundarySignal::constant(Segment segment, double feed, double permeate) {
  return {segment, [=](double, double) { return std::array<double, 2>{feed, permeate}; }};
}

TracePair BoundarySignal::sample(const Grid& grid, double t) const {
  auto out = TracePair::zeros(grid, segment_);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto v = evaluator_(t, grid.arclength(segment_, k));
    out.f[k] = v[0];
    out.p[k] = v[1];
  }
  return out;
}

double weighted_inner_product(const Grid& grid, const FieldPair& a, const FieldPair& b,
                              const PhysicalParams& params) {
  if (a.size() != grid.size() || b.size() != grid.size() || a.p.size() != grid.size() ||
      b.p.size() != grid.size()) {
    throw ValidationError("field pair does not match grid");
  }
  return params.alpha_p * params.gamma_p * dot_domain(grid, a.f, b.f) +
         params.alpha_f * params.gamma_f * dot_domain(grid, a.p, b.p);
}

double weighted_norm(const Grid& grid, const FieldPair& w, const PhysicalParams& params) {
  return std::sqrt(weighted_inner_product(grid, w, w, params));
}

double l2_norm_domain(const Grid& grid, const FieldPair& w) {
  const double a = l2_norm_domain(grid, std::span<const double>(w.f));
  const double b = l2_norm_domain(grid, std::span<const double>(w.p));
  return std::sqrt(a * a + b * b);
}

TracePair trace(const Grid& grid, const FieldPair& w, Segment s) {
  check_matches(grid, w);
  const auto& nodes = grid.segment(s).nodes;
  TracePair out;
  out.f.reserve(nodes.size());
  out.p.reserve(nodes.size());
  for (auto k : nodes) {
    out.f.push_back(w.f[k]);
    out.p.push_back(w.p[k]);
  }
  return out;
}

std::vector<double> normal_derivative(const Grid& grid, std::span<const double> field, Segment s) {
  if (field.size() != grid.size()) throw ValidationError("field size does not match grid");
  const auto& seg = grid.segment(s);
  // Offset (in flat index) of the first interior neighbour along the inward normal.
  std::ptrdiff_t inward = 0;
  double h = 0.0;
  switch (s) {
    case Segment::Gamma1: inward = static_cast<std::ptrdiff_t>(grid.nx()); h = grid.hy(); break;
    case Segment::Gamma3: inward = -static_cast<std::ptrdiff_t>(grid.nx()); h = grid.hy(); break;
    case Segment::Gamma2: inward = 1; h = grid.hx(); break;
    case Segment::Gamma4: inward = -1; h = grid.hx(); break;
  }
  std::vector<double> out;
  out.reserve(seg.nodes.size());
  for (auto node : seg.nodes) {
    const auto k = static_cast<std::ptrdiff_t>(node);
    const double w0 = field[static_cast<std::size_t>(k)];
    const double w1 = field[static_cast<std::size_t>(k + inward)];
    const double w2 = field[static_cast<std::size_t>(k + 2 * inward)];
    out.push_back((3.0 * w0 - 4.0 * w1 + w2) / (2.0 * h));
  }
  return out;
}

TracePair normal_derivative(const Grid& grid, const FieldPair& w, Segment s) {
  check_matches(grid, w);
  return {normal_derivative(grid, std::span<const double>(w.f), s),
          normal_derivative(grid, std::span<const double>(w.p), s)};
}

}  // namespace dcmd
