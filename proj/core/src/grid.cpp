#include "dcmd/grid.hpp"

#include <cmath>
#include <string>

#include "dcmd/errors.hpp"

namespace dcmd {

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::Gamma1: return "gamma1";
    case Segment::Gamma2: return "gamma2";
    case Segment::Gamma3: return "gamma3";
    case Segment::Gamma4: return "gamma4";
  }
  return "?";
}

namespace {

std::vector<double> trapezoid(std::size_t n, double h) {
  std::vector<double> w(n, h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace

Grid::Grid(std::size_t nx, std::size_t ny, double length_L) : nx_(nx), ny_(ny), length_(length_L) {
  if (nx < 3 || ny < 3) {
    throw ValidationError("grid needs at least 3 nodes per direction, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
  }
  if (!(length_L > 0.0) || !std::isfinite(length_L)) {
    throw ValidationError("domain length L must be positive and finite");
  }
  hx_ = 1.0 / static_cast<double>(nx - 1);
  hy_ = length_L / static_cast<double>(ny - 1);

  auto& g1 = segments_[segment_index(Segment::Gamma1)];
  auto& g2 = segments_[segment_index(Segment::Gamma2)];
  auto& g3 = segments_[segment_index(Segment::Gamma3)];
  auto& g4 = segments_[segment_index(Segment::Gamma4)];
  g1 = {Segment::Gamma1, Normal::MinusY, {}, hx_, 1.0};
  g2 = {Segment::Gamma2, Normal::MinusX, {}, hy_, length_L};
  g3 = {Segment::Gamma3, Normal::PlusY, {}, hx_, 1.0};
  g4 = {Segment::Gamma4, Normal::PlusX, {}, hy_, length_L};
  for (std::size_t i = 0; i < nx; ++i) {
    g1.nodes.push_back(index(i, 0));
    g3.nodes.push_back(index(i, ny - 1));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    g2.nodes.push_back(index(0, j));
    g4.nodes.push_back(index(nx - 1, j));
  }

  const auto wx = trapezoid(nx, hx_);
  const auto wy = trapezoid(ny, hy_);
  weights_.resize(size());
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) weights_[index(i, j)] = wx[i] * wy[j];
  }
}

double Grid::arclength(Segment s, std::size_t position) const {
  return is_vertical(s) ? y(position) : x(position);
}

bool Grid::on_segment(std::size_t i, std::size_t j, Segment s) const noexcept {
  switch (s) {
    case Segment::Gamma1: return j == 0;
    case Segment::Gamma2: return i == 0;
    case Segment::Gamma3: return j == ny_ - 1;
    case Segment::Gamma4: return i == nx_ - 1;
  }
  return false;
}

bool Grid::is_boundary(std::size_t i, std::size_t j) const noexcept {
  return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
}

std::vector<double> Grid::boundary_weights(Segment s) const {
  return is_vertical(s) ? trapezoid(ny_, hy_) : trapezoid(nx_, hx_);
}

Grid make_grid(std::size_t nx, std::size_t ny, double length_L) { return Grid(nx, ny, length_L); }

std::optional<Segment> owning_segment(const Grid& grid, std::size_t i, std::size_t j,
                                      const std::array<bool, 4>& dirichlet) {
  std::optional<Segment> vertical;
  std::optional<Segment> horizontal;
  if (grid.on_segment(i, j, Segment::Gamma2)) vertical = Segment::Gamma2;
  if (grid.on_segment(i, j, Segment::Gamma4)) vertical = Segment::Gamma4;
  if (grid.on_segment(i, j, Segment::Gamma1)) horizontal = Segment::Gamma1;
  if (grid.on_segment(i, j, Segment::Gamma3)) horizontal = Segment::Gamma3;
  if (!vertical) return horizontal;
  if (!horizontal) return vertical;
  const bool v_dir = dirichlet[segment_index(*vertical)];
  const bool h_dir = dirichlet[segment_index(*horizontal)];
  if (h_dir && !v_dir) return horizontal;
  return vertical;
}

double integrate_domain(const Grid& grid, std::span<const double> field) {
  if (field.size() != grid.size()) throw ValidationError("field size does not match grid");
  const auto w = grid.domain_weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) sum += w[k] * field[k];
  return sum;
}

double dot_domain(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw ValidationError("field size does not match grid");
  }
  const auto w = grid.domain_weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += w[k] * a[k] * b[k];
  return sum;
}

double l2_norm_domain(const Grid& grid, std::span<const double> field) {
  return std::sqrt(dot_domain(grid, field, field));
}

double l2_norm_boundary(const Grid& grid, Segment s, std::span<const double> trace) {
  const auto w = grid.boundary_weights(s);
  if (trace.size() != w.size()) throw ValidationError("trace size does not match segment");
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * trace[k] * trace[k];
  return std::sqrt(sum);
}

}  // namespace dcmd
