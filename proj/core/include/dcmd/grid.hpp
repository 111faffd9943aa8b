#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dcmd {

/// Boundary pieces of the rectangle (0,1) x (0,L).
///   Gamma1: y = 0 (outward normal -y)
///   Gamma2: x = 0 (outward normal -x)
///   Gamma3: y = L (outward normal +y)
///   Gamma4: x = 1 (outward normal +x), the membrane interface
enum class Segment { Gamma1 = 0, Gamma2 = 1, Gamma3 = 2, Gamma4 = 3 };

inline constexpr std::array<Segment, 4> kAllSegments = {Segment::Gamma1, Segment::Gamma2,
                                                        Segment::Gamma3, Segment::Gamma4};

enum class Normal { MinusY, MinusX, PlusY, PlusX };

constexpr std::size_t segment_index(Segment s) { return static_cast<std::size_t>(s); }
const char* segment_name(Segment s);

/// Gamma2 and Gamma4 are vertical (normal along x).
constexpr bool is_vertical(Segment s) { return s == Segment::Gamma2 || s == Segment::Gamma4; }

struct BoundarySegment {
  Segment tag{};
  Normal normal{};
  /// Node indices ordered by increasing arclength (x on Gamma1/Gamma3, y on Gamma2/Gamma4).
  /// Every segment includes both of its end corners.
  std::vector<std::size_t> nodes;
  double spacing = 0.0;
  double length = 0.0;
};

/// Uniform node-centred grid on (0,1) x (0,L). Node (i,j) sits at (i*hx, j*hy) and has
/// flat index j*nx + i.
class Grid {
 public:
  Grid(std::size_t nx, std::size_t ny, double length_L);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  double length() const noexcept { return length_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }
  std::size_t column_of(std::size_t k) const noexcept { return k % nx_; }
  std::size_t row_of(std::size_t k) const noexcept { return k / nx_; }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * hx_; }
  double y(std::size_t j) const noexcept { return static_cast<double>(j) * hy_; }

  const BoundarySegment& segment(Segment s) const { return segments_[segment_index(s)]; }

  /// Arclength coordinate of the k-th node along a segment.
  double arclength(Segment s, std::size_t position) const;

  bool on_segment(std::size_t i, std::size_t j, Segment s) const noexcept;
  bool is_boundary(std::size_t i, std::size_t j) const noexcept;

  /// Trapezoidal quadrature weights over the domain (sum equals the area L).
  std::span<const double> domain_weights() const noexcept { return weights_; }
  /// Trapezoidal quadrature weights along a segment (sum equals its length).
  std::vector<double> boundary_weights(Segment s) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.length_ == b.length_;
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
  double length_;
  double hx_;
  double hy_;
  std::array<BoundarySegment, 4> segments_;
  std::vector<double> weights_;
};

Grid make_grid(std::size_t nx, std::size_t ny, double length_L);

/// Which segment's condition governs a boundary node, given which segments carry a
/// Dirichlet condition. Dirichlet beats flux-type conditions; otherwise the vertical
/// segment (Gamma2/Gamma4) beats the horizontal one (Gamma1/Gamma3). Interior nodes
/// return nullopt.
std::optional<Segment> owning_segment(const Grid& grid, std::size_t i, std::size_t j,
                                      const std::array<bool, 4>& dirichlet);

double integrate_domain(const Grid& grid, std::span<const double> field);
double dot_domain(const Grid& grid, std::span<const double> a, std::span<const double> b);
double l2_norm_domain(const Grid& grid, std::span<const double> field);
double l2_norm_boundary(const Grid& grid, Segment s, std::span<const double> trace);

}  // namespace dcmd
