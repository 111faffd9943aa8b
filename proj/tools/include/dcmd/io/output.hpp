#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dcmd/adrc.hpp"
#include "dcmd/mms.hpp"
#include "dcmd/spectral.hpp"

namespace dcmd::io {

inline constexpr const char* kMetricsSchema = "# dcmd metrics v1";
inline constexpr const char* kMetricsHeader =
    "t,tracking_error,observer_error,servo_gap,disturbance_error,control_norm";

/// Writes to a temporary file in the same directory, then renames it over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Schema line, header, one row per time level in %.10e.
std::string format_metrics(std::span<const MetricsRow> rows);

/// ny lines of nx values (row j holds y = j hy).
std::string format_matrix(const Grid& grid, std::span<const double> values);

struct Snapshot {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double length = 0.0;
  double t = 0.0;
  std::size_t step = 0;
  std::vector<double> values;
};

/// Writes <stem>.txt (the matrix) and <stem>.hdr (nx, ny, length, t, step).
void write_snapshot(const std::filesystem::path& dir, const std::string& stem, const Grid& grid,
                    double t, std::size_t step, std::span<const double> values);
/// Loads a snapshot from its .txt path using the sidecar header.
Snapshot load_snapshot(const std::filesystem::path& txt);

/// Plant, observer and servo fields of one state: w_f, w_p, w_hat_f, ... with a step suffix.
void write_state_snapshots(const std::filesystem::path& dir, const Grid& grid,
                           const ClosedLoopState& state);

/// One line per check: "name, value, threshold, PASS|FAIL".
std::string format_report(std::span<const VerificationCheck> checks);

/// kind,nx,ny,dt,error,order
std::string format_convergence(const ConvergenceStudy& spatial, const ConvergenceStudy& temporal);

}  // namespace dcmd::io
