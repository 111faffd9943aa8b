#include "dcmd/io/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "dcmd/errors.hpp"

namespace dcmd::io {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot move " + tmp.string() + " to " + path.string());
  }
}

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_metrics(std::span<const MetricsRow> rows) {
  std::string out = std::string(kMetricsSchema) + "\n" + kMetricsHeader + "\n";
  for (const auto& r : rows) {
    out += sci(r.t) + "," + sci(r.tracking_error) + "," + sci(r.observer_error) + "," +
           sci(r.servo_gap) + "," + sci(r.disturbance_error) + "," + sci(r.control_norm) + "\n";
  }
  return out;
}

std::string format_matrix(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw ValidationError("field size does not match grid");
  std::string out;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      if (i) out += ' ';
      out += exact(values[grid.index(i, j)]);
    }
    out += '\n';
  }
  return out;
}

void write_snapshot(const fs::path& dir, const std::string& stem, const Grid& grid, double t,
                    std::size_t step, std::span<const double> values) {
  std::ostringstream hdr;
  hdr << "nx = " << grid.nx() << "\nny = " << grid.ny() << "\nlength = " << exact(grid.length())
      << "\nt = " << exact(t) << "\nstep = " << step << "\n";
  write_file_atomic(dir / (stem + ".txt"), format_matrix(grid, values));
  write_file_atomic(dir / (stem + ".hdr"), hdr.str());
}

Snapshot load_snapshot(const fs::path& txt) {
  fs::path hdr_path = txt;
  hdr_path.replace_extension(".hdr");
  std::ifstream hdr(hdr_path);
  if (!hdr) throw ValidationError("missing snapshot header " + hdr_path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(hdr, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  Snapshot snap;
  try {
    snap.nx = std::stoul(kv.at("nx"));
    snap.ny = std::stoul(kv.at("ny"));
    snap.length = std::stod(kv.at("length"));
    snap.t = std::stod(kv.at("t"));
    snap.step = std::stoul(kv.at("step"));
  } catch (const std::exception&) {
    throw ValidationError("malformed snapshot header " + hdr_path.string());
  }
  std::ifstream in(txt);
  if (!in) throw ValidationError("cannot read snapshot " + txt.string());
  double v = 0.0;
  while (in >> v) snap.values.push_back(v);
  if (snap.values.size() != snap.nx * snap.ny) {
    throw ValidationError("snapshot " + txt.string() + " does not match its header");
  }
  return snap;
}

void write_state_snapshots(const fs::path& dir, const Grid& grid, const ClosedLoopState& state) {
  char suffix[16];
  std::snprintf(suffix, sizeof suffix, "_%06zu", state.step);
  const std::pair<const char*, const FieldPair*> fields[] = {
      {"w", &state.w}, {"w_hat", &state.w_hat}, {"v", &state.v}};
  for (const auto& [name, w] : fields) {
    write_snapshot(dir, std::string(name) + "_f" + suffix, grid, state.t, state.step, w->f);
    write_snapshot(dir, std::string(name) + "_p" + suffix, grid, state.t, state.step, w->p);
  }
}

std::string format_report(std::span<const VerificationCheck> checks) {
  std::string out;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.6e, %s%.1e, ", c.value,
                  c.comparison == Comparison::Less ? "<" : "<=", c.threshold);
    out += c.name + buf + (c.passed ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

std::string format_convergence(const ConvergenceStudy& spatial, const ConvergenceStudy& temporal) {
  std::string out = "kind,nx,ny,dt,error,order\n";
  auto rows = [&](const char* kind, const ConvergenceStudy& s) {
    for (const auto& l : s.levels) {
      out += std::string(kind) + "," + std::to_string(l.nx) + "," + std::to_string(l.ny) + "," +
             sci(l.dt) + "," + sci(l.error) + "," + (std::isnan(l.order) ? "" : sci(l.order)) + "\n";
    }
  };
  rows("space", spatial);
  rows("time", temporal);
  return out;
}

}  // namespace dcmd::io
