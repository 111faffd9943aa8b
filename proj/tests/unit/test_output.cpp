#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcmd/io/output.hpp"

using namespace dcmd;
using namespace dcmd::io;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::path(testing::TempDir()) / ("dcmd_output_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Metrics, SchemaHeaderAndRows) {
  std::vector<MetricsRow> rows(3);
  rows[1].t = 0.5;
  rows[2] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const auto l = lines(format_metrics(rows));
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], kMetricsSchema);
  EXPECT_EQ(l[1], kMetricsHeader);
  EXPECT_EQ(l[2], "0.0000000000e+00,0.0000000000e+00,0.0000000000e+00,0.0000000000e+00,0.0000000000e+00,0.0000000000e+00");
  EXPECT_EQ(l[4], "1.0000000000e+00,2.0000000000e+00,3.0000000000e+00,4.0000000000e+00,5.0000000000e+00,6.0000000000e+00");
}

TEST(Snapshot, RoundTripsExactly) {
  const auto dir = fresh_dir("snapshot");
  const auto g = make_grid(4, 7, 2.0);
  std::vector<double> values(g.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = 1.0 / (3.0 + k) - 0.1 * k;
  write_snapshot(dir, "field", g, 0.125, 42, values);
  EXPECT_EQ(lines(slurp(dir / "field.txt")).size(), 7u);
  const auto s = load_snapshot(dir / "field.txt");
  EXPECT_EQ(s.nx, 4u);
  EXPECT_EQ(s.ny, 7u);
  EXPECT_EQ(s.length, 2.0);
  EXPECT_EQ(s.t, 0.125);
  EXPECT_EQ(s.step, 42u);
  EXPECT_EQ(s.values, values);
}

TEST(Snapshot, StateWritesSixFields) {
  const auto dir = fresh_dir("state");
  const auto g = make_grid(3, 3, 1.0);
  ClosedLoopState st;
  st.step = 7;
  st.w = st.w_hat = st.v = FieldPair(g);
  write_state_snapshots(dir, g, st);
  for (const char* stem : {"w_f", "w_p", "w_hat_f", "w_hat_p", "v_f", "v_p"}) {
    EXPECT_TRUE(fs::exists(dir / (std::string(stem) + "_000007.txt"))) << stem;
    EXPECT_TRUE(fs::exists(dir / (std::string(stem) + "_000007.hdr"))) << stem;
  }
}

TEST(AtomicWrite, ReplacesContentWithoutLeftovers) {
  const auto dir = fresh_dir("atomic");
  write_file_atomic(dir / "a.txt", "first");
  write_file_atomic(dir / "a.txt", "second");
  EXPECT_EQ(slurp(dir / "a.txt"), "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
}

TEST(Report, OneLinePerCheck) {
  std::vector<VerificationCheck> checks{{"sym", 1e-14, 1e-10, Comparison::LessEqual, true},
                                        {"eig", 0.5, -1e-8, Comparison::Less, false}};
  const auto l = lines(format_report(checks));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "sym, 1.000000e-14, <=1.0e-10, PASS");
  EXPECT_EQ(l[1], "eig, 5.000000e-01, <-1.0e-08, FAIL");
}

TEST(Convergence, CsvHasOneRowPerLevel) {
  ConvergenceStudy space{{{11, 21, 0.0, 1e-3, 0.0}, {21, 41, 0.0, 2.5e-4, 2.0}}};
  ConvergenceStudy time{{{11, 21, 0.1, 1e-2, 0.0}, {11, 21, 0.05, 5e-3, 1.0}}};
  const auto l = lines(format_convergence(space, time));
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "kind,nx,ny,dt,error,order");
  EXPECT_EQ(l[1].rfind("space,11,21,", 0), 0u);
  EXPECT_EQ(l[4].rfind("time,11,21,", 0), 0u);
}
