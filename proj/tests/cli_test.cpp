#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fockm/json_io.hpp"
#include "fockm/verify.hpp"

namespace {

using fockm::cplx;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto input = dir / ("fockm_cli_in_" + std::to_string(::getpid()) + ".json");
  std::ofstream(input) << stdin_text;
  const std::string cmd = std::string(FOCKM_CLI) + " " + args + " < " + input.string() + " 2>/dev/null";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::filesystem::remove(input);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / (std::to_string(::getpid()) + "_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(JsonIo, ComplexAndElementRoundTrip) {
  const fockm::TaylorCoeffs f({cplx(1, -2), cplx(0.5, 0), cplx(0, 3)});
  EXPECT_EQ(fockm::io::taylor_from_json(fockm::io::to_json(f)), f);
  fockm::L2Element g;
  g.hermite_coeffs = {cplx(1, 1), cplx(-2, 0)};
  EXPECT_EQ(fockm::io::l2_from_json(fockm::io::to_json(g)), g);
  const fockm::DualSequence b{{cplx(0, 1), cplx(2, 2)}, 3};
  const auto b2 = fockm::io::dual_from_json(fockm::io::to_json(b));
  EXPECT_EQ(b2, b);
  EXPECT_EQ(b2.level, 3);
  EXPECT_EQ(fockm::io::complex_from_json(json(2.5)), cplx(2.5, 0));
}

TEST(JsonIo, MalformedInputIsInputError) {
  EXPECT_THROW((void)fockm::io::taylor_from_json(json{{"coefs", json::array()}}), fockm::InputError);
  EXPECT_THROW((void)fockm::io::taylor_from_json(json::parse(R"({"coeffs": [[1, 2, 3]]})")), fockm::InputError);
  EXPECT_THROW((void)fockm::io::path_from_json(json::parse(R"({"t": 0})")), fockm::InputError);
}

TEST(VerifyLibrary, SuitesAreDeterministicAndOrdered) {
  fockm::verify::RunConfig cfg;
  cfg.seed = 7;
  const auto a = fockm::verify::run_suite(cfg, "dual");
  const auto b = fockm::verify::run_suite(cfg, "dual");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].measured, b[i].measured);
  }
  EXPECT_THROW((void)fockm::verify::run_suite(cfg, "nope"), fockm::InputError);
  cfg.rel_tol = -1.0;
  EXPECT_THROW((void)fockm::verify::run_suite(cfg, "dual"), fockm::DomainError);
}

TEST(Cli, VerifyAllPassesWithEnoughChecks) {
  const auto r = run("verify all --seed 42");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_GE(j["checks"].size(), 25u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["seed"], 42);
}

TEST(Cli, ReportsAreByteIdentical) {
  const auto a = run("verify operators --seed 9");
  const auto b = run("verify operators --seed 9");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = run("--seed 9 verify dual --format csv");
  const auto d = run("verify dual --format csv --seed 9");
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.out.rfind("suite,name,measured,tolerance,passed,detail\n", 0), 0u);
}

TEST(Cli, ConvergenceFailureExitsOne) {
  const auto r = run("verify kernels --m 5 --max-refinements 2");
  EXPECT_EQ(r.exit_code, 1);
  const auto j = json::parse(r.out);
  bool named = false;
  for (const auto& c : j["checks"])
    if (!c["passed"].get<bool>() && c["detail"].get<std::string>().find("convergence failure") != std::string::npos) named = true;
  EXPECT_TRUE(named);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("verify bogus").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("moments --m").exit_code, 2);
  EXPECT_EQ(run("inner-product", "{not json").exit_code, 2);
  EXPECT_EQ(run("op-apply --word BXA", R"({"coeffs": [[1, 0]]})").exit_code, 2);
  EXPECT_EQ(run("vage-check --p 2 --q 2").exit_code, 2);
}

TEST(Cli, StirlingCsv) {
  const auto r = run("stirling --max-k 4");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "k,n0,n1,n2,n3,n4\n0,1,0,0,0,0\n1,0,1,0,0,0\n2,0,1,1,0,0\n3,0,1,3,1,0\n4,0,1,7,6,1\n");
}

TEST(Cli, MomentsCsv) {
  const auto r = run("moments --m 2 --nmax 3");
  EXPECT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,computed,exact,rel_err");
  int rows = 0;
  while (std::getline(in, line)) {
    const double rel = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LE(rel, 1e-8);
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, KernelTableCsv) {
  const auto r = run("kernel-table --m 2 --xmin 1 --xmax 4 --points 2");
  EXPECT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "x,K");
  EXPECT_NEAR(std::stod(first.substr(first.find(',') + 1)), 0.22778, 1e-5);
  EXPECT_NEAR(std::stod(second.substr(second.find(',') + 1)), 0.0223194, 1e-7);
}

TEST(Cli, CoefficientSpaceCommands) {
  auto r = run("kernel-eval", R"({"m": 1, "z": [1, 0], "w": [1, 0]})");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"][0].get<double>(), std::numbers::e, 1e-15);

  r = run("inner-product", R"({"m": 3, "f": {"coeffs": [0, 0, 1]}, "g": {"coeffs": [0, 0, 1]}})");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"][0].get<double>(), 8.0, 1e-14);

  r = run("reproduce-check", R"({"m": 4, "f": {"coeffs": [[1, 1], [0, 2], [3, 0]]}, "w": [0.5, -1.2]})");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, OperatorCommands) {
  const auto r = run("op-apply --word BAB --m 2", R"({"coeffs": [0, 0, 0, 1]})");
  ASSERT_EQ(r.exit_code, 0);
  const auto f = fockm::io::taylor_from_json(json::parse(r.out));
  EXPECT_EQ(f, fockm::TaylorCoeffs::monomial(2, 9.0));

  const auto v = run("verify-operators --m 3 --deg 15");
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_EQ(json::parse(v.out)["status"], "pass");
}

TEST(Cli, BargmannRoundTrip) {
  const auto fwd = run("bargmann --m 2 --direction fwd", R"({"hermite_coeffs": [1, 0, 1]})");
  ASSERT_EQ(fwd.exit_code, 0);
  const auto f = fockm::io::taylor_from_json(json::parse(fwd.out));
  EXPECT_NEAR(std::abs(f[2] - 0.5), 0.0, 1e-16);
  const auto inv = run("bargmann --m 2 --direction inv", fwd.out);
  ASSERT_EQ(inv.exit_code, 0);
  const auto g = fockm::io::l2_from_json(json::parse(inv.out));
  EXPECT_NEAR(std::abs(g.hermite_coeffs[2] - 1.0), 0.0, 1e-15);
}

TEST(Cli, DualCommands) {
  auto r = run("dual-norm --m 3", R"({"coeffs": [0, 0, 1]})");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), 1.0 / std::sqrt(2.0), 1e-15);

  r = run("vage-check --p 1 --q 3 --trials 200 --seed 5");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["violations"], 0);
  EXPECT_LE(j["worst_ratio"].get<double>(), 1.0);
  EXPECT_EQ(run("vage-check --p 1 --q 3 --trials 200 --seed 5").out, r.out);

  const auto fp = write_temp("f.json", R"([{"t": 0, "coeffs": [0]}, {"t": 0.5, "coeffs": [0.5]}, {"t": 1, "coeffs": [1]}])");
  const auto gp = write_temp("g.json", R"([{"t": 0, "coeffs": [1]}, {"t": 0.5, "coeffs": [1]}, {"t": 1, "coeffs": [1]}])");
  r = run("integrate --f " + fp + " --g " + gp);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(json::parse(r.out)["coeffs"][0][0].get<double>(), 0.5, 1e-15);
  const auto bad = write_temp("bad.json", R"([{"t": 0, "coeffs": [1]}, {"t": 1, "coeffs": [1]}])");
  EXPECT_EQ(run("integrate --f " + fp + " --g " + bad).exit_code, 2);
  for (const auto& p : {fp, gp, bad}) std::filesystem::remove(p);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / ("fockm_out_" + std::to_string(::getpid()) + ".csv");
  const auto r = run("--out " + path.string() + " stirling --max-k 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "k,n0,n1,n2");
  std::filesystem::remove(path);
}

}  // namespace
