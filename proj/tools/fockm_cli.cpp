#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockm/fockm.hpp"
#include "fockm/json_io.hpp"
#include "fockm/verify.hpp"

namespace {

using fockm::cplx;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::size_t degree = 64;
  std::string format = "json";
  std::string out;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw fockm::InputError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json read_json(const std::string& path) {
  try {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw fockm::InputError("cannot open input file '" + path + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw fockm::InputError(std::string("malformed JSON: ") + e.what());
  }
}

void print_json(Output& out, const json& j) { out.stream() << j.dump(2) << '\n'; }

std::string csv_quote(const std::string& text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

fockm::QuadratureConfig quad_config(const Globals& g, int max_refinements) {
  fockm::QuadratureConfig q;
  q.rel_tol = g.tol;
  q.max_refinements = max_refinements;
  q.validate();
  return q;
}

json check_to_json(const fockm::verify::Check& c) {
  return json{{"suite", c.suite},     {"name", c.name},     {"measured", c.measured},
              {"tolerance", c.tolerance}, {"passed", c.passed}, {"detail", c.detail}};
}

int emit_report(Output& out, const Globals& g, const std::string& suite,
                const std::vector<fockm::verify::Check>& checks) {
  const bool ok = fockm::verify::all_passed(checks);
  if (g.format == "csv") {
    out.stream() << "suite,name,measured,tolerance,passed,detail\n";
    for (const auto& c : checks)
      out.stream() << c.suite << ',' << c.name << ',' << fmt(c.measured) << ',' << fmt(c.tolerance) << ','
                   << (c.passed ? "pass" : "fail") << ',' << csv_quote(c.detail) << '\n';
  } else {
    json report;
    report["suite"] = suite;
    report["seed"] = g.seed;
    report["checks"] = json::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
      report["checks"].push_back(check_to_json(c));
      failed += !c.passed;
    }
    report["total"] = checks.size();
    report["failed"] = failed;
    report["status"] = ok ? "pass" : "fail";
    print_json(out, report);
  }
  for (const auto& c : checks)
    if (!c.passed) std::cerr << "FAILED " << c.suite << '.' << c.name << ": " << c.detail << '\n';
  return ok ? kExitPass : kExitFail;
}

std::complex<double> random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  return {re, nd(rng)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Fock spaces: kernels, radial weights, ladder operators and the dual algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", g.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--degree", g.degree, "truncation degree")->check(CLI::Range(std::size_t{1}, std::size_t{100000}))->capture_default_str();
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", g.out, "write output to a file instead of stdout");

  int m = 2;
  int max_refinements = 400;
  std::string in_path;

  auto* stirling = app.add_subcommand("stirling", "Stirling triangle S(k, n) as CSV");
  std::size_t max_k = 10;
  stirling->add_option("--max-k", max_k)->capture_default_str();

  auto* table = app.add_subcommand("kernel-table", "tabulate K_m on a log-spaced grid (CSV x,K)");
  double xmin = 0.01, xmax = 50.0;
  std::size_t points = 100;
  table->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  table->add_option("--xmin", xmin)->check(CLI::PositiveNumber)->capture_default_str();
  table->add_option("--xmax", xmax)->check(CLI::PositiveNumber)->capture_default_str();
  table->add_option("--points", points)->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))->capture_default_str();
  table->add_option("--max-refinements", max_refinements)->capture_default_str();

  auto* moments = app.add_subcommand("moments", "moments of K_m against (n!)^m (CSV)");
  std::size_t nmax = 8;
  moments->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  moments->add_option("--nmax", nmax)->capture_default_str();
  moments->add_option("--max-refinements", max_refinements)->capture_default_str();

  auto* keval = app.add_subcommand("kernel-eval", "k_m(z, w) from JSON {\"m\", \"z\", \"w\"}");
  keval->add_option("--in", in_path, "input file, stdin when omitted");

  auto* inner = app.add_subcommand("inner-product", "<f, g>_m from JSON {\"m\", \"f\", \"g\"}");
  inner->add_option("--in", in_path, "input file, stdin when omitted");

  auto* repro = app.add_subcommand("reproduce-check", "<f, k_m(., w)>_m against f(w) from JSON {\"m\", \"f\", \"w\"}");
  repro->add_option("--in", in_path, "input file, stdin when omitted");

  auto* opapply = app.add_subcommand("op-apply", "apply a word in A (multiply by z) and B (d/dz)");
  std::string word_text;
  opapply->add_option("--word", word_text)->required();
  opapply->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  opapply->add_option("--in", in_path, "input file, stdin when omitted");

  auto* verops = app.add_subcommand("verify-operators", "ladder operator identity suite at one m");
  std::size_t deg = 20;
  verops->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  verops->add_option("--deg", deg)->capture_default_str();

  auto* barg = app.add_subcommand("bargmann", "Bargmann transform in Hermite coordinates");
  std::string direction = "fwd";
  barg->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  barg->add_option("--direction", direction)->check(CLI::IsMember({"fwd", "inv"}))->capture_default_str();
  barg->add_option("--in", in_path, "input file, stdin when omitted");

  auto* dnorm = app.add_subcommand("dual-norm", "dual norm ||b||_{2-m}");
  dnorm->add_option("--m", m)->check(CLI::PositiveNumber)->capture_default_str();
  dnorm->add_option("--in", in_path, "input file, stdin when omitted");

  auto* vage = app.add_subcommand("vage-check", "randomized check of the convolution bound");
  int p = 1, q = 2, trials = 1000;
  vage->add_option("--p", p)->check(CLI::PositiveNumber)->capture_default_str();
  vage->add_option("--q", q)->check(CLI::PositiveNumber)->capture_default_str();
  vage->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  std::uint64_t vage_seed = 0;
  auto* vage_seed_opt = vage->add_option("--seed", vage_seed, "overrides the global seed");

  auto* integ = app.add_subcommand("integrate", "trapezoidal integral of f(t)*g(t) over [0, 1]");
  std::string f_path, g_path;
  integ->add_option("--f", f_path)->required();
  integ->add_option("--g", g_path)->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  int kernel_m = 4;
  verify->add_option("suite", suite)
      ->check(CLI::IsMember({"stirling", "kernels", "operators", "bargmann", "dual", "all"}))
      ->capture_default_str();
  verify->add_option("--m", kernel_m, "largest m for the kernel moment check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--max-refinements", max_refinements)->capture_default_str();
  std::uint64_t verify_seed = 0;
  auto* verify_seed_opt = verify->add_option("--seed", verify_seed, "overrides the global seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Output out(g.out);

    if (stirling->parsed()) {
      auto& t = fockm::default_stirling_table();
      out.stream() << 'k';
      for (std::size_t n = 0; n <= max_k; ++n) out.stream() << ",n" << n;
      out.stream() << '\n';
      for (std::size_t k = 0; k <= max_k; ++k) {
        out.stream() << k;
        for (std::size_t n = 0; n <= max_k; ++n) out.stream() << ',' << t(k, n);
        out.stream() << '\n';
      }
      return kExitPass;
    }

    if (table->parsed()) {
      if (!(xmax > xmin)) throw fockm::InputError("--xmax must exceed --xmin");
      const auto qcfg = quad_config(g, max_refinements);
      out.stream() << "x,K\n";
      for (std::size_t i = 0; i < points; ++i) {
        const double x = xmin * std::pow(xmax / xmin, static_cast<double>(i) / static_cast<double>(points - 1));
        out.stream() << fmt(x) << ',' << fmt(fockm::km_eval(m, x, qcfg)) << '\n';
      }
      return kExitPass;
    }

    if (moments->parsed()) {
      const auto qcfg = quad_config(g, max_refinements);
      out.stream() << "n,computed,exact,rel_err\n";
      for (std::size_t n = 0; n <= nmax; ++n) {
        const double got = fockm::km_moment(m, n, qcfg);
        fockm::BigInt fact = 1;
        for (std::size_t i = 2; i <= n; ++i) fact *= i;
        const double exact = static_cast<double>(boost::multiprecision::pow(fact, static_cast<unsigned>(m)));
        out.stream() << n << ',' << fmt(got) << ',' << fmt(exact) << ',' << fmt(fockm::relative_error(got, exact)) << '\n';
      }
      return kExitPass;
    }

    if (keval->parsed()) {
      const json j = read_json(in_path);
      const fockm::WeightIndex w(fockm::io::require(j, "m").get<int>());
      const auto r = fockm::kernel_eval_detailed(w, fockm::io::complex_from_json(fockm::io::require(j, "z")),
                                                 fockm::io::complex_from_json(fockm::io::require(j, "w")), 1e-16,
                                                 std::max<std::size_t>(g.degree, 100000));
      print_json(out, json{{"m", w.m}, {"value", fockm::io::to_json(r.value)}, {"terms", r.terms}});
      return kExitPass;
    }

    if (inner->parsed()) {
      const json j = read_json(in_path);
      const fockm::WeightIndex w(fockm::io::require(j, "m").get<int>());
      const auto f = fockm::io::taylor_from_json(fockm::io::require(j, "f"));
      const auto h = fockm::io::taylor_from_json(fockm::io::require(j, "g"));
      print_json(out, json{{"m", w.m}, {"value", fockm::io::to_json(fockm::inner_product(f, h, w))}});
      return kExitPass;
    }

    if (repro->parsed()) {
      const json j = read_json(in_path);
      const fockm::WeightIndex w(fockm::io::require(j, "m").get<int>());
      const auto f = fockm::io::taylor_from_json(fockm::io::require(j, "f"));
      const cplx wpt = fockm::io::complex_from_json(fockm::io::require(j, "w"));
      const cplx ip = fockm::inner_product(f, fockm::kernel_section(w, wpt, f.truncation_degree()), w);
      const cplx direct = fockm::eval_point(f, wpt);
      const double err = fockm::relative_error(ip, direct);
      const bool ok = err <= 1e-12;
      print_json(out, json{{"m", w.m},
                           {"inner_product", fockm::io::to_json(ip)},
                           {"value", fockm::io::to_json(direct)},
                           {"rel_err", err},
                           {"tolerance", 1e-12},
                           {"passed", ok}});
      return ok ? kExitPass : kExitFail;
    }

    if (opapply->parsed()) {
      const auto word = fockm::OperatorWord::parse(word_text);
      const auto f = fockm::io::taylor_from_json(read_json(in_path));
      const auto r = fockm::apply_word(word, f);
      json j = fockm::io::to_json(r);
      j["word"] = word.str();
      j["m"] = m;
      const auto nf = fockm::norm(r, fockm::WeightIndex(m));
      j["norm"] = nf.overflow ? json(nullptr) : json(nf.value);
      j["log_norm"] = nf.log_value;
      print_json(out, j);
      return kExitPass;
    }

    if (verops->parsed()) {
      return emit_report(out, g, "operators", fockm::verify::run_operator_identities(m, deg, g.seed));
    }

    if (barg->parsed()) {
      const json j = read_json(in_path);
      if (direction == "fwd") {
        const auto r = fockm::bargmann_forward(fockm::io::l2_from_json(j), m);
        json o = fockm::io::to_json(r);
        o["m"] = m;
        print_json(out, o);
      } else {
        const auto r = fockm::bargmann_inverse(fockm::io::taylor_from_json(j), m);
        json o = fockm::io::to_json(r);
        o["m"] = m;
        print_json(out, o);
      }
      return kExitPass;
    }

    if (dnorm->parsed()) {
      const auto b = fockm::io::dual_from_json(read_json(in_path));
      const auto r = fockm::dual_norm(b, m);
      print_json(out, json{{"m", m}, {"level", b.level}, {"value", r.value}, {"underflow", r.underflow}});
      return kExitPass;
    }

    if (vage->parsed()) {
      if (q < p + 1) throw fockm::InputError("--q must be at least --p + 1");
      std::mt19937_64 rng(*vage_seed_opt ? vage_seed : g.seed);
      std::uniform_int_distribution<std::size_t> len(1, 30);
      double worst = 0.0;
      int violations = 0;
      for (int i = 0; i < trials; ++i) {
        fockm::DualSequence a, b;
        a.coeffs.resize(len(rng));
        b.coeffs.resize(len(rng));
        for (auto& c : a.coeffs) c = random_complex(rng);
        for (auto& c : b.coeffs) c = random_complex(rng);
        const auto r = fockm::vage_check(a, b, p, q);
        worst = std::max(worst, r.ratio());
        violations += !r.holds;
      }
      print_json(out, json{{"p", p},
                           {"q", q},
                           {"trials", trials},
                           {"constant", fockm::vage_constant(q - p)},
                           {"worst_ratio", worst},
                           {"violations", violations},
                           {"status", violations == 0 ? "pass" : "fail"}});
      return violations == 0 ? kExitPass : kExitFail;
    }

    if (integ->parsed()) {
      const auto fp = fockm::io::path_from_json(read_json(f_path));
      const auto gp = fockm::io::path_from_json(read_json(g_path));
      print_json(out, fockm::io::to_json(fockm::riemann_integral_product(fp, gp)));
      return kExitPass;
    }

    if (verify->parsed()) {
      fockm::verify::RunConfig cfg;
      cfg.truncation_degree = g.degree;
      cfg.rel_tol = g.tol;
      cfg.max_refinements = max_refinements;
      cfg.seed = *verify_seed_opt ? verify_seed : g.seed;
      cfg.kernel_max_m = kernel_m;
      Globals report_globals = g;
      report_globals.seed = cfg.seed;
      return emit_report(out, report_globals, suite, fockm::verify::run_suite(cfg, suite));
    }
  } catch (const fockm::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fockm::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fockm::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
