#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tornzeta/closed_form.hpp"
#include "tornzeta/constants.hpp"
#include "tornzeta/exact_arith.hpp"
#include "tornzeta/harness.hpp"
#include "tornzeta/oracle.hpp"

namespace tz = tornzeta;

namespace {

int default_digits() {
  if (const char* env = std::getenv("TORNZETA_DIGITS")) return std::stoi(env);
  return tz::NumericCfg{}.digits;
}

int print_reports(const std::vector<tz::EvalReport>& reports, tz::Format format, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    tz::emit(reports, format, std::cout);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    tz::emit(reports, format, file);
  }
  return tz::summarize(reports).all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tornzeta: closed forms and numeric oracles for Tornheim-type series"};
  app.require_subcommand(1);

  std::string spec_text;
  std::string method = "diagonal";
  std::int64_t n_max = tz::NumericCfg{}.n_max;
  int levels = tz::NumericCfg{}.quad_levels;
  int digits = default_digits();
  bool no_extrapolate = false;
  double tol = 1e-8;
  std::string preset = "paper-full";
  std::string format = "text";
  std::string out_path;
  bool parallel = false;
  int zeta_k = 2;
  long bern_n = 0;

  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--method", method, "raw|diagonal|quadrature")->check(CLI::IsMember({"raw", "diagonal", "quadrature"}));
    sub->add_option("--nmax", n_max, "cutoff (diagonal index or box edge)");
    sub->add_option("--levels", levels, "tanh-sinh levels (3..16)");
    sub->add_option("--digits", digits, "working precision in decimal digits (>= 30)");
    sub->add_flag("--no-extrapolate", no_extrapolate, "report the plain truncated sum");
  };

  auto* eval_cmd = app.add_subcommand("eval", "closed form of a series, symbolic and numeric");
  eval_cmd->add_option("spec", spec_text, "series, e.g. A3:s=2, An:n=4,s=0, halfint:c")->required();
  eval_cmd->add_option("--digits", digits, "digits of the numeric value");

  auto* oracle_cmd = app.add_subcommand("oracle", "numeric value of a series");
  oracle_cmd->add_option("spec", spec_text)->required();
  add_numeric(oracle_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "compare closed form and oracle");
  verify_cmd->add_option("spec", spec_text)->required();
  verify_cmd->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  add_numeric(verify_cmd);

  auto* suite_cmd = app.add_subcommand("suite", "run a verification preset");
  suite_cmd->add_option("--preset", preset)->check(CLI::IsMember({"paper-full", "smoke"}));
  suite_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  suite_cmd->add_option("--out", out_path, "output file (default stdout)");
  suite_cmd->add_flag("--parallel", parallel, "run entries concurrently");

  auto* const_cmd = app.add_subcommand("constants", "high-precision zeta(K)");
  const_cmd->add_option("--zeta", zeta_k, "K >= 2")->check(CLI::Range(2, 1000));
  const_cmd->add_option("--digits", digits)->check(CLI::Range(30, 100000));

  auto* bern_cmd = app.add_subcommand("bernoulli", "exact Bernoulli number B_N");
  bern_cmd->add_option("N", bern_n)->required()->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  auto numeric_cfg = [&] {
    tz::NumericCfg cfg;
    cfg.method = tz::parse_method(method);
    cfg.n_max = n_max;
    cfg.quad_levels = levels;
    cfg.digits = digits;
    cfg.extrapolate = !no_extrapolate;
    return cfg;
  };

  try {
    if (*eval_cmd) {
      const auto spec = tz::parse_spec(spec_text);
      const auto cf = tz::closed_form(spec);
      if (!cf) {
        std::cout << tz::to_string(spec) << ": no closed form\n";
        return 1;
      }
      std::cout << tz::to_string(spec) << " = " << cf->str() << "\n";
      const auto pi_form = tz::zx_normalize(*cf, tz::NormalMode::PreferPi);
      if (pi_form != *cf) std::cout << "  = " << pi_form.str() << "\n";
      std::cout << "  = " << tz::zx_numeric(*cf, std::max(digits, tz::kMinDigits)).str(std::max(digits, tz::kMinDigits)) << "\n";
      return 0;
    }
    if (*oracle_cmd) {
      const auto spec = tz::parse_spec(spec_text);
      const auto cfg = numeric_cfg();
      const auto r = tz::run_oracle(spec, cfg);
      std::cout << tz::to_string(spec) << " [" << tz::to_string(r.method) << "]\n"
                << "  value          " << r.value.str(tz::kReportDigits) << "\n";
      if (r.method != tz::Method::Quadrature) {
        std::cout << "  n_used         " << r.n_used << "\n"
                  << "  partial_sum    " << r.partial_sum.str(tz::kReportDigits) << "\n"
                  << "  tail_bound     " << (r.tail_bound ? r.tail_bound->str(6) : "none") << "\n"
                  << "  extrapolated   " << (r.extrapolated ? "yes" : "no") << "\n";
      } else {
        std::cout << "  levels_used    " << r.levels_used << "\n";
      }
      std::cout << "  error_estimate " << r.error_estimate.str(6) << "\n"
                << "  elapsed        " << r.elapsed_seconds << " s\n";
      if (!r.ok) std::cout << "  failure        " << r.failure << "\n";
      return r.ok ? 0 : 1;
    }
    if (*verify_cmd) {
      const auto report = tz::verify(tz::parse_spec(spec_text), numeric_cfg(), tol);
      tz::emit({report}, tz::Format::Text, std::cout);
      return report.pass ? 0 : 1;
    }
    if (*suite_cmd) {
      const auto manifest = tz::manifest_preset(preset);
      const auto reports = tz::run_suite(manifest, parallel);
      int code = print_reports(reports, tz::parse_format(format), out_path);
      const auto s = tz::summarize(reports);
      std::cerr << preset << ": " << s.passed << "/" << s.total << " reports pass\n";
      for (const auto& c : tz::run_exact_checks()) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << "exact: " << c.name;
        if (!c.pass) std::cerr << " (" << c.detail << ")";
        std::cerr << "\n";
        if (!c.pass) code = 1;
      }
      return code;
    }
    if (*const_cmd) {
      std::cout << tz::const_zeta(zeta_k, digits).str(digits) << "\n";
      return 0;
    }
    if (*bern_cmd) {
      std::cout << tz::bernoulli(bern_n) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
