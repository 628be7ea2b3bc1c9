#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tornzeta/closed_form.hpp"
#include "tornzeta/constants.hpp"
#include "tornzeta/oracle.hpp"
#include "tornzeta/zexpr.hpp"

namespace tornzeta {

inline constexpr int kReportDigits = 30;

struct EvalReport {
  SeriesSpec spec;
  std::optional<ZExpr> closed_form;
  BigFl closed_numeric;
  OracleResult oracle;
  BigFl abs_err;
  BigFl rel_err;
  double tolerance = 0.0;
  /// abs_err <= max(tolerance, oracle uncertainty)
  bool pass = false;
  /// abs_err <= tolerance on its own
  bool within_tolerance = false;
  std::string reason;

  [[nodiscard]] std::string closed_form_text() const { return closed_form ? closed_form->str() : ""; }
};

namespace detail {

inline void fail(EvalReport& r, std::string why) {
  r.pass = false;
  r.within_tolerance = false;
  if (!r.reason.empty()) r.reason += "; ";
  r.reason += std::move(why);
}

inline bool has_integral_form(const SeriesSpec& spec) {
  return std::holds_alternative<series::A3>(spec) || std::holds_alternative<series::An>(spec);
}

}  // namespace detail

/// Compares the closed form of `spec` with the oracle selected by `cfg`.
/// Mismatches and oracle failures come back as pass = false with a reason.
inline EvalReport verify(const SeriesSpec& spec, const NumericCfg& cfg, double tol) {
  validate(spec);
  validate(cfg);
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("verify: tolerance must be positive");

  PrecisionScope scope(cfg.digits);
  EvalReport r;
  r.spec = spec;
  r.tolerance = tol;
  r.closed_form = closed_form(spec);
  if (r.closed_form) r.closed_numeric = zx_numeric(*r.closed_form, cfg.digits);

  try {
    r.oracle = run_oracle(spec, cfg);
  } catch (const std::exception& e) {
    detail::fail(r, std::string("oracle error: ") + e.what());
    return r;
  }
  if (!r.oracle.ok) {
    detail::fail(r, "oracle did not converge: " + r.oracle.failure);
    return r;
  }
  if (!r.closed_form) {
    detail::fail(r, "no closed form for " + to_string(spec));
    return r;
  }

  r.abs_err = abs(r.oracle.value - r.closed_numeric);
  r.rel_err = r.closed_numeric.is_zero() ? r.abs_err : r.abs_err / abs(r.closed_numeric);
  const BigFl tol_f(tol);
  r.within_tolerance = r.abs_err <= tol_f;

  if (const auto unc = r.oracle.uncertainty()) {
    r.pass = r.abs_err <= max(tol_f, *unc);
    if (!r.pass) r.reason = "abs_err exceeds both tolerance and oracle uncertainty";
    return r;
  }

  // No remainder bound: the series value has to agree with quadrature too.
  r.pass = r.within_tolerance;
  if (!r.pass) r.reason = "abs_err exceeds tolerance and no tail bound is available";
  if (detail::has_integral_form(spec) && cfg.method != Method::Quadrature) {
    NumericCfg qcfg = cfg;
    qcfg.method = Method::Quadrature;
    try {
      const OracleResult q = oracle_quadrature(spec, qcfg);
      if (!q.ok || abs(q.value - r.oracle.value) > tol_f) detail::fail(r, "no tail bound and quadrature disagrees");
      else if (r.reason.empty()) r.reason = "no tail bound; agreement with quadrature";
    } catch (const std::exception& e) {
      detail::fail(r, std::string("no tail bound and quadrature failed: ") + e.what());
    }
  }
  return r;
}

struct SuiteEntry {
  SeriesSpec spec;
  NumericCfg cfg;
  double tolerance = 0.0;
};

struct SuiteManifest {
  std::string name;
  std::vector<SuiteEntry> entries;
};

inline void validate(const SuiteManifest& m) {
  if (m.entries.empty()) throw std::invalid_argument("manifest '" + m.name + "' is empty");
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const auto& e = m.entries[i];
    const std::string where = "manifest '" + m.name + "' entry " + std::to_string(i) + ": ";
    if (!(e.tolerance > 0.0) || !std::isfinite(e.tolerance)) throw std::invalid_argument(where + "tolerance must be positive");
    try {
      validate(e.spec);
      validate(e.cfg);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(where + ex.what());
    }
    if (e.cfg.method == Method::Quadrature && !detail::has_integral_form(e.spec))
      throw std::invalid_argument(where + "quadrature needs an A3 or An spec");
    if (e.cfg.method == Method::Diagonal && !has_diagonal(e.spec))
      throw std::invalid_argument(where + "no diagonal reduction for " + to_string(e.spec));
  }
}

namespace detail {

inline NumericCfg cfg_of(Method method, std::int64_t n_max) {
  NumericCfg cfg;
  cfg.method = method;
  cfg.n_max = n_max;
  return cfg;
}

}  // namespace detail

/// Every in-scope identity, each against an independent oracle.
inline SuiteManifest paper_full_manifest() {
  using namespace series;
  using detail::cfg_of;
  constexpr std::int64_t kFull = 1'000'000;
  constexpr std::int64_t kFast = 200'000;
  constexpr std::int64_t kBox = 2000;
  SuiteManifest m{"paper-full", {}};
  auto add = [&](SeriesSpec spec, Method method, std::int64_t n, double tol) {
    m.entries.push_back({std::move(spec), cfg_of(method, n), tol});
  };

  add(A3{0}, Method::Quadrature, kFull, 1e-8);
  add(A3{0}, Method::Diagonal, kFull, 1e-8);
  for (int s = 1; s <= 20; ++s) add(A3{s}, Method::Diagonal, kFast, 1e-6);
  for (int n = 2; n <= 5; ++n)
    for (int s = 0; s <= 5; ++s) add(An{n, s}, Method::Quadrature, kFull, 1e-10);
  add(An{6, 0}, Method::Diagonal, kFast, 1e-6);
  add(AXL{0}, Method::Diagonal, kFull, 1e-6);
  for (int k = 1; k <= 10; ++k) add(AXL{k}, Method::Diagonal, kFast, 1e-6);
  add(S111{}, Method::Diagonal, kFull, 1e-6);
  add(TornheimRaw{1, 1, 1}, Method::Raw, kBox, 1e-6);
  add(LnSeries{}, Method::Diagonal, kFull, 1e-8);
  add(OnSeries{}, Method::Diagonal, kFull, 1e-8);
  for (char v : {'a', 'b', 'c'}) add(HalfInt{v}, Method::Raw, kBox, 1e-6);
  for (char v : {'a', 'b', 'c'}) add(HalfInt{v}, Method::Diagonal, kFull, 1e-6);
  for (int d = 1; d <= 3; ++d) add(BaseT{d}, Method::Diagonal, kFull, 1e-8);
  add(BInter{}, Method::Diagonal, kFull, 1e-8);
  add(EvenOddAux{}, Method::Diagonal, kFull, 1e-8);
  add(OddSquares{}, Method::Diagonal, kFull, 1e-8);
  return m;
}

/// Six quick identities at N = 10^4.
inline SuiteManifest smoke_manifest() {
  using namespace series;
  constexpr std::int64_t kN = 10'000;
  SuiteManifest m{"smoke", {}};
  for (SeriesSpec spec : {SeriesSpec(A3{1}), SeriesSpec(OnSeries{}), SeriesSpec(LnSeries{}), SeriesSpec(BaseT{2}),
                          SeriesSpec(S111{}), SeriesSpec(OddSquares{})})
    m.entries.push_back({spec, detail::cfg_of(Method::Diagonal, kN), 1e-6});
  return m;
}

inline SuiteManifest manifest_preset(std::string_view name) {
  if (name == "paper-full") return paper_full_manifest();
  if (name == "smoke") return smoke_manifest();
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (paper-full|smoke)");
}

/// Runs every entry; reports come back in manifest order. With `parallel`
/// the entries run as concurrent tasks, each internally sequential.
inline std::vector<EvalReport> run_suite(const SuiteManifest& manifest, bool parallel) {
  validate(manifest);
  std::vector<EvalReport> out;
  out.reserve(manifest.entries.size());
  if (!parallel) {
    for (const auto& e : manifest.entries) out.push_back(verify(e.spec, e.cfg, e.tolerance));
    return out;
  }
  std::vector<std::future<EvalReport>> jobs;
  jobs.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries)
    jobs.push_back(std::async(std::launch::async, [&e] { return verify(e.spec, e.cfg, e.tolerance); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

struct SuiteSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  [[nodiscard]] bool all_pass() const { return total > 0 && passed == total; }
};

inline SuiteSummary summarize(const std::vector<EvalReport>& reports) {
  SuiteSummary s;
  s.total = reports.size();
  for (const auto& r : reports) s.passed += r.pass ? 1 : 0;
  return s;
}

/// Identities that hold exactly and are checked in Rat / ZExpr arithmetic.
struct ExactCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::vector<ExactCheck> run_exact_checks() {
  std::vector<ExactCheck> out;
  {
    ExactCheck c{"binomial-harmonic sum k=1..100", true, ""};
    for (int k = 1; k <= 100 && c.pass; ++k) {
      const auto [lhs, rhs] = binomial_harmonic_sides(k);
      if (lhs != rhs) {
        c.pass = false;
        c.detail = "sides differ at k=" + std::to_string(k);
      }
    }
    out.push_back(std::move(c));
  }
  {
    const ZExpr a = eval_halfint('a'), b = eval_halfint('b'), c = eval_halfint('c');
    out.push_back({"halfint c = a - b", c == a - b, c.str() + " vs " + (a - b).str()});
  }
  {
    const auto r = odd_harmonic_routes();
    out.push_back({"ln routes agree", r.ln_via_s1 == r.ln_via_3, r.ln_via_s1.str() + " vs " + r.ln_via_3.str()});
    out.push_back({"on routes agree", r.on_via_s1 == r.on_via_3, r.on_via_s1.str() + " vs " + r.on_via_3.str()});
  }
  {
    const ZExpr six_z4 = zx_scale(Rat(6), ZExpr::term(ConstSym::zeta(4)));
    const ZExpr pi_form = zx_normalize(six_z4, NormalMode::PreferPi);
    out.push_back({"6*z4 = 1/15*pi^4", pi_form == ZExpr::term(ConstSym::pi_pow(4), Rat(1, 15)), pi_form.str()});
  }
  {
    constexpr int kDigits = 50;
    PrecisionScope scope(kDigits);
    ExactCheck c{"even zeta = Bernoulli pi form, n=1..10 (1e-25)", true, ""};
    const BigFl eps = pow10(-25);
    for (int n = 1; n <= 10 && c.pass; ++n) {
      const BigFl diff = abs(zx_numeric(zeta_even_to_pi(n), kDigits) - const_zeta(2 * n, kDigits));
      if (diff > eps) {
        c.pass = false;
        c.detail = "n=" + std::to_string(n) + " differs by " + diff.str(5);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

enum class Format { Text, Json, Csv };

inline Format parse_format(std::string_view text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (text|json|csv)");
}

namespace detail {

inline std::string num(const BigFl& x) { return x.str(kReportDigits); }

inline std::string tail_text(const EvalReport& r) { return r.oracle.tail_bound ? num(*r.oracle.tail_bound) : "none"; }

inline std::string tol_text(double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", tol);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["spec"] = std::string(family_name(r.spec));
  j["params"] = params_text(r.spec);
  j["closed_form_text"] = r.closed_form_text();
  j["closed_numeric"] = r.closed_form ? num(r.closed_numeric) : "";
  j["oracle_value"] = num(r.oracle.value);
  j["oracle_method"] = std::string(to_string(r.oracle.method));
  j["n_used"] = r.oracle.n_used;
  j["abs_err"] = num(r.abs_err);
  j["tail_bound"] = tail_text(r);
  j["pass"] = r.pass;
  j["rel_err"] = num(r.rel_err);
  j["tolerance"] = tol_text(r.tolerance);
  j["within_tolerance"] = r.within_tolerance;
  j["error_estimate"] = num(r.oracle.error_estimate);
  j["extrapolated"] = r.oracle.extrapolated;
  j["levels_used"] = r.oracle.levels_used;
  j["reason"] = r.reason;
  return j;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "spec,params,closed_form,closed_numeric,oracle_value,method,n_used,abs_err,tail_bound,pass";

/// Writes the reports in manifest order. Output bytes depend only on the
/// reports (no timings).
inline void emit(const std::vector<EvalReport>& reports, Format format, std::ostream& sink) {
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(detail::to_json(r));
      sink << arr.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      sink << kCsvHeader << '\n';
      for (const auto& r : reports) {
        sink << detail::csv_field(std::string(family_name(r.spec))) << ',' << detail::csv_field(params_text(r.spec))
             << ',' << detail::csv_field(r.closed_form_text()) << ','
             << (r.closed_form ? detail::num(r.closed_numeric) : "") << ',' << detail::num(r.oracle.value) << ','
             << to_string(r.oracle.method) << ',' << r.oracle.n_used << ',' << detail::num(r.abs_err) << ','
             << detail::tail_text(r) << ',' << (r.pass ? "true" : "false") << '\n';
      }
      break;
    case Format::Text:
      for (const auto& r : reports) {
        sink << (r.pass ? "PASS " : "FAIL ") << to_string(r.spec) << "  [" << to_string(r.oracle.method)
             << " n=" << r.oracle.n_used << "]\n"
             << "  closed  " << (r.closed_form ? r.closed_form_text() + " = " + detail::num(r.closed_numeric) : "none")
             << "\n  oracle  " << detail::num(r.oracle.value) << "\n  abs_err " << r.abs_err.str(6)
             << "  tol " << detail::tol_text(r.tolerance) << "  tail " << (r.oracle.tail_bound ? r.oracle.tail_bound->str(6) : "none")
             << (r.oracle.extrapolated ? "  extrapolated, est " + r.oracle.error_estimate.str(6) : "") << '\n';
        if (!r.reason.empty()) sink << "  reason  " << r.reason << '\n';
      }
      {
        const auto s = summarize(reports);
        sink << s.passed << "/" << s.total << " passed\n";
      }
      break;
  }
  sink.flush();
  if (!sink) throw std::runtime_error("emit: write to output sink failed");
}

}  // namespace tornzeta
