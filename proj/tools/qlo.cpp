// Command-line front end: loads a monoid from a config file or preset and runs
// one computation, printing text, CSV or JSON.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlo/config.hpp"
#include "qlo/errors.hpp"
#include "qlo/fock.hpp"
#include "qlo/growth.hpp"
#include "qlo/parallel.hpp"
#include "qlo/sampling.hpp"
#include "qlo/thermo.hpp"
#include "qlo/verify.hpp"

namespace {

using namespace qlo;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;
constexpr int kExitVerification = 5;

enum class Format { Text, Csv, Json };

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Round-trips through the 15-digit form so the JSON writer emits the same digits.
Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt(x).c_str(), nullptr);
}

std::string rat(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Rational parse_rational(const std::string& text, const char* flag) {
  auto fail = [&]() -> Rational {
    throw ValidationError(std::string("--") + flag + ": expected an integer, decimal or num/den, got '" + text + "'");
  };
  if (text.empty()) return fail();
  try {
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      const std::size_t frac = text.size() - dot - 1;
      if (digits.empty() || digits.find_first_not_of("+-0123456789") != std::string::npos) return fail();
      BigInt den = 1;
      for (std::size_t i = 0; i < frac; ++i) den *= 10;
      Rational r(BigInt(digits), den);
      r.canonicalize();
      return r;
    }
    Rational r(text);
    if (r.get_den() == 0) return fail();
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

struct Options {
  std::string config;
  std::string preset;
  std::string format = "text";
  std::string cutoff = "10";
  double tol = 1e-12;
  double beta = 0.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 20240601;
};

GraphPtr load_graph(const Options& o) {
  if (!o.config.empty()) return to_graph(parse_config_file(o.config));
  return presets::parse(o.preset);
}

Format format_of(const Options& o) {
  if (o.format == "csv") return Format::Csv;
  if (o.format == "json") return Format::Json;
  return Format::Text;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_growth(const Options& o) {
  auto g = load_graph(o);
  const auto table = growth_table(*g, parse_rational(o.cutoff, "cutoff"));
  switch (format_of(o)) {
    case Format::Json: {
      Json rows = Json::array();
      for (const auto& r : table.rows) rows.push_back({{"lambda", rat(r.lambda)}, {"a_n", r.count.get_str()}});
      print_json({{"cutoff", rat(table.cutoff)}, {"total", table.total().get_str()}, {"rows", rows}});
      break;
    }
    default:
      std::cout << "lambda_num,lambda_den,a_n\n";
      for (const auto& r : table.rows)
        std::cout << r.lambda.get_num() << "," << r.lambda.get_den() << "," << r.count << "\n";
  }
  return 0;
}

void print_series(const WeightedPolynomial& p, Format f, const char* column) {
  const auto scale = p.scale();
  if (f == Format::Json) {
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) terms.push_back({{"exponent", rat(make_rational(k, scale))}, {column, c.get_str()}});
    print_json({{"polynomial", to_string(p)}, {"terms", terms}});
  } else if (f == Format::Csv) {
    std::cout << "exponent_num,exponent_den," << column << "\n";
    for (const auto& [k, c] : p.terms()) {
      const Rational e = make_rational(k, scale);
      std::cout << e.get_num() << "," << e.get_den() << "," << c << "\n";
    }
  } else {
    std::cout << to_string(p) << "\n";
  }
}

int cmd_clique_poly(const Options& o) {
  print_series(clique_polynomial(*load_graph(o)), format_of(o), "coefficient");
  return 0;
}

int cmd_invert(const Options& o) {
  auto g = load_graph(o);
  const auto series = invert_series(clique_polynomial(*g), parse_rational(o.cutoff, "cutoff"));
  print_series(series, format_of(o), "coefficient");
  return 0;
}

int cmd_beta_c(const Options& o) {
  ThermoContext ctx(load_graph(o), o.tol);
  const auto crit = beta_critical_detail(ctx, o.tol);
  switch (format_of(o)) {
    case Format::Json:
      print_json({{"beta_c", num(crit.beta)}, {"error_bound", num(crit.error_bound)}, {"exact_zero", crit.exact_zero}});
      break;
    case Format::Csv:
      std::cout << "beta_c,error_bound,exact_zero\n"
                << fmt(crit.beta) << "," << fmt(crit.error_bound) << "," << (crit.exact_zero ? 1 : 0) << "\n";
      break;
    case Format::Text:
      std::cout << fmt(crit.beta) << "\n";
  }
  return 0;
}

int cmd_roots(const Options& o) {
  ThermoContext ctx(load_graph(o), o.tol);
  const auto roots = clique_roots_in_unit_interval(ctx, o.tol);
  if (format_of(o) == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : roots)
      arr.push_back({{"t", num(r.t)},
                     {"t_error", num(r.t_error)},
                     {"beta", num(r.beta)},
                     {"multiplicity", r.multiplicity},
                     {"possibly_multiple", r.possibly_multiple},
                     {"subcritical_candidate", r.subcritical_candidate}});
    print_json({{"roots", arr}});
    return 0;
  }
  std::cout << "t,t_error,beta,multiplicity,possibly_multiple,subcritical_candidate\n";
  for (const auto& r : roots)
    std::cout << fmt(r.t) << "," << fmt(r.t_error) << "," << fmt(r.beta) << "," << r.multiplicity << ","
              << (r.possibly_multiple ? 1 : 0) << "," << (r.subcritical_candidate ? 1 : 0) << "\n";
  return 0;
}

int cmd_limsup(const Options& o) {
  ThermoContext ctx(load_graph(o), o.tol);
  const Rational w = parse_rational(o.cutoff, "cutoff");
  const double est = beta_critical_limsup_estimate(ctx, w);
  switch (format_of(o)) {
    case Format::Json:
      print_json({{"cutoff", rat(w)}, {"estimate", num(est)}, {"beta_c", num(ctx.beta_c())}});
      break;
    case Format::Csv:
      std::cout << "cutoff_num,cutoff_den,estimate,beta_c\n"
                << w.get_num() << "," << w.get_den() << "," << fmt(est) << "," << fmt(ctx.beta_c()) << "\n";
      break;
    case Format::Text:
      std::cout << fmt(est) << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  auto g = load_graph(o);
  VerifyOptions vo;
  vo.seed = o.seed;
  const auto report = run_invariant_suite(g, parse_rational(o.cutoff, "cutoff"), vo);
  switch (format_of(o)) {
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& r : report.results) arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      print_json({{"all_passed", report.all_passed()}, {"invariants", arr}});
      break;
    }
    case Format::Csv:
      std::cout << "name,passed,detail\n";
      for (const auto& r : report.results)
        std::cout << r.name << "," << (r.passed ? 1 : 0) << ",\"" << r.detail << "\"\n";
      break;
    case Format::Text:
      for (const auto& r : report.results)
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  }
  if (!report.all_passed()) {
    std::cerr << "violated invariants:";
    for (const auto& r : report.results)
      if (!r.passed) std::cerr << " " << r.name;
    std::cerr << "\n";
    return kExitVerification;
  }
  return 0;
}

// Truncated Gibbs state on the vacuum projection and each L_s L_s^*.
int cmd_gibbs(const Options& o) {
  ThermoContext ctx(load_graph(o), o.tol);
  const auto& g = ctx.graph();
  const Rational w = parse_rational(o.cutoff, "cutoff");
  const auto rep = build_rep(g, w);
  const double beta = o.beta;
  const bool convergent = beta > ctx.beta_c() + ctx.critical().error_bound;
  const double z_trunc = partition_function_truncated(*g, beta, w);
  const double z_closed = convergent ? partition_function_closed(ctx, beta) : NAN;
  const double bound = convergent ? gibbs_tail_bound(ctx, rep, beta, Rational(0)) : NAN;

  struct Row {
    std::string monomial;
    double numeric;
    double exact;
  };
  std::vector<Row> rows;
  rows.push_back({"Q_e", gibbs_numeric(rep, vacuum_projection(rep), beta).real(), convergent ? 1.0 / z_closed : NAN});
  for (Generator s = 0; s < static_cast<Generator>(g->size()); ++s) {
    const Trace t = Trace::letter(g, s);
    rows.push_back({g->name(s), gibbs_numeric(rep, range_projection(rep, t), beta).real(),
                    gibbs_value(t, t).evaluate(beta)});
  }

  switch (format_of(o)) {
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& r : rows) arr.push_back({{"monomial", r.monomial}, {"numeric", num(r.numeric)}, {"exact", num(r.exact)}});
      print_json({{"beta", num(beta)},
                  {"cutoff", rat(w)},
                  {"dimension", rep.dim()},
                  {"z_truncated", num(z_trunc)},
                  {"z_closed", num(z_closed)},
                  {"tail_bound", num(bound)},
                  {"values", arr}});
      break;
    }
    default:
      if (format_of(o) == Format::Text)
        std::cout << "# beta=" << fmt(beta) << " cutoff=" << rat(w) << " dim=" << rep.dim()
                  << " z_truncated=" << fmt(z_trunc) << " z_closed=" << fmt(z_closed) << " tail_bound=" << fmt(bound)
                  << "\n";
      std::cout << "monomial,numeric,exact\n";
      for (const auto& r : rows) std::cout << r.monomial << "," << fmt(r.numeric) << "," << fmt(r.exact) << "\n";
  }
  return 0;
}

// Symbolic check on random quadruples, numeric check on a subset of them.
int cmd_kms_check(const Options& o) {
  ThermoContext ctx(load_graph(o), o.tol);
  const auto& g = ctx.graph();
  const Rational w = parse_rational(o.cutoff, "cutoff");
  const auto symbolic = kms_sampled(g, o.seed, o.samples, 4);

  const auto rep = build_rep(g, w);
  Rng rng(o.seed);
  const std::size_t numeric_samples = std::min<std::size_t>(o.samples, 200);
  double max_residual = 0.0, max_bound = 0.0;
  std::size_t numeric_failures = 0;
  for (std::size_t i = 0; i < numeric_samples; ++i) {
    const Trace p1 = random_trace(g, rng, 2), q1 = random_trace(g, rng, 2);
    const Trace p2 = random_trace(g, rng, 2), q2 = random_trace(g, rng, 2);
    const auto r = kms_numeric_check(ctx, rep, p1, q1, p2, q2, o.beta);
    max_residual = std::max(max_residual, r.residual);
    max_bound = std::max(max_bound, r.bound);
    if (!r.within_bound()) ++numeric_failures;
  }
  const bool ok = symbolic.ok() && numeric_failures == 0;

  switch (format_of(o)) {
    case Format::Json:
      print_json({{"symbolic_checked", symbolic.checked},
                  {"symbolic_failures", symbolic.failures},
                  {"first_failure", symbolic.first_failure},
                  {"numeric_checked", numeric_samples},
                  {"numeric_failures", numeric_failures},
                  {"max_residual", num(max_residual)},
                  {"max_bound", num(max_bound)},
                  {"passed", ok}});
      break;
    default:
      std::cout << "symbolic_checked,symbolic_failures,numeric_checked,numeric_failures,max_residual,max_bound\n"
                << symbolic.checked << "," << symbolic.failures << "," << numeric_samples << "," << numeric_failures
                << "," << fmt(max_residual) << "," << fmt(max_bound) << "\n";
  }
  if (!ok) {
    if (!symbolic.ok()) std::cerr << "kms_identity violated: " << symbolic.first_failure << "\n";
    if (numeric_failures) std::cerr << "kms_numeric residual exceeded its bound\n";
    return kExitVerification;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth, critical temperature and KMS states of right-angled Artin monoids"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", o.config, "monoid config (JSON)")->check(CLI::ExistingFile);
    auto* pre = sub->add_option("--preset", o.preset, "free:n | abelian:k | path:n | cycle:n");
    cfg->excludes(pre);
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
  };
  auto add_cutoff = [&](CLI::App* sub) {
    sub->add_option("--cutoff", o.cutoff, "weight cutoff W (integer, decimal or num/den)")->capture_default_str();
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "absolute tolerance on beta_c")->check(CLI::PositiveNumber)->capture_default_str();
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    CLI::App* app;
  };
  std::vector<Command> commands = {
      {"growth", "growth table a_n for weights <= W", cmd_growth, nullptr},
      {"clique-poly", "clique polynomial", cmd_clique_poly, nullptr},
      {"beta-c", "critical inverse temperature", cmd_beta_c, nullptr},
      {"roots", "roots of the clique polynomial in (0, 1]", cmd_roots, nullptr},
      {"invert", "power series of 1/C up to W", cmd_invert, nullptr},
      {"verify", "full invariant suite at cutoff W", cmd_verify, nullptr},
      {"gibbs", "truncated Gibbs state values", cmd_gibbs, nullptr},
      {"kms-check", "symbolic and numeric KMS checks", cmd_kms_check, nullptr},
      {"limsup", "finite-W lim sup estimate of beta_c", cmd_limsup, nullptr},
  };
  for (auto& c : commands) {
    c.app = app.add_subcommand(c.name, c.help);
    add_common(c.app);
  }
  auto find = [&](const char* name) { return app.get_subcommand(name); };
  for (const char* n : {"growth", "invert", "verify", "gibbs", "kms-check", "limsup"}) add_cutoff(find(n));
  for (const char* n : {"beta-c", "roots", "gibbs", "kms-check", "limsup"}) add_tol(find(n));
  find("gibbs")->add_option("--beta", o.beta, "inverse temperature")->required();
  find("kms-check")->add_option("--beta", o.beta, "inverse temperature")->required();
  find("kms-check")->add_option("--samples", o.samples, "random quadruples")->capture_default_str();
  for (const char* n : {"verify", "kms-check"})
    find(n)->add_option("--seed", o.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    if (o.config.empty() && o.preset.empty()) {
      std::cerr << "error: one of --config or --preset is required\n";
      return kExitUsage;
    }
    try {
      parallel::configure_from_env();
      return c.run(o);
    } catch (const ValidationError& e) {
      std::cerr << "validation error: " << e.what() << "\n";
      return kExitValidation;
    } catch (const IdentityViolation& e) {
      std::cerr << "identity violated: " << e.what() << "\n";
      return kExitVerification;
    } catch (const ComputationError& e) {
      std::cerr << "computation error: " << e.what() << "\n";
      return kExitComputation;
    } catch (const std::exception& e) {
      std::cerr << "computation error: " << e.what() << "\n";
      return kExitComputation;
    }
  }
  return kExitUsage;
}
