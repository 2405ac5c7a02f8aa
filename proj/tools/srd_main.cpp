#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lib/matrix_file.hpp"
#include "lib/suites.hpp"
#include "srd/srd.hpp"

namespace {

using nlohmann::json;
using namespace srd;

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Common {
  std::string output;
  std::string format = "json";
};

struct Inputs {
  std::string rho;
  std::string sigma;
  std::string channel;
  std::string state;
  double alpha = 2.0;
  std::string kind = "srd";
  std::string route = "kraus";
  std::vector<std::string> tolerances;
  std::uint64_t seed = 1;
  int trials = 0;
  int dims = 6;
  int restarts = -1;
  std::string suite;
  bool alpha_given = false;
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("tolerance must be KEY=VALUE, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(value) || value < 0.0)
      throw ParseError("tolerance '" + key + "' needs a non-negative number, got '" + text + "'");
    out[key] = value;
  }
  return out;
}

double tolerance_or(const Inputs& in, const std::string& key, double fallback) {
  const auto t = parse_tolerances(in.tolerances);
  for (const auto& [k, v] : t)
    if (k != key) throw ParseError("unknown tolerance '" + k + "' (expected '" + key + "')");
  const auto it = t.find(key);
  return it == t.end() ? fallback : it->second;
}

json divergence_json(const DivergenceValue& v) {
  return {{"value", v.infinite ? json("inf") : io::number(v.value)}, {"support_case", to_string(v.support_case)}};
}

ConditionalOptions conditional_options(const Inputs& in) {
  ConditionalOptions o;
  o.seed = in.seed;
  if (in.restarts >= 0) o.restarts = in.restarts;
  return o;
}

json cmd_divergence(const Inputs& in) {
  const DensityMatrix rho = io::to_density(io::read_matrix_file(in.rho));
  const io::MatrixFile sf = io::read_matrix_file(in.sigma);
  const PositiveOperator sigma = io::to_positive(sf);
  if (in.kind == "qtilde") {
    const double q = q_tilde(rho, sigma, RenyiOrder(in.alpha));
    return {{"kind", in.kind}, {"alpha", in.alpha}, {"value", io::number(q)}};
  }
  DivergenceValue v;
  if (in.kind == "srd")
    v = srd::srd(rho, sigma, in.alpha);
  else if (in.kind == "rre")
    v = rre(rho, sigma, in.alpha);
  else if (in.kind == "qre")
    v = qre(rho, sigma);
  else if (in.kind == "dmax")
    v = d_max(rho, sigma);
  else
    throw ParseError("unknown divergence kind '" + in.kind + "'");
  json out = divergence_json(v);
  out["kind"] = in.kind;
  if (in.kind == "srd" || in.kind == "rre") out["alpha"] = in.alpha;
  return out;
}

json cmd_equality(const Inputs& in) {
  const DensityMatrix rho = io::to_density(io::read_matrix_file(in.rho));
  const DensityMatrix sigma = io::to_density(io::read_matrix_file(in.sigma));
  const QuantumChannel ch = io::to_channel(io::read_matrix_file(in.channel));
  AdjointRoute route = AdjointRoute::kraus;
  if (in.route == "stinespring")
    route = AdjointRoute::stinespring;
  else if (in.route != "kraus")
    throw ParseError("unknown route '" + in.route + "'");
  const double eq_tol = tolerance_or(in, "eq", tol::kEquality);
  const EqualityCertificate c = equality_residual(rho, sigma, ch, RenyiOrder(in.alpha), eq_tol, route);
  const DpiReport d = dpi_check(rho, sigma, ch, in.alpha);
  return {{"alpha", in.alpha},
          {"gap", io::number(d.gap)},
          {"lhs", io::number(d.lhs.value)},
          {"rhs", io::number(d.rhs.value)},
          {"residual", io::number(c.residual)},
          {"threshold", eq_tol},
          {"verdict", verdict_string(c)}};
}

json cmd_recover(const Inputs& in) {
  const PositiveOperator sigma = io::to_positive(io::read_matrix_file(in.sigma));
  const QuantumChannel ch = io::to_channel(io::read_matrix_file(in.channel));
  const RecoveryMap r = petz_recovery(sigma, ch);
  json out{{"recovery", io::channel_json(r.channel)}};
  if (!in.rho.empty()) {
    const DensityMatrix rho = io::to_density(io::read_matrix_file(in.rho));
    out["recovery_error"] = io::number(recovery_error(rho, DensityMatrix(sigma), ch));
  }
  return out;
}

json cmd_sufficiency(const Inputs& in) {
  const DensityMatrix rho = io::to_density(io::read_matrix_file(in.rho));
  const DensityMatrix sigma = io::to_density(io::read_matrix_file(in.sigma));
  const QuantumChannel ch = io::to_channel(io::read_matrix_file(in.channel));
  const double eq_tol = tolerance_or(in, "eq", tol::kEquality);
  const double err = recovery_error(rho, sigma, ch);
  return {{"recovery_error", io::number(err)}, {"threshold", eq_tol}, {"sufficient", err <= eq_tol}};
}

json cmd_conditional(const Inputs& in) {
  const BipartiteState rho = io::to_bipartite(io::read_matrix_file(in.state));
  const ConditionalResult r = conditional_renyi(rho, in.alpha, conditional_options(in));
  return {{"alpha", in.alpha},
          {"value", io::number(r.value)},
          {"iterations", r.iterations},
          {"stationarity", io::number(r.stationarity)},
          {"converged", r.converged},
          {"optimizer", io::state_json(r.optimizer)}};
}

json cmd_araki_lieb(const Inputs& in) {
  const BipartiteState rho = io::to_bipartite(io::read_matrix_file(in.state));
  const ArakiLiebReport r = araki_lieb_renyi(rho, in.alpha, conditional_options(in));
  return {{"alpha", in.alpha},
          {"beta", io::number(r.beta)},
          {"lower", io::number(r.lower)},
          {"value", io::number(r.value)},
          {"upper", io::number(r.upper)},
          {"saturation_residual", io::number(r.saturation_residual)},
          {"holds", r.value >= r.lower - 2e-6 && r.value <= r.upper + 2e-6}};
}

json cmd_eof(const Inputs& in) {
  const BipartiteState rho = io::to_bipartite(io::read_matrix_file(in.state));
  ReofOptions o;
  o.seed = in.seed;
  if (in.restarts >= 0) o.restarts = in.restarts;
  const ReofResult r = reof_minimize(rho, in.alpha, o);
  json out{{"alpha", in.alpha},
           {"value", io::number(r.value)},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"ensemble_size", r.ensemble.states.size()}};
  if (in.alpha > 1.0) out["lower_bound"] = io::number(reof_lower_bound(rho, in.alpha, conditional_options(in)));
  if (in.alpha == 1.0) out["lower_bound"] = io::number(eof_lower_bound(rho));
  return out;
}

json cmd_entanglement_fidelity(const Inputs& in) {
  const DensityMatrix rho = io::to_density(io::read_matrix_file(in.rho));
  const QuantumChannel ch = io::to_channel(io::read_matrix_file(in.channel));
  const FeCheck c = fe_equality_check(rho, ch);
  return {{"entanglement_fidelity", io::number(entanglement_fidelity(rho, ch))},
          {"bound_gap", io::number(c.bound_gap)},
          {"is_pure", c.is_pure}};
}

void emit(const json& doc, const Common& common) {
  if (common.output.empty())
    std::cout << doc.dump(2) << '\n';
  else
    io::write_json(doc, common.output);
}

int run_suite_command(const Inputs& in, const Common& common, const std::string& name) {
  suites::SuiteConfig cfg;
  cfg.name = name;
  cfg.seed = in.seed;
  cfg.trials = in.trials;
  cfg.max_dim = in.dims;
  if (in.alpha_given) cfg.alpha = in.alpha;
  cfg.tolerances = parse_tolerances(in.tolerances);
  const suites::SuiteReport report = suites::run_suite(cfg);
  emit(suites::to_json(report), common);
  return report.passed() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sandwiched Renyi divergence toolkit"};
  app.set_version_flag("--version", std::string(srd::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  Inputs in;
  app.add_option("--output", common.output, "Write the JSON result to PATH");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json"}));

  const auto add_alpha = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--alpha", in.alpha, "Renyi order");
    if (required) opt->required();
  };
  const auto add_file = [&](CLI::App* sub, const char* flag, std::string& target, bool required = true) {
    auto* opt = sub->add_option(flag, target, "Matrix file");
    if (required) opt->required();
  };
  const auto add_tolerance = [&](CLI::App* sub) {
    sub->add_option("--tolerance", in.tolerances, "Override a tolerance, KEY=VAL");
  };

  auto* div = app.add_subcommand("divergence", "Evaluate a divergence between two operators");
  add_file(div, "--rho", in.rho);
  add_file(div, "--sigma", in.sigma);
  add_alpha(div, false);
  div->add_option("--kind", in.kind, "srd | rre | qre | dmax | qtilde")
      ->check(CLI::IsMember({"srd", "rre", "qre", "dmax", "qtilde"}));

  auto* eq = app.add_subcommand("equality", "Equality certificate for the data-processing inequality");
  add_file(eq, "--rho", in.rho);
  add_file(eq, "--sigma", in.sigma);
  add_file(eq, "--channel", in.channel);
  add_alpha(eq, true);
  eq->add_option("--route", in.route, "kraus | stinespring")->check(CLI::IsMember({"kraus", "stinespring"}));
  add_tolerance(eq);

  auto* rec = app.add_subcommand("recover", "Build the Petz recovery channel");
  add_file(rec, "--sigma", in.sigma);
  add_file(rec, "--channel", in.channel);
  add_file(rec, "--rho", in.rho, false);

  auto* suf = app.add_subcommand("sufficiency", "Test whether the Petz map recovers rho");
  add_file(suf, "--rho", in.rho);
  add_file(suf, "--sigma", in.sigma);
  add_file(suf, "--channel", in.channel);
  add_tolerance(suf);

  auto* cond = app.add_subcommand("conditional-entropy", "Sandwiched conditional Renyi entropy S(A|B)");
  add_file(cond, "--state", in.state);
  add_alpha(cond, true);
  cond->add_option("--seed", in.seed);
  cond->add_option("--restarts", in.restarts);

  auto* al = app.add_subcommand("araki-lieb", "Renyi Araki-Lieb sandwich");
  add_file(al, "--state", in.state);
  add_alpha(al, true);
  al->add_option("--seed", in.seed);
  al->add_option("--restarts", in.restarts);

  auto* eof = app.add_subcommand("eof", "Renyi entanglement of formation upper estimate");
  add_file(eof, "--state", in.state);
  add_alpha(eof, false);
  eof->add_option("--seed", in.seed);
  eof->add_option("--restarts", in.restarts);

  auto* fe = app.add_subcommand("entanglement-fidelity", "Entanglement fidelity and its fidelity bound");
  add_file(fe, "--rho", in.rho);
  add_file(fe, "--channel", in.channel);

  auto* suite = app.add_subcommand("suite", "Run a seeded property suite");
  suite->add_option("name", in.suite, "Suite name")->required();
  suite->add_option("--seed", in.seed);
  suite->add_option("--trials", in.trials)->check(CLI::NonNegativeNumber);
  suite->add_option("--dims", in.dims, "Largest random dimension")->check(CLI::Range(2, 16));
  suite->add_option("--alpha", in.alpha, "Restrict the suite to one order");
  add_tolerance(suite);

  auto* vs = app.add_subcommand("violation-search", "Search for two-qubit DPI violations under a partial trace");
  vs->add_option("--alpha", in.alpha, "Renyi order in (0, 1)")->required();
  vs->add_option("--seed", in.seed);
  vs->add_option("--trials", in.trials)->check(CLI::NonNegativeNumber);
  add_tolerance(vs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    for (auto* sub : app.get_subcommands()) in.alpha_given = sub->count("--alpha") > 0;
    if (suite->parsed()) return run_suite_command(in, common, in.suite);
    if (vs->parsed()) return run_suite_command(in, common, "dpi-violation-below-half");

    json out;
    if (div->parsed())
      out = cmd_divergence(in);
    else if (eq->parsed())
      out = cmd_equality(in);
    else if (rec->parsed())
      out = cmd_recover(in);
    else if (suf->parsed())
      out = cmd_sufficiency(in);
    else if (cond->parsed())
      out = cmd_conditional(in);
    else if (al->parsed())
      out = cmd_araki_lieb(in);
    else if (eof->parsed())
      out = cmd_eof(in);
    else if (fe->parsed())
      out = cmd_entanglement_fidelity(in);
    emit(out, common);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
