#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "matrix_file.hpp"
#include "srd/srd.hpp"

namespace srd::suites {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kAlphaGrid{0.5, 0.75, 1.5, 2.0, 3.0};

Index uniform_int(Rng& rng, Index lo, Index hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<double> random_probability(Index n, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(PositiveOperator::from_hermitian_product(tensor(a.matrix(), b.matrix())));
}

QuantumChannel random_channel_bounded(Rng& rng, Index max_dim, Index max_kraus) {
  const Index din = uniform_int(rng, 2, max_dim);
  const Index dout = uniform_int(rng, 2, max_dim);
  const Index kmin = (din + dout - 1) / dout;
  const Index k = uniform_int(rng, kmin, std::max(kmin, max_kraus));
  return random_channel(din, dout, k, rng);
}

struct Instance {
  DensityMatrix rho;
  DensityMatrix sigma;
  QuantumChannel channel;
};

// A pair that is recoverable from its image: unitary channels or a partial
// trace over a common tensor factor.
Instance constructed_equality(Rng& rng, Index max_dim, bool unitary) {
  if (unitary) {
    const Index d = uniform_int(rng, 2, max_dim);
    return {random_density(d, uniform_int(rng, 1, d), rng), random_density(d, d, rng),
            unitary_channel(random_unitary(d, rng))};
  }
  const Index da = uniform_int(rng, 2, std::max<Index>(2, max_dim / 2));
  const Index db = uniform_int(rng, 2, std::max<Index>(2, max_dim / da));
  const DensityMatrix tau = random_density(db, uniform_int(rng, 1, db), rng);
  const DensityMatrix rho_a = random_density(da, uniform_int(rng, 1, da), rng);
  const DensityMatrix sigma_a = random_density(da, da, rng);
  return {product_state(rho_a, tau), product_state(sigma_a, tau), partial_trace_channel(da, db, Subsystem::A)};
}

Instance generic_instance(Rng& rng, Index max_dim) {
  QuantumChannel ch = random_channel_bounded(rng, max_dim, 4);
  const Index d = ch.dim_in();
  return {random_density(d, uniform_int(rng, 1, d), rng), random_density(d, d, rng), std::move(ch)};
}

class Context {
 public:
  Context(const SuiteConfig& config, SuiteReport& report) : config_(config), report_(report) {}

  double tol(const std::string& key) const { return report_.tolerances.at(key); }
  Rng rng(int trial) const { return Rng(config_.seed).substream(static_cast<std::uint64_t>(trial)); }
  int trials() const { return report_.trials; }
  Index max_dim() const { return std::max(2, config_.max_dim); }
  const std::optional<double>& alpha() const { return config_.alpha; }
  std::vector<double> alphas(const std::vector<double>& fallback) const {
    return config_.alpha ? std::vector<double>{*config_.alpha} : fallback;
  }
  json& summary() { return report_.summary; }

  void fail(int trial, Quantities quantities, Quantities residuals) {
    report_.failures.push_back({trial, std::move(quantities), std::move(residuals)});
  }

 private:
  const SuiteConfig& config_;
  SuiteReport& report_;
};

std::string alpha_key(double a) {
  json j = a;
  return "alpha=" + j.dump();
}

void dpi_holds(Context& ctx) {
  const auto alphas = ctx.alphas(kAlphaGrid);
  std::map<std::string, double> min_gap;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const Instance in = generic_instance(rng, ctx.max_dim());
    for (double a : alphas) {
      const DpiReport rep = dpi_check(in.rho, in.sigma, in.channel, a);
      auto& m = min_gap.try_emplace(alpha_key(a), kInf).first->second;
      m = std::min(m, rep.gap);
      if (rep.gap < -ctx.tol("dpi"))
        ctx.fail(t,
                 {{"alpha", a},
                  {"lhs", rep.lhs.value},
                  {"rhs", rep.rhs.value},
                  {"dim_in", static_cast<double>(in.channel.dim_in())},
                  {"dim_out", static_cast<double>(in.channel.dim_out())}},
                 {{"gap", rep.gap}});
    }
  }
  for (const auto& [k, v] : min_gap) ctx.summary()["min_gap"][k] = io::number(v);
}

void equality_certificate(Context& ctx) {
  const auto alphas = ctx.alphas(kAlphaGrid);
  double max_constructed_residual = 0.0;
  double max_constructed_gap = 0.0;
  double min_generic_residual = kInf;
  int misclassified = 0;
  int generic_skipped = 0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const double a = alphas[static_cast<std::size_t>(t) % alphas.size()];
    const RenyiOrder order(a);

    const Instance eq = constructed_equality(rng, ctx.max_dim(), t % 2 == 0);
    const EqualityCertificate c = equality_residual(eq.rho, eq.sigma, eq.channel, order, ctx.tol("eq"));
    const DpiReport d = dpi_check(eq.rho, eq.sigma, eq.channel, a);
    max_constructed_residual = std::max(max_constructed_residual, c.residual);
    max_constructed_gap = std::max(max_constructed_gap, std::abs(d.gap));
    const bool eq_misclassified = c.equal != (std::abs(d.gap) <= ctx.tol("cross"));
    misclassified += eq_misclassified;
    if (!c.equal || std::abs(d.gap) > ctx.tol("cross") || eq_misclassified)
      ctx.fail(t, {{"alpha", a}, {"constructed", 1.0}, {"unitary", t % 2 == 0 ? 1.0 : 0.0}},
               {{"residual", c.residual}, {"gap", d.gap}});

    // Generic instance with a clearly positive gap.
    std::optional<Instance> gen;
    DpiReport gd;
    for (int attempt = 0; attempt < 50 && !gen; ++attempt) {
      Instance cand = generic_instance(rng, ctx.max_dim());
      gd = dpi_check(cand.rho, cand.sigma, cand.channel, a);
      if (gd.gap > ctx.tol("generic_gap")) gen = std::move(cand);
    }
    if (!gen) {
      ++generic_skipped;
      continue;
    }
    const EqualityCertificate g = equality_residual(gen->rho, gen->sigma, gen->channel, order, ctx.tol("eq"));
    min_generic_residual = std::min(min_generic_residual, g.residual);
    const bool gen_misclassified = g.equal != (std::abs(gd.gap) <= ctx.tol("cross"));
    misclassified += gen_misclassified;
    if (g.equal || g.residual <= ctx.tol("generic_residual") || gen_misclassified)
      ctx.fail(t, {{"alpha", a}, {"constructed", 0.0}}, {{"residual", g.residual}, {"gap", gd.gap}});
  }
  ctx.summary()["max_constructed_residual"] = max_constructed_residual;
  ctx.summary()["max_constructed_abs_gap"] = max_constructed_gap;
  ctx.summary()["min_generic_residual"] = io::number(min_generic_residual);
  ctx.summary()["misclassifications"] = misclassified;
  ctx.summary()["generic_instances_skipped"] = generic_skipped;
  if (generic_skipped > 0) ctx.fail(-1, {{"generic_instances_skipped", generic_skipped}}, {});
}

void stinespring_suite(Context& ctx) {
  const auto alphas = ctx.alphas(kAlphaGrid);
  double max_diff = 0.0;
  double max_dilation = 0.0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const double a = alphas[static_cast<std::size_t>(t) % alphas.size()];
    const Instance in =
        t % 3 == 0 ? constructed_equality(rng, 4, true) : generic_instance(rng, std::min<Index>(4, ctx.max_dim()));
    const RenyiOrder order(a);
    const EqualityCertificate k = equality_residual(in.rho, in.sigma, in.channel, order, ctx.tol("eq"));
    const EqualityCertificate s =
        equality_residual(in.rho, in.sigma, in.channel, order, ctx.tol("eq"), AdjointRoute::stinespring);
    const double diff = std::max(std::abs(k.residual - s.residual),
                                 max_abs(k.rhs_operator.matrix() - s.rhs_operator.matrix()));
    const StinespringDilation dil = stinespring(in.channel);
    const Index n = dil.unitary.rows();
    const double unitarity = max_abs(dil.unitary.adjoint() * dil.unitary - ComplexMatrix::Identity(n, n));
    const double round_trip = max_abs(dil.apply(in.rho.matrix()) - in.channel.apply(in.rho.matrix()));
    max_diff = std::max(max_diff, diff);
    max_dilation = std::max({max_dilation, unitarity, round_trip});
    if (diff > ctx.tol("stinespring") || unitarity > ctx.tol("stinespring") || round_trip > ctx.tol("stinespring"))
      ctx.fail(t, {{"alpha", a}, {"kraus_residual", k.residual}, {"stinespring_residual", s.residual}},
               {{"route_difference", diff}, {"unitarity", unitarity}, {"round_trip", round_trip}});
  }
  ctx.summary()["max_route_difference"] = max_diff;
  ctx.summary()["max_dilation_error"] = max_dilation;
}

void variational(Context& ctx) {
  const auto alphas = ctx.alphas({0.75, 2.0});
  constexpr int kCandidates = 200;
  double worst_identity = 0.0;
  double worst_excess = -kInf;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const Index d = uniform_int(rng, 2, ctx.max_dim());
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    for (double a : alphas) {
      const RenyiOrder order(a);
      const PositiveOperator hh = h_hat(rho, sigma, order);
      const double q = q_tilde(rho, sigma, order);
      const double fh = f_alpha(hh, rho, sigma, order);
      worst_identity = std::max(worst_identity, std::abs(fh - q));
      if (std::abs(fh - q) > ctx.tol("variational"))
        ctx.fail(t, {{"alpha", a}, {"q_tilde", q}, {"f_hat", fh}}, {{"identity", std::abs(fh - q)}});

      const ComplexMatrix root = matrix_power_on_support(hh, 0.5);
      const double sign = a > 1.0 ? 1.0 : -1.0;  // sup for alpha > 1, inf below
      for (int c = 0; c < kCandidates; ++c) {
        ComplexMatrix h;
        if (c % 2 == 0) {
          const double scale = std::exp(rng.normal());
          h = scale * random_density(d, d, rng).matrix();
        } else {
          const double eps = std::pow(10.0, -1.0 - static_cast<double>(c % 6) / 2.0);
          const ComplexMatrix y = root + eps * gaussian_matrix(d, d, rng);
          h = y * y.adjoint();
        }
        const double fc = f_alpha(PositiveOperator::from_hermitian_product(h), rho, sigma, order);
        const double excess = sign * (fc - fh);
        worst_excess = std::max(worst_excess, excess);
        if (excess > ctx.tol("variational"))
          ctx.fail(t, {{"alpha", a}, {"candidate", c}, {"f_candidate", fc}, {"f_hat", fh}}, {{"excess", excess}});
      }
    }
  }
  ctx.summary()["max_identity_error"] = worst_identity;
  ctx.summary()["max_candidate_excess"] = worst_excess;
}

void petz_sufficiency(Context& ctx) {
  int sufficient = 0;
  int insufficient = 0;
  int disagreements = 0;
  double max_sufficient_gap = 0.0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const int family = t % 4;
    const Instance in = family < 2 ? constructed_equality(rng, ctx.max_dim(), family == 0)
                                   : generic_instance(rng, ctx.max_dim());
    const double err = recovery_error(in.rho, in.sigma, in.channel);
    const bool suff = err <= ctx.tol("eq");
    const EqualityCertificate c = equality_residual(in.rho, in.sigma, in.channel, RenyiOrder(2.0), ctx.tol("eq"));
    (suff ? sufficient : insufficient) += 1;
    if (suff != c.equal) {
      ++disagreements;
      ctx.fail(t, {{"family", family}, {"sufficient", suff}, {"equal", c.equal}},
               {{"recovery_error", err}, {"residual", c.residual}});
    }
    if (!suff) continue;
    for (double a : {1.5, 2.0, 3.0}) {
      const double gap = dpi_check(in.rho, in.sigma, in.channel, a).gap;
      max_sufficient_gap = std::max(max_sufficient_gap, std::abs(gap));
      if (std::abs(gap) > ctx.tol("petz_gap"))
        ctx.fail(t, {{"family", family}, {"alpha", a}}, {{"gap", gap}, {"recovery_error", err}});
    }
  }
  ctx.summary()["sufficient"] = sufficient;
  ctx.summary()["insufficient"] = insufficient;
  ctx.summary()["disagreements"] = disagreements;
  ctx.summary()["max_abs_gap_when_sufficient"] = max_sufficient_gap;
}

void fidelity_measurement(Context& ctx) {
  double worst_gap = 0.0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    DensityMatrix rho = random_density(2, 2, rng);
    DensityMatrix sigma = random_density(2, 2, rng);
    while (max_abs(rho.matrix() * sigma.matrix() - sigma.matrix() * rho.matrix()) < 1e-2) {
      rho = random_density(2, 2, rng);
      sigma = random_density(2, 2, rng);
    }
    const FidelityMeasurement m = optimal_fidelity_measurement(rho, sigma);
    const QuantumChannel meas = measurement_channel(m.povm);
    const double gap = dpi_check(rho, sigma, meas, 0.5).gap;
    const double err = recovery_error(rho, sigma, meas);
    const bool suff = err <= ctx.tol("eq");
    worst_gap = std::max(worst_gap, std::abs(gap));
    if (std::abs(gap) > ctx.tol("measurement_gap") || suff)
      ctx.fail(t, {{"fidelity", m.quantum_fidelity}, {"classical_fidelity", m.classical_fidelity}, {"sufficient", suff}},
               {{"gap", gap}, {"recovery_error", err}});
  }
  ctx.summary()["max_abs_gap"] = worst_gap;
}

ConditionalOptions conditional_options(const Context& ctx, int trial) {
  ConditionalOptions o;
  o.seed = static_cast<std::uint64_t>(trial) * 7919u + 17u;
  (void)ctx;
  return o;
}

void duality(Context& ctx) {
  const auto alphas = ctx.alphas({2.0, 3.0, 0.75});
  double worst = 0.0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const BipartiteState rho(random_density(4, uniform_int(rng, 1, 4), rng), 2, 2);
    for (double a : alphas) {
      try {
        const DualityReport rep = duality_gap(rho, a, conditional_options(ctx, t));
        worst = std::max(worst, rep.gap);
        if (rep.gap > ctx.tol("duality"))
          ctx.fail(t, {{"alpha", a}, {"beta", rep.beta}, {"s_alpha_ab", rep.s_alpha_ab}, {"s_beta_ac", rep.s_beta_ac}},
                   {{"gap", rep.gap}});
      } catch (const OptimizerNonConvergence& e) {
        ctx.fail(t, {{"alpha", a}, {"best_value", e.best_value()}}, {{"non_convergence", 1.0}});
      }
    }
  }
  ctx.summary()["max_gap"] = worst;
}

SaturatingSpec random_saturating_spec(Rng& rng, Index r_a, Index r_ab) {
  return {r_a, r_ab, random_probability(r_ab, rng), random_probability(r_a, rng)};
}

void araki_lieb(Context& ctx) {
  const auto alphas = ctx.alphas({0.5, 0.75, 2.0, 3.0});
  double worst_violation = -kInf;
  double worst_saturation = 0.0;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const Index db = t % 2 == 0 ? 2 : 3;
    const BipartiteState rho(random_density(2 * db, uniform_int(rng, 1, 2 * db), rng), 2, db);
    for (double a : alphas) {
      try {
        const ArakiLiebReport rep = araki_lieb_renyi(rho, a, conditional_options(ctx, t));
        const double violation = std::max(rep.lower - rep.value, rep.value - rep.upper);
        worst_violation = std::max(worst_violation, violation);
        if (violation > ctx.tol("araki_lieb_slack"))
          ctx.fail(t, {{"alpha", a}, {"lower", rep.lower}, {"value", rep.value}, {"upper", rep.upper}},
                   {{"violation", violation}});
      } catch (const OptimizerNonConvergence& e) {
        ctx.fail(t, {{"alpha", a}, {"best_value", e.best_value()}}, {{"non_convergence", 1.0}});
      }
    }
    if (t % 5 != 0) continue;
    // Saturating construction at (alpha, beta) = (2, 2/3).
    const BipartiteState sat = saturating_state(random_saturating_spec(rng, 2, 1 + (t / 5) % 2), 2, 4);
    const double s2 = renyi_entropy(sat.marginal_a(), 2.0);
    const double value = conditional_renyi(sat, 2.0 / 3.0, conditional_options(ctx, t)).value;
    const double residual = std::abs(value + s2);
    const SaturationCheck check = check_saturation_conditions(sat);
    worst_saturation = std::max(worst_saturation, residual);
    if (residual > ctx.tol("saturation") || !check.holds)
      ctx.fail(t, {{"s_alpha_a", s2}, {"conditional_beta", value}, {"conditions_hold", check.holds}},
               {{"saturation", residual}});
  }
  ctx.summary()["max_sandwich_violation"] = io::number(worst_violation);
  ctx.summary()["max_saturation_residual"] = worst_saturation;
}

void reof(Context& ctx) {
  const double a = ctx.alpha().value_or(2.0);
  const double beta = a / (2.0 * a - 1.0);
  double worst_sat = 0.0;
  double worst_maxent = 0.0;
  double worst_product = 0.0;
  ReofOptions ropt;
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    ropt.seed = static_cast<std::uint64_t>(t) + 101u;

    const BipartiteState sat = saturating_state(random_saturating_spec(rng, 2, 2), 2, 4);
    const double bound = -conditional_renyi(sat, beta, conditional_options(ctx, t)).value;
    const double upper = reof_minimize(sat, a, ropt).value;
    worst_sat = std::max(worst_sat, std::abs(upper - bound));
    if (std::abs(upper - bound) > ctx.tol("reof"))
      ctx.fail(t, {{"case", 0}, {"reof", upper}, {"minus_conditional", bound}}, {{"difference", upper - bound}});

    ComplexVector phi = ComplexVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix local = tensor(random_unitary(2, rng), random_unitary(2, rng));
    const BipartiteState maxent(PureState(local * phi).density(), 2, 2);
    const double e_max = reof_minimize(maxent, a, ropt).value;
    worst_maxent = std::max(worst_maxent, std::abs(e_max - 1.0));
    if (std::abs(e_max - 1.0) > ctx.tol("reof_maxent"))
      ctx.fail(t, {{"case", 1}, {"reof", e_max}}, {{"difference", e_max - 1.0}});

    const BipartiteState prod(product_state(random_density(2, 2, rng), random_density(2, 2, rng)), 2, 2);
    const double e_prod = reof_minimize(prod, a, ropt).value;
    worst_product = std::max(worst_product, std::abs(e_prod));
    if (std::abs(e_prod) > ctx.tol("reof_product")) ctx.fail(t, {{"case", 2}, {"reof", e_prod}}, {{"value", e_prod}});
  }
  ctx.summary()["max_saturating_difference"] = worst_sat;
  ctx.summary()["max_maximally_entangled_error"] = worst_maxent;
  ctx.summary()["max_product_value"] = worst_product;
}

void entanglement_fidelity_suite(Context& ctx) {
  double max_pure = 0.0;
  double min_mixed = kInf;
  double max_route = 0.0;
  const Index max_d = std::min<Index>(4, ctx.max_dim());
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const Index d = uniform_int(rng, 2, max_d);
    const QuantumChannel ch = random_channel(d, d, uniform_int(rng, 1, 4), rng);
    const DensityMatrix mixed = random_density(d, uniform_int(rng, 2, d), rng);
    const FeCheck m = fe_equality_check(mixed, ch);
    const double route = std::abs(entanglement_fidelity(mixed, ch) - entanglement_fidelity_kraus(mixed, ch));
    min_mixed = std::min(min_mixed, m.bound_gap);
    max_route = std::max(max_route, route);
    if (m.bound_gap <= ctx.tol("fe_mixed") || route > ctx.tol("fe_pure"))
      ctx.fail(t, {{"pure", 0.0}, {"rank", static_cast<double>(mixed.rank())}},
               {{"bound_gap", m.bound_gap}, {"route_difference", route}});
    if (t >= ctx.trials() / 2) continue;
    const DensityMatrix pure = random_pure(d, rng).density();
    const FeCheck p = fe_equality_check(pure, ch);
    max_pure = std::max(max_pure, std::abs(p.bound_gap));
    if (std::abs(p.bound_gap) > ctx.tol("fe_pure") || !p.is_pure)
      ctx.fail(t, {{"pure", 1.0}}, {{"bound_gap", p.bound_gap}});
  }
  ctx.summary()["max_pure_abs_gap"] = max_pure;
  ctx.summary()["min_mixed_gap"] = io::number(min_mixed);
  ctx.summary()["max_route_difference"] = max_route;
}

void classical_reduction(Context& ctx) {
  const auto alphas = ctx.alphas(kAlphaGrid);
  double worst = 0.0;
  double worst_continuity = 0.0;
  const auto scalar_renyi = [](const std::vector<double>& p, const std::vector<double>& q, double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) continue;
      if (q[i] == 0.0) {
        if (a > 1.0) return kInf;
        continue;
      }
      s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
    }
    return std::log2(s) / (a - 1.0);
  };
  const auto scalar_kl = [](const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) continue;
      if (q[i] == 0.0) return kInf;
      s += p[i] * std::log2(p[i] / q[i]);
    }
    return s;
  };
  const auto compare = [&](int t, const char* what, double a, const DivergenceValue& v, double expected) {
    const bool both_inf = v.infinite && std::isinf(expected);
    const double err = both_inf ? 0.0 : (v.infinite || std::isinf(expected) ? kInf : std::abs(v.value - expected));
    worst = std::max(worst, err);
    if (err > ctx.tol("classical"))
      ctx.fail(t, {{std::string("kind_") + what, 1.0}, {"alpha", a}, {"expected", expected},
                   {"value", v.infinite ? kInf : v.value}},
               {{"error", err}});
  };
  for (int t = 0; t < ctx.trials(); ++t) {
    Rng rng = ctx.rng(t);
    const Index d = uniform_int(rng, 2, ctx.max_dim());
    std::vector<double> p = random_probability(d, rng);
    std::vector<double> q = random_probability(d, rng);
    const auto renormalize = [](std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      for (double& x : v) x /= s;
    };
    if (t % 3 == 1) {
      p[0] = 0.0;
      renormalize(p);
    } else if (t % 3 == 2) {
      q[0] = 0.0;
      renormalize(q);
    }
    const ComplexMatrix u = random_unitary(d, rng);
    const auto diag = [&](const std::vector<double>& v) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      for (Index i = 0; i < d; ++i) m(i, i) = v[static_cast<std::size_t>(i)];
      return DensityMatrix(PositiveOperator::from_hermitian_product(u * m * u.adjoint()));
    };
    const DensityMatrix rho = diag(p);
    const DensityMatrix sigma = diag(q);
    for (double a : alphas) {
      compare(t, "srd", a, srd(rho, sigma, a), scalar_renyi(p, q, a));
      compare(t, "rre", a, rre(rho, sigma, a), scalar_renyi(p, q, a));
    }
    compare(t, "qre", 1.0, qre(rho, sigma), scalar_kl(p, q));

    // Continuity at alpha = 1 on a non-commuting full-rank pair.
    const DensityMatrix r = random_density(d, d, rng);
    const DensityMatrix s = random_density(d, d, rng);
    const double rel = qre(r, s).value;
    for (double a : {1.0 - 1e-4, 1.0 + 1e-4}) {
      const double err = std::abs(srd(r, s, a).value - rel);
      worst_continuity = std::max(worst_continuity, err);
      if (err > ctx.tol("continuity")) ctx.fail(t, {{"alpha", a}, {"qre", rel}}, {{"continuity", err}});
    }
  }
  ctx.summary()["max_oracle_error"] = worst;
  ctx.summary()["max_continuity_error"] = worst_continuity;
}

void violation_search(Context& ctx, std::uint64_t seed) {
  const double a = ctx.alpha().value_or(0.3);
  const ViolationSearchResult r = dpi_violation_search(a, ctx.trials(), seed, 200);
  ctx.summary()["alpha"] = a;
  ctx.summary()["best_gap"] = io::number(r.gap);
  ctx.summary()["trials_evaluated"] = r.trials_evaluated;
  ctx.summary()["rho"] = io::state_json(BipartiteState(r.rho, 2, 2));
  ctx.summary()["sigma"] = io::state_json(BipartiteState(r.sigma, 2, 2));
  if (a < 0.5) {
    ctx.summary()["expectation"] = "violation";
    if (!(r.gap < -ctx.tol("violation"))) ctx.fail(0, {{"alpha", a}}, {{"best_gap", r.gap}});
  } else {
    ctx.summary()["expectation"] = "no-violation";
    if (r.gap < -ctx.tol("control")) ctx.fail(0, {{"alpha", a}}, {{"best_gap", r.gap}});
  }
}

struct SuiteEntry {
  std::string name;
  int default_trials;
  std::map<std::string, double> tolerances;
  std::function<void(Context&, std::uint64_t)> run;
};

template <void (*F)(Context&)>
void ignore_seed(Context& ctx, std::uint64_t) {
  F(ctx);
}

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"dpi-holds", 500, {{"dpi", 1e-9}}, ignore_seed<dpi_holds>},
      {"equality-certificate",
       200,
       {{"eq", 1e-7}, {"cross", 1e-6}, {"generic_residual", 1e-4}, {"generic_gap", 1e-3}},
       ignore_seed<equality_certificate>},
      {"stinespring", 100, {{"eq", 1e-7}, {"stinespring", 1e-9}}, ignore_seed<stinespring_suite>},
      {"variational", 50, {{"variational", 1e-9}}, ignore_seed<variational>},
      {"petz-sufficiency", 200, {{"eq", 1e-7}, {"petz_gap", 1e-8}}, ignore_seed<petz_sufficiency>},
      {"fidelity-measurement", 20, {{"eq", 1e-7}, {"measurement_gap", 1e-6}}, ignore_seed<fidelity_measurement>},
      {"duality", 50, {{"duality", 2e-6}}, ignore_seed<duality>},
      {"araki-lieb", 300, {{"araki_lieb_slack", 2e-6}, {"saturation", 1e-5}}, ignore_seed<araki_lieb>},
      {"reof", 20, {{"reof", 1e-4}, {"reof_maxent", 1e-6}, {"reof_product", 1e-8}}, ignore_seed<reof>},
      {"entanglement-fidelity", 200, {{"fe_pure", 1e-10}, {"fe_mixed", 1e-4}}, ignore_seed<entanglement_fidelity_suite>},
      {"classical-reduction", 100, {{"classical", 1e-10}, {"continuity", 1e-3}}, ignore_seed<classical_reduction>},
      {"dpi-violation-below-half", 20000, {{"violation", 1e-4}, {"control", 1e-9}}, violation_search},
  };
  return entries;
}

const SuiteEntry& find_suite(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw UnknownSuite("unknown suite '" + name + "'");
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

std::map<std::string, double> default_tolerances(const std::string& name) { return find_suite(name).tolerances; }

SuiteReport run_suite(const SuiteConfig& config) {
  const SuiteEntry& entry = find_suite(config.name);
  if (config.trials < 0) throw InvalidArgument("trials must be non-negative");
  if (config.max_dim < 2) throw InvalidArgument("max_dim must be at least 2");
  SuiteReport report;
  report.name = entry.name;
  report.seed = config.seed;
  report.trials = config.trials > 0 ? config.trials : entry.default_trials;
  report.tolerances = entry.tolerances;
  report.tool_version = kVersion;
  for (const auto& [key, value] : config.tolerances) {
    auto it = report.tolerances.find(key);
    if (it == report.tolerances.end())
      throw ParseError("suite '" + entry.name + "' has no tolerance '" + key + "'");
    it->second = value;
  }
  const auto start = std::chrono::steady_clock::now();
  Context ctx(config, report);
  entry.run(ctx, config.seed);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const SuiteReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    json q = json::object();
    json r = json::object();
    for (const auto& [k, v] : f.quantities) q[k] = io::number(v);
    for (const auto& [k, v] : f.residuals) r[k] = io::number(v);
    failures.push_back({{"trial", f.trial}, {"quantities", q}, {"residuals", r}});
  }
  json tolerances = json::object();
  for (const auto& [k, v] : report.tolerances) tolerances[k] = v;
  return {{"suite", report.name},
          {"seed", report.seed},
          {"trials", report.trials},
          {"tolerances", tolerances},
          {"passed", report.passed()},
          {"failure_count", report.failures.size()},
          {"failures", failures},
          {"summary", report.summary},
          {"wall_time_seconds", report.wall_time_seconds},
          {"tool_version", report.tool_version}};
}

}  // namespace srd::suites
