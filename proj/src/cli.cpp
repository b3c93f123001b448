#include "tailforge/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "tailforge/bounds.hpp"
#include "tailforge/codingapps.hpp"
#include "tailforge/hyptest.hpp"
#include "tailforge/table.hpp"
#include "tailforge/validate.hpp"

namespace tailforge {

namespace {

using json = nlohmann::json;

struct Common {
  std::string config;
  std::string out;
  std::string format = "csv";
  int precision = 6;
  std::optional<std::uint64_t> seed;
  std::string units = "nats";

  OutputOptions options() const {
    OutputOptions o;
    o.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    o.precision = precision;
    o.units = units == "bits" ? Units::bits : Units::nats;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--precision", c.precision, "fixed decimals, 1..15")->check(CLI::Range(1, 15));
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--units", c.units, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("config: " + path + ": " + e.what());
  }
}

std::vector<double> number_array(const json& j, const std::string& field) {
  if (!j.contains(field)) throw DomainError("config: missing field '" + field + "'");
  const json& a = j.at(field);
  if (!a.is_array()) throw DomainError("config: field '" + field + "' must be an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw DomainError("config: field '" + field + "' row " + std::to_string(i) + ": not a number");
    v.push_back(a[i].get<double>());
  }
  return v;
}

double number_field(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_number()) throw DomainError("config: field '" + field + "' must be a number");
  return j.at(field).get<double>();
}

void emit(const Table& t, const Common& c, std::ostream& out) {
  OutputOptions o = c.options();
  if (c.out.empty()) {
    write_table(out, t, o);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw DomainError("cannot write " + c.out);
  write_table(f, t, o);
}

double exp_value(const ExponentValue& e) { return e.is_infinite() ? kInf : e.value(); }
double ext_value(const ExtendedReal& e) { return e.is_infinite() ? kInf : e.value(); }

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      int a = std::stoi(spec.substr(0, dots)), b = std::stoi(spec.substr(dots + 2));
      for (int q = a; q <= b; ++q) out.push_back(q);
    } else {
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    }
  } catch (const std::exception&) {
    throw DomainError("cannot parse integer list '" + spec + "'");
  }
  if (out.empty()) throw DomainError("empty integer list '" + spec + "'");
  return out;
}

// ---- exponents

struct ExponentsArgs {
  std::vector<double> gammas{0.25};
  std::string grid = "0:1:11";
};

int cmd_exponents(const ExponentsArgs& a, const Common& c, std::ostream& out) {
  std::vector<double> gammas = a.gammas, deltas = parse_grid(a.grid);
  if (!c.config.empty()) {
    json j = load_config(c.config);
    if (j.contains("gamma")) gammas = number_array(j, "gamma");
    if (j.contains("delta")) deltas = number_array(j, "delta");
    if (j.contains("grid")) deltas = parse_grid(j.at("grid").get<std::string>());
  }
  Table t({{"gamma"},
           {"delta"},
           {"azuma", true},
           {"cor2_f", true},
           {"thm2", true},
           {"thm3", true},
           {"cor4", true},
           {"pinsker", true},
           {"refined_pinsker", true},
           {"cor3", true},
           {"chung_lu", true}});
  for (double g : gammas)
    for (double d : deltas)
      t.add_row({g, d, exp_value(azuma_exponent(d)), exp_value(cor2_exponent(d)), exp_value(thm2_exponent(g, d)),
                 exp_value(thm3_exponent(g, d)), exp_value(cor4_exponent(g, d)),
                 exp_value(pinsker_loosened_exponent(g, d)), exp_value(refined_pinsker_exponent(d)),
                 exp_value(cor3_exponent(g, d)), exp_value(chung_lu_exponent(g, d))});
  emit(t, c, out);
  return kExitOk;
}

// ---- pairwise

struct PairwiseArgs {
  std::vector<std::string> qary;
  std::vector<int> m{2, 4, 6, 8, 10};
  bool tilde = false;
};

DmcChannel channel_from_json(const json& j) {
  std::vector<double> p0 = number_array(j, "p0"), p1 = number_array(j, "p1");
  std::vector<std::size_t> sym;
  if (j.contains("sym")) {
    std::vector<double> s = number_array(j, "sym");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] != std::floor(s[i]))
        throw DomainError("config: field 'sym' row " + std::to_string(i) + ": not a nonnegative integer");
      sym.push_back(static_cast<std::size_t>(s[i]));
    }
  } else {
    for (std::size_t i = 0; i < p0.size(); ++i) sym.push_back(p0.size() - 1 - i);
  }
  std::vector<std::string> outputs;
  if (j.contains("outputs"))
    for (const auto& o : j.at("outputs")) outputs.push_back(o.is_string() ? o.get<std::string>() : o.dump());
  for (std::size_t i = 0; i < p0.size() && i < p1.size(); ++i)
    if (!(p0[i] > 0.0) || !(p1[i] > 0.0))
      throw DomainError("config: row " + std::to_string(i) + ": transition probabilities must be positive");
  return DmcChannel(outputs, FinitePmf(p0), FinitePmf(p1), sym);
}

int cmd_pairwise(const PairwiseArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  struct Entry {
    std::string label;
    double p;
    DmcChannel ch;
  };
  std::vector<Entry> chans;
  if (!a.qary.empty()) {
    double p;
    try {
      p = std::stod(a.qary.at(1));
    } catch (const std::exception&) {
      throw DomainError("--qary: cannot parse p");
    }
    for (int q : parse_int_list(a.qary.at(0))) chans.push_back({std::to_string(q), p, q_ary_channel(q, p)});
  } else if (!c.config.empty()) {
    json j = load_config(c.config);
    if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i)
        chans.push_back({j[i].value("name", "channel" + std::to_string(i)), std::nan(""), channel_from_json(j[i])});
    } else {
      chans.push_back({j.value("name", std::string("channel")), std::nan(""), channel_from_json(j)});
    }
  } else {
    throw DomainError("pairwise: give --qary Q P or --config");
  }
  for (int m : a.m)
    if (m < 2 || m % 2) throw DomainError("pairwise: each m must be even and >= 2");

  std::vector<Column> cols{{"channel"}, {"p"}, {"ZB"}, {"Z1"}};
  for (int m : a.m) cols.push_back({"Z2_m" + std::to_string(m)});
  if (a.tilde)
    for (int m : a.m) cols.push_back({"Z2tilde_m" + std::to_string(m)});
  Table t(cols);
  bool ceiling = false;
  for (const auto& e : chans) {
    std::vector<Cell> row{e.label, e.p, bhattacharyya(e.ch).base, z1(e.ch).base};
    for (int m : a.m) {
      PairwiseBound b = z2m(e.ch, m);
      ceiling |= b.hit_ceiling;
      row.push_back(b.base);
    }
    if (a.tilde)
      for (int m : a.m) {
        PairwiseBound b = z2m_tilde(e.ch, m);
        ceiling |= b.hit_ceiling;
        row.push_back(b.base);
      }
    t.add_row(row);
  }
  emit(t, c, out);
  if (ceiling) {
    err << "error: optimiser reached its bracket ceiling; reported values are bounded-interval infima\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// ---- hypothesis

struct HypArgs {
  std::vector<double> p1{0.4, 0.6};
  std::vector<double> p2{0.6, 0.4};
  double prior1 = 0.5;
  double lambda_bar = 0.0, lambda_under = 0.0;
  std::string law = "published";
  std::optional<double> fisher_theta;
  std::vector<double> offsets{-0.01, 0.01};
};

int cmd_hypothesis(HypArgs a, const Common& c, std::ostream& out) {
  if (!c.config.empty()) {
    json j = load_config(c.config);
    a.p1 = number_array(j, "p1");
    a.p2 = number_array(j, "p2");
    a.prior1 = number_field(j, "prior1", a.prior1);
    a.lambda_bar = number_field(j, "lambda_bar", a.lambda_bar);
    a.lambda_under = number_field(j, "lambda_under", a.lambda_under);
  }
  VarianceLaw law = a.law == "own" ? VarianceLaw::own : VarianceLaw::published;
  if (a.fisher_theta) {
    FisherReport r = fisher_limit_check(bernoulli_family(), *a.fisher_theta, a.offsets, law);
    Table t({{"theta"}, {"theta_prime"}, {"fisher"}, {"chernoff", true}, {"e_l", true}, {"e_l_azuma", true},
             {"chernoff_ratio"}, {"e_l_ratio"}, {"target"}});
    for (const auto& row : r.rows)
      t.add_row({row.theta, row.theta_prime, r.fisher, row.chernoff, row.e_l, row.e_l_azuma, row.chernoff_ratio, row.e_l_ratio,
                 r.target});
    emit(t, c, out);
    return kExitOk;
  }
  HypothesisPair pair(FinitePmf(a.p1), FinitePmf(a.p2), a.prior1);
  Thresholds th{a.lambda_bar, a.lambda_under};
  MartingaleParams mp = martingale_params(pair, th, law);
  LowerBoundPair ref = refined_lower_bounds(pair, th, law);
  LowerBoundPair az = azuma_lower_bounds(pair, th, law);
  ExactExponents ex = exact_exponents(pair, th);
  Table t({{"d12", true},
           {"d21", true},
           {"chernoff", true},
           {"gamma1"},
           {"gamma2"},
           {"refined_error_or_erasure", true},
           {"refined_error_only", true},
           {"azuma_error_or_erasure", true},
           {"azuma_error_only", true},
           {"exact_error_or_erasure", true},
           {"exact_error_only", true}});
  t.add_row({pair.d12(), pair.d21(), chernoff_information(pair), mp.gamma1, mp.gamma2, ext_value(ref.error_or_erasure),
             ext_value(ref.error_only), ext_value(az.error_or_erasure), ext_value(az.error_only),
             ext_value(ex.error_or_erasure), ext_value(ex.error_only)});
  emit(t, c, out);
  return kExitOk;
}

// ---- ldpc

struct LdpcArgs {
  int n = 1000;
  std::vector<double> lambda{0.0, 0.0, 1.0};        // (3,6)-regular
  std::vector<double> rho{0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  std::vector<double> alpha{0.05};
};

int cmd_ldpc(LdpcArgs a, const Common& c, std::ostream& out) {
  if (!c.config.empty()) {
    json j = load_config(c.config);
    a.n = static_cast<int>(number_field(j, "n", a.n));
    a.lambda = number_array(j, "lambda");
    a.rho = number_array(j, "rho");
    if (j.contains("alpha")) a.alpha = number_array(j, "alpha");
  }
  LdpcEnsemble ens{a.n, a.lambda, a.rho};
  Table t({{"n"}, {"alpha"}, {"design_rate"}, {"avg_right_degree"}, {"beta"}, {"refined"}, {"azuma"}});
  for (double al : a.alpha) {
    LdpcBound b = ldpc_cycles_bound(ens, al);
    t.add_row({static_cast<long long>(a.n), al, b.design_rate, b.avg_right_degree, b.beta, b.refined.clipped(),
               b.azuma.clipped()});
  }
  emit(t, c, out);
  return kExitOk;
}

// ---- ofdm

struct OfdmArgs {
  int n = 64;
  int M = 4;
  std::vector<double> alpha{4.0};
  int check = 0;
  int inner = 8;
};

int cmd_ofdm(const OfdmArgs& a, const Common& c, std::ostream& out) {
  OfdmModel model{a.n, a.M};
  if (a.check > 0) {
    if (!c.seed) throw DomainError("ofdm --check requires --seed");
    OfdmCheckReport r = ofdm_martingale_check(model, a.check, *c.seed, a.inner);
    Table t({{"n"}, {"M"}, {"trials"}, {"jump_bound"}, {"max_increment"}, {"violations"}, {"second_moment"},
             {"second_moment_se"}, {"variance_target"}, {"trig_identity"}});
    t.add_row({static_cast<long long>(a.n), static_cast<long long>(a.M), static_cast<long long>(r.trials),
               r.jump_bound, r.max_increment, static_cast<long long>(r.violations), r.second_moment,
               r.second_moment_se, r.variance_target, std::string(r.trig_identity_ok ? "ok" : "fail")});
    emit(t, c, out);
    return r.violations == 0 && r.trig_identity_ok ? kExitOk : kExitNumerical;
  }
  Table t({{"n"}, {"M"}, {"alpha"}, {"azuma"}, {"refined"}, {"refined_limit"}});
  for (double al : a.alpha) {
    OfdmBounds b = ofdm_cf_bounds(model, al);
    t.add_row({static_cast<long long>(a.n), static_cast<long long>(a.M), al, b.azuma.clipped(), b.refined.clipped(),
               b.refined_limit.clipped()});
  }
  emit(t, c, out);
  return kExitOk;
}

// ---- simulate

struct SimArgs {
  std::string law = "twopoint";
  double eps = 0.01, d = 1.0, x = 0.5, p = 0.5, threshold = 0.0;
  int k = 20;
  int n = 20;
  bool two_sided = false;
  std::uint64_t trials = 10000;
};

int cmd_simulate(const SimArgs& a, const Common& c, std::ostream& out) {
  if (!c.seed) throw DomainError("simulate requires --seed");
  std::optional<IncrementLaw> law;
  TailQuery q{a.n, a.threshold, a.two_sided ? Sidedness::two_sided : Sidedness::one_sided};
  Example3Result ex3;
  bool twopoint = a.law == "twopoint";
  if (twopoint) {
    law = TwoPointIncrement{a.d, a.eps}.law();
    q = {a.k, a.k * a.x, Sidedness::one_sided};
    ex3 = example3_comparison(a.eps, a.d, a.x, a.k);
  } else if (a.law == "pm1") {
    law = symmetric_pm_one();
  } else if (a.law == "bernoulli") {
    law = centered_bernoulli(a.p);
  } else {
    throw DomainError("simulate: unknown law '" + a.law + "'");
  }
  TailResult exact = exact_tail_dp(*law, q);
  MonteCarloResult mc = monte_carlo_tail(*law, q, a.trials, *c.seed);
  std::vector<NamedBound> bounds = analytic_tail_bounds(*law, q);
  std::vector<Column> cols{{"law"}, {"n"}, {"threshold"}, {"exact"}, {"mc_estimate"}, {"ci_lo"}, {"ci_hi"}};
  std::vector<Cell> row{a.law, static_cast<long long>(q.n), q.threshold, exact.probability, mc.estimate, mc.ci.lo,
                        mc.ci.hi};
  if (twopoint) {
    cols.push_back({"example3_azuma"});
    cols.push_back({"example3_thm2"});
    row.push_back(ex3.azuma);
    row.push_back(ex3.thm2);
  }
  for (const auto& b : bounds) {
    cols.push_back({b.name});
    row.push_back(b.value);
  }
  Table t(cols);
  t.add_row(row);
  emit(t, c, out);
  return kExitOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      double a = std::stod(parts[0]), b = std::stod(parts[1]);
      int cnt = std::stoi(parts[2]);
      if (cnt < 1) throw DomainError("grid: count must be positive");
      if (cnt == 1) return {a};
      std::vector<double> v;
      for (int i = 0; i < cnt; ++i) v.push_back(i + 1 == cnt ? b : a + (b - a) * i / (cnt - 1));
      return v;
    }
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw DomainError("grid: expected START:STOP:COUNT, got '" + spec + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tailforge: refined martingale concentration bounds and their applications", "tailforge"};
  app.require_subcommand(1);

  Common common;

  ExponentsArgs ea;
  auto* s_exp = app.add_subcommand("exponents", "exponent grid over (gamma, delta)");
  add_common(s_exp, common);
  s_exp->add_option("--gamma", ea.gammas, "gamma values")->delimiter(',');
  s_exp->add_option("--grid", ea.grid, "delta grid START:STOP:COUNT");

  PairwiseArgs pa;
  auto* s_pw = app.add_subcommand("pairwise", "pairwise error bounds for a binary-input DMC");
  add_common(s_pw, common);
  s_pw->add_option("--qary", pa.qary, "Q (list or A..B) and p")->expected(2);
  s_pw->add_option("--m", pa.m, "even moment orders")->delimiter(',');
  s_pw->add_flag("--tilde", pa.tilde, "add the closed-form suboptimal variant");

  HypArgs ha;
  auto* s_hyp = app.add_subcommand("hypothesis", "binary hypothesis-testing exponents");
  add_common(s_hyp, common);
  s_hyp->add_option("--p1", ha.p1)->delimiter(',');
  s_hyp->add_option("--p2", ha.p2)->delimiter(',');
  s_hyp->add_option("--prior1", ha.prior1);
  s_hyp->add_option("--lambda-bar", ha.lambda_bar);
  s_hyp->add_option("--lambda-under", ha.lambda_under);
  s_hyp->add_option("--variance-law", ha.law)->check(CLI::IsMember({"published", "own"}));
  s_hyp->add_option("--fisher", ha.fisher_theta, "Bernoulli family at theta");
  s_hyp->add_option("--offsets", ha.offsets)->delimiter(',');

  LdpcArgs la;
  auto* s_ldpc = app.add_subcommand("ldpc", "cycle-count concentration for an LDPC ensemble");
  add_common(s_ldpc, common);
  s_ldpc->add_option("--n", la.n);
  s_ldpc->add_option("--lambda", la.lambda, "edge-perspective variable degrees, from degree 1")->delimiter(',');
  s_ldpc->add_option("--rho", la.rho, "edge-perspective check degrees, from degree 1")->delimiter(',');
  s_ldpc->add_option("--alpha", la.alpha)->delimiter(',');

  OfdmArgs oa;
  auto* s_ofdm = app.add_subcommand("ofdm", "OFDM crest-factor concentration");
  add_common(s_ofdm, common);
  s_ofdm->add_option("--n", oa.n, "subcarriers");
  s_ofdm->add_option("--M", oa.M, "PSK order");
  s_ofdm->add_option("--alpha", oa.alpha)->delimiter(',');
  s_ofdm->add_option("--check", oa.check, "sampled Doob-increment check with this many trials");
  s_ofdm->add_option("--inner", oa.inner);

  SimArgs sa;
  auto* s_sim = app.add_subcommand("simulate", "exact and Monte Carlo tails for i.i.d. increments");
  add_common(s_sim, common);
  s_sim->add_option("--law", sa.law)->check(CLI::IsMember({"twopoint", "pm1", "bernoulli"}));
  s_sim->add_option("--eps", sa.eps);
  s_sim->add_option("--d", sa.d);
  s_sim->add_option("--x", sa.x);
  s_sim->add_option("--k", sa.k);
  s_sim->add_option("--p", sa.p);
  s_sim->add_option("--n", sa.n);
  s_sim->add_option("--threshold", sa.threshold);
  s_sim->add_flag("--two-sided", sa.two_sided);
  s_sim->add_option("--trials", sa.trials);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*s_exp) return cmd_exponents(ea, common, out);
    if (*s_pw) return cmd_pairwise(pa, common, out, err);
    if (*s_hyp) return cmd_hypothesis(ha, common, out);
    if (*s_ldpc) return cmd_ldpc(la, common, out);
    if (*s_ofdm) return cmd_ofdm(oa, common, out);
    if (*s_sim) return cmd_simulate(sa, common, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace tailforge
