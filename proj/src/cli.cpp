#include "thorin/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thorin/bernstein.hpp"
#include "thorin/densities.hpp"
#include "thorin/error.hpp"
#include "thorin/mixing.hpp"
#include "thorin/random.hpp"
#include "thorin/recovery.hpp"
#include "thorin/samplers.hpp"
#include "thorin/suites.hpp"

namespace thorin::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kGrammar = R"(thorin-lab: generalized gamma convolutions

  thorin-lab sample  --family <law> --t <mass> --method {wg|cpp|affine|closed|powerjump}
                     [--quantity {gamma|mean}] --n <count> --seed <u64> --steps <int>
  thorin-lab pdf     --family <law> --t <mass> --x <grid> --method {closed|dual-mc|bessel-mc|cr}
                     [--quantity {gamma|mean}] [--n <count>] [--seed <u64>]
  thorin-lab psi     --family <subordinator> --lambda <grid> --t <mass>
  thorin-lab thorin  --target {pareto:m|gammapow:alpha|family:<law>} --grid <grid> --t <float>
  thorin-lab verify  --suite {identities|densities|thorin|all} --n <count> --seed <u64> [--strict]
  thorin-lab catalog [--format {text|json}]

  <law>          point:a | galpha:a | arcsine | uniform | g0shift:mu | zratio:mu | pareto:m |
                 gammapow:a | stable:a | reciprocal(<law>) | table:path.csv
  <subordinator> gamma | cosh | sinh | tanh | besselj:nu | besselk:nu | stablehalf | powerjump:a | <law>
  <grid>         a,b,c | a:b:n (linear, inclusive) | log:a:b:n

Common options: --out <path> (default stdout), --format {csv|json}.
Floats are printed with 17 significant digits. THORINLAB_THREADS caps worker threads.
Exit status: 0 success, 1 usage, 2 domain error, 3 numerical failure,
4 verify --strict with a failing check.
)";

struct Options {
  std::string family;
  std::string target;
  std::string method;
  std::string quantity;
  std::string grid;
  std::string suite = "all";
  std::string format = "csv";
  std::string out_path;
  double t = 1.0;
  bool t_given = false;
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  int steps = kDefaultSteps;
  int iters = 0;
  bool strict = false;
};

// Rows of numbers or strings, written as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      auto arr = Json::array();
      for (const auto& r : rows) {
        Json o;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
        arr.push_back(o);
      }
      os << arr.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ',';
        if (r[i].is_number())
          os << num(r[i].get<double>());
        else if (r[i].is_string())
          os << r[i].get<std::string>();
        else
          os << r[i].dump();
      }
      os << '\n';
    }
  }
};

Json jnum(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    fail(ErrorCode::Domain, "bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.emplace_back(s.substr(start, p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

double parse_after_colon(const std::string& spec, const std::string& head) {
  require(spec.size() > head.size() + 1 && spec[head.size()] == ':', "'" + head + "' needs a parameter");
  return parse_double(std::string_view(spec).substr(head.size() + 1));
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// --- sample -----------------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.n >= 1, "sample: --n must be at least 1");
  require(o.steps >= 1, "sample: --steps must be at least 1");
  const bool mean = o.quantity == "mean";
  std::function<double(RandomStream&)> draw;
  Json diag = Json::object();
  if (o.method == "powerjump") {
    const auto f = SubordinatorFamily::parse(o.family);
    require(f.kind == SubKind::PowerJump, "sample: --method powerjump needs --family powerjump:alpha");
    require(!mean, "sample: power-jump sums have no Dirichlet mean");
    require(o.t > 0.0, "sample: --t must be positive");
    const double alpha = f.param;
    const int steps = o.steps;
    const double t = o.t;
    draw = [alpha, t, steps](RandomStream& r) { return power_jump_sample(r, alpha, t, steps); };
    diag["steps"] = steps;
    diag["is_ggc"] = power_jump_is_ggc(alpha);
  } else {
    auto g = std::make_shared<MixingLaw>(MixingLaw::parse(o.family));
    const double t = o.t;
    require(t > 0.0 && std::isfinite(t), "sample: --t must be positive");
    if (o.method == "wg") {
      auto wg = std::make_shared<WienerGamma>(*g, t, o.steps);
      if (mean)
        draw = [wg](RandomStream& r) { return wg->dirichlet_mean(r); };
      else
        draw = [wg](RandomStream& r) { return wg->sample(r); };
      diag["steps"] = o.steps;
    } else if (o.method == "cpp") {
      require(!mean, "sample: --quantity mean needs --method wg or closed");
      const double horizon = compound_poisson_horizon(*g, t);
      draw = [g, t, horizon](RandomStream& r) { return compound_poisson_sample(r, *g, t, horizon); };
      diag["horizon"] = horizon;
    } else if (o.method == "affine") {
      require(!mean, "sample: --quantity mean needs --method wg or closed");
      const int iters = o.iters > 0 ? o.iters : affine_default_iters(t);
      draw = [g, t, iters](RandomStream& r) { return affine_iterate(r, *g, t, iters); };
      diag["iters"] = iters;
    } else if (o.method == "closed") {
      if (!has_closed_form(*g, t))
        fail(ErrorCode::UnsupportedFamily, "no exact construction for " + g->name() + " at t = " + num(t));
      if (mean)
        draw = [g, t](RandomStream& r) { return closed_form_dirichlet(r, *g, t); };
      else
        draw = [g, t](RandomStream& r) { return closed_form_sample(r, *g, t); };
    } else {
      fail(ErrorCode::Domain, "sample: unknown method '" + o.method + "'");
    }
  }
  const auto batch = generate_batch(o.n, o.seed, o.method, draw);
  if (o.format == "json") {
    auto arr = Json::array();
    for (double v : batch.values) arr.push_back(jnum(v));
    out << arr.dump() << '\n';
  } else {
    out << "value\n";
    for (double v : batch.values) out << num(v) << '\n';
  }
  Json side;
  side["family"] = o.family;
  side["t"] = o.t;
  side["quantity"] = mean ? "mean" : "gamma";
  side["method"] = o.method;
  side["n"] = batch.n;
  side["seed"] = batch.seed;
  side["chunks"] = batch.sub_seeds.size();
  side["threads"] = worker_threads();
  side["wall_time"] = batch.wall_time;
  side["diagnostics"] = diag;
  err << side.dump() << '\n';
  return kOk;
}

// --- pdf --------------------------------------------------------------------

int cmd_pdf(const Options& o, std::ostream& out) {
  const auto g = MixingLaw::parse(o.family);
  const auto xs = parse_grid(o.grid);
  const double t = o.t;
  require(t > 0.0 && std::isfinite(t), "pdf: --t must be positive");
  const std::string quantity = !o.quantity.empty() ? o.quantity : (o.method == "cr" ? "mean" : "gamma");
  Table tab{{"x", "f", "err_est"}, {}};
  auto push = [&](double x, double f, double e) { tab.rows.push_back({jnum(x), jnum(f), jnum(e)}); };

  if (quantity == "mean") {
    if (o.method == "closed") {
      if (!has_closed_mean_density(g, t))
        fail(ErrorCode::UnsupportedFamily, "no closed density of D_t(G) for " + g.name() + " at t = " + num(t));
      for (double x : xs) push(x, dirichlet_mean_density(g, t, x), 0.0);
    } else if (o.method == "cr") {
      require(t <= 1.0, "pdf: --method cr needs t <= 1");
      for (double x : xs) push(x, dirichlet_mean_density_t_le_1(x, t, g), 0.0);
    } else {
      fail(ErrorCode::Domain, "pdf: the density of D_t(G) supports --method closed or cr");
    }
  } else if (quantity == "gamma") {
    // The Monte Carlo estimators evaluate Gamma_t(1/H); H = 1/G gives Gamma_t(G).
    const auto h = MixingLaw::reciprocal(g);
    if (o.method == "closed") {
      if (!has_closed_density(g, t))
        fail(ErrorCode::UnsupportedFamily, "no closed density of Gamma_t(G) for " + g.name() + " at t = " + num(t));
      for (double x : xs) {
        const auto d = density_closed(g, t, x);
        push(x, d.value, d.error);
      }
    } else if (o.method == "dual-mc") {
      const auto d = ggc_density_dual_mc(xs, t, h, dirichlet_mean_draws(h, t, o.n, o.seed, o.steps));
      for (std::size_t i = 0; i < xs.size(); ++i) push(xs[i], d.values[i], d.errors[i]);
    } else if (o.method == "bessel-mc") {
      const auto d = ggc_density_bessel_mc(xs, t, h, ggc_draws(h, t, o.n, o.seed, o.steps));
      for (std::size_t i = 0; i < xs.size(); ++i) push(xs[i], d.values[i], d.errors[i]);
    } else {
      fail(ErrorCode::Domain, "pdf: the density of Gamma_t(G) supports --method closed, dual-mc or bessel-mc");
    }
  } else {
    fail(ErrorCode::Domain, "pdf: unknown quantity '" + quantity + "'");
  }
  tab.write(out, o.format);
  return kOk;
}

// --- psi --------------------------------------------------------------------

int cmd_psi(const Options& o, std::ostream& out) {
  const auto f = SubordinatorFamily::parse(o.family);
  const auto ls = parse_grid(o.grid);
  require(o.t >= 0.0 && std::isfinite(o.t), "psi: --t must be nonnegative");
  const auto b = bernstein(f);
  const std::string source = b.source == BernsteinEval::Source::ClosedForm ? "closed" : "quadrature";
  Table tab{{"lambda", "psi", "laplace", "source", "err_est"}, {}};
  for (double l : ls) {
    const double p = b(l);
    tab.rows.push_back({jnum(l), jnum(p), jnum(std::exp(-o.t * p)), source, jnum(b.accuracy * std::max(1.0, p))});
  }
  tab.write(out, o.format);
  return kOk;
}

// --- thorin -----------------------------------------------------------------

int cmd_thorin(const Options& o, std::ostream& out) {
  const auto xs = parse_grid(o.grid);
  Table tab{{"x", "F", "err_est"}, {}};
  // Nominal tolerance of the quadratures behind the closed recoveries.
  constexpr double kQuadTol = 1e-10;
  if (starts_with(o.target, "pareto")) {
    const double m = parse_after_colon(o.target, "pareto");
    const double theta = o.t_given ? o.t : 1.0;
    for (double x : xs) tab.rows.push_back({jnum(x), jnum(pareto_thorin_cdf(m, x, theta)), jnum(kQuadTol)});
  } else if (starts_with(o.target, "gammapow")) {
    const double alpha = parse_after_colon(o.target, "gammapow");
    require(!o.t_given || o.t == alpha, "thorin: gammapow:alpha recovers at t = alpha");
    for (double x : xs) tab.rows.push_back({jnum(x), jnum(stable_power_thorin_cdf(alpha, x)), jnum(kQuadTol)});
  } else if (starts_with(o.target, "family:")) {
    const auto g = MixingLaw::parse(std::string_view(o.target).substr(7));
    const double t = o.t_given ? o.t : 0.5;
    RecoveredCdf r;
    if (has_closed_mean_density(g, t)) {
      // Support of D_t(G) is the hull of 1/G.
      const auto s = g.support();
      const double lo = s.hi > 0.0 && std::isfinite(s.hi) ? 1.0 / s.hi : 0.0;
      const double hi = s.lo > 0.0 ? 1.0 / s.lo : std::numeric_limits<double>::infinity();
      r = recover_cdf_ratio(xs, t, [&](double x) { return dirichlet_mean_density(g, t, x); }, lo, hi);
    } else {
      r = recover_cdf_ratio(xs, t, dirichlet_mean_draws(g, t, o.n, o.seed, o.steps));
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
      tab.rows.push_back({jnum(xs[i]), jnum(r.values[i]), jnum(r.errors[i])});
  } else {
    fail(ErrorCode::Domain, "thorin: target must be pareto:m, gammapow:alpha or family:<law>");
  }
  tab.write(out, o.format);
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const auto reports = run_suite(o.suite, o.n, o.seed);
  out << reports_to_json(reports).dump(2) << '\n';
  if (o.strict)
    for (const auto& r : reports)
      if (!r.pass) return kChecksFailed;
  return kOk;
}

// --- catalog ----------------------------------------------------------------

struct Entry {
  const char* spec;
  const char* law;
  const char* psi;
  const char* exact;
};

constexpr Entry kMixing[] = {
    {"point:a", "G = a", "log(1 + l/a)", "Gamma_t = gamma_t / a"},
    {"galpha:a", "G_alpha on (0,1), density a sin(pi a)/((1-a) pi) x^{a-1}(1-x)^{a-1} / ((1-x)^{2a} - 2 cos(pi a) x^a (1-x)^a + x^{2a})",
     "E exp(-l Gamma_t) = ((1+l)^a - l^a)^{t/(1-a)}",
     "t = 1-a: Gamma_t = gamma_{1-a} / U^{1/a}, density (a/Gamma(1-a)) x^{-1-a} (1 - e^{-x}); D_t density a x^{-1-a} on [1, inf)"},
    {"arcsine", "G_{1/2}, density 1/(pi sqrt(x(1-x)))", "E exp(-l Gamma_t) = (sqrt(1+l) - sqrt(l))^{2t}",
     "any t: Gamma_t = gamma_t / beta(1/2, 1/2+t), density (t/x) e^{-x/2} I_t(x/2); D_t = 1/beta(1/2, t+1/2)"},
    {"uniform", "G_1, uniform on (0,1)", "psi(l) = (1+l) log(1+l) - l log l",
     "t = 1: Gamma_1 density (1/pi) int_0^1 e^{-xy} sin(pi y) y^{-y} (1-y)^{y-1} dy; D_1 density sin(pi/x)/(pi (x-1)^{1-1/x}) on [1, inf)"},
    {"g0shift:mu", "mu + G_0, G_0 = 1/(1 + exp(pi C)), C standard Cauchy",
     "psi(l) = log log(1 + 1/mu) - log log(1 + 1/(l + mu))",
     "t = 1, mu > 0: Gamma_1 density e^{-mu x}(1 - e^{-x})/(x log(1 + 1/mu)); D_1 density 1/(x log(1 + 1/mu)) on [1/(mu+1), 1/mu]"},
    {"reciprocal(galpha:a)", "1/G_alpha", "E exp(-l Gamma_t) = (((1+l)^a - 1)/(a l))^{t/(1-a)}",
     "t = 1-a: Gamma_t = gamma_{1-a} U, density x^{-a}/Gamma(1-a) int_0^1 e^{-x/w} w^{a-1} dw; D_t uniform on [0, 1]"},
    {"reciprocal(arcsine)", "1/G_{1/2}", "E exp(-l Gamma_t) = (2/(1 + sqrt(1+l)))^{2t}",
     "any t: Gamma_t = gamma_t beta(t+1/2, t+1/2); D_t = beta(t+1/2, t+1/2)"},
    {"reciprocal(uniform)", "1/G_1", "psi(l) = ((1+l)/l) log(1+l) - 1, E exp(-l Gamma_t) = e^t (1+l)^{-(1+l)t/l}",
     "t = 1: D_1 density e sin(pi x)/(pi x^x (1-x)^{1-x}) on [0, 1]"},
    {"reciprocal(g0shift:mu)", "1/(mu + G_0)", "psi(l) = -log((1/l) log((1 + l(1+mu))/(1 + l mu)))",
     "t = 1: Gamma_1 = e (U + mu), density E1(x/(mu+1)) - E1(x/mu); D_1 uniform on [mu, mu+1]"},
    {"zratio:mu", "(S/S')^mu for independent mu-stable S, S'", "quadrature", "none"},
    {"pareto:m", "gamma_1/gamma_m", "quadrature", "Thorin cdf by thorin --target pareto:m"},
    {"gammapow:a", "gamma_1^{1/a}", "quadrature", "Thorin cdf by thorin --target gammapow:a"},
    {"stable:a", "positive a-stable, E exp(-l S) = exp(-l^a)", "quadrature", "none"},
    {"table:path.csv", "piecewise-linear quantile through (p, x) rows", "quadrature", "none"},
};

constexpr Entry kSubordinators[] = {
    {"gamma", "standard gamma process", "log(1 + l)", "gamma_t"},
    {"cosh", "C_t, E exp(-l C_1) = 1/cosh sqrt(2l)", "log cosh sqrt(2l)", "Thorin atoms at (pi^2/8)(2n-1)^2"},
    {"sinh", "S_t, E exp(-l S_1) = sqrt(2l)/sinh sqrt(2l)", "log(sinh sqrt(2l)/sqrt(2l))", "Thorin atoms at pi^2 n^2/2"},
    {"tanh", "T_t, E exp(-l T_1) = tanh sqrt(2l)/sqrt(2l)", "log(sqrt(2l)/tanh sqrt(2l))", "not a GGC; psi_cosh - psi_sinh"},
    {"besselj:nu", "J^(nu); nu = 0: E exp(-l J_t) = (1 + l + sqrt((1+l)^2 - 1))^{-t}",
     "nu >= 0: closed (nu = 0: arccosh(1 + l)); -1/2 < nu < 0: Thorin quadrature", "nu = 0: Thorin density (1/pi)/sqrt(x(2-x)) on [0, 2], mass 1; -1/2 < nu < 0: Thorin density by quadrature; nu > 0: not a GGC"},
    {"besselk:nu", "K^(nu), |nu| < 1", "nu = 0: (1/2) arccosh(1 + l)^2", "Thorin density cosh(nu arccosh(x-1))/sqrt(x(x-2)) on [2, inf)"},
    {"stablehalf", "1/2-stable subordinator", "sqrt(2l)", "Thorin density proportional to x^{-1/2}"},
    {"powerjump:a", "V^(a)(t) = sum (d gamma_s)^a", "(1/a) int (1 - e^{-l x}) e^{-x^{1/a}} dx/x",
     "a = 1: gamma_t; a >= 1: GGC"},
};

int cmd_catalog(const Options& o, std::ostream& out) {
  if (o.format == "json") {
    Json j;
    for (const auto* group : {"mixing_laws", "subordinators"}) {
      auto arr = Json::array();
      const bool mix = std::string(group) == "mixing_laws";
      const Entry* b = mix ? std::begin(kMixing) : std::begin(kSubordinators);
      const Entry* e = mix ? std::end(kMixing) : std::end(kSubordinators);
      for (const Entry* p = b; p != e; ++p)
        arr.push_back({{"spec", p->spec}, {"law", p->law}, {"psi", p->psi}, {"exact", p->exact}});
      j[group] = arr;
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  auto section = [&](const char* title, const Entry* b, const Entry* e) {
    out << title << '\n';
    for (const Entry* p = b; p != e; ++p)
      out << "  " << p->spec << "\n    law:   " << p->law << "\n    psi:   " << p->psi << "\n    exact: " << p->exact
          << '\n';
  };
  section("Mixing laws G (Thorin measure t P_G; psi per unit mass, l = lambda)", std::begin(kMixing),
          std::end(kMixing));
  section("Subordinators", std::begin(kSubordinators), std::end(kSubordinators));
  return kOk;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Overflow:
    case ErrorCode::Underflow:
    case ErrorCode::NoConvergence:
    case ErrorCode::InsufficientMass:
    case ErrorCode::Degenerate: return kNumerical;
    default: return kDomain;
  }
}

}  // namespace

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_grid(std::string_view spec) {
  require(!spec.empty(), "empty grid");
  std::vector<double> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 1) {
    for (const auto& s : split(spec, ',')) out.push_back(parse_double(s));
    return out;
  }
  const bool log = parts[0] == "log";
  require(parts.size() == (log ? 4u : 3u), "grid must be a,b,c | a:b:n | log:a:b:n");
  const double a = parse_double(parts[log ? 1 : 0]);
  const double b = parse_double(parts[log ? 2 : 1]);
  const double nd = parse_double(parts[log ? 3 : 2]);
  require(nd >= 1.0 && nd == std::floor(nd) && nd <= 1e7, "grid point count must be a positive integer");
  const int n = static_cast<int>(nd);
  if (log) require(a > 0.0 && b > 0.0, "log grid needs positive endpoints");
  for (int i = 0; i < n; ++i) {
    const double u = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(log ? a * std::pow(b / a, u) : a + (b - a) * u);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"thorin-lab: generalized gamma convolutions", "thorin-lab"};
  app.require_subcommand(1);
  app.footer(kGrammar);
  Options o;

  auto* sample = app.add_subcommand("sample", "draw Gamma_t(G) or D_t(G)");
  sample->add_option("--family", o.family, "mixing law, or powerjump:alpha")->required();
  sample->add_option("--t", o.t, "Thorin mass (time for powerjump)");
  sample->add_option("--method", o.method)->required()->check(CLI::IsMember({"wg", "cpp", "affine", "closed", "powerjump"}));
  sample->add_option("--quantity", o.quantity)->check(CLI::IsMember({"gamma", "mean"}));
  sample->add_option("--n", o.n);
  sample->add_option("--seed", o.seed);
  sample->add_option("--steps", o.steps, "Wiener-Gamma cells");
  sample->add_option("--iters", o.iters, "affine iterations (default 50/t, at least 50)");

  auto* pdf = app.add_subcommand("pdf", "density of Gamma_t(G), or of D_t(G) with --quantity mean");
  pdf->add_option("--family", o.family)->required();
  pdf->add_option("--t", o.t);
  pdf->add_option("--x", o.grid)->required();
  pdf->add_option("--method", o.method)->required()->check(CLI::IsMember({"closed", "dual-mc", "bessel-mc", "cr"}));
  pdf->add_option("--quantity", o.quantity)->check(CLI::IsMember({"gamma", "mean"}));
  pdf->add_option("--n", o.n, "Monte Carlo draws");
  pdf->add_option("--seed", o.seed);
  pdf->add_option("--steps", o.steps);

  auto* psi_cmd = app.add_subcommand(
      "psi",
      "psi is the exponent per unit mass (per unit time); laplace = exp(-t psi) is the transform at mass t");
  psi_cmd->add_option("--family", o.family)->required();
  psi_cmd->add_option("--lambda", o.grid)->required();
  psi_cmd->add_option("--t", o.t);

  auto* thorin = app.add_subcommand("thorin", "recover the Thorin cdf F_G(1/x)");
  thorin->add_option("--target", o.target)->required();
  thorin->add_option("--grid", o.grid)->required();
  auto* topt = thorin->add_option("--t", o.t, "pareto: theta (default 1, the Pareto limit); family: t in (0,1), default 1/2");
  thorin->add_option("--n", o.n, "draws when D_t(G) has no closed density");
  thorin->add_option("--seed", o.seed);
  thorin->add_option("--steps", o.steps);

  auto* verify = app.add_subcommand("verify", "run a verification suite; JSON array of reports");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"identities", "densities", "thorin", "all"}));
  verify->add_option("--n", o.n);
  verify->add_option("--seed", o.seed);
  verify->add_flag("--strict", o.strict, "exit 4 if any check fails");

  auto* catalog = app.add_subcommand("catalog", "list the families and their formulas");

  for (auto* sc : {sample, pdf, psi_cmd, thorin, verify, catalog}) {
    sc->add_option("--out", o.out_path, "output file (default stdout)");
    sc->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json", "text"}));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "thorin-lab: " << e.what() << "\n\n" << kGrammar;
    return kUsage;
  }
  o.t_given = topt->count() > 0;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      err << "thorin-lab: IO: cannot open " << o.out_path << '\n';
      return kDomain;
    }
    sink = &file;
  }
  try {
    if (sample->parsed()) return cmd_sample(o, *sink, err);
    if (pdf->parsed()) return cmd_pdf(o, *sink);
    if (psi_cmd->parsed()) return cmd_psi(o, *sink);
    if (thorin->parsed()) return cmd_thorin(o, *sink);
    if (verify->parsed()) return cmd_verify(o, *sink);
    if (catalog->parsed()) return cmd_catalog(o, *sink);
  } catch (const Error& e) {
    err << "thorin-lab: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "thorin-lab: NUMERICAL: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace thorin::cli
