#include "skewgas/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewgas/classical.hpp"
#include "skewgas/inner.hpp"
#include "skewgas/logsigned.hpp"
#include "skewgas/partition.hpp"
#include "skewgas/sop.hpp"

namespace skewgas::cli {

using classical::Kind;
using classical::WeightFamily;
using numeric::dd;
using numeric::LogSigned;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitUnknownFlag = 2;
constexpr int kExitMissingParam = 3;
constexpr int kExitBadFamily = 4;

struct ExitWith {
  int code;
  std::string msg;
};

[[noreturn]] void fail(int code, const std::string& msg) {
  throw ExitWith{code, msg};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

dd parse_dd(const std::string& s, const char* what) {
  try {
    return numeric::from_string(s);
  } catch (const std::invalid_argument&) {
    fail(kExitMissingParam, std::string("cannot parse ") + what + ": " + s);
  }
}

struct Config {
  std::string family;
  std::string param;
  std::string X;
  std::string routes = "pf,prod,bf";
  int N = 1;
  int digits = 32;
  int pts = 32;
  bool slow = false;
};

std::map<std::string, dd> parse_params(const std::string& s) {
  std::map<std::string, dd> kv;
  if (s.empty()) return kv;
  for (const std::string& item : split(s, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      fail(kExitMissingParam, "expected key=value in --param, got: " + item);
    std::string key = item.substr(0, eq);
    if (key != "a" && key != "b" && key != "p" && key != "q")
      fail(kExitBadFamily, "unknown family parameter: " + key);
    kv[key] = parse_dd(item.substr(eq + 1), "--param value");
  }
  return kv;
}

WeightFamily make_family(const Config& cfg) {
  auto kv = parse_params(cfg.param);
  auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end())
      fail(kExitMissingParam,
           cfg.family + " requires --param " + k + "=...");
    dd v = it->second;
    kv.erase(it);
    return v;
  };
  auto reject_extras = [&] {
    if (!kv.empty())
      fail(kExitBadFamily,
           "parameter '" + kv.begin()->first + "' does not apply to family " +
               cfg.family);
  };
  try {
    if (cfg.family == "gaussian") {
      reject_extras();
      return WeightFamily::gaussian();
    }
    if (cfg.family == "laguerre") {
      dd a = need("a");
      reject_extras();
      return WeightFamily::laguerre(a);
    }
    if (cfg.family == "jacobi") {
      dd a = need("a"), b = need("b");
      reject_extras();
      return WeightFamily::jacobi(a, b);
    }
    if (cfg.family == "gencauchy") {
      dd p = need("p");
      dd q = kv.count("q") ? kv["q"] : dd(0.0);
      kv.erase("q");
      reject_extras();
      return WeightFamily::gencauchy(p, q);
    }
  } catch (const std::invalid_argument& e) {
    fail(kExitBadFamily, e.what());
  }
  fail(kExitBadFamily, "unknown family: " + cfg.family);
}

// moment matrix route needs p > 2N+1, skew data (product route, sop) one
// pair further: p > 2N+3
void require_moment_dim(const WeightFamily& w, int N) {
  if (!w.admits_matrix_dim(2 * N))
    fail(kExitBadFamily,
         "gencauchy moment matrix of dim 2N needs p > 2N+1 (N=" +
             std::to_string(N) + ")");
}

void require_skew_data(const WeightFamily& w, int N) {
  if (w.kind == Kind::gencauchy && !(w.a > dd(2.0 * N + 3.0)))
    fail(kExitBadFamily,
         "gencauchy skew data up to pair N needs p > 2N+3 (N=" +
             std::to_string(N) + ")");
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ojson log_json(const LogSigned& v, int digits) {
  ojson o;
  if (v.is_zero()) {
    o["log_value"] = "-inf";
    o["sign"] = 0;
  } else {
    o["log_value"] = dd_to_string(v.logmag, digits);
    o["sign"] = v.sign;
  }
  return o;
}

ojson params_json(const WeightFamily& w, int digits) {
  ojson o = ojson::object();
  switch (w.kind) {
    case Kind::gaussian:
      break;
    case Kind::laguerre:
      o["a"] = dd_to_string(w.a, digits);
      break;
    case Kind::jacobi:
      o["a"] = dd_to_string(w.a, digits);
      o["b"] = dd_to_string(w.b, digits);
      break;
    case Kind::gencauchy:
      o["p"] = dd_to_string(w.a, digits);
      o["q"] = dd_to_string(w.b, digits);
      break;
  }
  return o;
}

std::string params_csv(const WeightFamily& w, int digits) {
  switch (w.kind) {
    case Kind::gaussian:
      return "";
    case Kind::laguerre:
      return "a=" + dd_to_string(w.a, digits);
    case Kind::jacobi:
      return "a=" + dd_to_string(w.a, digits) +
             ";b=" + dd_to_string(w.b, digits);
    default:
      return "p=" + dd_to_string(w.a, digits) +
             ";q=" + dd_to_string(w.b, digits);
  }
}

ojson header_json(const char* command, const WeightFamily& w,
                  const Config& cfg) {
  ojson o;
  o["schema"] = "skewgas/1";
  o["command"] = command;
  o["family"] = cfg.family;
  o["params"] = params_json(w, cfg.digits);
  o["N"] = cfg.N;
  return o;
}

std::vector<dd> parse_grid(const std::string& s) {
  if (s.find(':') != std::string::npos) {
    auto parts = split(s, ':');
    if (parts.size() != 3)
      fail(kExitMissingParam, "grid must be start:stop:step, got: " + s);
    dd start = parse_dd(parts[0], "--X start");
    dd stop = parse_dd(parts[1], "--X stop");
    dd step = parse_dd(parts[2], "--X step");
    if (!(step.hi > 0.0) || stop.hi < start.hi)
      fail(kExitMissingParam, "grid needs step > 0 and stop >= start");
    std::vector<dd> xs;
    for (int k = 0;; ++k) {
      dd x = start + dd(static_cast<double>(k)) * step;
      if (x.hi > stop.hi + 1e-12 * (1.0 + std::fabs(stop.hi))) break;
      xs.push_back(x);
    }
    return xs;
  }
  std::vector<dd> xs;
  for (const std::string& item : split(s, ','))
    xs.push_back(parse_dd(item, "--X"));
  if (xs.empty()) fail(kExitMissingParam, "empty --X grid");
  return xs;
}

int run_sop(const Config& cfg) {
  WeightFamily w = make_family(cfg);
  require_skew_data(w, cfg.N);
  dd X = parse_dd(cfg.X, "--X");
  auto fam = sop::build_Q(w, X, cfg.N);
  ojson o = header_json("sop", w, cfg);
  o["X"] = dd_to_string(X, cfg.digits);
  ojson alpha = ojson::array(), xi = ojson::array(), u = ojson::array();
  for (const dd& v : fam.alpha) alpha.push_back(dd_to_string(v, cfg.digits));
  for (const dd& v : fam.xi) xi.push_back(dd_to_string(v, cfg.digits));
  for (const LogSigned& v : fam.u) u.push_back(log_json(v, cfg.digits));
  o["alpha"] = alpha;
  o["xi"] = xi;
  o["u"] = u;
  ojson Q = ojson::array();
  for (const auto& q : fam.Q) {
    ojson row = ojson::array();
    for (int k = 0; k <= q.degree(); ++k)
      row.push_back(dd_to_string(q.coeff(k), cfg.digits));
    Q.push_back(row);
  }
  o["Q"] = Q;
  std::printf("%s\n", o.dump(2).c_str());
  return 0;
}

int run_moments(const Config& cfg) {
  WeightFamily w = make_family(cfg);
  require_moment_dim(w, cfg.N);
  dd X = parse_dd(cfg.X, "--X");
  moments::MomentEngine engine(w, 2 * cfg.N);
  auto m = engine.moment_matrix(X);
  ojson o = header_json("moments", w, cfg);
  o["X"] = dd_to_string(X, cfg.digits);
  o["dim"] = 2 * cfg.N;
  ojson upper = ojson::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      upper.push_back(dd_to_string(m[i][j], cfg.digits));
  o["upper"] = upper;
  o["refinement_error"] = sci(engine.refinement_error());
  std::printf("%s\n", o.dump(2).c_str());
  return 0;
}

struct RouteValue {
  LogSigned z;
  double err;
};

int run_partition(const Config& cfg) {
  WeightFamily w = make_family(cfg);
  dd X = parse_dd(cfg.X, "--X");
  std::map<std::string, RouteValue> out;
  bool want_pf = false, want_prod = false, want_bf = false;
  for (const std::string& r : split(cfg.routes, ',')) {
    if (r == "pf")
      want_pf = true;
    else if (r == "prod")
      want_prod = true;
    else if (r == "bf")
      want_bf = true;
    else
      fail(kExitMissingParam, "unknown route: " + r + " (use pf,prod,bf)");
  }
  if (want_bf && cfg.N > 3) {
    if (cfg.routes != "pf,prod,bf")
      fail(kExitBadFamily, "brute force route supports N <= 3 only");
    want_bf = false;  // silently drop from the default route set
  }
  if (want_bf && cfg.N == 3 && !cfg.slow && cfg.routes == "pf,prod,bf")
    want_bf = false;  // N = 3 brute force costs seconds; ask for it
  double bf_rel_tol = 0.0;
  if (want_pf) {
    require_moment_dim(w, cfg.N);
    moments::MomentEngine engine(w, 2 * cfg.N);
    out["pf"] = {partition::z_pfaffian(engine, X), engine.refinement_error()};
  }
  if (want_prod) {
    require_skew_data(w, cfg.N);
    out["prod"] = {partition::z_product(w, cfg.N, X), 0.0};
  }
  if (want_bf) {
    require_moment_dim(w, cfg.N);
    auto br = partition::z_bruteforce(w, cfg.N, X.hi, cfg.pts);
    double mag = std::fabs(br.value);
    bf_rel_tol = std::max(1e-4, mag > 0.0 ? 5.0 * br.err_est / mag : 0.0);
    LogSigned z = br.value == 0.0 ? LogSigned::zero()
                                  : LogSigned::from_dd(dd(br.value));
    out["bf"] = {z, br.err_est};
  }
  if (out.empty()) fail(kExitMissingParam, "no routes selected");

  ojson o = header_json("partition", w, cfg);
  o["X"] = dd_to_string(X, cfg.digits);
  ojson routes = ojson::object();
  for (const char* name : {"pf", "prod", "bf"}) {
    auto it = out.find(name);
    if (it == out.end()) continue;
    ojson r = log_json(it->second.z, cfg.digits);
    r["error_estimate"] = sci(it->second.err);
    routes[name] = r;
  }
  o["routes"] = routes;

  double worst = 0.0;
  std::string worst_pair;
  bool ok = true;
  auto compare = [&](const char* x, const char* y, double tol) {
    auto ix = out.find(x), iy = out.find(y);
    if (ix == out.end() || iy == out.end()) return;
    double r = numeric::rel_diff(ix->second.z, iy->second.z);
    if (r > worst) {
      worst = r;
      worst_pair = std::string(x) + " vs " + y;
    }
    if (r > tol) ok = false;
  };
  compare("pf", "prod", 1e-8);
  compare("pf", "bf", std::max(bf_rel_tol, 1e-8));
  compare("prod", "bf", std::max(bf_rel_tol, 1e-8));
  o["max_rel_diff"] = sci(worst);
  std::printf("%s\n", o.dump(2).c_str());
  if (!ok) {
    std::fprintf(stderr, "tolerance failure: %s rel diff %s\n",
                 worst_pair.c_str(), sci(worst).c_str());
    return kExitTolerance;
  }
  return 0;
}

struct Residual {
  std::string name;
  double value;
  double tol;
};

int run_verify(const Config& cfg) {
  WeightFamily w = make_family(cfg);
  require_moment_dim(w, cfg.N);
  require_skew_data(w, cfg.N);
  dd X = cfg.X.empty() ? dd(0.5) : parse_dd(cfg.X, "--X");
  const double xgrid[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<Residual> table;

  moments::MomentEngine engine(w, 2 * cfg.N);
  double route_worst = 0.0;
  for (double xv : xgrid) {
    LogSigned pf = partition::z_pfaffian(engine, dd(xv));
    LogSigned pr = partition::z_product(w, cfg.N, dd(xv));
    route_worst = std::max(route_worst, numeric::rel_diff(pf, pr));
  }
  table.push_back({"pfaffian_vs_product", route_worst, 1e-8});

  auto fam = sop::build_Q(w, X, cfg.N);
  int dim = 2 * cfg.N;
  std::vector<std::vector<dd>> S(static_cast<std::size_t>(dim),
                                 std::vector<dd>(static_cast<std::size_t>(dim),
                                                 dd(0.0)));
  double umax = 0.0;
  for (int n = 0; n < cfg.N; ++n)
    umax = std::max(umax,
                    std::fabs(fam.u[static_cast<std::size_t>(n)].to_dd().hi));
  double off = 0.0, pair = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      dd v = engine.skew_inner(fam.Q[static_cast<std::size_t>(i)],
                               fam.Q[static_cast<std::size_t>(j)], X);
      if (j == i + 1 && i % 2 == 0) {
        dd u = fam.u[static_cast<std::size_t>(i / 2)].to_dd();
        pair = std::max(pair, std::fabs((v - u).hi) / std::fabs(u.hi));
      } else {
        off = std::max(off, std::fabs(v.hi) / umax);
      }
    }
  table.push_back({"pair_norms_vs_u", pair, 1e-8});
  table.push_back({"skew_orthogonality_offblock", off, 1e-8});

  double alpha_worst = 0.0, xic_worst = 0.0;
  for (double xv : xgrid) {
    auto ax = sop::recurrence_alpha_xi(w, dd(xv), cfg.N);
    for (int j = 0; j <= cfg.N; ++j) {
      dd closed = sop::closed_form_alpha(w, dd(xv), j);
      dd raj = ax.alpha[static_cast<std::size_t>(j)];
      alpha_worst = std::max(
          alpha_worst, std::fabs((closed - raj).hi) / std::fabs(raj.hi));
      dd xc = ax.xi[static_cast<std::size_t>(j)] * sop::c_factor(w, j);
      xic_worst =
          std::max(xic_worst, std::fabs((xc - raj).hi) / std::fabs(raj.hi));
    }
  }
  table.push_back({"alpha_closed_vs_recurrence", alpha_worst, 1e-12});
  table.push_back({"xi_cfactor_vs_alpha", xic_worst, 1e-18});

  if (cfg.N <= 3 && (cfg.N <= 2 || cfg.slow)) {
    auto br = partition::z_bruteforce(w, cfg.N, X.hi, cfg.pts);
    double want = partition::z_product(w, cfg.N, X).to_dd().hi;
    double r = std::fabs(br.value - want) / std::fabs(want);
    double tol = std::max(1e-4, 5.0 * br.err_est / std::fabs(want));
    table.push_back({"bruteforce_vs_product", r, tol});
  }

  bool ok = true;
  const Residual* worst = nullptr;
  for (const auto& r : table) {
    bool pass = r.value <= r.tol;
    if (!pass) ok = false;
    if (!worst || r.value / r.tol > worst->value / worst->tol) worst = &r;
    std::printf("%-30s %12s   tol %8s   %s\n", r.name.c_str(),
                sci(r.value).c_str(), sci(r.tol).c_str(),
                pass ? "ok" : "FAIL");
  }
  if (!ok) {
    std::fprintf(stderr, "tolerance failure: worst residual %s = %s (tol %s)\n",
                 worst->name.c_str(), sci(worst->value).c_str(),
                 sci(worst->tol).c_str());
    return kExitTolerance;
  }
  return 0;
}

int run_sweep(const Config& cfg) {
  WeightFamily w = make_family(cfg);
  require_moment_dim(w, cfg.N);
  require_skew_data(w, cfg.N);
  auto xs = parse_grid(cfg.X);
  auto points = partition::z_sweep(w, cfg.N, xs);
  std::string params = params_csv(w, cfg.digits);
  std::printf("family,params,N,X,route,log_value,sign,rel_err\n");
  for (const auto& p : points) {
    for (const char* route : {"pf", "prod"}) {
      const LogSigned& z = route[0] == 'p' && route[1] == 'f' ? p.pf : p.prod;
      std::printf("%s,%s,%d,%s,%s,%s,%d,%s\n", cfg.family.c_str(),
                  params.c_str(), cfg.N, dd_to_string(p.X, cfg.digits).c_str(),
                  route, dd_to_string(z.logmag, cfg.digits).c_str(), z.sign,
                  sci(p.rel).c_str());
    }
  }
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, p.rel);
  if (worst > 1e-8) {
    std::fprintf(stderr, "tolerance failure: route rel diff %s\n",
                 sci(worst).c_str());
    return kExitTolerance;
  }
  return 0;
}

void add_common(CLI::App* sub, Config& cfg, bool need_x) {
  sub->add_option("--family", cfg.family, "gaussian|laguerre|jacobi|gencauchy")
      ->required();
  sub->add_option("--param", cfg.param, "family parameters, e.g. a=0.5,b=1.5");
  sub->add_option("--N", cfg.N, "number of charge pairs")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* xopt = sub->add_option("--X", cfg.X, "fugacity (sweep: grid start:stop:step)");
  if (need_x) xopt->required();
  sub->add_option("--digits", cfg.digits, "significant digits in output")
      ->check(CLI::Range(6, 40));
}

}  // namespace

std::string dd_to_string(dd v, int digits) {
  using numeric::powi;
  if (digits < 1) digits = 1;
  if (v.hi == 0.0) return "0";
  bool neg = v.hi < 0.0;
  dd m = numeric::fabs(v);
  int e10 = static_cast<int>(std::floor(std::log10(m.hi)));
  m = m * powi(dd(10.0), -e10);
  while (m.hi >= 10.0) {
    m = m / dd(10.0);
    ++e10;
  }
  while (m.hi < 1.0) {
    m = m * dd(10.0);
    --e10;
  }
  m = m + dd(0.5) * powi(dd(10.0), 1 - digits);
  if (m.hi >= 10.0) {
    m = m / dd(10.0);
    ++e10;
  }
  std::string ds;
  for (int i = 0; i < digits; ++i) {
    int d = static_cast<int>(numeric::floor(m).hi);
    d = d < 0 ? 0 : (d > 9 ? 9 : d);
    ds.push_back(static_cast<char>('0' + d));
    m = (m - dd(static_cast<double>(d))) * dd(10.0);
  }
  std::string out = neg ? "-" : "";
  if (e10 >= 0 && e10 < digits) {
    out += ds.substr(0, static_cast<std::size_t>(e10) + 1);
    if (e10 + 1 < digits) {
      out += '.';
      out += ds.substr(static_cast<std::size_t>(e10) + 1);
    }
  } else if (e10 < 0 && e10 >= -6) {
    out += "0.";
    out.append(static_cast<std::size_t>(-e10) - 1, '0');
    out += ds;
  } else {
    out += ds.substr(0, 1);
    if (digits > 1) {
      out += '.';
      out += ds.substr(1);
    }
    out += 'e';
    out += std::to_string(e10);
  }
  return out;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"skew orthogonal polynomials and partition functions of the "
               "two-component log-gas"};
  app.require_subcommand(1);
  Config cfg;

  auto* sop_cmd = app.add_subcommand("sop", "alpha/xi tables and Q coefficients");
  add_common(sop_cmd, cfg, true);
  auto* mom_cmd = app.add_subcommand("moments", "skew moment matrix m(X)");
  add_common(mom_cmd, cfg, true);
  auto* part_cmd = app.add_subcommand("partition", "Z_N(X) by selected routes");
  add_common(part_cmd, cfg, true);
  part_cmd->add_option("--routes", cfg.routes, "subset of pf,prod,bf");
  part_cmd->add_option("--pts", cfg.pts, "brute force nodes per level")
      ->check(CLI::Range(8, 64));
  part_cmd->add_flag("--slow", cfg.slow, "enable N = 3 brute force");
  auto* ver_cmd = app.add_subcommand("verify", "residual suite for one family");
  add_common(ver_cmd, cfg, false);
  ver_cmd->add_option("--pts", cfg.pts, "brute force nodes per level")
      ->check(CLI::Range(8, 64));
  ver_cmd->add_flag("--slow", cfg.slow, "include N = 3 brute force");
  auto* sweep_cmd = app.add_subcommand("sweep", "Z_N over an X grid as CSV");
  add_common(sweep_cmd, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::RequiredError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    // no subcommand selected at all: usage error, not a missing parameter
    return app.get_subcommands().empty() ? kExitUnknownFlag : kExitMissingParam;
  } catch (const CLI::ConversionError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitMissingParam;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitMissingParam;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUnknownFlag;
  }

  if (const char* env = std::getenv("SKEWGAS_PRECISION")) {
    char* end = nullptr;
    long d = std::strtol(env, &end, 10);
    if (end && *end == '\0' && d >= 6 && d <= 40)
      cfg.digits = static_cast<int>(d);
    else
      std::fprintf(stderr, "ignoring SKEWGAS_PRECISION=%s (want 6..40)\n",
                   env);
  }

  try {
    if (sop_cmd->parsed()) return run_sop(cfg);
    if (mom_cmd->parsed()) return run_moments(cfg);
    if (part_cmd->parsed()) return run_partition(cfg);
    if (ver_cmd->parsed()) return run_verify(cfg);
    if (sweep_cmd->parsed()) return run_sweep(cfg);
  } catch (const ExitWith& e) {
    std::fprintf(stderr, "%s\n", e.msg.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitBadFamily;
  }
  return kExitUnknownFlag;
}

}  // namespace skewgas::cli
