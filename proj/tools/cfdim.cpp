// cfdim: certified dimension calculator for continued-fraction sets.
//
// Subcommands: pressure, solve, dim {e|el|fn|limsup|liminf-max|sum|
// liao-rams}, profile, verify {band|lemma-np|cover|wang-wu|boxcount}.
// Reports are JSON/CSV/table with the schema
//   {query, branch, value_lo, value_hi, diagnostics, provenance}.
// Exit codes: 0 success, 2 domain error, 3 budget exhausted, 64 usage.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfdim/cf_core.hpp"
#include "cfdim/dim_solve.hpp"
#include "cfdim/empirical.hpp"
#include "cfdim/pressure.hpp"
#include "cfdim/seq_profile.hpp"

using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  double tol = 1e-3;
  long long enum_cap = 0;  // 0 = library default node budgets
  long long cap = 0;       // 0 = unbounded digit alphabet
  int grid = 512;
  int k_max = 48;
  int n_max = 40000;
  std::string format = "json";
  std::uint64_t seed = 1;
  int threads = 1;
};

struct Report {
  std::string query;
  std::string branch;
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> diagnostics;
  double prov_M = 0.0;
  long long prov_n = 0;
  double prov_tol = 0.0;
  std::vector<std::vector<double>> plot;  // rows of x,y columns
};

json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void write_json(std::ostream& os, const Report& r, double runtime) {
  json j;
  j["query"] = r.query;
  j["branch"] = r.branch;
  j["value_lo"] = num_or_null(r.lo);
  j["value_hi"] = num_or_null(r.hi);
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = num_or_null(v);
  j["diagnostics"] = d;
  j["provenance"] = {{"M", num_or_null(r.prov_M)},
                     {"n", r.prov_n},
                     {"tol", r.prov_tol},
                     {"runtime", runtime}};
  os << j.dump(2) << "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const Report& r, double runtime) {
  os << "query,branch,value_lo,value_hi";
  for (const auto& [k, v] : r.diagnostics) os << "," << csv_escape(k);
  os << ",M,n,tol,runtime\n";
  os << csv_escape(r.query) << "," << csv_escape(r.branch) << "," << r.lo
     << "," << r.hi;
  for (const auto& [k, v] : r.diagnostics) os << "," << v;
  os << "," << r.prov_M << "," << r.prov_n << "," << r.prov_tol << ","
     << runtime << "\n";
}

void write_table(std::ostream& os, const Report& r, double runtime) {
  os << "query     " << r.query << "\n";
  os << "branch    " << r.branch << "\n";
  os << "value_lo  " << r.lo << "\n";
  os << "value_hi  " << r.hi << "\n";
  for (const auto& [k, v] : r.diagnostics)
    os << "  " << k << " = " << v << "\n";
  os << "provenance M=" << r.prov_M << " n=" << r.prov_n
     << " tol=" << r.prov_tol << " runtime=" << runtime << "\n";
}

void emit(const Report& r, const RunConfig& cfg, const std::string& out_path,
          const std::string& plot_path, double runtime) {
  std::ostringstream buf;
  buf.precision(17);
  if (cfg.format == "csv")
    write_csv(buf, r, runtime);
  else if (cfg.format == "table")
    write_table(buf, r, runtime);
  else
    write_json(buf, r, runtime);
  if (out_path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw cfdim::DomainError("cannot open output file: " + out_path);
    f << buf.str();
  }
  if (!plot_path.empty()) {
    std::ofstream f(plot_path);
    if (!f) throw cfdim::DomainError("cannot open plot file: " + plot_path);
    f.precision(17);
    for (const auto& row : r.plot) {
      for (std::size_t i = 0; i < row.size(); ++i)
        f << (i ? "," : "") << row[i];
      f << "\n";
    }
  }
}

// ---- config layering: defaults < config file < CFDIM_ env < flags -------

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& val) {
  if (key == "tolerance" || key == "tol") cfg.tol = std::stod(val);
  else if (key == "enum_cap") cfg.enum_cap = std::stoll(val);
  else if (key == "cap") cfg.cap = std::stoll(val);
  else if (key == "grid") cfg.grid = std::stoi(val);
  else if (key == "k_max" || key == "kmax") cfg.k_max = std::stoi(val);
  else if (key == "n_max" || key == "nmax") cfg.n_max = std::stoi(val);
  else if (key == "format") cfg.format = val;
  else if (key == "seed") cfg.seed = std::stoull(val);
  else if (key == "threads") cfg.threads = std::stoi(val);
  else throw cfdim::DomainError("unknown config key: " + key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cfdim::DomainError("cannot read config file: " + path);
  json j;
  f >> j;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::ostringstream v;
    if (it->is_string())
      v << it->get<std::string>();
    else
      v << *it;
    apply_kv(cfg, it.key(), v.str());
  }
}

void load_env(RunConfig& cfg) {
  static const std::pair<const char*, const char*> keys[] = {
      {"CFDIM_TOLERANCE", "tolerance"}, {"CFDIM_TOL", "tol"},
      {"CFDIM_ENUM_CAP", "enum_cap"},   {"CFDIM_CAP", "cap"},
      {"CFDIM_GRID", "grid"},
      {"CFDIM_K_MAX", "k_max"},         {"CFDIM_N_MAX", "n_max"},
      {"CFDIM_FORMAT", "format"},       {"CFDIM_SEED", "seed"},
      {"CFDIM_THREADS", "threads"}};
  for (const auto& [env, key] : keys)
    if (const char* v = std::getenv(env)) apply_kv(cfg, key, v);
}

// ---- helpers --------------------------------------------------------------

cfdim::ParamMap parse_params(const std::vector<std::string>& kvs) {
  cfdim::ParamMap out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw cfdim::DomainError("--param expects name=value, got: " + kv);
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

void dim_into(Report& r, const cfdim::DimensionResult& d) {
  r.branch = d.branch;
  r.lo = d.lo;
  r.hi = d.hi;
  r.diagnostics = d.diagnostics;
  if (d.exact) r.diagnostics["exact"] = 1;
  if (d.upper_bound_only) r.diagnostics["upper_bound_only"] = 1;
  if (d.indeterminate) r.diagnostics["indeterminate"] = 1;
  r.diagnostics["converged"] = d.converged ? 1 : 0;
}

cfdim::SolverOptions solver_opts(const RunConfig& cfg) {
  cfdim::SolverOptions o;
  o.theta_tol = cfg.tol;
  return o;
}

// psi generators for the limsup / liminf families must escape to infinity;
// a flat generator (e.g. B^n at B=1) describes no admissible target set.
void require_unbounded(const cfdim::LogSeq& log_psi, int n_max) {
  double head = log_psi(2.0), tail = log_psi(static_cast<double>(n_max));
  if (!(tail > head + 1e-12) && !(log_psi(1.0) > std::log(1e12)))
    throw cfdim::DomainError(
        "psi must increase to infinity for this family (for psi = B^n this "
        "means B > 1)");
}

void trace_plot(Report& r, const std::vector<double>& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i)
    r.plot.push_back({static_cast<double>(i + 1), trace[i]});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified dimensions of continued-fraction sets"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, out_path, plot_path;
  // Pre-scan for --config so file values become defaults that flags and
  // the environment can override.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);
    load_env(cfg);
  } catch (const cfdim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: bad config value: " << e.what() << "\n";
    return 2;
  }

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--output", out_path, "write the report here (default stdout)");
  app.add_option("--emit-plot", plot_path, "write x,y plot data (CSV columns)");
  app.add_option("--format", cfg.format, "json | csv | table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--tol", cfg.tol, "target tolerance");
  app.add_option("--enum-cap", cfg.enum_cap, "enumeration node budget");
  app.add_option("--grid", cfg.grid, "operator grid size");
  app.add_option("--kmax", cfg.k_max, "sequence horizon k_max");
  app.add_option("--nmax", cfg.n_max, "function horizon n_max");
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--threads", cfg.threads, "worker thread count");

  // shared option storage
  double theta = 0.8, eps = 0.1, B = 0.0, logB = std::nan(""),
         logC = std::nan(""), slope = 0.0, intercept = 0.0, gamma = 0.0,
         alpha = 0.0, beta = 0.0, r_par = 0.0, c_par = 0.0, d_par = 0.0,
         rho_tol = 1e-4, digit_trunc = 1e14;
  long long N = 2, cap_opt = -1, depth = 0, k_words = 2;
  int m_max = 24, horizon = 50, levels = 8, count = 20000, bc_depth = 20;
  bool restricted = false, use_refine = false, limit_flag_cli = false;
  std::string psi_expr, phi_expr, nk_expr, sk_expr, tk_expr, u_expr, v_expr,
      family_str = "coefficient", kind_str = "raw", scheme_str = "natural";
  std::vector<std::string> param_kvs;
  std::vector<int> m_scales;
  std::vector<double> bc_scales;

  Report report;
  std::function<void()> run;

  // ---- pressure ----------------------------------------------------------
  auto* p = app.add_subcommand("pressure", "bracket the pressure function");
  p->add_option("--theta", theta, "exponent theta")->required();
  p->add_option("--cap", cap_opt, "digit bound M (0 = unbounded target)");
  p->add_option("--depth", depth, "word length n for the bracket");
  p->add_flag("--restricted", restricted, "bracket P_M itself, not P");
  p->add_flag("--refine", use_refine, "auto-select M and n to meet --tol");
  p->callback([&] {
    run = [&] {
      long long cap = cap_opt >= 0 ? cap_opt : (cfg.cap > 0 ? cfg.cap : 100);
      cfdim::PressureOptions po;
      po.grid_size = cfg.grid;
      if (cfg.enum_cap > 0) po.enum_node_cap = cfg.enum_cap;
      cfdim::PressureBracket b;
      if (use_refine || depth == 0) {
        b = cfdim::pressure_refine(theta, cfg.tol, {}, po);
        report.branch = "pressure-refined";
      } else if (restricted) {
        b = cfdim::pressure_restricted(theta, static_cast<double>(cap), depth,
                                       cfdim::PressureMethod::Auto, po);
        report.branch = "pressure-restricted";
      } else {
        b = cfdim::pressure_full(theta, static_cast<double>(cap), depth,
                                 cfdim::PressureMethod::Auto, po);
        report.branch = "pressure-full";
      }
      report.query = "pressure theta=" + std::to_string(theta);
      report.lo = b.lower;
      report.hi = b.upper;
      report.diagnostics["theta"] = theta;
      report.diagnostics["width"] = b.width();
      report.diagnostics["converged"] = b.converged ? 1 : 0;
      report.prov_M = b.digit_bound;
      report.prov_n = b.depth;
      report.prov_tol = cfg.tol;
      if (!plot_path.empty()) {
        for (double t = 0.55; t <= 1.2001; t += 0.05) {
          auto pb = cfdim::pressure_refine(t, 0.02, {}, po);
          report.plot.push_back({t, pb.lower, pb.upper});
        }
      }
    };
  });

  // ---- solve -------------------------------------------------------------
  auto* s = app.add_subcommand("solve", "solve a pressure equation directly");
  s->add_option("--slope", slope, "rhs slope: P(theta) = slope*theta + intercept");
  s->add_option("--intercept", intercept, "rhs intercept");
  s->add_option("--hat-logc", logC, "solve the hat equation with this log C");
  s->add_option("--gamma", gamma, "scale for the geometric-block equation");
  s->add_option("--logb", logB, "with --gamma: log C of the block equation");
  s->callback([&] {
    run = [&] {
      cfdim::DimensionResult d;
      if (!std::isnan(logC)) {
        d = cfdim::theta_hat(logC, solver_opts(cfg));
        report.query = "solve hat logC=" + std::to_string(logC);
      } else if (gamma > 0.0) {
        if (std::isnan(logB))
          throw cfdim::DomainError("--gamma requires --logb");
        d = cfdim::theta_type_iii(gamma, logB, solver_opts(cfg));
        report.query = "solve block gamma=" + std::to_string(gamma);
      } else {
        d = cfdim::solve_pressure_equation(
            cfdim::AffineRhs{slope, intercept}, "affine", solver_opts(cfg));
        report.query = "solve affine slope=" + std::to_string(slope) +
                       " intercept=" + std::to_string(intercept);
      }
      dim_into(report, d);
      report.prov_tol = cfg.tol;
    };
  });

  // ---- dim --------------------------------------------------------------
  auto* dim = app.add_subcommand("dim", "dimension of a theorem family");
  dim->require_subcommand(1);

  auto add_triple_opts = [&](CLI::App* c) {
    c->add_option("--nk", nk_expr, "expression for n_k")->required();
    c->add_option("--sk", sk_expr, "expression for s_k")->required();
    c->add_option("--tk", tk_expr, "expression for t_k (default: s_k)");
    c->add_option("--param", param_kvs, "named parameter name=value");
  };
  auto make_triple = [&]() {
    auto params = parse_params(param_kvs);
    if (B > 0.0) params["B"] = B;
    cfdim::SequenceTriple t;
    t.log_n = cfdim::seq_from_expression(nk_expr, params);
    t.log_s = cfdim::seq_from_expression(sk_expr, params);
    t.log_t = cfdim::seq_from_expression(tk_expr.empty() ? sk_expr : tk_expr,
                                         params);
    return t;
  };

  auto* de = dim->add_subcommand("e", "target-interval orbit set");
  add_triple_opts(de);
  de->add_option("--B", B, "convenience parameter B");
  de->callback([&] {
    run = [&] {
      auto gp = cfdim::growth_profile(make_triple(), cfg.k_max);
      dim_into(report, cfdim::dim_E(gp, solver_opts(cfg)));
      report.query = "dim e nk=" + nk_expr + " sk=" + sk_expr;
      report.prov_n = gp.effective_horizon;
      report.prov_tol = cfg.tol;
    };
  });

  auto* del = dim->add_subcommand("el", "lower-target orbit set");
  add_triple_opts(del);
  del->add_option("--B", B, "convenience parameter B");
  del->callback([&] {
    run = [&] {
      auto gp = cfdim::growth_profile(make_triple(), cfg.k_max);
      dim_into(report, cfdim::dim_EL(gp, solver_opts(cfg)));
      report.query = "dim el nk=" + nk_expr + " sk=" + sk_expr;
      report.prov_n = gp.effective_horizon;
      report.prov_tol = cfg.tol;
    };
  });

  auto* dfn = dim->add_subcommand("fn", "bounded-digit set F_N");
  dfn->add_option("--N", N, "digit bound")->required();
  dfn->callback([&] {
    run = [&] {
      dim_into(report, cfdim::dim_F_N(N, cfg.tol));
      report.query = "dim fn N=" + std::to_string(N);
      report.prov_M = static_cast<double>(N);
      report.prov_tol = cfg.tol;
    };
  });

  auto* dls = dim->add_subcommand("limsup", "infinitely-often digit growth set");
  dls->add_option("--psi", psi_expr, "growth function psi(n)")->required();
  dls->add_option("--B", B, "convenience parameter B");
  dls->add_option("--param", param_kvs, "named parameter name=value");
  dls->add_option("--family", family_str, "coefficient | running-max")
      ->check(CLI::IsMember({"coefficient", "running-max"}));
  dls->callback([&] {
    run = [&] {
      auto params = parse_params(param_kvs);
      if (B > 0.0) params["B"] = B;
      auto log_psi = cfdim::seq_from_expression(psi_expr, params);
      require_unbounded(log_psi, cfg.n_max);
      auto fp = cfdim::function_profile(log_psi, cfg.n_max);
      auto fam = family_str == "running-max" ? cfdim::LimsupFamily::RunningMax
                                             : cfdim::LimsupFamily::Coefficient;
      dim_into(report, cfdim::dim_limsup_family(fp, fam, solver_opts(cfg)));
      report.query = "dim limsup psi=" + psi_expr + " family=" + family_str;
      report.prov_n = fp.horizon;
      report.prov_tol = cfg.tol;
    };
  });

  auto* dlm = dim->add_subcommand("liminf-max", "eventual running-max set");
  dlm->add_option("--psi", psi_expr, "growth function psi(n)")->required();
  dlm->add_option("--B", B, "convenience parameter B");
  dlm->add_option("--param", param_kvs, "named parameter name=value");
  dlm->add_flag("--limit", limit_flag_cli,
                "assert that the growth-rate limsup is a genuine limit");
  dlm->callback([&] {
    run = [&] {
      auto params = parse_params(param_kvs);
      if (B > 0.0) params["B"] = B;
      auto log_psi = cfdim::seq_from_expression(psi_expr, params);
      require_unbounded(log_psi, cfg.n_max);
      auto fp = cfdim::function_profile(log_psi, cfg.n_max);
      if (limit_flag_cli) fp.limit_flag = true;
      dim_into(report, cfdim::dim_liminf_max(fp, solver_opts(cfg)));
      report.query = "dim liminf-max psi=" + psi_expr;
      report.prov_n = fp.horizon;
      report.prov_tol = cfg.tol;
    };
  });

  auto* dsum = dim->add_subcommand("sum", "series-threshold set");
  dsum->add_option("--phi", phi_expr, "raw phi(n) expression");
  dsum->add_option("--kind", kind_str,
                   "exp-power | sqrt-r1 | sqrt-r2 | floor-power | floor-exp | raw")
      ->check(CLI::IsMember({"exp-power", "sqrt-r1", "sqrt-r2", "floor-power",
                             "floor-exp", "raw"}));
  dsum->add_option("--r", r_par, "exponent r");
  dsum->add_option("--c", c_par, "scale c");
  dsum->add_option("--d", d_par, "scale d");
  dsum->add_option("--gamma", gamma, "block scale gamma");
  dsum->add_option("--param", param_kvs, "named parameter name=value");
  dsum->callback([&] {
    run = [&] {
      cfdim::SumFamilySpec spec;
      using K = cfdim::SumFamilySpec::Kind;
      spec.r = r_par;
      spec.c = c_par;
      spec.d = d_par;
      spec.gamma = gamma;
      if (kind_str == "exp-power") spec.kind = K::ExpPower;
      else if (kind_str == "sqrt-r1") spec.kind = K::SqrtPlusR1;
      else if (kind_str == "sqrt-r2") spec.kind = K::SqrtPlusR2;
      else if (kind_str == "floor-power") spec.kind = K::FloorPower;
      else if (kind_str == "floor-exp") spec.kind = K::FloorExp;
      else {
        if (phi_expr.empty())
          throw cfdim::DomainError("raw sum family needs --phi");
        spec.kind = K::Raw;
        spec.log_phi =
            cfdim::seq_from_expression(phi_expr, parse_params(param_kvs));
      }
      dim_into(report, cfdim::dim_sum_family(spec, solver_opts(cfg)));
      report.query = "dim sum kind=" + kind_str +
                     (phi_expr.empty() ? "" : " phi=" + phi_expr);
      report.prov_tol = cfg.tol;
    };
  });

  auto* dlr = dim->add_subcommand("liao-rams", "two-sequence liminf ratio");
  dlr->add_option("--u", u_expr, "expression for u_n")->required();
  dlr->add_option("--v", v_expr, "expression for v_n (default: u_n)");
  dlr->add_option("--horizon", horizon, "trace horizon");
  dlr->add_option("--param", param_kvs, "named parameter name=value");
  dlr->callback([&] {
    run = [&] {
      auto params = parse_params(param_kvs);
      auto lu = cfdim::seq_from_expression(u_expr, params);
      auto lv = v_expr.empty() ? lu : cfdim::seq_from_expression(v_expr, params);
      auto lr = cfdim::dim_liao_rams(lu, lv, horizon);
      report.query = "dim liao-rams u=" + u_expr +
                     (v_expr.empty() ? "" : " v=" + v_expr);
      report.branch = lr.extrapolated ? "ratio-extrapolated" : "ratio-tail-min";
      report.lo = report.hi = lr.value;
      report.diagnostics["running_min"] = lr.running_min;
      report.diagnostics["ratio_warning"] = lr.ratio_warning ? 1 : 0;
      report.prov_n = horizon;
      trace_plot(report, lr.trace);
    };
  });

  // ---- profile -----------------------------------------------------------
  auto* prof = app.add_subcommand("profile", "growth diagnostics + hypotheses");
  prof->add_option("--psi", psi_expr, "function psi(n) to profile");
  prof->add_option("--nk", nk_expr, "expression for n_k");
  prof->add_option("--sk", sk_expr, "expression for s_k");
  prof->add_option("--tk", tk_expr, "expression for t_k (default: s_k)");
  prof->add_option("--B", B, "convenience parameter B");
  prof->add_option("--param", param_kvs, "named parameter name=value");
  prof->callback([&] {
    run = [&] {
      if (!psi_expr.empty()) {
        auto params = parse_params(param_kvs);
        if (B > 0.0) params["B"] = B;
        auto log_psi = cfdim::seq_from_expression(psi_expr, params);
        auto cls = cfdim::classify_sum_function(log_psi, cfg.n_max);
        const auto& fp = cls.profile;
        report.query = "profile psi=" + psi_expr;
        report.branch = cfdim::branch_name(cls.branch);
        report.diagnostics["B"] = fp.B.num();
        report.diagnostics["b"] = fp.b.num();
        report.diagnostics["C"] = fp.C.num();
        report.diagnostics["c"] = fp.c.num();
        report.diagnostics["limit_flag"] = fp.limit_flag ? 1 : 0;
        report.diagnostics["sqrt_scale"] = fp.sqrt_scale.num();
        report.diagnostics["linear_scale"] = fp.linear_scale.num();
        report.prov_n = fp.horizon;
        trace_plot(report, fp.C.trace);
      } else if (!nk_expr.empty()) {
        if (sk_expr.empty())
          throw cfdim::DomainError("profile with --nk also needs --sk");
        auto t = make_triple();
        auto gp = cfdim::growth_profile(t, cfg.k_max);
        auto hyp = cfdim::check_hypotheses(t, cfg.k_max);
        report.query = "profile nk=" + nk_expr + " sk=" + sk_expr;
        report.branch = hyp.all_hold() ? "hypotheses-hold" : "hypotheses-open";
        report.diagnostics["alpha"] = gp.alpha.num();
        report.diagnostics["beta"] = gp.beta.num();
        report.diagnostics["xi"] = gp.xi.num();
        report.diagnostics["gamma"] = gp.gamma.num();
        report.diagnostics["alpha_converged"] = gp.alpha.converged ? 1 : 0;
        report.diagnostics["beta_converged"] = gp.beta.converged ? 1 : 0;
        report.diagnostics["h1"] = static_cast<double>(hyp.h1);
        report.diagnostics["h2"] = static_cast<double>(hyp.h2);
        report.diagnostics["h3"] = static_cast<double>(hyp.h3);
        report.prov_n = gp.effective_horizon;
        trace_plot(report, gp.alpha.trace);
      } else {
        throw cfdim::DomainError("profile needs --psi or --nk/--sk");
      }
    };
  });

  // ---- verify -------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "oracles and empirical estimators");
  ver->require_subcommand(1);

  auto* vb = ver->add_subcommand("band", "dyadic band counts of cylinder lengths");
  vb->add_option("--k", k_words, "word length")->required();
  vb->add_option("--mmax", m_max, "largest dyadic band");
  vb->add_option("--cap", cap_opt, "digit bound (0 = unbounded)");
  vb->callback([&] {
    run = [&] {
      long long cap = cap_opt >= 0 ? cap_opt : cfg.cap;
      auto bc = cfdim::band_counts(
          static_cast<int>(k_words), m_max, cap,
          cfg.enum_cap > 0 ? static_cast<std::uint64_t>(cfg.enum_cap)
                           : 400'000'000ULL);
      report.query = "verify band k=" + std::to_string(k_words) +
                     " cap=" + std::to_string(cap);
      report.branch = "band-counts";
      report.lo = report.hi = static_cast<double>(bc.total);
      for (const auto& [m, c] : bc.table) {
        report.diagnostics["m" + std::to_string(m)] = static_cast<double>(c);
        report.plot.push_back({static_cast<double>(m), static_cast<double>(c)});
      }
      report.prov_M = static_cast<double>(cap);
      report.prov_n = k_words;
    };
  });

  auto* vl = ver->add_subcommand("lemma-np", "certified band-count threshold scan");
  vl->add_option("--theta", theta, "exponent theta")->required();
  vl->add_option("--eps", eps, "pressure slack epsilon");
  vl->add_option("--k", k_words, "word length")->required();
  vl->add_flag("--restricted", restricted, "digit-restricted variant");
  vl->add_option("--cap", cap_opt, "digit bound for the restricted variant");
  vl->callback([&] {
    run = [&] {
      auto mode = restricted ? cfdim::LemmaMode::Restricted
                             : cfdim::LemmaMode::Full;
      long long cap = cap_opt >= 0 ? cap_opt : cfg.cap;
      auto lc = cfdim::verify_lemma_np(theta, eps, static_cast<int>(k_words),
                                       mode, cap);
      report.query = "verify lemma-np theta=" + std::to_string(theta) +
                     " eps=" + std::to_string(eps) +
                     " k=" + std::to_string(k_words);
      report.branch = lc.found ? "threshold-met"
                               : (lc.refuted ? "threshold-refuted"
                                             : "threshold-open");
      report.lo = lc.count_log2;
      report.hi = lc.threshold_log2;
      report.diagnostics["found"] = lc.found ? 1 : 0;
      report.diagnostics["refuted"] = lc.refuted ? 1 : 0;
      report.diagnostics["m"] = lc.m;
      report.prov_M = static_cast<double>(cap);
      report.prov_n = k_words;
    };
  });

  auto* vc = ver->add_subcommand("cover", "cover estimators for a bounded-digit set");
  vc->add_option("--M", N, "digit bound")->required();
  vc->add_option("--scales", m_scales, "dyadic stopping scales");
  vc->add_option("--depth", levels, "depth cap");
  vc->callback([&] {
    run = [&] {
      std::vector<int> scales = m_scales;
      if (scales.empty())
        for (int m = 4; m <= 19; m += 3) scales.push_back(m);
      auto cover = cfdim::bounded_digit_cover(N, scales, levels);
      auto cov = cfdim::covering_estimate(cover);
      auto fal = cfdim::falconer_estimate(
          cfdim::bounded_digit_falconer_levels(N, levels));
      report.query = "verify cover M=" + std::to_string(N) +
                     " depth=" + std::to_string(levels);
      report.branch = "cover-estimates";
      report.lo = fal.value;
      report.hi = cov.value;
      report.diagnostics["covering"] = cov.value;
      report.diagnostics["falconer"] = fal.value;
      report.diagnostics["levels"] = static_cast<double>(cover.size());
      report.prov_M = static_cast<double>(N);
      report.prov_n = levels;
      trace_plot(report, cov.trace);
    };
  });

  auto* vw = ver->add_subcommand("wang-wu", "finite-level bisection oracle s_n(B)");
  vw->add_option("--B", B, "base B > 1")->required();
  vw->add_option("--n", depth, "level n")->required();
  vw->add_option("--trunc", digit_trunc, "digit truncation");
  vw->add_option("--rho-tol", rho_tol, "bisection tolerance");
  vw->callback([&] {
    run = [&] {
      auto w = cfdim::wang_wu_s_n(B, static_cast<int>(depth), digit_trunc,
                                  rho_tol);
      report.query = "verify wang-wu B=" + std::to_string(B) +
                     " n=" + std::to_string(depth);
      report.branch = "wang-wu-oracle";
      report.lo = w.lo;
      report.hi = w.hi;
      report.diagnostics["tail_bound"] = w.tail_bound;
      report.prov_M = digit_trunc;
      report.prov_n = w.n;
      report.prov_tol = rho_tol;
    };
  });

  auto* vx = ver->add_subcommand("boxcount", "seeded box-count slope");
  vx->add_option("--cap", cap_opt, "digit bound")->required();
  vx->add_option("--count", count, "sample size");
  vx->add_option("--depth", bc_depth, "expansion depth of samples");
  vx->add_option("--scales", bc_scales, "box widths delta");
  vx->callback([&] {
    run = [&] {
      std::vector<double> scales = bc_scales;
      if (scales.empty())
        for (double e = 4; e <= 12; e += 2) scales.push_back(std::pow(2.0, -e));
      auto bx = cfdim::boxcount_sample(cap_opt, count, bc_depth, scales,
                                       cfg.seed);
      report.query = "verify boxcount cap=" + std::to_string(cap_opt) +
                     " seed=" + std::to_string(cfg.seed);
      report.branch = "boxcount-sample";
      report.lo = report.hi = bx.slope;
      report.diagnostics["points"] = static_cast<double>(bx.points.size());
      report.prov_M = static_cast<double>(cap_opt);
      report.prov_n = count;
      for (const auto& [x, y] : bx.points) report.plot.push_back({x, y});
    };
  });

  // global options (--tol, --format, ...) are accepted after any subcommand
  for (auto* sub : {p, s, dim, prof, ver}) sub->fallthrough();
  for (auto* sub : {de, del, dfn, dls, dlm, dsum, dlr}) sub->fallthrough();
  for (auto* sub : {vb, vl, vc, vw, vx}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    run();
  } catch (const cfdim::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const cfdim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  // Wall-clock time would break bit-identical reruns; it is reported only
  // on request.
  double runtime = 0.0;
  if (const char* t = std::getenv("CFDIM_TIMING"); t && t[0] == '1')
    runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0).count();
  try {
    emit(report, cfg, out_path, plot_path, runtime);
  } catch (const cfdim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
