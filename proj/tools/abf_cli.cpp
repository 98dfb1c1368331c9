// abf: tables, identity suites and the lattice -> continuum comparison.
//
// Exit status: 0 ok, 1 identity-suite failure, 2 usage or argument error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "abf/continuum_ff.hpp"
#include "abf/lattice_ff.hpp"
#include "abf/lhp.hpp"
#include "abf/verify.hpp"
#include "abf/weights.hpp"

#ifndef ABF_VERSION
#define ABF_VERSION "0.0.0"
#endif

using abf::cplx;
using json = nlohmann::ordered_json;

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a", "a+bi", "a-bi", "bi", "i", "-i"
cplx parse_complex(std::string s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw usage_error("empty complex number");
  auto num = [&](const std::string& p) -> double {
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(p, &used);
    } catch (...) {
      used = 0;
    }
    if (used != p.size()) throw usage_error("cannot parse '" + s + "' as a complex number");
    return v;
  };
  if (t.back() != 'i' && t.back() != 'j') return num(t);
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
  if (split == std::string::npos) return {0.0, num(t)};
  return {num(t.substr(0, split)), num(t.substr(split))};
}

std::vector<cplx> parse_list(const std::vector<std::string>& v) {
  std::vector<cplx> r;
  for (auto& s : v) r.push_back(parse_complex(s));
  return r;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json cjson(const std::vector<cplx>& v) {
  json a = json::array();
  for (auto z : v) a.push_back(cjson(z));
  return a;
}

// ---- tables ---------------------------------------------------------------

using Cell = std::variant<long, double, cplx, std::string, bool>;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;
};

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

void write_csv(std::ostream& os, const json& meta, const Table& t) {
  for (auto& [key, val] : meta.items()) os << "# " << key << "=" << val.dump() << "\n";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ",";
    first = false;
  };
  // complex columns are known from the first row; an empty table prints plain names
  for (std::size_t c = 0; c < t.cols.size(); ++c) {
    bool cx = !t.rows.empty() && std::holds_alternative<cplx>(t.rows[0][c]);
    if (cx) {
      sep(), os << t.cols[c] << "_re";
      sep(), os << t.cols[c] << "_im";
    } else {
      sep(), os << t.cols[c];
    }
  }
  os << "\n";
  for (auto& r : t.rows) {
    first = true;
    for (auto& cell : r)
      std::visit(
          [&](auto&& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, cplx>) {
              sep(), os << num(v.real());
              sep(), os << num(v.imag());
            } else if constexpr (std::is_same_v<V, double>) {
              sep(), os << num(v);
            } else if constexpr (std::is_same_v<V, bool>) {
              sep(), os << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<V, std::string>) {
              sep(), os << '"' << v << '"';
            } else {
              sep(), os << v;
            }
          },
          cell);
    os << "\n";
  }
}

void write_json(std::ostream& os, const json& meta, const Table& t) {
  json data = json::array();
  for (auto& r : t.rows) {
    json o = json::object();
    for (std::size_t c = 0; c < t.cols.size(); ++c)
      std::visit(
          [&](auto&& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, cplx>)
              o[t.cols[c]] = cjson(v);
            else
              o[t.cols[c]] = v;
          },
          r[c]);
    data.push_back(std::move(o));
  }
  json doc = json::object();
  doc["meta"] = meta;
  doc["data"] = std::move(data);
  os << doc.dump(2) << "\n";
}

// Rows are computed into fixed slots, so output does not depend on the thread count.
template <class F>
void parallel_rows(std::size_t n, int threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) f(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// ---- configuration ----------------------------------------------------------

struct RunConfig {
  int k = 3;
  double x = 0.5;
  std::optional<double> eps;
  std::optional<int> max_terms;
  std::string format = "csv";
  std::string out;
  int threads = 1;

  int a = 1, b = 1, m = 0, n = 0;
  std::vector<std::string> u, v, vp, beta, betap;
  std::vector<double> xs;
  double beta_min = -5.0, beta_max = 5.0;
  int points = 101;
  bool hat = false;

  abf::Truncation trunc() const {
    abf::Truncation t = abf::default_truncation();
    if (eps) t.eps = *eps;
    if (max_terms) t.max_terms = *max_terms;
    return t;
  }

  json meta(const std::string& cmd) const {
    auto t = trunc();
    json j = json::object();
    j["command"] = cmd;
    j["k"] = k;
    j["x"] = x;
    j["eps"] = t.eps;
    j["max_terms"] = t.max_terms;
    j["version"] = ABF_VERSION;
    j["threads"] = threads;
    return j;
  }
};

void add_common(CLI::App* s, RunConfig& c) {
  s->add_option("--k", c.k, "level k (>= 2)")->capture_default_str();
  s->add_option("--x", c.x, "nome x in (0,1)")->capture_default_str();
  s->add_option("--eps", c.eps, "truncation tolerance (default 1e-14 or ABF_EPS)");
  s->add_option("--max-terms", c.max_terms, "series term cap (default 4096 or ABF_MAX_TERMS)");
  s->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  s->add_option("--out", c.out, "output file (default stdout)");
  s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void require_trace_level(int k) {
  if (k == 2)
    throw usage_error(
        "k = 2 is excluded: the Ising case has an empty convergence domain for the trace "
        "construction, which assumes k >= 3");
}

// ---- subcommands ----------------------------------------------------------------

int cmd_weights(const RunConfig& c, json& meta, Table& t) {
  abf::ModelParams mp(c.k, c.x);
  auto tr = c.trunc();
  std::vector<double> us;
  for (auto& s : parse_list(c.u)) us.push_back(s.real());
  if (us.empty())
    for (int i = 1; i <= 9; ++i) us.push_back(-0.05 * c.k * i);
  meta["u"] = us;
  auto rep = abf::weights::verify_relations(mp, us, tr);
  meta["residuals"] = {{"unitarity", rep.unitarity},
                       {"second_inversion", rep.second_inversion},
                       {"ybe", rep.ybe},
                       {"rho_inverse", rep.rho_inverse},
                       {"rho_crossing", rep.rho_crossing}};
  t.cols = {"u", "a", "b", "c", "d", "W"};
  std::vector<std::vector<std::vector<Cell>>> slots(us.size());
  parallel_rows(us.size(), c.threads, [&](std::size_t i) {
    const int k = c.k;
    for (int a = 1; a <= k + 1; ++a)
      for (int b : {a - 1, a + 1})
        for (int cc : {a - 1, a + 1})
          for (int d : {b - 1, b + 1}) {
            abf::weights::HeightQuad q{a, b, cc, d, us[i]};
            if (!abf::weights::admissible(q, k)) continue;
            slots[i].push_back({us[i], long(a), long(b), long(cc), long(d),
                                abf::weights::weight(q, mp, tr)});
          }
  });
  for (auto& s : slots)
    for (auto& r : s) t.rows.push_back(std::move(r));
  return 0;
}

int cmd_lhp(const RunConfig& c, json& meta, Table& t) {
  abf::ModelParams mp(c.k, c.x);
  auto tr = c.trunc();
  meta["m"] = c.m;
  t.cols = {"a", "m", "P", "P_a_minus_1_a", "P_a_plus_1_a"};
  double sum = 0;
  for (int a = 1; a <= c.k + 1; ++a) {
    double p = abf::lhp::one_point_lhp(a, c.m, mp, tr);
    sum += p;
    t.rows.push_back({long(a), long(c.m), p, abf::lhp::two_point_lhp(a - 1, a, c.m, mp, tr),
                      abf::lhp::two_point_lhp(a + 1, a, c.m, mp, tr)});
  }
  meta["sum_P"] = sum;
  return 0;
}

// v-parameters from --v/--vp, or from rapidities --beta/--betap
void trace_args(const RunConfig& c, const abf::ModelParams& mp, json& meta, std::vector<cplx>& v,
                std::vector<cplx>& vp) {
  if (!c.beta.empty() || !c.betap.empty()) {
    if (!c.v.empty() || !c.vp.empty()) throw usage_error("give either --v/--vp or --beta/--betap");
    auto b = parse_list(c.beta), bp = parse_list(c.betap);
    for (auto z : b) v.push_back(abf::lattice_ff::rapidity_to_v(z, mp));
    for (auto z : bp) vp.push_back(abf::lattice_ff::rapidity_to_v(z, mp));
    meta["beta"] = cjson(b);
    meta["betap"] = cjson(bp);
  } else {
    v = parse_list(c.v);
    vp = parse_list(c.vp);
  }
  if (v.empty() && vp.empty() && c.n > 0)
    for (int j = 0; j < c.n; ++j) {
      v.push_back(cplx(0.3 - 0.1 * j, 0.2));
      vp.push_back(cplx(0.1 + 0.1 * j, -0.15));
    }
  if (int(v.size()) != c.n || int(vp.size()) != c.n)
    throw usage_error("--n must equal the number of --v and --vp (or --beta/--betap) values");
  meta["v"] = cjson(v);
  meta["vp"] = cjson(vp);
}

int cmd_trace(const RunConfig& c, json& meta, Table& t) {
  require_trace_level(c.k);
  abf::ModelParams mp(c.k, c.x);
  auto tr = c.trunc();
  meta["a"] = c.a;
  meta["m"] = c.m;
  meta["n"] = c.n;
  meta["hat"] = c.hat;
  std::vector<cplx> v, vp;
  trace_args(c, mp, meta, v, vp);
  t.cols = {"a", "m", "n", "Q"};
  std::vector<Cell> row{long(c.a), long(c.m), long(c.n),
                        abf::lattice_ff::q_trace({c.a, c.m, v, vp}, mp, tr)};
  if (c.hat) {
    t.cols.push_back("Q_hat");
    row.push_back(abf::lattice_ff::hat_q(c.a, v, vp, mp, tr));
  }
  t.rows.push_back(std::move(row));
  return 0;
}

int cmd_scaling(const RunConfig& c, json& meta, Table& t) {
  require_trace_level(c.k);
  auto tr = c.trunc();
  auto b = parse_list(c.beta), bp = parse_list(c.betap);
  if (b.empty() && bp.empty()) b = {0.7}, bp = {0.0};
  std::vector<double> xs = c.xs.empty() ? std::vector<double>{0.5, 0.6, 0.7, 0.8, 0.9} : c.xs;
  meta["a"] = c.a;
  meta["beta"] = cjson(b);
  meta["betap"] = cjson(bp);
  meta["xs"] = xs;
  meta["x"] = xs;
  auto tab = abf::continuum_ff::scaling_compare(c.a, b, bp, c.k, xs, tr);
  meta["monotone"] = tab.monotone;
  meta["ratios_monotone"] = tab.ratios_monotone;
  t.cols = {"x", "lattice", "closed", "rel_err", "ratio_1bar1", "ratio_1bar1_err", "ratio_11",
            "ratio_11_err"};
  for (auto& r : tab.rows)
    t.rows.push_back({r.x, r.lattice, r.closed, r.rel_err, r.ratio_1bar1, r.ratio_1bar1_err,
                      r.ratio_11, r.ratio_11_err});
  return 0;
}

int cmd_smatrix(const RunConfig& c, json& meta, Table& t) {
  if (c.points < 1) throw usage_error("--points must be positive");
  meta["a"] = c.a;
  meta["b"] = c.b;
  meta["beta_min"] = c.beta_min;
  meta["beta_max"] = c.beta_max;
  meta["points"] = c.points;
  t.cols = {"beta", "S", "S_product"};
  std::vector<std::vector<Cell>> rows(c.points);
  parallel_rows(rows.size(), c.threads, [&](std::size_t i) {
    double be = c.points == 1 ? c.beta_min
                              : c.beta_min + (c.beta_max - c.beta_min) * double(i) / (c.points - 1);
    rows[i] = {be, abf::continuum_ff::s_matrix(c.a, c.b, be, c.k),
               abf::continuum_ff::s_matrix_product(c.a, c.b, be, c.k)};
  });
  t.rows = std::move(rows);
  return 0;
}

int cmd_verify(const RunConfig& c, json& meta, Table& t) {
  abf::ModelParams mp(c.k, c.x);  // validates k, x
  auto suites = abf::verify::full_suite(c.k, c.x, c.trunc());
  t.cols = {"suite", "check", "residual", "threshold", "pass"};
  bool ok = true;
  json notes = json::array();
  for (auto& s : suites) {
    for (auto& ch : s.checks) {
      t.rows.push_back({s.name, ch.name, ch.residual, ch.exact ? 0.0 : ch.threshold, ch.pass()});
      if (!ch.pass()) {
        ok = false;
        std::fprintf(stderr, "FAIL %s: %s residual %.3e\n", s.name.c_str(), ch.name.c_str(),
                     ch.residual);
      }
    }
    for (auto& n : s.notes) notes.push_back(n);
  }
  if (c.k < 3) notes.push_back("trace and continuum suites need k >= 3 and were not run");
  meta["notes"] = notes;
  meta["pass"] = ok;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ABF lattice and Z_k form factors"};
  app.set_version_flag("--version", ABF_VERSION);
  app.require_subcommand(1);
  RunConfig c;

  auto* w = app.add_subcommand("weights", "Boltzmann weights and relation residuals");
  add_common(w, c);
  w->add_option("--u", c.u, "spectral parameters (comma separated)")->delimiter(',');

  auto* l = app.add_subcommand("lhp", "one- and two-point local height probabilities");
  add_common(l, c);
  l->add_option("--m", c.m, "boundary label")->capture_default_str();

  auto* tf = app.add_subcommand("trace-ff", "lattice trace Q_a^(n,n)(m) and its Fourier transform");
  add_common(tf, c);
  tf->add_option("--a", c.a, "central height")->capture_default_str();
  tf->add_option("--m", c.m, "boundary label")->capture_default_str();
  tf->add_option("--n", c.n, "number of particle pairs")->capture_default_str();
  tf->add_option("--v", c.v, "Psi_+ parameters, complex")->delimiter(',');
  tf->add_option("--vp", c.vp, "Psi_- parameters, complex")->delimiter(',');
  tf->add_option("--beta", c.beta, "rapidities for --v")->delimiter(',');
  tf->add_option("--betap", c.betap, "rapidities for --vp")->delimiter(',');
  tf->add_flag("--hat", c.hat, "also compute the Fourier transform over (a', m)");

  auto* sf = app.add_subcommand("scaling-ff", "lattice vs continuum form factor along x -> 1");
  add_common(sf, c);
  sf->add_option("--a", c.a, "odd height label")->capture_default_str();
  sf->add_option("--beta", c.beta, "rapidities beta")->delimiter(',');
  sf->add_option("--betap", c.betap, "rapidities beta'")->delimiter(',');
  sf->add_option("--xs", c.xs, "increasing x sequence")->delimiter(',');

  auto* sm = app.add_subcommand("smatrix", "S_ab on a real rapidity grid");
  add_common(sm, c);
  sm->add_option("--a", c.a, "particle a")->capture_default_str();
  sm->add_option("--b", c.b, "particle b")->capture_default_str();
  sm->add_option("--beta-min", c.beta_min)->capture_default_str();
  sm->add_option("--beta-max", c.beta_max)->capture_default_str();
  sm->add_option("--points", c.points)->capture_default_str();

  auto* vf = app.add_subcommand("verify", "run the identity suites");
  add_common(vf, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  json meta = c.meta(name);
  Table table;
  int status = 0;
  try {
    if (name == "weights") status = cmd_weights(c, meta, table);
    else if (name == "lhp") status = cmd_lhp(c, meta, table);
    else if (name == "trace-ff") status = cmd_trace(c, meta, table);
    else if (name == "scaling-ff") status = cmd_scaling(c, meta, table);
    else if (name == "smatrix") status = cmd_smatrix(c, meta, table);
    else status = cmd_verify(c, meta, table);
  } catch (const usage_error& e) {
    std::fprintf(stderr, "abf %s: %s\n", name.c_str(), e.what());
    return 2;
  } catch (const abf::domain_error& e) {
    std::fprintf(stderr, "abf %s: %s\n", name.c_str(), e.what());
    return 2;
  } catch (const abf::pole_error& e) {
    std::fprintf(stderr, "abf %s: %s at %g%+gi\n", name.c_str(), e.what(), e.where.real(),
                 e.where.imag());
    return 2;
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      std::fprintf(stderr, "abf: cannot open %s\n", c.out.c_str());
      return 2;
    }
    os = &file;
  }
  if (c.format == "json")
    write_json(*os, meta, table);
  else
    write_csv(*os, meta, table);
  return status;
}
