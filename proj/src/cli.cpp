#include "wheelperc/cli.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "wheelperc/cache.hpp"
#include "wheelperc/ct.hpp"
#include "wheelperc/dynamics.hpp"
#include "wheelperc/probabilities.hpp"
#include "wheelperc/qkz.hpp"
#include "wheelperc/simulator.hpp"
#include "wheelperc/symbolic.hpp"

namespace wheelperc {

using json = nlohmann::json;

namespace {

// Thrown for over-budget requests; reported with exit code 2.
struct ResourceCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  json doc;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int code = 0;
};

json matching_json(const Matching& m) { return json::parse(m.to_json()); }

json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

std::string scalar_str(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.doc.dump() << "\n";
    return;
  }
  const bool csv = format == "csv";
  const std::string sep = csv ? "," : " ";
  auto cell = [&](const std::string& s) { return csv ? csv_cell(s) : s; };
  if (!o.rows.empty()) {
    for (size_t i = 0; i < o.header.size(); ++i) out << (i ? sep : "") << cell(o.header[i]);
    if (!o.header.empty()) out << "\n";
    for (auto& r : o.rows) {
      for (size_t i = 0; i < r.size(); ++i) out << (i ? sep : "") << cell(r[i]);
      out << "\n";
    }
    return;
  }
  if (csv) out << "key,value\n";
  for (auto& [k, v] : o.doc.items()) out << cell(k) << (csv ? "," : ": ") << cell(scalar_str(v)) << "\n";
}

Matching need_matching(const std::string& s) {
  if (s.empty()) throw CLI::ValidationError("--matching", "required");
  return parse_matching(s);
}

void cap(bool over, const std::string& what) {
  if (over) throw ResourceCap("resource cap: " + what);
}

long parse_count(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size() || v < 1 || v > 1e12) throw CLI::ValidationError("--samples", "bad sample count " + s);
  return static_cast<long>(v);
}

std::string dyadic_form(const BigRational& v) {
  BigInt den = v.get_den();
  long e = 0;
  while (den > 1 && mpz_even_p(den.get_mpz_t())) {
    den /= 2;
    ++e;
  }
  if (den != 1 || e < 11) return to_string(v);
  return v.get_num().get_str() + "/2^" + std::to_string(e);
}

json report_json(const Report& r) {
  json j = {{"name", r.name}, {"checked", r.checked}, {"mismatches", r.mismatches.size()}, {"ok", r.ok()}};
  if (!r.ok()) j["first"] = r.mismatches.front();
  return j;
}

// --- commands ---------------------------------------------------------------

Output cmd_mu(int n) {
  cap(n < 1 || n > 8, "mu needs 1 <= n <= 8");
  Output o;
  const Basis& b = basis(n);
  auto alpha = cached_alpha(n);
  BigInt total = asm_count(n);
  o.doc = {{"n", n}, {"asm", big_json(total)}, {"entries", json::array()}};
  o.header = {"matching", "openers", "alpha", "mu"};
  for (int i = 0; i < b.dim(); ++i) {
    BigRational mu(alpha[i], total);
    mu.canonicalize();
    o.doc["entries"].push_back({{"matching", matching_json(b[i])}, {"alpha", big_json(alpha[i])}, {"mu", to_string(mu)}});
    o.rows.push_back({b[i].to_json(), b[i].openers_string(), alpha[i].get_str(), to_string(mu)});
  }
  return o;
}

Output cmd_cmatrix(int n, bool tilde) {
  cap(n < 1 || n > 7, "cmatrix needs 1 <= n <= 7");
  Output o;
  const Basis& b = basis(n);
  ZMatrix m = cached_c_matrix(n, tilde);
  o.doc = {{"n", n}, {"tilde", tilde}, {"order", json::array()}, {"matrix", json::array()}};
  o.header = {"row"};
  for (int j = 0; j < b.dim(); ++j) o.header.push_back(b[j].openers_string());
  for (int i = 0; i < b.dim(); ++i) {
    o.doc["order"].push_back(matching_json(b[i]));
    json row = json::array();
    std::vector<std::string> cells{b[i].openers_string()};
    for (int j = 0; j < b.dim(); ++j) {
      row.push_back(big_json(m(i, j)));
      cells.push_back(m(i, j).get_str());
    }
    o.doc["matrix"].push_back(row);
    o.rows.push_back(cells);
  }
  return o;
}

Output cmd_fpoly(const Matching& pi0) {
  cap(pi0.order() > 7, "fpoly needs order <= 7");
  Output o;
  SparseMultiPoly f = f_polynomial(pi0);
  o.doc = {{"matching", matching_json(pi0)}, {"terms", json::array()}};
  o.header = {"exponents", "coeff"};
  for (auto& [e, c] : f.terms) {
    o.doc["terms"].push_back({{"exponents", e}, {"coeff", big_json(c)}});
    std::string es;
    for (size_t i = 0; i < e.size(); ++i) es += (i ? " " : "") + std::to_string(e[i]);
    o.rows.push_back({es, c.get_str()});
  }
  return o;
}

Output cmd_prob(const Matching& pi0, int n, const std::string& route, int offset) {
  Output o;
  o.doc = {{"matching", matching_json(pi0)}, {"n", n}, {"route", route}};
  auto brute = [&] {
    cap(n > kBruteMaxN, "brute route needs n <= " + std::to_string(kBruteMaxN));
    return prob_submatching_brute(pi0, n, offset).value;
  };
  auto ct = [&] {
    cap(n > kCtMaxN, "ct route needs n <= " + std::to_string(kCtMaxN));
    return prob_submatching_ct(pi0, n).value;
  };
  if (route == "brute") {
    o.doc["value"] = to_string(brute());
  } else if (route == "ct") {
    o.doc["value"] = to_string(ct());
  } else {
    BigRational a = ct(), b = brute();
    o.doc["value"] = to_string(a);
    o.doc["ct"] = to_string(a);
    o.doc["brute"] = to_string(b);
    o.doc["agree"] = a == b;
    if (a != b) o.code = 1;
  }
  return o;
}

Output cmd_interpolate(const Matching& pi0, bool halfplane) {
  cap(pi0.order() > 3, "interpolation needs order <= 3 (ct nodes up to n=11)");
  Output o;
  RationalEventFunction q = interpolate_Q(pi0);
  BigRational h = halfplane_prob(q).value;
  if (halfplane) {
    o.doc = {{"matching", matching_json(pi0)}, {"value", to_string(h)}, {"Q", q.q_string()},
             {"witness_ok", q.witness_ok}};
  } else {
    json g = json::array();
    for (auto& c : q.g) g.push_back(to_string(c));
    o.doc = {{"matching", matching_json(pi0)}, {"k", q.k},         {"Q", q.q_string()},
             {"G", g},                         {"nodes", q.nodes}, {"witness", q.witness},
             {"witness_ok", q.witness_ok},     {"dyadic", q.dyadic}, {"halfplane", to_string(h)}};
  }
  if (!q.witness_ok) o.code = 1;
  return o;
}

Output cmd_anticluster(int k, int n) {
  Output o;
  if (n > 0) {
    cap(n < k, "anticluster needs n >= k");
    o.doc = {{"k", k}, {"n", n}, {"value", to_string(anti_cluster_prob(k, n).value)}};
    if (n <= kBruteMaxN) {
      BigRational b = anti_cluster_brute(k, n);
      o.doc["brute"] = to_string(b);
      o.doc["agree"] = b == anti_cluster_prob(k, n).value;
      if (b != anti_cluster_prob(k, n).value) o.code = 1;
    }
  } else {
    cap(k < 2, "half-plane anti-cluster needs k >= 2");
    o.doc = {{"k", k}, {"value", to_string(halfplane_anticluster(k).value)}};
  }
  return o;
}

Output cmd_ct(const std::string& what, int n, bool emit, std::ostream& out) {
  if (what != "asm") throw CLI::ValidationError("ct", "only 'asm' is supported");
  cap(n < 1 || n > 12, "ct asm needs 1 <= n <= 12");
  Output o;
  if (emit) {
    cap(n > 6, "--emit-poly needs n <= 6");
    OmegaProblem pr;
    pr.n = n;
    pr.f = SparseMultiPoly::constant(n, 1);
    pr.one_plus.assign(n, 0);
    for (int j = 0; j < n; ++j) pr.targets.push_back(2 * j);
    BigInt v = extract_coefficient(omega_factors(pr), pr.targets, [&](int var, const SparseMultiPoly& cur) {
      out << "# after z_" << var + 1 << ": " << cur.terms.size() << " terms\n";
      for (auto& [e, c] : cur.terms) {
        for (size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << ": " << c.get_str() << "\n";
      }
    });
    o.doc = {{"n", n}, {"asm", big_json(v)}};
    o.rows.push_back({v.get_str()});
    return o;
  }
  BigInt v = asm_via_ct(n);
  o.doc = {{"n", n}, {"asm", big_json(v)}};
  o.rows.push_back({v.get_str()});
  return o;
}

Output cmd_simulate(int n, const std::string& event, long samples, std::uint64_t seed, int threads,
                    const std::string& backend) {
  cap(n < 1 || n > 500, "simulate needs 1 <= n <= 500");
  SamplerOptions opt;
  opt.backend = parse_backend(backend);
  auto pred = parse_event(event);
  SampleStats s = estimate_event(n, pred, samples, seed, threads, opt);
  Output o;
  o.doc = {{"n", n},       {"event", event},         {"samples", s.samples},
           {"hits", s.hits}, {"estimate", s.estimate}, {"ci99", {s.ci_low, s.ci_high}},
           {"seed", seed},   {"backend", backend}};
  if (n <= 6) o.doc["exact"] = to_string(prob_brute(n, pred));
  return o;
}

Output cmd_verify(const std::string& suite, int max_n, std::ostream& err) {
  cap(max_n < 1 || max_n > 7, "verify needs 1 <= max-n <= 7");
  std::vector<std::pair<std::string, std::function<Report()>>> jobs;
  auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
  if (!(want("dynamics") || want("qkz") || want("ct") || want("probabilities") || want("symbolic")))
    throw CLI::ValidationError("--suite", "unknown suite " + suite);
  if (want("dynamics")) {
    for (int n = 1; n <= max_n; ++n) {
      jobs.emplace_back("dynamics", [n] { return verify_sum_rules(n); });
      jobs.emplace_back("dynamics", [n] { return verify_hamiltonian(n); });
    }
    for (int n = 1; n <= std::min(max_n, 5); ++n) jobs.emplace_back("dynamics", [n] { return verify_transfer_stationarity(n); });
    for (int n = 1; n <= std::min(max_n, 4); ++n) {
      jobs.emplace_back("dynamics", [n] { return verify_transfer_commuting(n); });
      jobs.emplace_back("dynamics", [n] { return verify_row_operators(n); });
      jobs.emplace_back("dynamics", [n] { return verify_generator(n); });
    }
  }
  if (want("qkz")) {
    for (int n = 1; n <= max_n; ++n) {
      jobs.emplace_back("qkz", [n] { return verify_triangularity(n); });
      jobs.emplace_back("qkz", [n] { return verify_ev1_expansion(n); });
      jobs.emplace_back("qkz", [n] { return verify_product_expansion(n); });
    }
    for (int n = 1; n <= std::min(max_n, 5); ++n) {
      jobs.emplace_back("qkz", [n] { return verify_c_recursion(n); });
      for (int p = 1; p <= 2; ++p) jobs.emplace_back("qkz", [n, p] { return verify_p_nesting(n, p); });
    }
    for (int k = 0; k <= 2; ++k)
      for (auto& pi0 : (k == 0 ? std::vector<Matching>{Matching()} : basis(k).list()))
        for (int n = k + 1; n <= max_n; ++n)
          jobs.emplace_back("qkz", [pi0, n] { return verify_submatching_expansion(pi0, n); });
  }
  if (want("ct")) {
    jobs.emplace_back("ct", [max_n] {
      Report r;
      r.name = "asm via ct up to n=" + std::to_string(max_n + 1);
      for (int n = 1; n <= max_n + 1; ++n) r.expect(asm_via_ct(n) == asm_count(n), "n=" + std::to_string(n));
      return r;
    });
  }
  if (want("probabilities")) {
    jobs.emplace_back("probabilities", [max_n] { return route_agreement(3, std::min(max_n, 6)); });
    for (int n = 3; n <= std::min(max_n, 6); ++n)
      jobs.emplace_back("probabilities", [n] { return inclusion_exclusion_checks(n); });
    jobs.emplace_back("probabilities", [max_n] { return nested_arcs_calibration(std::min(max_n, 6)); });
    jobs.emplace_back("probabilities", [max_n] {
      Report r;
      r.name = "anti-cluster closed form vs brute";
      for (int k = 1; k <= std::min(max_n, 6); ++k)
        for (int n = k; n <= std::min(max_n, 6); ++n)
          r.expect(anti_cluster_prob(k, n).value == anti_cluster_brute(k, n),
                   "k=" + std::to_string(k) + " n=" + std::to_string(n));
      return r;
    });
  }
  if (want("symbolic"))
    for (int n = 1; n <= std::min(max_n, 4); ++n)
      jobs.emplace_back("symbolic", [n] { return verify_psi_symbolic(n, n == 4 ? 40 : 0, 1); });
  Output o;
  o.doc = {{"suite", suite}, {"max_n", max_n}, {"reports", json::array()}};
  o.header = {"status", "group", "checks", "name"};
  bool all_ok = true;
  for (auto& [group, job] : jobs) {
    auto t0 = std::chrono::steady_clock::now();
    Report r = job();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << (r.ok() ? "ok   " : "FAIL ") << r.name << " (" << secs << "s)\n";
    json j = report_json(r);
    j["group"] = group;
    o.doc["reports"].push_back(j);
    o.rows.push_back({r.ok() ? "PASS" : "FAIL", group, std::to_string(r.checked), r.name});
    all_ok = all_ok && r.ok();
  }
  o.doc["ok"] = all_ok;
  o.code = all_ok ? 0 : 1;
  return o;
}

Output cmd_tables(const std::string& table, std::ostream& err) {
  Output o;
  if (table == "submatching") {
    o.doc = {{"table", table}, {"rows", json::array()}};
    o.header = {"event", "k", "value", "Q", "witness_ok"};
    for (int k = 1; k <= 3; ++k)
      for (auto& pi0 : basis(k).list()) {
        err << "interpolating " << pi0.to_json() << "\n";
        RationalEventFunction q = interpolate_Q(pi0);
        std::string v = dyadic_form(halfplane_prob(q).value);
        o.doc["rows"].push_back({{"event", matching_json(pi0)}, {"k", k}, {"value", v}, {"Q", q.q_string()},
                                 {"witness_ok", q.witness_ok}});
        o.rows.push_back({pi0.to_json(), std::to_string(k), v, q.q_string(), q.witness_ok ? "true" : "false"});
        if (!q.witness_ok) o.code = 1;
      }
    return o;
  }
  if (table == "anticluster") {
    o.doc = {{"table", table}, {"rows", json::array()}};
    o.header = {"k", "value"};
    for (int k = 2; k <= 8; ++k) {
      std::string v = dyadic_form(halfplane_anticluster(k).value);
      o.doc["rows"].push_back({{"k", k}, {"value", v}});
      o.rows.push_back({std::to_string(k), v});
    }
    return o;
  }
  if (table == "cmatrix") {
    o.doc = {{"table", table}, {"matrices", json::array()}};
    o.header = {"n", "matrix", "row", "entries"};
    for (int n = 2; n <= 4; ++n)
      for (bool tilde : {false, true}) {
        Output m = cmd_cmatrix(n, tilde);
        o.doc["matrices"].push_back(m.doc);
        for (auto& r : m.rows) {
          std::string entries;
          for (size_t i = 1; i < r.size(); ++i) entries += (i > 1 ? " " : "") + r[i];
          o.rows.push_back({std::to_string(n), tilde ? "Ctilde" : "C", r[0], entries});
        }
      }
    return o;
  }
  throw CLI::ValidationError("--table", "unknown table " + table);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"wheelperc: exact connectivity probabilities for cylindrical loop percolation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  int threads = 1;
  app.add_option("--format", format, "json, csv or plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  int n = 0, k = 0, offset = 1, max_n = 5;
  std::string matching, route = "ct", event, samples = "100000", suite = "all", table, what, backend = "frontier";
  std::uint64_t seed = 42;
  bool tilde = false, emit = false;

  auto* mu = app.add_subcommand("mu", "stationary distribution mu_n as alpha = ASM(n) mu");
  mu->add_option("--n", n)->required();
  auto* cm = app.add_subcommand("cmatrix", "C_n or its inverse");
  cm->add_option("--n", n)->required();
  cm->add_flag("--tilde", tilde);
  auto* fp = app.add_subcommand("fpoly", "submatching polynomial F");
  fp->add_option("--matching", matching)->required();
  auto* pr = app.add_subcommand("prob", "finite-n submatching probability");
  pr->add_option("--matching", matching)->required();
  pr->add_option("--n", n)->required();
  pr->add_option("--route", route)->check(CLI::IsMember({"ct", "brute", "both"}));
  pr->add_option("--offset", offset, "window start for the brute route");
  auto* ip = app.add_subcommand("interpolate", "rational-function numerator Q by interpolation");
  ip->add_option("--matching", matching)->required();
  auto* hp = app.add_subcommand("halfplane", "half-plane submatching probability");
  hp->add_option("--matching", matching)->required();
  auto* ac = app.add_subcommand("anticluster", "anti-cluster probability; half-plane value without --n");
  ac->add_option("--k", k)->required();
  ac->add_option("--n", n);
  auto* ct = app.add_subcommand("ct", "constant-term computations");
  ct->add_option("what", what, "asm")->required();
  ct->add_option("--n", n)->required();
  ct->add_flag("--emit-poly", emit);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate");
  sim->add_option("--n", n)->required();
  sim->add_option("--event", event, "submatching:[[1,2]], anticluster:K, arc:I,J")->required();
  sim->add_option("--samples", samples);
  sim->add_option("--seed", seed);
  sim->add_option("--backend", backend)->check(CLI::IsMember({"frontier", "plaquette"}));
  auto* ver = app.add_subcommand("verify", "run the property suite");
  ver->add_option("--suite", suite);
  ver->add_option("--max-n", max_n);
  auto* tab = app.add_subcommand("tables", "reproduce the probability tables");
  tab->add_option("--table", table)->required()->check(CLI::IsMember({"submatching", "anticluster", "cmatrix"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Output o;
    std::string fmt = format.empty() ? "json" : format;
    if (*mu) o = cmd_mu(n);
    else if (*cm) o = cmd_cmatrix(n, tilde);
    else if (*fp) o = cmd_fpoly(need_matching(matching));
    else if (*pr) o = cmd_prob(need_matching(matching), n, route, offset);
    else if (*ip) o = cmd_interpolate(need_matching(matching), false);
    else if (*hp) o = cmd_interpolate(need_matching(matching), true);
    else if (*ac) o = cmd_anticluster(k, n);
    else if (*ct) {
      if (format.empty()) fmt = "plain";
      o = cmd_ct(what, n, emit, out);
    } else if (*sim) o = cmd_simulate(n, event, parse_count(samples), seed, threads, backend);
    else if (*ver) o = cmd_verify(suite, max_n, err);
    else if (*tab) o = cmd_tables(table, err);
    render(o, fmt, out);
    return o.code;
  } catch (const ResourceCap& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wheelperc"};
  for (auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wheelperc
