#include "spheridir/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "spheridir/dirichlet.hpp"
#include "spheridir/gramian.hpp"
#include "spheridir/measures.hpp"
#include "spheridir/moment.hpp"
#include "spheridir/spaces.hpp"
#include "spheridir/tuples.hpp"

namespace spheridir {

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Body of a report plus its pass flag and optional CSV rendering.
struct Outcome {
  json report;
  bool pass = true;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

std::string num(double x) { return json(x).dump(); }

json load_input(const RunConfig& cfg) {
  std::string text;
  if (cfg.input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(cfg.input);
    if (!f) throw InputError("cannot open input file '" + cfg.input + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON in input: ") + e.what());
  }
}

int require_range(const std::optional<int>& v, int fallback, int lo, int hi, const char* name) {
  const int x = v.value_or(fallback);
  if (x < lo || x > hi)
    throw InputError(std::string("--") + name + " must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  return x;
}

Measure input_measure(const RunConfig& cfg) {
  if (cfg.input.empty()) return Measure::surface(require_range(cfg.d, 2, 1, 8, "d"));
  auto j = load_input(cfg);
  if (j.contains("measure")) j = j["measure"];
  return measure_from_json(j);
}

// A space descriptor, a tuple ({"gram", "ops"}), or a bare Gram table.
TruncatedTuple input_tuple(const RunConfig& cfg, int N, json& echo, bool& orthogonal) {
  if (cfg.input.empty()) throw InputError("this command needs --input");
  const auto j = load_input(cfg);
  if (j.contains("ops")) {
    auto t = tuple_from_json(j);
    echo = tuple_to_json(t);
    orthogonal = t.gram().is_diagonal();
    return t;
  }
  SpaceSpec s = j.contains("type") ? space_from_json(j) : SpaceSpec{CustomSpace{GramTable::from_json(j)}};
  echo = space_to_json(s);
  const auto g = gram(s, N);
  orthogonal = g.is_diagonal();
  return multiplication_tuple(g);
}

GramTable input_moments(const RunConfig& cfg, int N, json& echo, std::optional<Measure>& mu) {
  if (!cfg.input.empty()) {
    auto j = load_input(cfg);
    if (j.contains("entries")) {
      echo = json{{"table", true}};
      auto t = GramTable::from_json(j);
      if (N < t.degree()) t = t.truncated(N);
      return t;
    }
  }
  mu = input_measure(cfg);
  echo = measure_to_json(*mu);
  return forward_moments(*mu, N);
}

json base_config(const RunConfig& cfg) {
  json c;
  if (cfg.d) c["d"] = *cfg.d;
  if (cfg.N) c["N"] = *cfg.N;
  if (cfg.k) c["k"] = *cfg.k;
  if (cfg.m) c["m"] = *cfg.m;
  return c;
}

// Monomial grid z^alpha e_slot for |alpha| <= D, plus seeded random polynomials.
std::vector<std::pair<VectorPolynomial, std::string>> test_polynomials(int d, std::size_t r, int D,
                                                                       std::uint64_t seed,
                                                                       int random_count) {
  std::vector<std::pair<VectorPolynomial, std::string>> out;
  for (const auto& a : enumerate_upto(d, D))
    for (std::size_t s = 0; s < r; ++s)
      out.emplace_back(VectorPolynomial::monomial(a, r, s),
                       "z^" + a.to_string() + (r > 1 ? "e" + std::to_string(s) : ""));
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::uniform_int_distribution<int> coef(-3, 3);
  const auto labels = enumerate_upto(d, D);
  for (int i = 0; i < random_count; ++i) {
    VectorPolynomial p(d, r);
    for (const auto& a : labels)
      for (std::size_t s = 0; s < r; ++s) p.add_term(a, s, ComplexRational(coef(rng), coef(rng)));
    out.emplace_back(std::move(p), "random" + std::to_string(i));
  }
  return out;
}

Outcome cmd_verify_richter(const RunConfig& cfg) {
  const auto mu = input_measure(cfg);
  const int D = require_range(cfg.N, 2, 0, 8, "N");
  const int K = require_range(cfg.k, 2, 1, 8, "k");
  if (cfg.invariant_kernel && mu.dim() < 2)
    throw InputError("--invariant-kernel needs d >= 2; both kernels agree for d = 1");

  const auto polys = test_polynomials(mu.dim(), mu.block(), D, cfg.seed, 0);
  std::vector<RichterCase> cases;
  for (int k = 1; k <= K; ++k) {
    for (const auto& [p, pl] : polys)
      for (const auto& [q, ql] : polys) cases.push_back({p, q, k, pl + "," + ql});
    const auto rnd = test_polynomials(mu.dim(), mu.block(), D, cfg.seed + static_cast<std::uint64_t>(k), 2);
    for (std::size_t i = rnd.size() - 2; i + 1 < rnd.size(); ++i)
      cases.push_back({rnd[i].first, rnd[i + 1].first, k, rnd[i].second + "," + rnd[i + 1].second});
  }
  McConfig mc;
  mc.sample_count = cfg.samples;
  mc.seed = cfg.seed;
  const auto reports = cfg.invariant_kernel ? falsify_invariant_kernel_batch(cases, mu, mc)
                                            : verify_richter_batch(cases, mu, mc);

  Outcome o;
  o.csv_header = {"label", "k", "mode", "kernel", "residual_re", "residual_im", "std_error",
                  "residual_exact"};
  json list = json::array();
  std::size_t within = 0, significant = 0;
  bool exact = true;
  for (const auto& r : reports) {
    list.push_back(report_to_json(r));
    if (r.consistent_with_zero(3.0)) ++within;
    if (r.significant(10.0)) ++significant;
    exact = exact && r.mode == VerifyMode::exact;
    o.csv_rows.push_back({r.label, std::to_string(r.k),
                          r.mode == VerifyMode::exact ? "exact" : "monte_carlo",
                          r.kernel == PoissonKind::euclidean ? "poisson" : "invariant_poisson",
                          num(r.residual.value.real()), num(r.residual.value.imag()),
                          num(r.residual.std_error),
                          r.residual.exact ? format_rational(r.residual.exact->re()) + "+" +
                                                 format_rational(r.residual.exact->im()) + "i"
                                           : ""});
  }
  const double frac = reports.empty() ? 1.0 : double(within) / double(reports.size());
  json summary{{"cases", reports.size()}, {"within_3_sigma", within},
               {"beyond_10_sigma", significant}, {"fraction_within_3_sigma", frac}};
  if (cfg.invariant_kernel) {
    summary["criterion"] = "falsification: some residual beyond 10 standard errors";
    o.pass = significant > 0;
  } else if (exact) {
    summary["criterion"] = "every residual is exactly 0";
    o.pass = within == reports.size();
  } else {
    summary["criterion"] = "at least 95% of residuals within 3 standard errors";
    o.pass = frac >= 0.95;
  }
  o.report["measure"] = measure_to_json(mu);
  o.report["cases"] = std::move(list);
  o.report["summary"] = std::move(summary);
  return o;
}

Outcome cmd_radius_identity(const RunConfig& cfg) {
  const auto mu = input_measure(cfg);
  const int D = require_range(cfg.N, 2, 0, 8, "N");
  Rational R;
  try {
    R = parse_rational(cfg.radius);
  } catch (const std::exception&) {
    throw InputError("--radius must be a rational such as 1/2");
  }
  const auto polys = test_polynomials(mu.dim(), mu.block(), D, cfg.seed, 1);
  Outcome o;
  o.csv_header = {"label", "residual", "limit_gap_re", "limit_gap_im"};
  json list = json::array();
  for (const auto& [p, pl] : polys)
    for (const auto& [q, ql] : polys) {
      auto r = verify_radius_identity(p, q, mu, R);
      r.label = pl + "," + ql;
      const auto gap = radius_limit_gap(p, q, mu, R);
      auto j = report_to_json(r);
      j["limit_gap"] = {{"re", format_rational(gap.re())}, {"im", format_rational(gap.im())}};
      list.push_back(std::move(j));
      o.pass = o.pass && r.residual.exact->is_zero();
      o.csv_rows.push_back({r.label, r.residual.exact->is_zero() ? "0" : "nonzero",
                            format_rational(gap.re()), format_rational(gap.im())});
    }
  o.report["measure"] = measure_to_json(mu);
  o.report["radius"] = format_rational(R);
  o.report["cases"] = std::move(list);
  return o;
}

Outcome cmd_classify(const RunConfig& cfg) {
  const int N = require_range(cfg.N, 6, 1, 12, "N");
  json echo;
  bool orthogonal = false;
  const auto t = input_tuple(cfg, N, echo, orthogonal);
  std::optional<Gramian> g;
  std::string gramian_error;
  try {
    g = gramian_of(t);
  } catch (const std::invalid_argument& e) {
    gramian_error = e.what();
  }
  Outcome o;
  o.csv_header = {"m", "window", "class", "rank", "theorem_ii", "theorem_iii", "theorem_iv"};
  json rows = json::array();
  const bool commutes = t.commutes();
  o.pass = commutes;
  for (int m = 1; m <= std::min(4, t.degree()); ++m) {
    const auto c = classify(t, m);
    json row{{"m", m}, {"window", c.window}, {"class", to_string(c.kind)}, {"rank", c.rank}};
    std::vector<std::string> csv{std::to_string(m), std::to_string(c.window), to_string(c.kind),
                                 std::to_string(c.rank), "", "", ""};
    if (g && m <= g->table.degree()) {
      const auto th = check_theorem(g->table, m);
      row["theorem"] = theorem_to_json(th);
      csv[4] = th.ii.holds ? "pass" : "fail";
      csv[5] = th.iii.holds ? "pass" : "fail";
      csv[6] = th.iv.holds ? "pass" : "fail";
      if (c.kind != TupleClass::inconclusive && !th.inconclusive &&
          (c.kind == TupleClass::isometry) != th.ii.holds)
        o.pass = false;
    }
    rows.push_back(std::move(row));
    o.csv_rows.push_back(std::move(csv));
  }
  o.report["input"] = echo;
  o.report["commutes"] = commutes;
  o.report["monomial_orthogonal"] = orthogonal;
  if (g) {
    o.report["wandering_frame"] = {{"dimension", g->frame.cols()},
                                   {"normalized", g->normalized},
                                   {"assumption", "wandering subspace property checked to degree N only"}};
  } else {
    o.report["gramian_error"] = gramian_error;
  }
  o.report["rows"] = std::move(rows);
  return o;
}

Outcome cmd_gramian(const RunConfig& cfg) {
  const int N = require_range(cfg.N, 6, 1, 12, "N");
  const int m = require_range(cfg.m, 2, 1, N, "m");
  json echo;
  bool orthogonal = false;
  const auto t = input_tuple(cfg, N, echo, orthogonal);
  const auto g = gramian_of(t);
  Outcome o;
  o.report["input"] = echo;
  o.report["gramian"] = g.table.to_json();
  o.report["frame"] = {{"dimension", g.frame.cols()},
                       {"normalized", g.normalized},
                       {"level", g.frame_level}};
  if (m > g.table.degree()) throw InputError("--m exceeds the Gramian degree bound");
  const auto th = check_theorem(g.table, m);
  const auto closed = defect(g.table, m);
  const bool recursion = closed == defect_recursive(g.table, m);
  o.report["defect"] = closed.to_json();
  o.report["defect_recursion_agrees"] = recursion;
  o.report["theorem"] = theorem_to_json(th);
  o.pass = recursion && th.ii.holds == th.iii.holds && th.ii.holds == th.iv.holds;
  o.csv_header = {"alpha", "beta", "i", "j", "re", "im"};
  for (const auto& e : o.report["gramian"]["entries"])
    o.csv_rows.push_back({e["alpha"].dump(), e["beta"].dump(),
                          std::to_string(e.value("i", 0)), std::to_string(e.value("j", 0)),
                          e["re"].get<std::string>(), e["im"].get<std::string>()});
  return o;
}

Outcome cmd_moments(const RunConfig& cfg) {
  const int N = require_range(cfg.N, 3, 0, 12, "N");
  json echo;
  std::optional<Measure> mu;
  const auto phi = input_moments(cfg, N, echo, mu);
  const auto cond = check_conditions(phi);
  Outcome o;
  o.report["input"] = echo;
  o.report["table"] = phi.to_json();
  o.report["conditions"] = conditions_to_json(cond);
  o.pass = cond.passes();
  if (cond.passes() && phi.block() == 1) {
    const auto q = gns(phi);
    const auto c = classify(q.tuple, 1);
    o.report["gns"] = {{"quotient_dim", q.quotient_dim()},
                       {"class_m1", to_string(c.kind)},
                       {"window", c.window}};
  }
  if (cfg.extract) {
    if (!mu || !mu->is_harmonic())
      throw InputError("--extract needs a measure with a harmonic polynomial density");
    const auto t = multiplication_tuple(dirichlet_gram(*mu, N + 1));
    const auto k = miso_kernel(t, 2);
    const bool equal = k == phi;
    o.report["extraction"] = {{"equal", equal}, {"kernel", k.to_json()}};
    o.pass = o.pass && equal;
  }
  o.csv_header = {"alpha", "beta", "i", "j", "re", "im"};
  for (const auto& e : o.report["table"]["entries"])
    o.csv_rows.push_back({e["alpha"].dump(), e["beta"].dump(),
                          std::to_string(e.value("i", 0)), std::to_string(e.value("j", 0)),
                          e["re"].get<std::string>(), e["im"].get<std::string>()});
  return o;
}

Outcome cmd_gns(const RunConfig& cfg) {
  const int N = require_range(cfg.N, 3, 0, 12, "N");
  json echo;
  std::optional<Measure> mu;
  const auto phi = input_moments(cfg, N, echo, mu);
  const auto cond = check_conditions(phi);
  Outcome o;
  o.report["input"] = echo;
  o.report["conditions"] = conditions_to_json(cond);
  o.csv_header = {"basis"};
  if (!cond.psd || phi.block() != 1) {
    o.report["refused"] = cond.psd ? "block tables are not supported" : "table is not PSD";
    o.pass = false;
    return o;
  }
  const auto q = gns(phi);
  const auto c = classify(q.tuple, 1);
  json basis = json::array();
  for (const auto& a : q.basis) {
    basis.push_back(multiindex_to_json(a));
    o.csv_rows.push_back({json(multiindex_to_json(a)).dump()});
  }
  o.report["quotient_dim"] = q.quotient_dim();
  o.report["basis"] = basis;
  o.report["tuple"] = tuple_to_json(q.tuple);
  o.report["class_m1"] = {{"class", to_string(c.kind)}, {"window", c.window}};
  o.pass = cond.passes() && c.kind == TupleClass::isometry;
  return o;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const Outcome& o) {
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
    os << "\n";
  };
  line(o.csv_header);
  for (const auto& r : o.csv_rows) line(r);
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    if (cfg.format != "json" && cfg.format != "csv") throw InputError("--format must be json or csv");
    if (cfg.samples == 0) throw InputError("--samples must be positive");
    if (cfg.command == "verify-richter") {
      o = cmd_verify_richter(cfg);
    } else if (cfg.command == "radius-identity") {
      o = cmd_radius_identity(cfg);
    } else if (cfg.command == "classify") {
      o = cmd_classify(cfg);
    } else if (cfg.command == "gramian") {
      o = cmd_gramian(cfg);
    } else if (cfg.command == "moments") {
      o = cmd_moments(cfg);
    } else if (cfg.command == "gns") {
      o = cmd_gns(cfg);
    } else {
      throw InputError("unknown command '" + cfg.command + "'");
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }

  json report;
  report["schema"] = "spheridir/1";
  report["command"] = cfg.command;
  auto config = base_config(cfg);
  if (cfg.command == "verify-richter") {
    config["seed"] = cfg.seed;
    config["samples"] = cfg.samples;
    config["invariant_kernel"] = cfg.invariant_kernel;
  }
  if (cfg.command == "radius-identity") config["radius"] = cfg.radius;
  if (cfg.command == "moments") config["extract"] = cfg.extract;
  report["config"] = config;
  for (auto& [key, value] : o.report.items()) report[key] = value;
  report["pass"] = o.pass;

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kExitInput;
    }
    os = &file;
  }
  if (cfg.format == "csv")
    write_csv(*os, o);
  else
    *os << report.dump(2) << "\n";
  return o.pass ? kExitPass : kExitFail;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Dirichlet-type spaces on the unit ball: identities, classifications and moments"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-richter", "Richter's identity on a monomial grid and random polynomials"},
      {"radius-identity", "the radius-R form of the identity, exactly"},
      {"classify", "m-isometry classification and Gramian theorem checks, m = 1..4"},
      {"gramian", "Gramian array, defect and theorem conditions"},
      {"moments", "forward moments, PSD and spherical Toeplitz checks"},
      {"gns", "GNS quotient of a moment table"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "JSON descriptor path, '-' for stdin");
    sub->add_option("--d", cfg.d, "dimension when no input is given");
    sub->add_option("--N", cfg.N, "degree bound");
    sub->add_option("--k", cfg.k, "largest k");
    sub->add_option("--m", cfg.m, "order m");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples per integral");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_flag("--invariant-kernel", cfg.invariant_kernel, "use the invariant Poisson kernel");
    sub->add_flag("--extract", cfg.extract, "compare the moment kernel with forward moments");
    sub->add_option("--radius", cfg.radius, "radius R in (0, 1)");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }
  return run_command(cfg, std::cout, std::cerr);
}

}  // namespace spheridir
