#include "qfsplit_tools/app.hpp"

#include "qfsplit_tools/rdp_catalog.hpp"

#include "qfsplit/certificate_json.hpp"
#include "qfsplit/criteria.hpp"
#include "qfsplit/strata.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <bit>
#include <fstream>
#include <sstream>
#include <thread>

namespace qfsplit::tools {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("bad integer in ") + what + ": '" + s + "'");
  }
}

Grading parse_grading(const std::string& text, std::size_t nvars) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const std::string& row : split(text, "|;")) {
    std::vector<std::int64_t> r;
    for (const std::string& e : split(row, ",")) {
      std::int64_t v = parse_int(e, "grading");
      if (v < 0) throw InputError("grading entries must be non-negative");
      r.push_back(v);
    }
    if (r.size() != nvars) {
      throw InputError("grading row has " + std::to_string(r.size()) + " entries for " + std::to_string(nvars) +
                       " variables");
    }
    rows.push_back(std::move(r));
  }
  return Grading(std::move(rows));
}

/// Parse errors carry the offending input with a caret under the position.
Polynomial parse_annotated(const std::string& text, const RingPtr& ring) {
  try {
    return parse_polynomial(text, ring);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg += "\n  " + text + "\n  " + std::string(std::min(e.position(), text.size()), ' ') + "^";
    throw InputError(msg);
  }
}

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const RingPtr& ring) {
  std::vector<Polynomial> out;
  for (const std::string& t : texts) out.push_back(parse_annotated(t, ring));
  return out;
}

struct BudgetScope {
  GbOptions saved = gb_defaults();
  explicit BudgetScope(const std::optional<std::uint64_t>& budget) {
    if (budget) gb_defaults().step_budget = *budget;
  }
  ~BudgetScope() { gb_defaults() = saved; }
};

unsigned auto_n_max(const Job& job, const std::vector<Polynomial>& gens) {
  if (job.n_max_explicit) return job.n_max;
  std::int64_t deg = 1;
  for (const Polynomial& g : gens) deg = std::max(deg, g.degree());
  return std::max<unsigned>(job.n_max, std::bit_width(static_cast<std::uint64_t>(deg)) + 2);
}

Problem make_problem(const Job& job) {
  if (job.variables.empty()) throw InputError("no variables given (--vars)");
  if (job.polys.empty()) throw InputError("no polynomial given (--poly)");
  RingPtr ring = make_ring(job.p, job.variables);
  std::vector<Polynomial> gens = parse_all(job.polys, ring);
  for (const Polynomial& g : gens) {
    if (g.is_zero()) throw InputError("generator is zero");
  }
  std::optional<Grading> grading;
  if (job.grading && job.weights) throw InputError("give either --grading or --weights, not both");
  if (job.grading) grading = parse_grading(*job.grading, ring->nvars());
  if (job.weights) grading = parse_grading(*job.weights, ring->nvars());
  if (grading) {
    for (const Polynomial& g : gens) {
      Homogeneity h = check_homogeneous(g, *grading);
      if (!h.homogeneous) {
        std::string msg = "generator " + g.to_string() + " is not homogeneous for the grading";
        if (h.offending) {
          msg += " (" + monomial_to_string(h.offending->first, *ring) + " vs " +
                 monomial_to_string(h.offending->second, *ring) + ")";
        }
        throw InputError(msg);
      }
    }
  }
  return Problem(ring, std::move(gens), grading);
}

json input_json(const Problem& problem) {
  json in;
  in["p"] = problem.p();
  in["variables"] = problem.ring->variables;
  in["generators"] = polynomials_to_json(problem.generators);
  if (problem.grading) in["grading"] = problem.grading->rows();
  return in;
}

const char* kCaveat = "generators are assumed to form a regular sequence; this is not checked";

std::string result_text(const HeightResult& r) {
  std::ostringstream out;
  out << "verdict: " << to_string(r.verdict) << "\n";
  if (r.verdict == Verdict::Finite) out << "height: " << r.n << "\n";
  if (r.verdict == Verdict::LowerBound) out << "height: > " << r.n << "\n";
  if (r.verdict == Verdict::Infinite) out << "height: infinite\n";
  out << "route: " << r.route << "\n";
  out << "certificate: " << certificate_kind(r.certificate) << "\n";
  struct V {
    std::ostringstream& out;
    void operator()(const NoCertificate&) const {}
    void operator()(const CoefficientWitness& w) const {
      out << "  coefficient of (x_1...x_N)^(p^" << w.level << "-1) in f_" << w.level << " = " << w.value << "\n";
    }
    void operator()(const ChainWitness& w) const {
      for (std::size_t i = 0; i < w.chain.size(); ++i) out << "  g_" << i + 1 << " = " << w.chain[i].to_string() << "\n";
    }
    void operator()(const IInftyStabilized& s) const {
      out << "  stabilized after " << s.iterations << " iterations, " << s.generators.size() << " generators\n";
      for (const Polynomial& g : s.generators) out << "  " << g.to_string() << "\n";
    }
    void operator()(const NonQfsCertificate& c) const { out << "  test: " << to_string(c.test) << "\n"; }
    void operator()(const FixedPointEnclosure& e) const {
      for (const Polynomial& g : e.generators) out << "  " << g.to_string() << "\n";
    }
  };
  std::visit(V{out}, r.certificate);
  if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
  return out.str();
}

int exit_for(const HeightResult& r) { return r.verdict == Verdict::Unknown ? kExitBudget : kExitOk; }

/// Re-checks a Finite/Infinite certificate; returns false on rejection.
bool attach_verification(const Problem& problem, const HeightResult& r, Report& rep) {
  if (r.verdict != Verdict::Finite && r.verdict != Verdict::Infinite) return true;
  Check c = verify_result(problem, r);
  rep.json["verified"] = c.ok;
  rep.text += std::string("verified: ") + (c.ok ? "yes" : "NO") + "\n";
  if (!c.ok) {
    rep.json["verification_failure"] = {{"step", c.step}, {"reason", c.reason}};
    rep.text += "  step " + std::to_string(c.step) + ": " + c.reason + "\n";
  }
  return c.ok;
}

Report height_report(const Job& job, const Problem& problem, const HeightResult& r) {
  Report rep;
  rep.json = result_to_json(r, job.timing);
  rep.json["command"] = job.command;
  rep.json["input"] = input_json(problem);
  rep.text = result_text(r);
  if (problem.generators.size() > 1) {
    rep.json["caveat"] = kCaveat;
    rep.text = "note: " + std::string(kCaveat) + "\n" + rep.text;
  }
  rep.exit_code = exit_for(r);
  if (job.verify && !attach_verification(problem, r, rep)) rep.exit_code = kExitCheckFailed;
  return rep;
}

HeightOptions height_options(const Job& job, const Problem& problem) {
  HeightOptions opts;
  opts.n_max = auto_n_max(job, problem.generators);
  return opts;
}

Report cmd_height(const Job& job) {
  Problem problem = make_problem(job);
  return height_report(job, problem, height(problem, height_options(job, problem)));
}

Report cmd_fsplit(const Job& job) {
  Problem problem = make_problem(job);
  const bool split = fedder_fsplit(problem);
  Report rep;
  rep.json = {{"schema_version", kReportSchemaVersion},
              {"command", job.command},
              {"input", input_json(problem)},
              {"fsplit", split}};
  rep.text = std::string("F-split: ") + (split ? "yes" : "no") + "\n";
  return rep;
}

Report cmd_qfs(const Job& job) {
  Problem problem = make_problem(job);
  const auto start = std::chrono::steady_clock::now();
  const GbStats before = gb_stats();
  HeightResult r;
  r.route = "i_infinity";
  try {
    QfsDecision d = qfs_decide(problem);
    if (d.quasi_f_split) {
      r.verdict = Verdict::Finite;
      r.n = *d.height;
      r.certificate = ChainWitness{extract_chain(problem, r.n)};
    } else {
      r.verdict = Verdict::Infinite;
      r.certificate = d.certificate;
    }
  } catch (const GbBudgetExceeded& e) {
    r.verdict = Verdict::Unknown;
    r.route = "budget";
    r.diagnostic = e.what();
  }
  const GbStats& after = gb_stats();
  r.steps = {after.reductions - before.reductions, after.pairs - before.pairs, after.bases - before.bases};
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return height_report(job, problem, r);
}

Report check_report(const Job& job, const Problem& problem, const Check& c) {
  Report rep;
  rep.json = {{"schema_version", kReportSchemaVersion},
              {"command", job.command},
              {"input", input_json(problem)},
              {"ok", c.ok},
              {"step", c.step},
              {"reason", c.reason}};
  rep.text = std::string("accepted: ") + (c.ok ? "yes" : "no") + "\n";
  if (!c.ok) rep.text += "step " + std::to_string(c.step) + ": " + c.reason + "\n";
  rep.exit_code = c.ok ? kExitOk : kExitCheckFailed;
  return rep;
}

Report cmd_verify_chain(const Job& job) {
  Problem problem = make_problem(job);
  if (job.extra.empty()) throw InputError("no chain given (--chain)");
  return check_report(job, problem, verify_witness_chain(problem, parse_all(job.extra, problem.ring)));
}

Report cmd_verify_infty(const Job& job) {
  Problem problem = make_problem(job);
  if (job.extra.empty()) throw InputError("no ideal given (--j)");
  return check_report(job, problem, verify_infinity_certificate(problem, parse_all(job.extra, problem.ring)));
}

std::vector<Coeff> parse_point(const std::string& text, const FamilyContext& ctx) {
  std::vector<Coeff> out;
  PrimeField field(ctx.p());
  for (const std::string& e : split(text, ",")) out.push_back(field.from_int(parse_int(e, "point")));
  if (out.size() != ctx.size()) {
    throw InputError("point has " + std::to_string(out.size()) + " coordinates, the family has " +
                     std::to_string(ctx.size()) + " monomials");
  }
  return out;
}

void check_family(const Job& job) {
  if (!is_prime(job.p)) throw InputError("p must be prime");
  if (job.degree < 1 || job.degree > 8) throw InputError("degree must be between 1 and 8");
}

Report cmd_strata(const Job& job) {
  check_family(job);
  if (job.h_max < 1) throw InputError("h-max must be positive");
  FamilyContext ctx(job.p, job.degree);
  StrataPolynomials s = strata_polynomials(ctx, job.h_max);
  Report rep;
  json mons = json::array();
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    mons.push_back({{"coefficient", "a" + std::to_string(i)},
                    {"monomial", monomial_to_string(ctx.monomials()[i], *ctx.base_ring())}});
  }
  json bs = json::array();
  std::ostringstream text;
  text << "family: degree " << ctx.n() << " forms in " << ctx.n() << " variables over F_" << ctx.p() << ", "
       << ctx.size() << " monomials\n";
  for (std::size_t i = 0; i < s.b.size(); ++i) {
    bs.push_back({{"index", i + 1}, {"degree", s.b[i].degree()}, {"terms", s.b[i].size()}, {"b", s.b[i].to_string()}});
    text << "b_" << i + 1 << " (degree " << s.b[i].degree() << ", " << s.b[i].size() << " terms) = " << s.b[i].to_string()
         << "\n";
  }
  rep.json = {{"schema_version", kReportSchemaVersion},
              {"command", job.command},
              {"p", job.p},
              {"degree", job.degree},
              {"monomials", mons},
              {"b", bs}};
  if (job.point) {
    StrataProfile prof = specialize(ctx, s, parse_point(*job.point, ctx));
    rep.json["profile"] = {{"at_least", prof.at_least}, {"exact", prof.exact}, {"values", prof.values}};
    text << "height " << (prof.exact ? "= " : ">= ") << prof.at_least << "\n";
  }
  rep.text = text.str();
  return rep;
}

Report cmd_search(const Job& job) {
  check_family(job);
  if (job.target < 1) throw InputError("target must be positive");
  FamilyContext ctx(job.p, job.degree);
  SearchOptions opts;
  opts.samples = job.samples;
  opts.seed = job.seed;
  opts.smoothness_check = job.smoothness_check;
  opts.restricted_subfamily = job.restricted;
  SearchOutcome out = search_height(ctx, job.target, opts);
  Report rep;
  rep.json = {{"schema_version", kReportSchemaVersion},
              {"command", job.command},
              {"p", job.p},
              {"degree", job.degree},
              {"target", job.target},
              {"seed", job.seed},
              {"samples_tried", out.rows.size()}};
  std::ostringstream text;
  text << "sampled " << out.rows.size() << " points\n";
  if (out.witness) {
    rep.json["witness"] = out.witness->to_string();
    rep.json["result"] = result_to_json(*out.result, job.timing);
    text << "witness: " << out.witness->to_string() << "\n" << result_text(*out.result);
  } else {
    rep.json["witness"] = nullptr;
    text << "no witness found within the sample budget\n";
  }
  rep.text = text.str();
  if (job.verify && out.witness) {
    Problem problem(ctx.base_ring(), {*out.witness});
    if (!attach_verification(problem, *out.result, rep)) rep.exit_code = kExitCheckFailed;
  }
  if (job.rows_csv) {
    std::ofstream f(*job.rows_csv);
    if (!f) throw InputError("cannot write " + *job.rows_csv);
    write_rows_csv(f, ctx, out.rows);
  }
  return rep;
}

Report cmd_rdp_table(const Job& job) {
  for (std::uint32_t p : job.primes) {
    if (p != 2 && p != 3 && p != 5) throw InputError("rdp-table covers p in {2, 3, 5}");
  }
  if (job.n_bound < 2) throw InputError("n-bound must be at least 2");
  RingPtr ring = make_ring(2, {"x", "y", "z"});
  json rows = json::array();
  std::ostringstream md, csv;
  md << "| p | type | f | expected | computed | route | match |\n|---|---|---|---|---|---|---|\n";
  csv << "p,type,f,expected,computed,route,match\n";
  bool all = true;
  for (const RdpRow& row : rdp_rows(job.primes, job.n_bound)) {
    RingPtr rr = make_ring(row.p, {"x", "y", "z"});
    Problem problem(rr, {parse_polynomial(row.poly, rr)});
    Job sub = job;
    sub.polys = {row.poly};
    HeightResult r = height(problem, height_options(sub, problem));
    bool match = r.verdict == Verdict::Finite && r.n == row.expected;
    if (match && job.verify) match = verify_result(problem, r).ok;
    all = all && match;
    const std::string computed = r.verdict == Verdict::Finite ? std::to_string(r.n) : describe(r);
    json jr = {{"p", row.p},
               {"type", row.type},
               {"f", row.poly},
               {"expected", row.expected},
               {"computed", r.verdict == Verdict::Finite ? json(r.n) : json(nullptr)},
               {"verdict", to_string(r.verdict)},
               {"route", r.route},
               {"match", match}};
    if (job.timing) jr["wall_time_ms"] = r.wall_time_ms;
    rows.push_back(jr);
    md << "| " << row.p << " | " << row.type << " | " << row.poly << " | " << row.expected << " | " << computed
       << " | " << r.route << " | " << (match ? "yes" : "NO") << " |\n";
    csv << row.p << "," << row.type << "," << row.poly << "," << row.expected << "," << computed << "," << r.route
        << "," << (match ? 1 : 0) << "\n";
  }
  Report rep;
  rep.json = {{"schema_version", kReportSchemaVersion}, {"command", job.command}, {"rows", rows}, {"all_match", all}};
  rep.text = job.format == "csv" ? csv.str() : md.str();
  rep.exit_code = all ? kExitOk : kExitCheckFailed;
  return rep;
}

/// Bigrading with one row per factor when both factors are standard-graded
/// homogeneous; otherwise none.
std::optional<Grading> block_grading(const Polynomial& fx, const Polynomial& fy, std::size_t nx, std::size_t ny) {
  if (!check_homogeneous(fx, Grading::standard(nx)).homogeneous) return std::nullopt;
  if (!check_homogeneous(fy, Grading::standard(ny)).homogeneous) return std::nullopt;
  std::vector<std::int64_t> r1(nx + ny, 0), r2(nx + ny, 0);
  std::fill(r1.begin(), r1.begin() + nx, 1);
  std::fill(r2.begin() + nx, r2.end(), 1);
  return Grading({r1, r2});
}

Report cmd_product(const Job& job) {
  if (job.polys.size() != 1 || job.polys2.size() != 1) {
    throw InputError("product takes one polynomial per factor (--poly and --poly2)");
  }
  Problem px = make_problem(job);
  Job jy = job;
  jy.variables = job.variables2;
  jy.polys = job.polys2;
  jy.grading.reset();
  jy.weights.reset();
  Problem py = make_problem(jy);
  RingPtr joint = join_rings(*px.ring, *py.ring);
  const std::size_t nx = px.ring->nvars();
  Polynomial fx = embed_block(px.generators[0], joint, 0);
  Polynomial fy = embed_block(py.generators[0], joint, nx);
  Problem pj(joint, {fx, fy}, block_grading(px.generators[0], py.generators[0], nx, py.ring->nvars()));

  HeightResult rx = height(px, height_options(job, px));
  HeightResult ry = height(py, height_options(jy, py));
  HeightResult rj = height(pj, height_options(job, pj));

  Report rep;
  rep.json = result_to_json(rj, job.timing);
  rep.json["command"] = job.command;
  rep.json["input"] = input_json(pj);
  rep.json["factors"] = {result_to_json(rx, job.timing), result_to_json(ry, job.timing)};
  rep.json["caveat"] = kCaveat;
  std::ostringstream text;
  text << "X: " << describe(rx) << "\nY: " << describe(ry) << "\nX x Y:\n" << result_text(rj);
  rep.exit_code = std::max({exit_for(rx), exit_for(ry), exit_for(rj)});

  // Chain for the product from a chain of one factor and a splitting of the other.
  const bool x_chain = rx.verdict == Verdict::Finite && ry.verdict == Verdict::Finite && ry.n == 1;
  const bool y_chain = !x_chain && rx.verdict == Verdict::Finite && rx.n == 1 && ry.verdict == Verdict::Finite;
  if (x_chain || y_chain) {
    const Problem& self = x_chain ? px : py;
    const Problem& other = x_chain ? py : px;
    const HeightResult& res = x_chain ? rx : ry;
    const ChainWitness* cw = std::get_if<ChainWitness>(&res.certificate);
    std::vector<Polynomial> gs = cw ? cw->chain : extract_chain(self, res.n);
    std::vector<Polynomial> chain;
    if (x_chain) {
      chain = product_witness(gs, other.generators[0], joint);
    } else {
      // Built with Y as the leading block, then the blocks are swapped back.
      RingPtr swapped = join_rings(*py.ring, *px.ring);
      const std::size_t ny = py.ring->nvars();
      for (const Polynomial& g : product_witness(gs, other.generators[0], swapped)) {
        std::vector<Term> terms;
        for (const Term& t : g.terms()) {
          Monomial m(nx + ny);
          for (std::size_t i = 0; i < ny; ++i) m.set(nx + i, t.mono[i]);
          for (std::size_t i = 0; i < nx; ++i) m.set(i, t.mono[ny + i]);
          terms.push_back({m, t.coeff});
        }
        chain.push_back(Polynomial::from_terms(joint, std::move(terms)));
      }
    }
    Check c = verify_witness_chain(pj, chain);
    rep.json["product_witness"] = {{"chain", polynomials_to_json(chain)}, {"ok", c.ok}, {"reason", c.reason}};
    text << "product witness of length " << chain.size() << ": " << (c.ok ? "accepted" : "REJECTED") << "\n";
    if (!c.ok) rep.exit_code = std::max<int>(rep.exit_code, kExitCheckFailed);
  }
  rep.text = "note: " + std::string(kCaveat) + "\n" + text.str();
  if (job.verify && !attach_verification(pj, rj, rep)) rep.exit_code = kExitCheckFailed;
  return rep;
}

Report error_report(int code, const std::string& msg) {
  Report rep;
  rep.exit_code = code;
  rep.error = msg;
  rep.text = "error: " + msg + "\n";
  rep.json = {{"schema_version", kReportSchemaVersion}, {"error", msg}, {"exit_code", code}};
  return rep;
}

}  // namespace

std::string Report::render(const std::string& format) const {
  if (format == "json") return json.dump(2) + "\n";
  return text;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"height",      "fsplit", "qfs",       "verify-chain", "verify-infty",
                                              "strata",      "search", "rdp-table", "product"};
  return names;
}

Report run(const Job& job) {
  try {
    if (job.format != "text" && job.format != "json" && job.format != "csv") {
      throw InputError("unknown format '" + job.format + "' (text, json or csv)");
    }
    BudgetScope scope(job.budget);
    Report rep;
    if (job.command == "height") {
      rep = cmd_height(job);
    } else if (job.command == "fsplit") {
      rep = cmd_fsplit(job);
    } else if (job.command == "qfs") {
      rep = cmd_qfs(job);
    } else if (job.command == "verify-chain") {
      rep = cmd_verify_chain(job);
    } else if (job.command == "verify-infty") {
      rep = cmd_verify_infty(job);
    } else if (job.command == "strata") {
      rep = cmd_strata(job);
    } else if (job.command == "search") {
      rep = cmd_search(job);
    } else if (job.command == "rdp-table") {
      rep = cmd_rdp_table(job);
    } else if (job.command == "product") {
      rep = cmd_product(job);
    } else {
      throw InputError("unknown command '" + job.command + "'");
    }
    return rep;
  } catch (const GbBudgetExceeded& e) {
    return error_report(kExitBudget, e.what());
  } catch (const InputError& e) {
    return error_report(kExitInput, e.what());
  } catch (const std::invalid_argument& e) {
    return error_report(kExitInput, e.what());
  } catch (const std::domain_error& e) {
    return error_report(kExitInput, e.what());
  }
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key, bool comma_string) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (comma_string) return split(s, ",");
    return {s};
  }
  if (!v.is_array()) throw InputError(std::string("'") + key + "' must be a string or an array");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) throw InputError(std::string("'") + key + "' entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Job job_from_json(const json& j) {
  if (!j.is_object()) throw InputError("job record must be an object");
  Job job;
  try {
    read(j, "command", job.command);
    read(j, "p", job.p);
    job.variables = string_list(j, "vars", true);
    job.polys = string_list(j, "polys", false);
    if (j.contains("poly")) job.polys.push_back(j.at("poly").get<std::string>());
    if (j.contains("grading")) job.grading = j.at("grading").get<std::string>();
    if (j.contains("weights")) job.weights = j.at("weights").get<std::string>();
    job.extra = string_list(j, j.contains("chain") ? "chain" : "j", false);
    job.variables2 = string_list(j, "vars2", true);
    job.polys2 = string_list(j, "polys2", false);
    if (j.contains("n_max")) {
      job.n_max = j.at("n_max").get<unsigned>();
      job.n_max_explicit = true;
    }
    if (j.contains("budget")) job.budget = j.at("budget").get<std::uint64_t>();
    read(j, "verify", job.verify);
    read(j, "degree", job.degree);
    read(j, "h_max", job.h_max);
    read(j, "target", job.target);
    read(j, "samples", job.samples);
    read(j, "seed", job.seed);
    read(j, "smoothness_check", job.smoothness_check);
    read(j, "restricted", job.restricted);
    if (j.contains("point")) job.point = j.at("point").get<std::string>();
    read(j, "primes", job.primes);
    read(j, "n_bound", job.n_bound);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad job record: ") + e.what());
  }
  if (job.command.empty()) throw InputError("job record needs a 'command'");
  return job;
}

std::vector<Job> load_batch(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("batch file is not valid JSON: ") + e.what());
  }
  const json& list = doc.is_object() && doc.contains("jobs") ? doc.at("jobs") : doc;
  if (!list.is_array()) throw InputError("batch file must hold an array of jobs");
  std::vector<Job> jobs;
  for (const json& j : list) jobs.push_back(job_from_json(j));
  return jobs;
}

Report run_batch(const std::vector<Job>& jobs, bool timing, unsigned threads) {
  std::vector<Report> reports(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      Job job = jobs[i];
      job.timing = timing && job.timing;
      reports[i] = run(job);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Report agg;
  agg.json = {{"schema_version", kReportSchemaVersion}, {"command", "batch"}, {"jobs", json::array()}};
  std::ostringstream text;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    json entry = reports[i].json;
    entry["exit_code"] = reports[i].exit_code;
    agg.json["jobs"].push_back(entry);
    text << "== job " << i + 1 << " (" << jobs[i].command << ", exit " << reports[i].exit_code << ")\n"
         << reports[i].text;
    agg.exit_code = std::max(agg.exit_code, reports[i].exit_code);
  }
  agg.json["exit_code"] = agg.exit_code;
  agg.text = text.str();
  return agg;
}

}  // namespace qfsplit::tools
