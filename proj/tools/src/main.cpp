#include "qfsplit_tools/app.hpp"

#include "qfsplit/groebner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using qfsplit::tools::Job;

struct Common {
  Job job;
  std::string vars, vars2;
  std::string primes;
};

void add_ring_flags(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.job.p, "characteristic")->required();
  sub->add_option("--vars", c.vars, "comma-separated variable names")->required();
  sub->add_option("--poly", c.job.polys, "generator (repeat for a complete intersection)")->required();
  sub->add_option("--grading", c.job.grading, "weight matrix, rows split by '|', entries by ','");
  sub->add_option("--weights", c.job.weights, "single-row weights, e.g. 1,1,2");
}

void add_run_flags(CLI::App* sub, Common& c) {
  sub->add_option("--n-max", c.job.n_max, "largest chain level to try (default 10, raised for large degree)");
  sub->add_option("--budget", c.job.budget, "Groebner step budget");
  sub->add_flag("--verify", c.job.verify, "re-check the certificate before printing");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("QFSPLIT_GB_BUDGET")) {
    try {
      qfsplit::gb_process_defaults().step_budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: QFSPLIT_GB_BUDGET is not a number\n";
      return qfsplit::tools::kExitInput;
    }
  }

  CLI::App app{"quasi-F-split heights of complete intersections over F_p"};
  app.require_subcommand(1);
  Common c;
  std::string format = "text";
  bool no_timing = false;
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--deterministic", no_timing, "omit timings so reports are byte-stable");

  auto* height = app.add_subcommand("height", "quasi-F-split height");
  add_ring_flags(height, c);
  add_run_flags(height, c);

  auto* fsplit = app.add_subcommand("fsplit", "Fedder's F-splitting test");
  add_ring_flags(fsplit, c);

  auto* qfs = app.add_subcommand("qfs", "decide quasi-F-splitting through the ideal fixed point");
  add_ring_flags(qfs, c);
  add_run_flags(qfs, c);

  auto* vchain = app.add_subcommand("verify-chain", "check a witness chain g_1, ..., g_n");
  add_ring_flags(vchain, c);
  vchain->add_option("--chain", c.job.extra, "chain element (repeat, in order)")->required();

  auto* vinf = app.add_subcommand("verify-infty", "check an ideal enclosing the fixed point inside m^[p]");
  add_ring_flags(vinf, c);
  vinf->add_option("--j", c.job.extra, "generator of J (repeat)")->required();

  auto* strata = app.add_subcommand("strata", "height strata of the family of degree-N forms in N variables");
  strata->add_option("--p", c.job.p)->required();
  strata->add_option("--degree", c.job.degree, "N")->required();
  strata->add_option("--h-max", c.job.h_max, "compute b_1, ..., b_(h-1)");
  strata->add_option("--point", c.job.point, "coefficients a_0,... to specialize at");

  auto* search = app.add_subcommand("search", "sample the family for a member of given height");
  search->add_option("--p", c.job.p)->required();
  search->add_option("--degree", c.job.degree, "N")->required();
  search->add_option("--target", c.job.target, "height to look for")->required();
  search->add_option("--samples", c.job.samples);
  search->add_option("--seed", c.job.seed);
  search->add_flag("!--no-smoothness-check", c.job.smoothness_check, "accept members singular at an F_p-point");
  search->add_flag("--restricted", c.job.restricted, "only monomials x_1^N or not divisible by x_1");
  search->add_option("--rows", c.job.rows_csv, "write one CSV row per sample to this file");
  search->add_flag("--verify", c.job.verify);

  auto* rdp = app.add_subcommand("rdp-table", "recompute the non-taut RDP height table");
  rdp->add_option("--primes", c.primes, "subset of 2,3,5");
  rdp->add_option("--n-bound", c.job.n_bound, "largest n in the D-families");
  rdp->add_flag("--verify", c.job.verify);

  auto* product = app.add_subcommand("product", "height of X x Y for hypersurfaces in disjoint variables");
  add_ring_flags(product, c);
  add_run_flags(product, c);
  product->add_option("--vars2", c.vars2, "variables of Y")->required();
  product->add_option("--poly2", c.job.polys2, "equation of Y")->required();

  std::string batch_path;
  unsigned threads = 0;
  auto* batch = app.add_subcommand("batch", "run a JSON list of jobs");
  batch->add_option("file", batch_path)->required();
  batch->add_option("--threads", threads, "worker threads (default: hardware)");
  std::optional<std::uint64_t> batch_budget;
  batch->add_option("--budget", batch_budget, "Groebner step budget for every job");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qfsplit::tools::kExitInput;
  }

  Job& job = c.job;
  job.format = format;
  job.timing = !no_timing;
  job.variables = split_commas(c.vars);
  job.variables2 = split_commas(c.vars2);
  for (CLI::App* sub : {height, qfs, product}) {
    if (sub->parsed() && sub->count("--n-max") > 0) job.n_max_explicit = true;
  }
  if (!c.primes.empty()) {
    job.primes.clear();
    try {
      for (const std::string& s : split_commas(c.primes)) job.primes.push_back(std::stoul(s));
    } catch (const std::exception&) {
      std::cerr << "error: bad --primes list\n";
      return qfsplit::tools::kExitInput;
    }
  }

  qfsplit::tools::Report report;
  if (batch->parsed()) {
    if (batch_budget) qfsplit::gb_process_defaults().step_budget = *batch_budget;
    try {
      report = qfsplit::tools::run_batch(qfsplit::tools::load_batch(batch_path), job.timing, threads);
    } catch (const qfsplit::InputError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return qfsplit::tools::kExitInput;
    }
  } else {
    job.command = app.get_subcommands().front()->get_name();
    report = qfsplit::tools::run(job);
  }
  if (!report.error.empty() && format != "json") {
    std::cerr << report.text;
  } else {
    std::cout << report.render(format);
  }
  return report.exit_code;
}
