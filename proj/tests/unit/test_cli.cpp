#include <doctest.h>

#include "qfsplit_tools/app.hpp"
#include "qfsplit_tools/rdp_catalog.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qfsplit::tools;
namespace fs = std::filesystem;

namespace {

struct Output {
  int status = -1;
  std::string out;
};

Output run_cli(const std::string& args) {
  std::string cmd = std::string(QFSPLIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Output o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  int st = pclose(pipe);
  o.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return o;
}

std::string quote(const std::string& word) { return "'" + word + "'"; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(' ');
  auto e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Job hypersurface(const std::string& cmd, std::uint32_t p, std::vector<std::string> vars, std::string f) {
  Job j;
  j.command = cmd;
  j.p = p;
  j.variables = std::move(vars);
  j.polys = {std::move(f)};
  j.timing = false;
  return j;
}

}  // namespace

TEST_SUITE("cli_frontend") {

TEST_CASE("height report") {
  Report r = run(hypersurface("height", 2, {"x", "y", "z"}, "z^2+x^2*y+x*y^4"));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.json["verdict"] == "finite");
  CHECK(r.json["n"] == 3);
  CHECK(r.text.find("height: 3") != std::string::npos);
  CHECK(r.render("json").find("\"verdict\": \"finite\"") != std::string::npos);
}

TEST_CASE("input errors") {
  Report bad = run(hypersurface("height", 2, {"x", "y"}, "x^2+*y"));
  CHECK(bad.exit_code == kExitInput);
  CHECK(bad.error.find('^') != std::string::npos);
  CHECK(run(hypersurface("height", 4, {"x"}, "x")).exit_code == kExitInput);
  CHECK(run(hypersurface("height", 2, {"x", "x"}, "x")).exit_code == kExitInput);
  CHECK(run(hypersurface("nonsense", 2, {"x"}, "x")).exit_code == kExitInput);
  Job inhom = hypersurface("height", 2, {"x", "y"}, "x^2+y");
  inhom.weights = "1,1";
  CHECK(run(inhom).exit_code == kExitInput);
}

TEST_CASE("budget aborts exit with 2") {
  Job j = hypersurface("height", 2, {"x", "y", "z", "w"}, "w^2+x^2*y*z+x*y^2*z+x*y*z^2");
  j.budget = 10;
  Report r = run(j);
  CHECK(r.exit_code == kExitBudget);
  CHECK(r.json["verdict"] == "unknown");
}

TEST_CASE("verification commands") {
  Job chain = hypersurface("verify-chain", 2, {"x", "y", "z"}, "z^2+x^2*y+x*y^4");
  chain.extra = {"z^3+x^2*y*z+x*y^4*z", "x*y^2*z", "x*y*z"};
  Report ok = run(chain);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.json["ok"] == true);
  chain.extra[1] = "x*y^3*z";
  Report no = run(chain);
  CHECK(no.exit_code == kExitCheckFailed);
  CHECK(no.json["ok"] == false);
  CHECK(no.json["step"] == 2);

  Job inf = hypersurface("verify-infty", 2, {"x", "y", "z", "w"}, "w^2+x^2*y*z+x*y^2*z+x*y*z^2");
  inf.extra = {"w^2+x^2*y*z+x*y^2*z+x*y*z^2", "x^2*y^2*z+x*y^2*z^2", "x^2*y^2*z+x^2*y*z^2", "x^2*y^2*z+x*w^2",
               "x^2*y^2*z+y*w^2", "x^2*y^2*z+z*w^2", "x^2*y*z*w+x*y^2*z*w", "x^2*y*z*w+x*y*z^2*w"};
  CHECK(run(inf).exit_code == kExitOk);
  inf.extra.pop_back();
  CHECK(run(inf).exit_code == kExitCheckFailed);
}

TEST_CASE("products") {
  Job j;
  j.command = "product";
  j.p = 2;
  j.variables = {"x0", "x1", "x2"};
  j.polys = {"x0^3+x1^3+x2^3"};
  j.variables2 = {"y0", "y1", "y2"};
  j.polys2 = {"y0^3+y1^3+y2^3"};
  j.timing = false;
  Report ss = run(j);
  CHECK(ss.exit_code == kExitOk);
  CHECK(ss.json["verdict"] == "infinite");
  j.polys2 = {"y0^3+y1^3+y2^3+y0*y1*y2"};
  Report mixed = run(j);
  CHECK(mixed.json["n"] == 2);
  CHECK(mixed.json["product_witness"]["ok"] == true);
}

TEST_CASE("rdp table") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
  auto rows = rdp_rows({2, 3, 5}, 8);
  std::size_t d = 0;
  for (const auto& r : rows) d += r.type[0] == 'D';
  // D_{2n}^r and D_{2n+1}^r for 2 <= n <= 8, 0 <= r <= n-1.
  CHECK(d == 2 * (2 + 3 + 4 + 5 + 6 + 7 + 8));
  Job t;
  t.command = "rdp-table";
  t.primes = {2};
  t.n_bound = 4;
  t.timing = false;
  Report r = run(t);
  CHECK(r.exit_code == kExitOk);
  for (const auto& row : r.json["rows"]) CHECK(row["match"] == true);
}

TEST_CASE("batch") {
  Job g1 = hypersurface("height", 2, {"x", "y", "z", "w", "u", "s"}, "x*y*s^2+z*w*u^2+y^3*w+x^3*z");
  Job g2 = hypersurface("height", 2, {"x", "y", "z", "w", "u"}, "z*w*u^2+y^3*w+x^3*z");
  Report b = run_batch({g1, g2}, false, 2);
  CHECK(b.exit_code == kExitOk);
  REQUIRE(b.json["jobs"].size() == 2);
  CHECK(b.json["jobs"][0]["verdict"] == "infinite");
  CHECK(b.json["jobs"][1]["n"] == 2);

  CHECK(run_batch({}, false).exit_code == kExitOk);
  Job bad = hypersurface("height", 2, {"x"}, "y");
  CHECK(run_batch({g2, bad}, false).exit_code == kExitInput);

  nlohmann::json spec = {{"command", "height"}, {"p", 2}, {"vars", "x,y,z"}, {"polys", {"z^2+x^3+y^5"}}};
  Job parsed = job_from_json(spec);
  CHECK(parsed.variables.size() == 3);
  fs::path file = fs::temp_directory_path() / "qfsplit_batch_test.json";
  std::ofstream(file) << nlohmann::json{{"jobs", {spec, spec}}}.dump();
  CHECK(load_batch(file.string()).size() == 2);
  fs::remove(file);
}

TEST_CASE("exit codes of the binary") {
  CHECK(run_cli("height --p 2 --vars x,y,z --poly 'z^2+x^3+y^5'").status == 0);
  CHECK(run_cli("height --p 2 --vars x,y --poly 'x^2+*y'").status == 1);
  CHECK(run_cli("height --p 2 --vars x,y,z,w --poly 'w^2+x^2*y*z+x*y^2*z+x*y*z^2' --budget 10").status == 2);
  CHECK(run_cli("verify-chain --p 2 --vars x,y,z --poly 'z^2+x^2*y+x*y^4' --chain 'x*y*z'").status == 3);
  CHECK(run_cli("height --p 2").status != 0);
  Output env = run_cli("--format json height --p 2 --vars x,y,z,w --poly 'w^2+x^2*y*z+x*y^2*z+x*y*z^2'");
  CHECK(env.status == 0);
  CHECK(std::system(("QFSPLIT_GB_BUDGET=10 " + std::string(QFSPLIT_CLI_PATH) +
                     " height --p 2 --vars x,y,z,w --poly 'w^2+x^2*y*z+x*y^2*z+x*y*z^2' >/dev/null 2>&1").c_str()) != 0);
}

TEST_CASE("golden reports") {
  const fs::path dir = QFSPLIT_GOLDEN_DIR;
  const bool update = std::getenv("QFSPLIT_UPDATE_GOLDEN") != nullptr;
  std::ifstream cases(dir / "cases.txt");
  REQUIRE(cases.good());
  std::string line;
  int count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find(" | ");
    REQUIRE(bar != std::string::npos);
    const std::string name = trim(line.substr(0, bar));
    std::istringstream words(line.substr(bar + 3));
    std::string args = "--format json --deterministic", w;
    while (words >> w) args += " " + quote(w);
    INFO(name);
    Output first = run_cli(args);
    Output second = run_cli(args);
    CHECK(first.out == second.out);
    const fs::path file = dir / (name + ".json");
    if (update) {
      std::ofstream(file, std::ios::binary) << first.out;
    } else {
      REQUIRE(fs::exists(file));
      CHECK(first.out == read_file(file));
    }
    ++count;
  }
  CHECK(count > 0);
}

}  // TEST_SUITE
