#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conekit/run.hpp"
#include "fixtures.hpp"

using namespace conekit;
using fx::iv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(CONEKIT_CORPUS_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string error_kind(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

std::string error_message(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

json strip_time(json j) {
  j.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("monoid documents") {
  Document d = parse_document(R"({"kind":"monoid","ambient_rank":2,"generators":[[1,0],[0,1]]})");
  REQUIRE(d.monoid);
  CHECK(*d.monoid == FineMonoid::free(2));
  // big integers survive as strings
  Document big = parse_document(R"({"kind":"monoid","ambient_rank":1,"generators":[["123456789012345678901234567890"]]})");
  CHECK(big.monoid->generators()[0][0] == Int("123456789012345678901234567890"));
  CHECK(serialize(big).find("\"123456789012345678901234567890\"") != std::string::npos);
  Document pres = parse_document(R"({"kind":"monoid","presentation":{"generators":3,"relations":[[1,-2,1]]}})");
  CHECK(pres.monoid->rank() == 2);
  CHECK(pres.monoid->is_saturated());
}

TEST_CASE("shape and schema errors") {
  CHECK(error_kind(R"({"kind":"morphism",
    "source":{"ambient_rank":2,"generators":[[1,0],[0,1]]},
    "target":{"ambient_rank":2,"generators":[[1,0],[0,1]]},
    "matrix":[[1,0,0],[0,1,0]]})") == "RankMismatch");
  CHECK(error_kind(R"({"kind":"monoid","ambient_rank":2,"generators":[[1,0,0]]})") == "RankMismatch");
  CHECK(error_message(R"({"kind":"monoid","ambient_rank":2,"generators":[[1,0],[0,"1.5"]]})") ==
        "SchemaError: $.generators[1][1]: not an integer: \"1.5\"");
  CHECK(error_message(R"({"kind":"monoid","ambient_rank":2,"generators":[],"colour":1})") ==
        "SchemaError: $.colour: unknown field for kind monoid");
  CHECK(error_message(R"({"kind":"sheaf"})") == "SchemaError: $.kind: unknown kind \"sheaf\"");
  CHECK(error_message("{\"kind\":\"monoid\",\n  \"ambient_rank\": 2,,\n}") ==
        "SchemaError: line 2, column 21: malformed JSON");
  CHECK(error_kind(R"({"kind":"monoid","ambient_rank":2,"generators":[[1,0],[0,1]],"schema":"conekit/9"})") ==
        "SchemaError");
  // a matrix that does not carry the source into the target
  CHECK_FALSE(error_kind(R"({"kind":"morphism",
    "source":{"ambient_rank":1,"generators":[[1]]},
    "target":{"ambient_rank":1,"generators":[[1]]},
    "matrix":[[-1]]})").empty());
  CHECK(error_kind(R"({"kind":"lattice_chain","prime":2,"lattices":[[[1,0],[0,"1/0"]]]})") == "SchemaError");
  CHECK(error_message(R"({"kind":"complex","cells":[{"rank":2,"positives":[[1,0],[0,1]]}],
    "gluings":[{"a":0,"pa":[[1,0]],"b":3,"pb":[[0,1]]}]})") == "SchemaError: $.gluings[0].b: cell index out of range");
}

TEST_CASE("shipped fixture is the example map") {
  Document d = parse_document(slurp(fs::path(CONEKIT_CORPUS_DIR) / "exa_exact_not_integral.json"));
  REQUIRE(d.morphism);
  CHECK(d.morphism->source() == fx::exact_not_integral().source());
  CHECK(d.morphism->target() == fx::exact_not_integral().target());
  CHECK(d.morphism->matrix() == fx::exact_not_integral().matrix());
  CHECK(parse_element("z", 3, d.target_names) == iv({0, 0, 1}));
  CHECK(parse_element(" 1, -2 ,3", 3) == iv({1, -2, 3}));
  CHECK(parse_element("[\"4\", 5, 6]", 3) == iv({4, 5, 6}));
  CHECK_THROWS_AS(parse_element("1,2", 3), Error);
  CHECK_THROWS_AS(parse_element("w", 3, d.target_names), Error);
}

TEST_CASE("round trip on every fixture") {
  auto files = corpus();
  CHECK(files.size() >= 20);
  for (const auto& f : files) {
    CAPTURE(f.filename().string());
    Document a = parse_document(slurp(f));
    std::string once = serialize(a);
    Document b = parse_document(once);
    CHECK(serialize(b) == once);
    CHECK(a.kind == b.kind);
    CHECK(a.expected == b.expected);
    if (a.morphism) {
      CHECK(a.morphism->source() == b.morphism->source());
      CHECK(a.morphism->matrix() == b.morphism->matrix());
    }
    if (a.complex) {
      CHECK(a.complex->cells == b.complex->cells);
      CHECK(a.complex->gluings.size() == b.complex->gluings.size());
    }
    if (a.sigma) CHECK(*a.sigma == *b.sigma);
    CHECK(a.pieces == b.pieces);
    if (a.chain) CHECK(a.chain->lattices == b.chain->lattices);
    for (std::size_t i = 0; i < a.flags.size(); ++i) CHECK(a.flags[i].steps == b.flags[i].steps);
  }
}

TEST_CASE("expected values of the corpus") {
  for (const auto& f : corpus()) {
    Document d = parse_document(slurp(f));
    for (const auto& c : evaluate_expected(d)) {
      CAPTURE(f.filename().string());
      CAPTURE(c.key);
      CAPTURE(c.actual.dump());
      CHECK(c.ok);
    }
  }
}

TEST_CASE("reports: exit codes, determinism, certificates") {
  auto run = [](const std::string& cmd, const std::string& file, RunOptions opt = {}) {
    return run_command(cmd, slurp(fs::path(CONEKIT_CORPUS_DIR) / file), opt);
  };
  Report exa = run("check", "exa_exact_not_integral.json");
  CHECK(exa.exit_code == 1);
  const json& v = exa.json["result"]["verdicts"];
  CHECK(v["exact"]["value"] == true);
  CHECK(v["integral"]["value"] == false);
  CHECK(v["saturated"]["value"] == false);
  // certificate pair (z - x, z - y)
  std::vector<std::string> ys;
  for (const auto& it : v["integral"]["certificate"]["items"])
    if (it["label"] == "y1" || it["label"] == "y2") ys.push_back(it["vector"].dump());
  std::sort(ys.begin(), ys.end());
  CHECK(ys == std::vector<std::string>{R"(["-1","0","1"])", R"(["0","-1","1"])"});

  CHECK(run("check", "identity.json").exit_code == 0);
  RunOptions q;
  q.q = {"z"};
  Report inf = run("inf", "ex1.json", q);
  CHECK(inf.exit_code == 1);
  CHECK(inf.json["result"]["infima"][0]["rendered"] == "NoMax{x, y}");
  CHECK(run("bundle-apartment", "tripod_lattices.json").exit_code == 1);
  CHECK(run("bundle-apartment", "tripod_sub.json").exit_code == 0);
  CHECK(run("bundle-hull", "exa_multichar.json").exit_code == 1);
  CHECK(run("subdivision", "identity.json").exit_code == 2);
  CHECK(run("check", "payne_split.json").exit_code == 2);
  CHECK(run_command("check", "{", {}).exit_code == 2);

  for (const auto& f : corpus()) {
    std::string text = slurp(f);
    for (const auto& cmd : command_names()) {
      CAPTURE(f.filename().string());
      CAPTURE(cmd);
      Report a = run_command(cmd, text, {}), b = run_command(cmd, text, {});
      CHECK(strip_time(a.json).dump() == strip_time(b.json).dump());
      CHECK(a.text == b.text);
      if (a.json["result"].contains("verdicts"))
        for (const auto& [name, verdict] : a.json["result"]["verdicts"].items())
          if (verdict.contains("reverified")) CHECK(verdict["reverified"] == true);
      if (a.json["result"].contains("error")) CHECK(a.json["result"]["error"]["kind"] != "CertificateMismatch");
    }
  }
}

TEST_CASE("budget bounds enumerations") {
  RunOptions tight;
  tight.budget = 5;
  Report r = run_command("check", slurp(fs::path(CONEKIT_CORPUS_DIR) / "exa_exact_not_integral.json"), tight);
  bool exhausted = false;
  for (const auto& [k, v] : r.json["result"]["verdicts"].items())
    exhausted |= v.contains("error") && v["error"].get<std::string>().rfind("BudgetExceeded", 0) == 0;
  CHECK(exhausted);
  CHECK(Budget::limit() == Budget::kDefault);
}

TEST_CASE("certificates are checked, not trusted") {
  MonoidMap h = fx::exact_not_integral();
  Verdict fake;
  fake.holds = false;
  fake.cert.add("x1", iv({1, 0}));
  fake.cert.add("x2", iv({0, 1}));
  fake.cert.add("y1", iv({0, 0, 1}));
  fake.cert.add("y2", iv({0, 0, 1}));
  CHECK_FALSE(verify_certificate(h, "integral", fake).ok);
  Verdict bad_exact;
  bad_exact.cert.add("p", iv({1, 1}));
  CHECK_FALSE(verify_certificate(h, "exact", bad_exact).ok);
  CHECK(digest("abc") == digest("abc"));
  CHECK(digest("abc") != digest("abd"));
  CHECK(digest("").size() == 16);
}
