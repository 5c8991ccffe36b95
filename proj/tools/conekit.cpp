// conekit command-line front end.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "conekit/run.hpp"

#ifndef CONEKIT_CORPUS_DIR
#define CONEKIT_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using namespace conekit;
using nlohmann::json;

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

Report run_file(const std::string& command, const std::string& path, const RunOptions& opt) {
  std::string text;
  if (!read_file(path, text)) {
    Report r;
    r.exit_code = 2;
    r.json = {{"tool", "conekit"},
              {"version", kToolVersion},
              {"command", command},
              {"file", path},
              {"result", {{"error", {{"kind", "IOError"}, {"message", "cannot read " + path}}}}},
              {"exit_code", 2}};
    r.text = "error: cannot read " + path + "\n";
    return r;
  }
  if (command == "canon") {
    Report r;
    try {
      r.text = serialize(parse_document(text));
      r.json = json::parse(r.text);
    } catch (const Error& e) {
      r.exit_code = 2;
      r.text = std::string("error: ") + e.what() + "\n";
      r.json = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    }
    return r;
  }
  Report r = run_command(command, text, opt);
  r.json["file"] = fs::path(path).filename().string();
  return r;
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

int corpus_list(const std::string& dir, bool verify, bool as_json, const RunOptions& opt) {
  json rows = json::array();
  int exit = 0;
  std::vector<fs::path> files;
  try {
    files = corpus_files(dir);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& f : files) {
    std::string text;
    read_file(f.string(), text);
    json row = {{"file", f.filename().string()}};
    try {
      Document d = parse_document(text);
      row["name"] = d.name;
      row["kind"] = d.kind;
      row["expected"] = d.expected;
      row["digest"] = digest(serialize(d));
      if (verify) {
        json checks = json::array();
        bool all = true;
        for (const auto& c : evaluate_expected(d, opt)) {
          checks.push_back({{"key", c.key}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
          all &= c.ok;
        }
        row["checks"] = checks;
        row["ok"] = all;
        if (!all) exit = 1;
      }
    } catch (const Error& e) {
      row["error"] = e.what();
      exit = 2;
    }
    rows.push_back(row);
  }
  if (as_json) {
    std::cout << json{{"tool", "conekit"}, {"version", kToolVersion}, {"corpus", rows}}.dump(2) << "\n";
    return exit;
  }
  for (const auto& row : rows) {
    std::cout << row["file"].get<std::string>();
    if (row.contains("error")) {
      std::cout << "  ERROR " << row["error"].get<std::string>() << "\n";
      continue;
    }
    std::cout << "  [" << row["kind"].get<std::string>() << "]  digest " << row["digest"].get<std::string>() << "\n";
    if (verify) {
      for (const auto& c : row["checks"])
        std::cout << "  " << (c["ok"].get<bool>() ? "ok  " : "FAIL") << " " << c["key"].get<std::string>()
                  << " expected " << c["expected"].dump() << " got " << c["actual"].dump() << "\n";
    } else {
      for (const auto& [k, v] : row["expected"].items()) std::cout << "    " << k << " = " << v.dump() << "\n";
    }
  }
  return exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conekit: exact decision procedures for monoid homomorphisms, cone complexes and toric bundles"};
  app.set_version_flag("--version", kToolVersion);

  std::string command;
  std::vector<std::string> files;
  bool as_json = false, verify = false;
  int jobs = 1;
  std::string corpus_dir = CONEKIT_CORPUS_DIR;
  RunOptions opt;

  std::vector<std::string> all_commands = command_names();
  all_commands.push_back("canon");
  all_commands.push_back("corpus-list");
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(all_commands));
  app.add_option("files", files, "Input documents");
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--budget", opt.budget, "Enumeration budget")->envname("CONEKIT_BUDGET")->check(CLI::PositiveNumber);
  app.add_flag("--paranoid", opt.paranoid, "Brute-force fallback for integrality");
  app.add_option("--jobs", jobs, "Process input files in parallel")->check(CLI::PositiveNumber);
  app.add_option("--q", opt.q, "inf: query element (a name or a,b,c); repeatable");
  app.add_option("--x", opt.x, "star: point rows (a,b,c); repeat for a lexicographic point");
  app.add_option("--cell", opt.cell, "star: cell index in a complex");
  app.add_flag("--sliced", opt.sliced, "present: factor through the toric chart");
  app.add_option("--corpus", corpus_dir, "corpus-list: fixture directory");
  app.add_flag("--verify", verify, "corpus-list: evaluate expected values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (command == "corpus-list") return corpus_list(corpus_dir, verify, as_json, opt);
  if (files.empty()) {
    std::cerr << "error: no input documents\n";
    return 2;
  }

  std::vector<Report> reports(files.size());
  if (jobs <= 1 || files.size() == 1) {
    for (std::size_t i = 0; i < files.size(); ++i) reports[i] = run_file(command, files[i], opt);
  } else {
    // Fixed-size waves keep at most `jobs` workers alive; results land by index.
    for (std::size_t start = 0; start < files.size(); start += jobs) {
      std::vector<std::future<Report>> wave;
      std::size_t end = std::min(files.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < end; ++i)
        wave.push_back(std::async(std::launch::async, run_file, command, files[i], opt));
      for (std::size_t i = start; i < end; ++i) reports[i] = wave[i - start].get();
    }
  }

  int exit = 0;
  for (const auto& r : reports) exit = std::max(exit, r.exit_code);
  if (as_json) {
    if (reports.size() == 1) {
      std::cout << reports[0].json.dump(2) << "\n";
    } else {
      json all = json::array();
      for (const auto& r : reports) all.push_back(r.json);
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (reports.size() > 1) std::cout << "== " << files[i] << "\n";
      std::cout << reports[i].text;
    }
  }
  return exit;
}
