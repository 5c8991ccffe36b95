#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/document.hpp"
#include "conekit/errors.hpp"

namespace conekit {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
  bool paranoid = false;
  std::int64_t budget = Budget::kDefault;
  std::vector<std::string> q;  // inf: elements of Q^gp
  std::vector<std::string> x;  // star: rows of a lexicographic point
  std::size_t cell = 0;        // star on a complex
  bool sliced = false;         // present
};

// exit_code: 0 pass/answered, 1 some property false, 2 input or precondition error.
struct Report {
  int exit_code = 0;
  nlohmann::json json;  // elapsed_ms is the only nondeterministic field
  std::string text;
};

const std::vector<std::string>& command_names();

// Runs one command on one document. Never throws: errors become exit code 2.
Report run_command(const std::string& command, const std::string& document_text, const RunOptions& opt);
Report run_command(const std::string& command, const Document& doc, const std::string& digest_text,
                   const RunOptions& opt);

// One row per key of doc.expected.
struct ExpectationCheck {
  std::string key;
  nlohmann::json expected;
  nlohmann::json actual;
  bool ok = false;
};
// Evaluates every expected key; unknown keys are reported with actual = "unsupported".
std::vector<ExpectationCheck> evaluate_expected(const Document& doc, const RunOptions& opt = {});

}  // namespace conekit
