#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conekit {

// Every library failure carries a short kind tag (e.g. "NotExact") used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Enumeration budget shared by all bounded searches on the current thread.
class Budget {
 public:
  static constexpr std::int64_t kDefault = 5'000'000;

  static std::int64_t limit();
  static void set_limit(std::int64_t n);
  static std::int64_t used();
  static void reset();
  // Charges n units; throws Error("BudgetExceeded") past the limit.
  static void spend(std::int64_t n = 1);
};

// Restores the previous limit and usage on scope exit.
class BudgetScope {
 public:
  explicit BudgetScope(std::int64_t limit);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::int64_t saved_limit_;
  std::int64_t saved_used_;
};

}  // namespace conekit
