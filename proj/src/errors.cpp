#include "conekit/errors.hpp"

namespace conekit {

namespace {
thread_local std::int64_t g_limit = Budget::kDefault;
thread_local std::int64_t g_used = 0;
}  // namespace

std::int64_t Budget::limit() { return g_limit; }
void Budget::set_limit(std::int64_t n) { g_limit = n; }
std::int64_t Budget::used() { return g_used; }
void Budget::reset() { g_used = 0; }

void Budget::spend(std::int64_t n) {
  g_used += n;
  if (g_used > g_limit)
    throw Error("BudgetExceeded", "enumeration exceeded budget of " + std::to_string(g_limit));
}

BudgetScope::BudgetScope(std::int64_t limit) : saved_limit_(g_limit), saved_used_(g_used) {
  g_limit = limit;
  g_used = 0;
}

BudgetScope::~BudgetScope() {
  g_limit = saved_limit_;
  g_used = saved_used_;
}

}  // namespace conekit
