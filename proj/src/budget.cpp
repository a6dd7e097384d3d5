#include "znec/budget.hpp"

#include <cstdlib>
#include <string>

#include "znec/errors.hpp"

namespace znec {

Budgets Budgets::from_environment() {
  Budgets b;
  const char* raw = std::getenv("ZNEC_BUDGET");
  if (raw == nullptr || *raw == '\0') return b;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || v == 0 || raw[0] == '-') {
    throw ContractViolation(std::string("ZNEC_BUDGET must be a positive integer, got '") + raw + "'");
  }
  b.enumeration = v;
  b.counting = v;
  return b;
}

}  // namespace znec
