#pragma once

// Command-line front end: structure, dlp, rank-bound, f-poly and
// verify-paper-examples. Exit codes: 0 success, 1 usage error, 2 failed
// mathematical precondition.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "znec/rank.hpp"
#include "znec/structure.hpp"

namespace znec::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Decimal integer with an optional leading '-'. Throws std::invalid_argument.
mpz_class parse_integer(const std::string& text);

/// "7,11^2,13" -> {{7,1},{11,2},{13,1}}, sorted. Throws std::invalid_argument.
Factorization parse_factorization(const std::string& text);

nlohmann::json to_json(const GroupStructure& gs);
nlohmann::json to_json(const RankBoundReport& report);
nlohmann::json to_json(const MaxRankCurve& curve);

struct Fixture {
  std::string name;
  std::function<bool()> check;
};

/// The worked examples whose values are printed in the source material.
std::vector<Fixture> paper_fixtures();

}  // namespace znec::cli
