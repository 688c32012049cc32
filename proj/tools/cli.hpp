#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dicehit/dicehit.hpp"

namespace dicehit::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kInvalidStart = 3,
  kNoHits = 4,
  kNotConverged = 5,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inclusive `a..b`, or a single value `a`.
struct Range {
  std::uint64_t first;
  std::uint64_t last;
};
Range parse_range(std::string_view text);

using Json = nlohmann::ordered_json;

Json exact_json(const ExactValue& v);
Json root_json(const RootValue& v);
Json game_json(const Game& game);
/// The schema-stable document emitted by `run`.
Json summary_json(const Summary& summary, const Trace& trace, const Json& stop);

}  // namespace dicehit::cli
