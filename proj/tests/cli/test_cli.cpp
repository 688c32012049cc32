#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dicehit/dicehit.hpp"

namespace dicehit::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json call_json(std::vector<std::string> args) {
  Outcome o = call(std::move(args));
  return Json::parse(o.out);
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        row.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

TEST(CliRun, FairSixPrimeTwoHundred) {
  Outcome o = call({"run", "--faces", "6", "--predicate", "prime", "--init", "0", "--rounds", "200",
                    "--digits", "20"});
  ASSERT_EQ(o.code, kOk) << o.err;
  Json j = Json::parse(o.out);
  EXPECT_EQ(j["M"]["decimal"], "2.4284979136935041712");
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["R"], 200);
}

TEST(CliRun, Semiprime) {
  Json j = call_json({"run", "--faces", "6", "--predicate", "semiprime", "--init", "0", "--rounds",
                      "400", "--digits", "10"});
  EXPECT_TRUE(starts_with(j["M"]["decimal"], "3.788921291")) << j["M"]["decimal"];
}

TEST(CliRun, PerfectSquareFromTwo) {
  Json fixed = call_json({"run", "--faces", "6", "--predicate", "perfect-square", "--init", "2",
                          "--rounds", "600", "--digits", "6"});
  EXPECT_EQ(fixed["M"]["decimal"], "9.01895");
  Json tail = call_json({"run", "--faces", "6", "--predicate", "perfect-square", "--init", "2",
                         "--eps", "1e-6", "--digits", "6"});
  EXPECT_EQ(tail["R"], 527);
  EXPECT_EQ(tail["M"]["decimal"], "9.01861");
}

TEST(CliRun, SchemaKeysInOrder) {
  Json j = call_json({"run", "--faces", "6", "--rounds", "5"});
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected{"spec", "R", "a_R", "tail", "M", "L_abs", "L_rel", "var_T",
                                          "skew_T", "kurt_T", "var_N", "cov", "corr", "status", "meta"};
  EXPECT_EQ(keys, expected);
  for (const char* k : {"a_R", "tail", "M", "L_abs", "L_rel", "var_T", "var_N", "cov"}) {
    ASSERT_TRUE(j[k].contains("num")) << k;
    EXPECT_TRUE(j[k]["num"].is_string());
    EXPECT_TRUE(j[k]["den"].is_string());
    EXPECT_TRUE(j[k]["decimal"].is_string());
  }
  EXPECT_TRUE(j["skew_T"]["square"]["num"].is_string());
  EXPECT_EQ(j["meta"]["W"], 6);
  EXPECT_EQ(j["spec"]["predicate"], "prime");
  EXPECT_EQ(j["meta"]["digits"], 30);
  // a_5 as an exact fraction agrees with the engine.
  Trace t = run(GameSpec{Game{DieSpec::fair(6), PredicateSpec::prime(), 0}, FixedRounds{5}});
  mpq_class a(mpz_class(j["a_R"]["num"].get<std::string>()), mpz_class(j["a_R"]["den"].get<std::string>()));
  EXPECT_EQ(a, t.absorbed_mass());
}

TEST(CliRun, CsvAndJsonShareDecimals) {
  Json j = call_json({"run", "--die", "1:2,2:1,3:3", "--predicate", "distinct-prime-product:2",
                      "--init", "1", "--rounds", "40", "--digits", "25"});
  Outcome csv = call({"run", "--die", "1:2,2:1,3:3", "--predicate", "distinct-prime-product:2",
                      "--init", "1", "--rounds", "40", "--digits", "25", "--format", "csv"});
  ASSERT_EQ(csv.code, kOk);
  auto rows = read_csv(csv.out);
  ASSERT_GT(rows.size(), 10u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"quantity", "num", "den", "decimal"}));
  int compared = 0;
  for (const auto& row : rows) {
    if (row.size() != 4 || !j.contains(row[0]) || row[0] == "R" || row[0] == "status") continue;
    const Json& v = j[row[0]];
    if (v.is_null()) {
      EXPECT_EQ(row[3], "NA");
      continue;
    }
    EXPECT_EQ(row[3], v["decimal"].get<std::string>()) << row[0];
    ++compared;
  }
  EXPECT_GE(compared, 10);
}

TEST(CliRun, TextFormat) {
  Outcome o = call({"run", "--faces", "6", "--rounds", "2", "--format", "text", "--digits", "5"});
  ASSERT_EQ(o.code, kOk);
  EXPECT_NE(o.out.find("M         1.3077"), std::string::npos) << o.out;
}

TEST(CliRun, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "dicehit_cli_test.json";
  std::filesystem::remove(path);
  Outcome o = call({"run", "--faces", "6", "--rounds", "3", "-o", path.string()});
  ASSERT_EQ(o.code, kOk);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  Json j = Json::parse(in);
  EXPECT_EQ(j["R"], 3);
  std::filesystem::remove(path);
}

TEST(CliRun, ExitCodes) {
  Outcome start = call({"run", "--faces", "6", "--init", "2", "--rounds", "3"});
  EXPECT_EQ(start.code, kInvalidStart);
  Json err = Json::parse(start.out);
  EXPECT_EQ(err["status"], "error");
  EXPECT_EQ(err["error"]["code"], "invalid-start");

  EXPECT_EQ(call({"run", "--faces", "6", "--init", "2", "--rounds", "3", "--allow-trivial-start"}).code,
            kOk);
  Outcome nohits = call({"run", "--die", "4:1,6:1", "--rounds", "20"});
  EXPECT_EQ(nohits.code, kNoHits);
  EXPECT_EQ(Json::parse(nohits.out)["error"]["code"], "no-hits");

  Outcome capped = call({"run", "--faces", "6", "--eps", "1e-30", "--rmax", "10"});
  EXPECT_EQ(capped.code, kNotConverged);
  EXPECT_EQ(Json::parse(capped.out)["status"], "not-converged");

  EXPECT_EQ(call({"run", "--faces", "6", "--die", "1:1", "--rounds", "3"}).code, kUsage);
  EXPECT_EQ(call({"run", "--faces", "6", "--rounds", "3", "--eps", "0.1"}).code, kUsage);
  EXPECT_EQ(call({"run", "--faces", "6"}).code, kFailure);
  EXPECT_EQ(call({"run", "--faces", "6", "--predicate", "composite", "--rounds", "3"}).code, kFailure);
  EXPECT_EQ(call({"bogus"}).code, kUsage);
  EXPECT_EQ(call({}).code, kUsage);
}

TEST(CliPgf, TwoRounds) {
  Outcome o = call({"pgf", "--faces", "6", "--predicate", "prime", "--init", "0", "--rounds", "2"});
  ASSERT_EQ(o.code, kOk);
  std::istringstream in(o.out);
  PgfText text = read_pgf_text(in);
  EXPECT_EQ(text.base, 6u);
  ASSERT_EQ(text.slices.size(), 2u);
  std::map<std::uint64_t, mpq_class> k1, k2;
  for (std::uint64_t n = 0; n <= 12; ++n) {
    if (sgn(text.slices[0].inductees.numerator(n))) k1[n] = text.slices[0].inductees.coefficient(n);
    if (sgn(text.slices[1].inductees.numerator(n))) k2[n] = text.slices[1].inductees.coefficient(n);
  }
  EXPECT_EQ(k1, (std::map<std::uint64_t, mpq_class>{
                    {2, mpq_class(1, 6)}, {3, mpq_class(1, 6)}, {5, mpq_class(1, 6)}}));
  EXPECT_EQ(k2, (std::map<std::uint64_t, mpq_class>{{2, mpq_class(1, 36)},
                                                     {3, mpq_class(1, 36)},
                                                     {5, mpq_class(1, 18)},
                                                     {7, mpq_class(1, 12)},
                                                     {11, mpq_class(1, 36)}}));
}

TEST(CliPgf, NeverHasEmptySlices) {
  Outcome o = call({"pgf", "--faces", "6", "--predicate", "never", "--rounds", "3"});
  ASSERT_EQ(o.code, kOk);
  std::istringstream in(o.out);
  PgfText text = read_pgf_text(in);
  ASSERT_EQ(text.slices.size(), 3u);
  for (const auto& s : text.slices) EXPECT_TRUE(s.inductees.is_zero());
}

TEST(CliPgf, DeterministicWalk) {
  Outcome o = call({"pgf", "--die", "1:1", "--predicate", "prime", "--rounds", "3"});
  std::istringstream in(o.out);
  PgfText text = read_pgf_text(in);
  int terms = 0;
  for (const auto& s : text.slices) {
    for (std::uint64_t n = 0; n < 10; ++n) {
      if (sgn(s.inductees.numerator(n)) == 0) continue;
      ++terms;
      EXPECT_EQ(s.k, 2u);
      EXPECT_EQ(n, 2u);
      EXPECT_EQ(s.inductees.coefficient(n), 1);
    }
  }
  EXPECT_EQ(terms, 1);
}

TEST(CliPgf, ResummingReproducesAbsorbedMass) {
  for (const char* die : {"1:1,2:3,5:2", "2:1,3:1"}) {
    std::vector<std::string> common{"--die", die, "--predicate", "prime", "--init", "1", "--rounds", "30"};
    std::vector<std::string> pgf_args{"pgf"};
    pgf_args.insert(pgf_args.end(), common.begin(), common.end());
    std::vector<std::string> run_args{"run"};
    run_args.insert(run_args.end(), common.begin(), common.end());
    std::istringstream in(call(pgf_args).out);
    PgfText text = read_pgf_text(in);
    mpq_class total = 0;
    for (const auto& s : text.slices) total += mass(s.inductees);
    Json j = call_json(run_args);
    mpq_class a(mpz_class(j["a_R"]["num"].get<std::string>()),
                mpz_class(j["a_R"]["den"].get<std::string>()));
    EXPECT_EQ(total, a) << die;
  }
}

TEST(CliSweep, DistinctPrimeProducts) {
  Outcome three = call({"sweep", "--faces", "6..6", "--predicate", "distinct-prime-product:3",
                        "--eps", "1e-7"});
  ASSERT_EQ(three.code, kOk) << three.err;
  auto rows = read_csv(three.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"faces", "R", "tail", "M", "var", "skew", "kurt", "status"}));
  EXPECT_TRUE(starts_with(rows[1][3], "17.616887")) << rows[1][3];

  auto four = read_csv(call({"sweep", "--faces", "6..6", "--predicate", "distinct-prime-product:4",
                             "--eps", "1e-7"}).out);
  ASSERT_EQ(four.size(), 2u);
  EXPECT_TRUE(starts_with(four[1][3], "112.907872")) << four[1][3];
}

TEST(CliSweep, PrimeRowMatchesRunAtGuaranteeRound) {
  auto rows = read_csv(call({"sweep", "--faces", "6..6", "--predicate", "prime", "--eps", "1e-7"}).out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "62");
  EXPECT_TRUE(starts_with(rows[1][3], "2.42849")) << rows[1][3];
  Json j = call_json({"run", "--faces", "6", "--rounds", "62"});
  EXPECT_EQ(rows[1][3], j["M"]["decimal"].get<std::string>());
  EXPECT_EQ(rows[1][4], j["var_T"]["decimal"].get<std::string>());
}

TEST(CliSweep, RowsInOrderWithStatus) {
  Outcome o = call({"sweep", "--faces", "1..8", "--eps", "1e-5", "--jobs", "4", "--digits", "8"});
  auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], std::to_string(i));
    EXPECT_EQ(rows[i][7], "ok");
  }
  EXPECT_EQ(o.code, kOk);
}

TEST(CliGuarantee, HalfIsOneRound) {
  Json j = call_json({"guarantee", "--faces", "6", "--predicate", "prime", "--init", "0", "--eps", "0.5"});
  EXPECT_EQ(j["R"], 1);
  EXPECT_EQ(j["survivor_mass"]["num"], "1");
  EXPECT_EQ(j["survivor_mass"]["den"], "2");
  EXPECT_EQ(j["status"], "ok");
}

TEST(CliGuarantee, ParityReportsNotConverged) {
  Outcome o = call({"guarantee", "--die", "4:1,6:1", "--eps", "1e-3", "--rmax", "40"});
  EXPECT_EQ(o.code, kNotConverged);
  Json j = Json::parse(o.out);
  EXPECT_EQ(j["status"], "not-converged");
  EXPECT_EQ(j["survivor_mass"]["num"], "1");
  EXPECT_EQ(j["survivor_mass"]["den"], "1");
}

TEST(CliConstant, TwentyDigits) {
  Outcome o = call({"constant", "--faces", "6", "--predicate", "prime", "--init", "0", "--digits", "20"});
  ASSERT_EQ(o.code, kOk);
  EXPECT_EQ(o.out, "2.4284979136935042304\n");
}

TEST(CliPlotdata, EachCellMatchesRun) {
  Outcome o = call({"plotdata", "--faces", "2..20", "--predicate", "prime", "--init", "0", "--eps", "1e-7"});
  ASSERT_EQ(o.code, kOk) << o.err;
  auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 20u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"faces", "init", "M"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], std::to_string(i + 1));
    Json j = call_json({"run", "--faces", rows[i][0], "--predicate", "prime", "--init", "0", "--eps", "1e-7"});
    EXPECT_EQ(rows[i][2], j["M"]["decimal"].get<std::string>()) << "faces " << rows[i][0];
    EXPECT_GT(std::stod(rows[i][2]), 0.0);
  }
}

TEST(CliPlotdata, InvalidCellsAreNA) {
  Outcome o = call({"plotdata", "--faces", "6", "--init", "0..2", "--rounds", "50"});
  EXPECT_EQ(o.code, kNotConverged);
  auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[1][2], "NA");
  EXPECT_NE(rows[2][2], "NA");
  EXPECT_EQ(rows[3][2], "NA");
  EXPECT_NE(o.err.find("invalid-start"), std::string::npos);
}

TEST(CliSimulate, ReproducibleJson) {
  std::vector<std::string> args{"simulate", "--faces", "6", "--trials", "20000", "--cap", "200", "--seed", "9"};
  Json a = call_json(args);
  Json b = call_json(args);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["status"], "ok");
  EXPECT_EQ(a["seed"], "9");
  EXPECT_EQ(a["meta"]["generator"], kGeneratorName);
  EXPECT_NEAR(std::stod(a["mean_T"].get<std::string>()), 2.4285, 0.1);
}

TEST(ParseRange, Forms) {
  EXPECT_EQ(parse_range("2..20").first, 2u);
  EXPECT_EQ(parse_range("2..20").last, 20u);
  EXPECT_EQ(parse_range("7").first, 7u);
  EXPECT_EQ(parse_range("7").last, 7u);
  EXPECT_THROW(parse_range("5..2"), InvalidArgument);
  EXPECT_THROW(parse_range("a..b"), InvalidArgument);
  EXPECT_THROW(parse_range(""), InvalidArgument);
}

}  // namespace
}  // namespace dicehit::cli
