#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

namespace dicehit::cli {

namespace {

constexpr const char* kToolName = "dicehit 0.1.0";

enum class Format { kJson, kCsv, kText };

Format parse_format(const std::string& text, Format fallback) {
  if (text.empty()) return fallback;
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "text") return Format::kText;
  throw InvalidArgument("unknown format '" + text + "' (json, csv, text)");
}

struct GameOptions {
  std::string faces;
  std::string die;
  std::string predicate = "prime";
  std::uint64_t init = 0;
  bool allow_trivial_start = false;
};

struct OutputOptions {
  unsigned digits = 30;
  std::string format;
  std::string output;
};

void add_game_options(CLI::App* cmd, GameOptions& g, bool faces_is_range) {
  auto* faces = cmd->add_option("--faces", g.faces,
                                faces_is_range ? "Fair dice face counts, a..b inclusive"
                                               : "Number of faces of a fair die");
  auto* die = cmd->add_option("--die", g.die, "Loaded die as value:weight,value:weight,...");
  faces->excludes(die);
  die->excludes(faces);
  cmd->add_option("--predicate", g.predicate,
                  "prime, semiprime, distinct-prime-product:K, perfect-square, odd, even, never")
      ->capture_default_str();
  if (!faces_is_range) {
    cmd->add_option("--init", g.init, "Starting sum")->capture_default_str();
  }
  cmd->add_flag("--allow-trivial-start", g.allow_trivial_start,
                "Accept a start that already satisfies the predicate");
}

void add_output_options(CLI::App* cmd, OutputOptions& o, bool with_digits = true) {
  if (with_digits) {
    cmd->add_option("--digits", o.digits, "Significant digits in decimal renderings")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--format", o.format, "json, csv or text");
  cmd->add_option("--output,-o", o.output, "Write to this file instead of stdout");
}

DieSpec make_die(const GameOptions& g) {
  if (!g.die.empty()) return DieSpec::parse(g.die);
  if (g.faces.empty()) throw InvalidArgument("one of --faces or --die is required");
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(g.faces.data(), g.faces.data() + g.faces.size(), n);
  if (ec != std::errc() || ptr != g.faces.data() + g.faces.size()) {
    throw InvalidArgument("bad --faces '" + g.faces + "'");
  }
  return DieSpec::fair(n);
}

Game make_game(const GameOptions& g) {
  return Game{make_die(g), PredicateSpec::parse(g.predicate), g.init, g.allow_trivial_start};
}

std::string double_text(double x) {
  if (!std::isfinite(x)) return "NA";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string row;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) row += ',';
    row += csv_field(f);
    first = false;
  }
  return row + "\n";
}

Json rational_json(const mpq_class& q, const std::string& decimal) {
  Json j;
  j["num"] = q.get_num().get_str();
  j["den"] = q.get_den().get_str();
  j["decimal"] = decimal;
  return j;
}

Json meta_json(unsigned digits) {
  Json j;
  j["tool"] = kToolName;
  j["digits"] = digits;
  j["skew_convention"] = kSkewConvention;
  j["kurtosis_convention"] = kKurtosisConvention;
  j["exact_values"] = "num/den decimal-digit strings; decimal is round-half-even";
  return j;
}

/// Buffers command output and flushes it to stdout or --output.
class Sink {
 public:
  Sink(const OutputOptions& o, std::ostream& out) : path_(o.output), out_(out) {}

  std::ostream& stream() { return buffer_; }

  void flush() {
    if (path_.empty()) {
      out_ << buffer_.str();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open output file '" + path_ + "'");
    file << buffer_.str();
  }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostringstream buffer_;
};

struct ErrorInfo {
  int code;
  std::string name;
};

ErrorInfo classify(const std::exception& e) {
  if (dynamic_cast<const InvalidStart*>(&e)) return {kInvalidStart, "invalid-start"};
  if (dynamic_cast<const NoHits*>(&e)) return {kNoHits, "no-hits"};
  if (dynamic_cast<const SieveTooSmall*>(&e)) return {kFailure, "sieve-too-small"};
  if (dynamic_cast<const InvalidArgument*>(&e)) return {kFailure, "invalid-argument"};
  return {kFailure, "internal"};
}

int report_error(const std::exception& e, Format format, std::ostream& out, std::ostream& err) {
  ErrorInfo info = classify(e);
  if (format == Format::kJson) {
    Json j;
    j["status"] = "error";
    j["error"] = {{"code", info.name}, {"message", e.what()}};
    out << j.dump(2) << "\n";
  }
  err << "error (" << info.name << "): " << e.what() << "\n";
  return info.code;
}

/// Runs `fn` over [0, n) on up to `jobs` threads; fn(i) must write only slot i.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

Json stop_json(const StopRule& stop) {
  Json j;
  if (const auto* fixed = std::get_if<FixedRounds>(&stop)) {
    j["rounds"] = fixed->rounds;
  } else {
    const auto& tail = std::get<TailTarget>(stop);
    j["eps"] = rational_json(tail.eps, render_decimal(tail.eps, 6));
    j["rmax"] = tail.r_max;
  }
  return j;
}

// --- run --------------------------------------------------------------------

struct RunCommand {
  GameOptions game;
  OutputOptions out;
  std::uint64_t rounds = 0;
  std::string eps;
  std::uint64_t rmax = 10000;
};

void write_run_csv(std::ostream& os, const Summary& s, const Json& doc) {
  os << csv_row({"quantity", "num", "den", "decimal"});
  auto value_row = [&](const char* name, const ExactValue& v) {
    os << csv_row({name, v.value.get_num().get_str(), v.value.get_den().get_str(), v.decimal});
  };
  auto root_row = [&](const char* name, const std::optional<RootValue>& v) {
    // A signed square root has no rational form; num/den stay empty.
    os << csv_row({name, "", "", v ? v->decimal : "NA"});
  };
  os << csv_row({"R", std::to_string(s.R), "1", std::to_string(s.R)});
  value_row("a_R", s.a_R);
  value_row("tail", s.tail);
  value_row("M", s.M);
  value_row("L_abs", s.L_abs);
  value_row("L_rel", s.L_rel);
  value_row("var_T", s.var_T);
  root_row("skew_T", s.skew_T);
  if (s.kurt_T) {
    value_row("kurt_T", *s.kurt_T);
  } else {
    os << csv_row({"kurt_T", "", "", "NA"});
  }
  value_row("var_N", s.var_N);
  value_row("cov", s.cov);
  root_row("corr", s.corr);
  os << csv_row({"status", "", "", doc["status"].get<std::string>()});
}

void write_run_text(std::ostream& os, const Summary& s, const Trace& trace, const std::string& status) {
  auto line = [&](const std::string& name, const std::string& value) {
    os << name << std::string(name.size() < 10 ? 10 - name.size() : 1, ' ') << value << "\n";
  };
  line("die", trace.game.die.describe());
  line("predicate", trace.game.pred.name());
  line("init", std::to_string(trace.game.init));
  line("R", std::to_string(s.R));
  line("status", status);
  line("a_R", s.a_R.decimal);
  line("tail", s.tail.decimal);
  line("M", s.M.decimal);
  line("L_abs", s.L_abs.decimal);
  line("L_rel", s.L_rel.decimal);
  line("var_T", s.var_T.decimal);
  line("skew_T", s.skew_T ? s.skew_T->decimal : "undefined");
  line("kurt_T", s.kurt_T ? s.kurt_T->decimal : "undefined");
  line("var_N", s.var_N.decimal);
  line("cov", s.cov.decimal);
  line("corr", s.corr ? s.corr->decimal : "undefined");
}

int do_run(const RunCommand& c, std::ostream& out) {
  Game game = make_game(c.game);
  StopRule stop;
  if (c.rounds > 0 && !c.eps.empty()) throw InvalidArgument("give only one of --rounds and --eps");
  if (c.rounds > 0) {
    stop = FixedRounds{c.rounds};
  } else if (!c.eps.empty()) {
    stop = TailTarget{parse_rational(c.eps), c.rmax};
  } else {
    throw InvalidArgument("one of --rounds or --eps is required");
  }
  Trace trace = run(GameSpec{game, stop});
  Summary summary = summarize(trace, c.out.digits);
  Json doc = summary_json(summary, trace, stop_json(stop));

  Sink sink(c.out, out);
  switch (parse_format(c.out.format, Format::kJson)) {
    case Format::kJson:
      sink.stream() << doc.dump(2) << "\n";
      break;
    case Format::kCsv:
      write_run_csv(sink.stream(), summary, doc);
      break;
    case Format::kText:
      write_run_text(sink.stream(), summary, trace, doc["status"]);
      break;
  }
  sink.flush();
  return trace.converged ? kOk : kNotConverged;
}

// --- pgf --------------------------------------------------------------------

struct PgfCommand {
  GameOptions game;
  OutputOptions out;
  std::uint64_t rounds = 0;
};

int do_pgf(const PgfCommand& c, std::ostream& out) {
  Game game = make_game(c.game);
  auto slices = truncated_pgf(game, c.rounds);
  const std::uint64_t base = game.die.total_weight();

  Sink sink(c.out, out);
  switch (parse_format(c.out.format, Format::kText)) {
    case Format::kText:
      write_pgf_text(sink.stream(), base, slices);
      break;
    case Format::kCsv:
      sink.stream() << csv_row({"k", "exponent", "numerator", "scale"});
      for (const auto& s : slices) {
        auto coeffs = s.inductees.coeffs();
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          if (sgn(coeffs[j]) == 0) continue;
          sink.stream() << csv_row({std::to_string(s.k), std::to_string(s.inductees.lo() + j),
                                    coeffs[j].get_str(), std::to_string(s.inductees.scale())});
        }
      }
      break;
    case Format::kJson: {
      Json doc;
      doc["spec"] = game_json(game);
      doc["W"] = base;
      Json rounds = Json::array();
      for (const auto& s : slices) {
        Json terms = Json::array();
        auto coeffs = s.inductees.coeffs();
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          if (sgn(coeffs[j]) == 0) continue;
          terms.push_back({{"exponent", s.inductees.lo() + j},
                           {"numerator", coeffs[j].get_str()},
                           {"scale", s.inductees.scale()}});
        }
        rounds.push_back({{"k", s.k}, {"terms", std::move(terms)}});
      }
      doc["rounds"] = std::move(rounds);
      doc["status"] = "ok";
      sink.stream() << doc.dump(2) << "\n";
      break;
    }
  }
  sink.flush();
  return kOk;
}

// --- guarantee --------------------------------------------------------------

struct GuaranteeCommand {
  GameOptions game;
  OutputOptions out;
  std::string eps;
  std::uint64_t rmax = 10000;
};

int do_guarantee(const GuaranteeCommand& c, std::ostream& out) {
  Game game = make_game(c.game);
  const mpq_class eps = parse_rational(c.eps);
  Guarantee g = rounds_to_guarantee(game, eps, c.rmax);
  const std::string status = g.converged ? "ok" : "not-converged";
  const std::string survivor = render_decimal(g.survivor_mass, c.out.digits);

  Sink sink(c.out, out);
  switch (parse_format(c.out.format, Format::kJson)) {
    case Format::kJson: {
      Json doc;
      doc["spec"] = game_json(game);
      doc["eps"] = rational_json(eps, render_decimal(eps, 6));
      doc["rmax"] = c.rmax;
      doc["R"] = g.rounds;
      doc["survivor_mass"] = rational_json(g.survivor_mass, survivor);
      doc["status"] = status;
      doc["meta"] = meta_json(c.out.digits);
      sink.stream() << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      sink.stream() << csv_row({"R", "survivor_mass", "status"})
                    << csv_row({std::to_string(g.rounds), survivor, status});
      break;
    case Format::kText:
      sink.stream() << "R " << g.rounds << "\nsurvivor_mass " << survivor << "\nstatus " << status
                    << "\n";
      break;
  }
  sink.flush();
  return g.converged ? kOk : kNotConverged;
}

// --- constant ---------------------------------------------------------------

struct ConstantCommand {
  GameOptions game;
  OutputOptions out;
  std::uint64_t r0 = 100;
  std::uint64_t rcap = 1u << 15;
  std::string quantity = "duration";
};

int do_constant(const ConstantCommand& c, std::ostream& out) {
  Game game = make_game(c.game);
  Quantity q;
  if (c.quantity == "duration" || c.quantity == "M") {
    q = Quantity::kDuration;
  } else if (c.quantity == "location" || c.quantity == "L") {
    q = Quantity::kLocation;
  } else {
    throw InvalidArgument("unknown quantity '" + c.quantity + "' (duration, location)");
  }
  ConstantEstimate est = estimate_constant(game, c.out.digits, c.r0, q, c.rcap);
  const std::string status = est.converged ? "ok" : "not-converged";

  Sink sink(c.out, out);
  switch (parse_format(c.out.format, Format::kText)) {
    case Format::kJson: {
      Json doc;
      doc["spec"] = game_json(game);
      doc["quantity"] = q == Quantity::kDuration ? "duration" : "location";
      doc["digits"] = c.out.digits;
      doc["value"] = est.value;
      doc["R"] = est.rounds;
      doc["confirm_R"] = est.confirm_rounds;
      doc["agreed_digits"] = est.agreed_digits;
      doc["status"] = status;
      doc["meta"] = meta_json(c.out.digits);
      sink.stream() << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      sink.stream() << csv_row({"value", "R", "confirm_R", "agreed_digits", "status"})
                    << csv_row({est.value, std::to_string(est.rounds),
                                std::to_string(est.confirm_rounds),
                                std::to_string(est.agreed_digits), status});
      break;
    case Format::kText:
      sink.stream() << est.value << "\n";
      break;
  }
  sink.flush();
  return est.converged ? kOk : kNotConverged;
}

// --- simulate ---------------------------------------------------------------

struct SimulateCommand {
  GameOptions game;
  OutputOptions out;
  std::uint64_t trials = 100000;
  std::uint64_t cap = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

int do_simulate(const SimulateCommand& c, std::ostream& out) {
  Game game = make_game(c.game);
  SimResult r = simulate(game, c.trials, c.cap, c.seed, c.workers);
  const double se = r.hits > 0 ? std::sqrt(r.var_T / static_cast<double>(r.hits)) : 0.0;

  Sink sink(c.out, out);
  switch (parse_format(c.out.format, Format::kJson)) {
    case Format::kJson: {
      Json doc;
      doc["spec"] = game_json(game);
      doc["trials"] = r.trials;
      doc["cap"] = c.cap;
      doc["seed"] = std::to_string(r.seed);
      doc["hits"] = r.hits;
      doc["hit_fraction"] = double_text(r.hit_fraction);
      doc["mean_T"] = double_text(r.mean_T);
      doc["var_T"] = double_text(r.var_T);
      doc["stderr_T"] = double_text(se);
      doc["mean_N"] = double_text(r.mean_N);
      doc["status"] = "ok";
      doc["meta"] = {{"tool", kToolName}, {"generator", r.generator}};
      sink.stream() << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      sink.stream() << csv_row({"trials", "hits", "hit_fraction", "mean_T", "var_T", "stderr_T",
                                "mean_N", "seed"})
                    << csv_row({std::to_string(r.trials), std::to_string(r.hits),
                                double_text(r.hit_fraction), double_text(r.mean_T),
                                double_text(r.var_T), double_text(se), double_text(r.mean_N),
                                std::to_string(r.seed)});
      break;
    case Format::kText:
      sink.stream() << "trials " << r.trials << "\nhits " << r.hits << "\nhit_fraction "
                    << double_text(r.hit_fraction) << "\nmean_T " << double_text(r.mean_T)
                    << "\nvar_T " << double_text(r.var_T) << "\nstderr_T " << double_text(se)
                    << "\nmean_N " << double_text(r.mean_N) << "\ngenerator " << r.generator
                    << "\n";
      break;
  }
  sink.flush();
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepCommand {
  GameOptions game;
  OutputOptions out;
  std::string eps;
  std::uint64_t init = 0;
  std::uint64_t rmax = 10000;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

struct SweepRow {
  std::uint64_t faces = 0;
  std::uint64_t R = 0;
  std::string tail, M, var, skew, kurt;
  std::string status = "ok";
};

int do_sweep(const SweepCommand& c, std::ostream& out) {
  if (!c.game.die.empty()) throw InvalidArgument("sweep takes --faces a..b, not --die");
  if (c.game.faces.empty()) throw InvalidArgument("--faces a..b is required");
  const Range range = parse_range(c.game.faces);
  const mpq_class eps = parse_rational(c.eps);
  const PredicateSpec pred = PredicateSpec::parse(c.game.predicate);

  std::vector<SweepRow> rows(range.last - range.first + 1);
  parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.faces = range.first + i;
    try {
      Game game{DieSpec::fair(row.faces), pred, c.init, c.game.allow_trivial_start};
      Guarantee g = rounds_to_guarantee(game, eps, c.rmax);
      row.R = g.rounds;
      if (!g.converged) row.status = "not-converged";
      Summary s = summarize(g.trace, c.out.digits);
      row.tail = s.tail.decimal;
      row.M = s.M.decimal;
      row.var = s.var_T.decimal;
      row.skew = s.skew_T ? s.skew_T->decimal : "NA";
      row.kurt = s.kurt_T ? s.kurt_T->decimal : "NA";
    } catch (const std::exception& e) {
      row.status = classify(e).name;
    }
  });

  bool all_ok = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
  Sink sink(c.out, out);
  const Format format = parse_format(c.out.format, Format::kCsv);
  if (format == Format::kJson) {
    Json doc;
    doc["spec"] = {{"faces", c.game.faces},
                   {"predicate", pred.name()},
                   {"init", c.init},
                   {"eps", rational_json(eps, render_decimal(eps, 6))},
                   {"rmax", c.rmax}};
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"faces", r.faces}, {"R", r.R}, {"tail", r.tail}, {"M", r.M}, {"var", r.var},
                     {"skew", r.skew}, {"kurt", r.kurt}, {"status", r.status}});
    }
    doc["rows"] = std::move(arr);
    doc["status"] = all_ok ? "ok" : "partial";
    doc["meta"] = meta_json(c.out.digits);
    sink.stream() << doc.dump(2) << "\n";
  } else {
    sink.stream() << csv_row({"faces", "R", "tail", "M", "var", "skew", "kurt", "status"});
    for (const auto& r : rows) {
      sink.stream() << csv_row({std::to_string(r.faces), std::to_string(r.R), r.tail, r.M, r.var,
                                r.skew, r.kurt, r.status});
    }
  }
  sink.flush();
  return all_ok ? kOk : kNotConverged;
}

// --- plotdata ---------------------------------------------------------------

struct PlotCommand {
  GameOptions game;
  OutputOptions out;
  std::string inits = "0";
  std::string eps;
  std::uint64_t rounds = 0;
  std::uint64_t rmax = 10000;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

int do_plotdata(const PlotCommand& c, std::ostream& out, std::ostream& err) {
  if (!c.game.die.empty()) throw InvalidArgument("plotdata takes --faces a..b, not --die");
  if (c.game.faces.empty()) throw InvalidArgument("--faces a..b is required");
  if ((c.rounds > 0) == !c.eps.empty()) throw InvalidArgument("give exactly one of --rounds and --eps");
  const Range faces = parse_range(c.game.faces);
  const Range inits = parse_range(c.inits);
  const PredicateSpec pred = PredicateSpec::parse(c.game.predicate);
  StopRule stop = c.rounds > 0 ? StopRule{FixedRounds{c.rounds}}
                               : StopRule{TailTarget{parse_rational(c.eps), c.rmax}};

  struct Cell {
    std::uint64_t faces, init;
    std::string M = "NA";
    std::string problem;
  };
  std::vector<Cell> cells;
  for (std::uint64_t f = faces.first; f <= faces.last; ++f) {
    for (std::uint64_t i = inits.first; i <= inits.last; ++i) cells.push_back({f, i, "NA", ""});
  }
  parallel_for(cells.size(), c.jobs, [&](std::size_t idx) {
    Cell& cell = cells[idx];
    try {
      Game game{DieSpec::fair(cell.faces), pred, cell.init, c.game.allow_trivial_start};
      Trace trace = run(GameSpec{game, stop});
      cell.M = render_decimal(conditional_mean_duration(trace), c.out.digits);
      if (!trace.converged) cell.problem = "not-converged";
    } catch (const std::exception& e) {
      cell.M = "NA";
      cell.problem = classify(e).name;
    }
  });

  bool all_ok = true;
  Sink sink(c.out, out);
  sink.stream() << csv_row({"faces", "init", "M"});
  for (const auto& cell : cells) {
    sink.stream() << csv_row({std::to_string(cell.faces), std::to_string(cell.init), cell.M});
    if (!cell.problem.empty()) {
      all_ok = false;
      err << "plotdata: faces=" << cell.faces << " init=" << cell.init << ": " << cell.problem << "\n";
    }
  }
  sink.flush();
  return all_ok ? kOk : kNotConverged;
}

}  // namespace

Range parse_range(std::string_view text) {
  auto number = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidArgument("bad range '" + std::string(text) + "'");
    }
    return v;
  };
  auto dots = text.find("..");
  Range r{};
  if (dots == std::string_view::npos) {
    r.first = r.last = number(text);
  } else {
    r.first = number(text.substr(0, dots));
    r.last = number(text.substr(dots + 2));
  }
  if (r.first > r.last) throw InvalidArgument("empty range '" + std::string(text) + "'");
  return r;
}

Json exact_json(const ExactValue& v) { return rational_json(v.value, v.decimal); }

Json root_json(const RootValue& v) {
  Json j;
  j["sign"] = v.sign;
  j["square"] = {{"num", v.square.get_num().get_str()}, {"den", v.square.get_den().get_str()}};
  j["decimal"] = v.decimal;
  return j;
}

Json game_json(const Game& game) {
  Json faces = Json::array();
  for (const Face& f : game.die.faces()) faces.push_back({f.value, f.weight});
  Json j;
  j["die"] = game.die.describe();
  j["faces"] = std::move(faces);
  j["W"] = game.die.total_weight();
  j["predicate"] = game.pred.name();
  j["init"] = game.init;
  j["allow_trivial_start"] = game.allow_trivial_start;
  return j;
}

Json summary_json(const Summary& s, const Trace& trace, const Json& stop) {
  Json doc;
  doc["spec"] = game_json(trace.game);
  doc["spec"]["stop"] = stop;
  doc["R"] = s.R;
  doc["a_R"] = exact_json(s.a_R);
  doc["tail"] = exact_json(s.tail);
  doc["M"] = exact_json(s.M);
  doc["L_abs"] = exact_json(s.L_abs);
  doc["L_rel"] = exact_json(s.L_rel);
  doc["var_T"] = exact_json(s.var_T);
  doc["skew_T"] = s.skew_T ? root_json(*s.skew_T) : Json(nullptr);
  doc["kurt_T"] = s.kurt_T ? exact_json(*s.kurt_T) : Json(nullptr);
  doc["var_N"] = exact_json(s.var_N);
  doc["cov"] = exact_json(s.cov);
  doc["corr"] = s.corr ? root_json(*s.corr) : Json(nullptr);
  doc["status"] = trace.converged ? "ok" : "not-converged";
  Json meta = meta_json(s.digits);
  meta["W"] = trace.game.die.total_weight();
  meta["converged"] = trace.converged;
  meta["trivial_start"] = trace.trivial_start;
  meta["partial_duration"] = exact_json(s.partial_duration);
  doc["meta"] = std::move(meta);
  return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact hitting-time statistics for dice sums reaching a number class", "dicehit"};
  app.require_subcommand(1);

  RunCommand run_cmd;
  auto* run_app = app.add_subcommand("run", "Exact summary after a fixed round count or tail target");
  add_game_options(run_app, run_cmd.game, false);
  add_output_options(run_app, run_cmd.out);
  auto* rounds_opt = run_app->add_option("--rounds", run_cmd.rounds, "Play exactly R rounds");
  auto* eps_opt = run_app->add_option("--eps", run_cmd.eps, "Stop once the survivor mass is <= eps");
  rounds_opt->excludes(eps_opt);
  run_app->add_option("--rmax", run_cmd.rmax, "Round cap for --eps")->capture_default_str();

  PgfCommand pgf_cmd;
  auto* pgf_app = app.add_subcommand("pgf", "Dump the truncated bivariate PGF, one t^k slice per round");
  add_game_options(pgf_app, pgf_cmd.game, false);
  add_output_options(pgf_app, pgf_cmd.out, false);
  pgf_app->add_option("--rounds", pgf_cmd.rounds, "Number of rounds R")->required();

  SweepCommand sweep_cmd;
  auto* sweep_app = app.add_subcommand("sweep", "Guarantee rounds and moments for a range of fair dice");
  add_game_options(sweep_app, sweep_cmd.game, true);
  add_output_options(sweep_app, sweep_cmd.out);
  sweep_app->add_option("--init", sweep_cmd.init, "Starting sum")->capture_default_str();
  sweep_app->add_option("--eps", sweep_cmd.eps, "Tail target")->required();
  sweep_app->add_option("--rmax", sweep_cmd.rmax, "Round cap")->capture_default_str();
  sweep_app->add_option("--jobs", sweep_cmd.jobs, "Rows evaluated concurrently");

  GuaranteeCommand guarantee_cmd;
  auto* guarantee_app = app.add_subcommand("guarantee", "Smallest R with survivor mass <= eps");
  add_game_options(guarantee_app, guarantee_cmd.game, false);
  add_output_options(guarantee_app, guarantee_cmd.out);
  guarantee_app->add_option("--eps", guarantee_cmd.eps, "Tail target in (0, 1)")->required();
  guarantee_app->add_option("--rmax", guarantee_cmd.rmax, "Round cap")->capture_default_str();

  ConstantCommand constant_cmd;
  auto* constant_app = app.add_subcommand("constant", "Agreeing-prefix estimate of the limit of M_R or L_R");
  add_game_options(constant_app, constant_cmd.game, false);
  add_output_options(constant_app, constant_cmd.out);
  constant_app->add_option("--r0", constant_cmd.r0, "First R; doubled until digits agree")->capture_default_str();
  constant_app->add_option("--rcap", constant_cmd.rcap, "Largest R tried")->capture_default_str();
  constant_app->add_option("--quantity", constant_cmd.quantity, "duration or location")->capture_default_str();

  SimulateCommand sim_cmd;
  auto* sim_app = app.add_subcommand("simulate", "Seeded Monte Carlo estimate");
  add_game_options(sim_app, sim_cmd.game, false);
  add_output_options(sim_app, sim_cmd.out, false);
  sim_app->add_option("--trials", sim_cmd.trials, "Number of games")->capture_default_str();
  sim_app->add_option("--cap", sim_cmd.cap, "Round cap per game")->capture_default_str();
  sim_app->add_option("--seed", sim_cmd.seed, "Generator seed")->capture_default_str();
  sim_app->add_option("--workers", sim_cmd.workers, "Threads")->capture_default_str();

  PlotCommand plot_cmd;
  auto* plot_app = app.add_subcommand("plotdata", "faces x init grid of M as CSV for plotting");
  add_game_options(plot_app, plot_cmd.game, true);
  add_output_options(plot_app, plot_cmd.out);
  plot_app->add_option("--init", plot_cmd.inits, "Starting sums, a..b")->capture_default_str();
  plot_app->add_option("--eps", plot_cmd.eps, "Tail target");
  plot_app->add_option("--rounds", plot_cmd.rounds, "Fixed round count");
  plot_app->add_option("--rmax", plot_cmd.rmax, "Round cap for --eps")->capture_default_str();
  plot_app->add_option("--jobs", plot_cmd.jobs, "Cells evaluated concurrently");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Format format = Format::kJson;
  try {
    if (run_app->parsed()) {
      format = parse_format(run_cmd.out.format, Format::kJson);
      return do_run(run_cmd, out);
    }
    if (pgf_app->parsed()) {
      format = parse_format(pgf_cmd.out.format, Format::kText);
      return do_pgf(pgf_cmd, out);
    }
    if (sweep_app->parsed()) {
      format = parse_format(sweep_cmd.out.format, Format::kCsv);
      return do_sweep(sweep_cmd, out);
    }
    if (guarantee_app->parsed()) {
      format = parse_format(guarantee_cmd.out.format, Format::kJson);
      return do_guarantee(guarantee_cmd, out);
    }
    if (constant_app->parsed()) {
      format = parse_format(constant_cmd.out.format, Format::kText);
      return do_constant(constant_cmd, out);
    }
    if (sim_app->parsed()) {
      format = parse_format(sim_cmd.out.format, Format::kJson);
      return do_simulate(sim_cmd, out);
    }
    if (plot_app->parsed()) {
      format = parse_format(plot_cmd.out.format, Format::kCsv);
      return do_plotdata(plot_cmd, out, err);
    }
  } catch (const std::exception& e) {
    return report_error(e, format, out, err);
  }
  return kUsage;
}

}  // namespace dicehit::cli
