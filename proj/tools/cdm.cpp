// Command-line front end: classify, label, verify, spectrum, oracle,
// crosscheck, enumerate.
//
// Exit codes: 0 positive, 1 negative, 2 input error, 3 search timeout.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cdm/cdm.hpp"
#include "json.hpp"
#include "report.hpp"

namespace {

using cdm::Int;
using cdm::report::Format;
using cdm::report::Record;

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kTimeout = 3;

/// Raised for malformed input; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  Int n = 0;
  std::vector<Int> generators;
};

void add_spec_options(CLI::App* cmd, SpecArgs& args, bool required = true) {
  auto* n = cmd->add_option("--n", args.n, "Order of the cyclic group");
  auto* s = cmd->add_option("--set", args.generators, "Generators, comma separated; inverses are added")->delimiter(',');
  if (required) {
    n->required();
    s->required();
  }
}

cdm::CirculantSpec build_spec(const SpecArgs& args) {
  if (args.n < 2) throw InputError("--n must be at least 2");
  std::vector<Int> gens;
  for (Int g : args.generators) {
    const Int r = cdm::mod(g, args.n);
    if (r == 0) throw InputError("generator " + std::to_string(g) + " is 0 modulo " + std::to_string(args.n));
    gens.push_back(r);
  }
  if (gens.empty()) throw InputError("--set is empty");
  return cdm::CirculantSpec(args.n, gens);
}

/// Output file or standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Format record_format(const std::string& name) {
  const Format f = cdm::report::parse_format(name);
  if (f == Format::Dot) throw InputError("DOT output is only available for label and enumerate");
  return f;
}

std::string reason_text(const cdm::ClassificationResult& r) {
  if (r.is_cdm) return "";
  std::string out = cdm::to_string(r.reason);
  if (!r.detail.empty()) out += ": " + r.detail;
  return out;
}

Record classification_record(const cdm::CirculantSpec& spec, const cdm::ClassificationResult& r) {
  Record rec;
  rec["n"] = spec.order();
  rec["S"] = spec.connection_set();
  rec["connected"] = spec.is_connected();
  rec["valency"] = spec.valency();
  rec["is_cdm"] = r.is_cdm;
  std::vector<std::string> families;
  for (auto f : r.families()) families.emplace_back(cdm::to_string(f));
  rec["families"] = families;
  if (const auto* m = r.primary(); m && m->c > 0) {
    Record p;
    p["c"] = m->c;
    p["multiplier"] = m->multiplier;
    if (m->parameters) {
      p["t"] = m->parameters->t;
      p["k"] = m->parameters->k;
    }
    rec["parameters"] = p;
  } else {
    rec["parameters"] = nullptr;
  }
  rec["reason"] = reason_text(r);
  return rec;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  SpecArgs spec;
  std::string format = "jsonl";
  std::string output;
};

int run_classify(const ClassifyArgs& a) {
  const auto spec = build_spec(a.spec);
  const auto format = record_format(a.format);
  const auto result = cdm::classify(spec);
  Output out(a.output);
  cdm::report::Writer(out.stream(), format).write(classification_record(spec, result));
  return result.is_cdm ? kPositive : kNegative;
}

struct LabelArgs {
  SpecArgs spec;
  std::string format = "json";
  std::string output;
  double budget = 60;
};

void write_labeling(std::ostream& os, Format format, const cdm::CirculantSpec& spec, const cdm::Labeling& l) {
  switch (format) {
    case Format::Jsonl: {
      Record rec;
      rec["n"] = spec.order();
      rec["S"] = spec.connection_set();
      rec["values"] = l.values();
      rec["r"] = l.magic_constant() ? nlohmann::ordered_json(*l.magic_constant()) : nlohmann::ordered_json(nullptr);
      os << rec.dump() << '\n';
      break;
    }
    case Format::Csv:
      os << "vertex,label\n";
      for (Int x = 0; x < l.order(); ++x) os << x << ',' << l.values()[static_cast<std::size_t>(x)] << '\n';
      break;
    case Format::Dot: os << cdm::to_dot(spec, l.values()); break;
  }
}

std::chrono::milliseconds seconds_to_ms(double s) {
  if (!(s > 0)) throw InputError("time budget must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(s * 1000.0));
}

int run_label(const LabelArgs& a) {
  const auto spec = build_spec(a.spec);
  const auto format = cdm::report::parse_format(a.format);
  const auto budget = seconds_to_ms(a.budget);
  const auto result = cdm::classify(spec);
  if (!result.is_cdm) {
    std::cerr << spec.to_string() << " is not closed distance magic (" << reason_text(result) << ")\n";
    return kNegative;
  }
  const auto labeling = cdm::label(spec, budget);
  if (!labeling) throw cdm::InternalError("classifier positive but no labeling was built");
  const auto verdict = cdm::verify_labeling(spec, *labeling);
  if (!verdict.accepted) throw cdm::InternalError("built labeling was rejected: " + verdict.reason);
  Output out(a.output);
  write_labeling(out.stream(), format, spec, *labeling);
  return kPositive;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  SpecArgs spec;
  std::string input;
  std::vector<Int> values;
  std::string format = "jsonl";
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Two-column vertex,label rows; a non-numeric first line is a header.
std::vector<Int> parse_csv_labeling(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<Int, Int>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    std::size_t used_a = 0, used_b = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const Int vertex = std::stoll(a, &used_a);
      const Int label = std::stoll(b, &used_b);
      if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing text");
      rows.emplace_back(vertex, label);
    } catch (const std::exception&) {
      if (!first) throw InputError("malformed CSV line '" + line + "'");
    }
    first = false;
  }
  std::vector<Int> values(rows.size(), 0);
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [v, l] : rows) {
    if (v < 0 || v >= static_cast<Int>(rows.size()) || seen[static_cast<std::size_t>(v)])
      throw InputError("CSV vertices must be 0..n-1, each once");
    seen[static_cast<std::size_t>(v)] = true;
    values[static_cast<std::size_t>(v)] = l;
  }
  return values;
}

int run_verify(VerifyArgs a) {
  std::vector<Int> values = a.values;
  if (!a.input.empty()) {
    if (!values.empty()) throw InputError("give either --input or --values, not both");
    const std::string text = read_all(a.input);
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(text);
        values = doc.at("values").get<std::vector<Int>>();
        if (a.spec.n == 0 && doc.contains("n")) a.spec.n = doc["n"].get<Int>();
        if (a.spec.generators.empty() && doc.contains("S")) a.spec.generators = doc["S"].get<std::vector<Int>>();
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON labeling: ") + e.what());
      }
    } else {
      values = parse_csv_labeling(text);
    }
  }
  if (values.empty()) throw InputError("no labeling given (use --input or --values)");
  if (a.spec.n == 0 || a.spec.generators.empty()) throw InputError("the graph needs --n and --set");
  const auto spec = build_spec(a.spec);
  if (static_cast<Int>(values.size()) != spec.order())
    throw InputError("labeling has " + std::to_string(values.size()) + " entries, graph has " +
                     std::to_string(spec.order()) + " vertices");
  const auto verdict = cdm::verify_labeling(spec, cdm::Labeling(values));
  Record rec;
  rec["n"] = spec.order();
  rec["S"] = spec.connection_set();
  rec["accepted"] = verdict.accepted;
  rec["r"] = verdict.accepted ? nlohmann::ordered_json(verdict.magic_constant) : nlohmann::ordered_json(nullptr);
  rec["offending_vertex"] =
      verdict.offending_vertex ? nlohmann::ordered_json(verdict.offending_vertex->get()) : nlohmann::ordered_json(nullptr);
  rec["offending_sum"] = verdict.offending_vertex ? nlohmann::ordered_json(verdict.offending_sum) : nlohmann::ordered_json(nullptr);
  rec["reason"] = verdict.reason;
  cdm::report::Writer(std::cout, record_format(a.format)).write(rec);
  return verdict.accepted ? kPositive : kNegative;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  SpecArgs spec;
  std::string format = "csv";
  std::string output;
};

std::optional<cdm::CanonicalForm> as_canonical(const cdm::CirculantSpec& spec) {
  if (!cdm::is_valency5_with_involution(spec)) return std::nullopt;
  for (const auto& f : cdm::canonical_forms_valency5(spec))
    if (f.multiplier == 1) return f;
  return std::nullopt;
}

int run_spectrum(const SpectrumArgs& a) {
  const auto spec = build_spec(a.spec);
  const auto format = record_format(a.format);
  const auto admissible = cdm::admissible_set(spec);
  const auto canon = as_canonical(spec);
  Output out(a.output);
  cdm::report::Writer writer(out.stream(), format);
  for (Int j = 0; j < spec.order(); ++j) {
    Record rec;
    rec["j"] = j;
    std::ostringstream ev;
    ev << std::setprecision(12) << cdm::eigenvalue_approx(spec, j);
    rec["eigenvalue"] = std::stod(ev.str());
    rec["admissible"] = admissible.contains(j);
    std::vector<std::string> types;
    if (canon && admissible.contains(j))
      for (auto t : cdm::classify_types(*canon, j).members()) types.emplace_back(cdm::to_string(t));
    rec["types"] = types;
    writer.write(rec);
  }
  return kPositive;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  SpecArgs spec;
  double budget = 60;
  Int max_n = 30;
  bool no_prefilter = false;
  std::string format = "jsonl";
};

int run_oracle(const OracleArgs& a) {
  const auto spec = build_spec(a.spec);
  const auto format = record_format(a.format);
  if (spec.order() > a.max_n)
    throw InputError("n = " + std::to_string(spec.order()) + " exceeds --max-n " + std::to_string(a.max_n));
  const auto outcome = cdm::solve_cdm(spec, seconds_to_ms(a.budget), {a.max_n, !a.no_prefilter});
  Record rec;
  rec["n"] = spec.order();
  rec["S"] = spec.connection_set();
  rec["status"] = cdm::to_string(outcome.status);
  rec["refusal"] = outcome.refusal ? outcome.refusal->to_string() : "";
  rec["nodes"] = outcome.nodes_explored;
  rec["millis"] = outcome.elapsed.count();
  rec["values"] = outcome.labeling ? nlohmann::ordered_json(outcome.labeling->values()) : nlohmann::ordered_json(nullptr);
  cdm::report::Writer(std::cout, format).write(rec);
  switch (outcome.status) {
    case cdm::SearchStatus::Found: return kPositive;
    case cdm::SearchStatus::Infeasible: return kNegative;
    case cdm::SearchStatus::Timeout: return kTimeout;
  }
  return kInputError;
}

// ---------------------------------------------------------------------------

struct CrosscheckArgs {
  Int valency = 5;
  Int max_n = 24;
  double timeout = 60;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "csv";
  std::string output;
  Int oracle_limit = 30;
  bool no_prefilter = false;
  bool progress = false;
};

struct CrossRow {
  bool classifier = false;
  cdm::SearchOutcome outcome;
};

int run_crosscheck(const CrosscheckArgs& a) {
  if (a.valency < 3 || a.valency > 5) throw InputError("--valency must be 3, 4 or 5");
  if (a.workers < 1) throw InputError("--workers must be at least 1");
  if (a.max_n > a.oracle_limit)
    throw InputError("--max-n " + std::to_string(a.max_n) + " exceeds the oracle limit " +
                     std::to_string(a.oracle_limit) + " (raise --oracle-limit to proceed)");
  const auto format = record_format(a.format);
  const auto budget = seconds_to_ms(a.timeout);
  const auto specs = cdm::enumerate_specs(a.valency, a.max_n);
  std::vector<CrossRow> rows(specs.size());

  std::atomic<std::size_t> next{0}, done{0};
  const cdm::OracleOptions options{a.oracle_limit, !a.no_prefilter};
  const auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      rows[i].classifier = cdm::classify(specs[i]).is_cdm;
      rows[i].outcome = cdm::solve_cdm(specs[i], budget, options);
      const std::size_t finished = ++done;
      if (a.progress && (finished % 25 == 0 || finished == specs.size()))
        std::cerr << "progress " << finished << "/" << specs.size() << "\n";
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(a.workers, std::max<std::size_t>(1, specs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Output out(a.output);
  cdm::report::Writer writer(out.stream(), format);
  std::size_t agreements = 0, disagreements = 0, timeouts = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& row = rows[i];
    const bool timed_out = row.outcome.status == cdm::SearchStatus::Timeout;
    const bool agree = !timed_out && row.classifier == (row.outcome.status == cdm::SearchStatus::Found);
    if (timed_out) ++timeouts;
    else if (agree) ++agreements;
    else ++disagreements;
    Record rec;
    rec["n"] = specs[i].order();
    rec["S"] = specs[i].connection_set();
    rec["classifier_verdict"] = row.classifier ? "cdm" : "not-cdm";
    rec["oracle_status"] = cdm::to_string(row.outcome.status);
    rec["agree"] = agree;
    rec["nodes"] = row.outcome.nodes_explored;
    rec["millis"] = row.outcome.elapsed.count();
    writer.write(rec);
  }
  std::cerr << "total=" << specs.size() << " agreements=" << agreements << " disagreements=" << disagreements
            << " timeouts=" << timeouts << "\n";
  return disagreements == 0 && timeouts == 0 ? kPositive : kNegative;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  Int valency = 5;
  Int max_n = 24;
  std::string format = "jsonl";
  std::string output;
};

int run_enumerate(const EnumerateArgs& a) {
  if (a.valency < 3 || a.valency > 5) throw InputError("--valency must be 3, 4 or 5");
  const auto format = cdm::report::parse_format(a.format);
  Output out(a.output);
  if (format == Format::Dot) {
    cdm::for_each_spec(a.valency, a.max_n, [&](const cdm::CirculantSpec& s) { out.stream() << cdm::to_dot(s); });
    return kPositive;
  }
  cdm::report::Writer writer(out.stream(), format);
  cdm::for_each_spec(a.valency, a.max_n, [&](const cdm::CirculantSpec& s) {
    Record rec;
    rec["n"] = s.order();
    rec["S"] = s.connection_set();
    rec["valency"] = s.valency();
    writer.write(rec);
  });
  return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed distance magic circulants of valency at most 5"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Decide whether a circulant is closed distance magic");
  add_spec_options(classify, classify_args.spec);
  classify->add_option("--format", classify_args.format, "jsonl or csv")->capture_default_str();
  classify->add_option("--output,-o", classify_args.output, "Output file (default stdout)");

  LabelArgs label_args;
  auto* label = app.add_subcommand("label", "Build and verify a closed distance magic labeling");
  add_spec_options(label, label_args.spec);
  label->add_option("--format", label_args.format, "json, csv or dot")->capture_default_str();
  label->add_option("--output,-o", label_args.output, "Output file (default stdout)");
  label->add_option("--budget", label_args.budget, "Search budget in seconds")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check a labeling against the closed-sum condition");
  add_spec_options(verify, verify_args.spec, false);
  verify->add_option("--input,-i", verify_args.input, "Labeling file (JSON from label, or vertex,label CSV); - for stdin");
  verify->add_option("--values", verify_args.values, "Labels of vertices 0..n-1, comma separated")->delimiter(',');
  verify->add_option("--format", verify_args.format, "Report format: jsonl or csv")->capture_default_str();

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "Per-character eigenvalues, exact -1 test and types");
  add_spec_options(spectrum, spectrum_args.spec);
  spectrum->add_option("--format", spectrum_args.format, "csv or jsonl")->capture_default_str();
  spectrum->add_option("--output,-o", spectrum_args.output, "Output file (default stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search for a closed distance magic labeling");
  add_spec_options(oracle, oracle_args.spec);
  oracle->add_option("--budget", oracle_args.budget, "Search budget in seconds")->capture_default_str();
  oracle->add_option("--max-n", oracle_args.max_n, "Largest order the search accepts")->capture_default_str();
  oracle->add_flag("--no-prefilter", oracle_args.no_prefilter, "Search even when a spectral condition fails");
  oracle->add_option("--format", oracle_args.format, "jsonl or csv")->capture_default_str();

  CrosscheckArgs cross_args;
  auto* cross = app.add_subcommand("crosscheck", "Compare classifier and oracle over an enumeration");
  cross->add_option("--valency", cross_args.valency, "3, 4 or 5")->capture_default_str();
  cross->add_option("--max-n", cross_args.max_n, "Largest order swept")->capture_default_str();
  cross->add_option("--timeout", cross_args.timeout, "Oracle budget per instance, seconds")->capture_default_str();
  cross->add_option("--workers", cross_args.workers, "Worker threads")->envname("CDM_WORKERS")->capture_default_str();
  cross->add_option("--format", cross_args.format, "csv or jsonl")->capture_default_str();
  cross->add_option("--output,-o", cross_args.output, "Report file (default stdout)");
  cross->add_option("--oracle-limit", cross_args.oracle_limit, "Largest order the oracle accepts")->capture_default_str();
  cross->add_flag("--no-prefilter", cross_args.no_prefilter, "Search even when a spectral condition fails");
  cross->add_flag("--progress", cross_args.progress, "Report progress on stderr");

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "List connected circulants of one valency");
  enumerate->add_option("--valency", enum_args.valency, "3, 4 or 5")->capture_default_str();
  enumerate->add_option("--max-n", enum_args.max_n, "Largest order listed")->capture_default_str();
  enumerate->add_option("--format", enum_args.format, "jsonl, csv or dot")->capture_default_str();
  enumerate->add_option("--output,-o", enum_args.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*classify) return run_classify(classify_args);
    if (*label) return run_label(label_args);
    if (*verify) return run_verify(verify_args);
    if (*spectrum) return run_spectrum(spectrum_args);
    if (*oracle) return run_oracle(oracle_args);
    if (*cross) return run_crosscheck(cross_args);
    if (*enumerate) return run_enumerate(enum_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const cdm::UnsupportedValency& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const cdm::SearchTimeout& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kTimeout;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return kInputError;
}
