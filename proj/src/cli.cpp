#include "helix/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "helix/datasets.hpp"
#include "helix/help.hpp"
#include "helix/pq.hpp"
#include "helix/psl2gen.hpp"

namespace helix {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + ": " + text);
}

PrimePair parse_pair(const std::string& text) {
  auto parts = split(text, text.find('x') != std::string::npos ? 'x' : ',');
  if (parts.size() != 2) throw UsageError("bad prime pair " + text + " (expected P,Q)");
  long p = parse_long(parts[0], "prime");
  long q = parse_long(parts[1], "prime");
  if (!is_prime(p) || !is_prime(q) || p == q) throw UsageError("bad prime pair " + text);
  return p < q ? PrimePair{p, q} : PrimePair{q, p};
}

struct Output {
  std::string path;
  std::string format = "text";
};

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty() || o.path == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.path);
  if (!f) throw DataError("cannot write " + o.path);
  f << text;
}

}  // namespace

CharacterTable load_table_source(const std::string& source) {
  if (source.rfind("embedded:", 0) == 0) return load_embedded(source.substr(9));
  if (source.rfind("gen:", 0) == 0) {
    auto parts = split(source.substr(4), ':');
    if (parts.size() < 2 || parts.size() > 3 || (parts[0] != "psl2" && parts[0] != "pgl2") ||
        (parts.size() == 3 && parts[2] != "brauer3"))
      throw DataError("bad generated table source " + source + " (expected gen:psl2:Q or gen:pgl2:Q[:brauer3])");
    long q = parse_long(parts[1], "field size");
    auto variant = parts[0] == "psl2" ? Psl2Variant::Psl : Psl2Variant::Pgl;
    try {
      return gen_table(psl2_params(q, variant), parts.size() == 3);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
  }
  return parse_table(read_file(source));
}

std::vector<std::string> select_characters(const CharacterTable& table, const std::string& spec) {
  std::vector<std::string> out;
  auto names = split(spec, ',');
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    for (const auto& c : table.characters()) out.push_back(c.name);
    return out;
  }
  for (const auto& name : names) {
    if (table.find_character(name)) {
      out.push_back(name);
      continue;
    }
    bool found = false;
    for (const auto& c : table.characters()) {
      if (c.name.size() <= name.size() || c.name.compare(0, name.size(), name) != 0) continue;
      std::string rest = c.name.substr(name.size());
      if (rest.find_first_not_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos) continue;
      out.push_back(c.name);
      found = true;
    }
    if (!found) throw DataError("unknown character " + name + " in " + table.group_name());
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HeLP constraints for torsion units of integral group rings"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string table_src;
  std::string chars_spec = "all";
  long order = 0;
  std::optional<long> s_prime;
  std::size_t cap = default_cap();
  unsigned jobs = 1;
  Output output;
  std::string chain_arg;
  std::vector<std::string> pair_args;
  std::vector<std::string> plan_args;
  bool assume_coverage = false;
  std::string family;
  long gen_q = 0;
  bool brauer3 = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", output.path, "Output file (default stdout)");
    sub->add_option("--format,-f", output.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_table = [&](CLI::App* sub) {
    sub->add_option("--table,-t", table_src, "gen:psl2:Q, gen:pgl2:Q[:brauer3], embedded:NAME or a file")
        ->required();
  };
  auto add_solve = [&](CLI::App* sub) {
    sub->add_option("--chars,-c", chars_spec, "Comma-separated characters, or all");
    sub->add_option("--cap", cap, "Enumeration cap (default 10^6 or HELIX_PQ_CAP)");
    sub->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Generate the character table of PSL(2,q) or PGL(2,q)");
  gen->add_option("--family", family, "psl2 or pgl2")->required()->check(CLI::IsMember({"psl2", "pgl2"}));
  gen->add_option("--q", gen_q, "Field size")->required();
  gen->add_flag("--with-brauer3", brauer3, "Append the degree-3 Brauer character");
  gen->add_option("--out,-o", output.path, "Output file (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a character table");
  add_table(validate_cmd);
  add_common(validate_cmd);

  auto* solve = app.add_subcommand("solve", "All HeLP-admissible partial augmentations for one order");
  add_table(solve);
  add_common(solve);
  add_solve(solve);
  solve->add_option("--order,-n", order, "Unit order")->required();
  solve->add_option("--s-constant", s_prime, "Merge the classes of this prime order");

  auto* verify = app.add_subcommand("verify", "Check one chain of partial augmentations");
  add_table(verify);
  add_common(verify);
  verify->add_option("--chars,-c", chars_spec, "Comma-separated characters, or all");
  verify->add_option("--order,-n", order, "Unit order")->required();
  verify->add_option("--chain", chain_arg, "Chain file, or an inline tuple")->required();

  auto* pq = app.add_subcommand("pq", "Prime graph question for each non-adjacent prime pair");
  add_table(pq);
  add_common(pq);
  add_solve(pq);
  pq->add_option("--pair", pair_args, "Only test this pair, as P,Q (repeatable)");
  pq->add_option("--plan", plan_args, "Per-pair characters: P,Q=chars[@s] (repeatable)");
  pq->add_flag("--assume-coverage", assume_coverage, "Treat a partial table as listing every element order");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*gen) {
      CharacterTable table = load_table_source("gen:" + family + ":" + std::to_string(gen_q) + (brauer3 ? ":brauer3" : ""));
      emit(output, render_table(table), out);
      return 0;
    }

    CharacterTable table = load_table_source(table_src);
    SolveOptions options;
    options.cap = cap;
    options.jobs = jobs;

    if (*validate_cmd) {
      ValidationReport report = validate(table);
      std::ostringstream os;
      if (output.format == "json") {
        nlohmann::ordered_json j;
        j["group_name"] = table.group_name();
        j["ok"] = report.ok();
        j["checks"] = report.checks;
        j["failures"] = report.failures;
        os << j.dump(2) << '\n';
      } else {
        os << table.group_name() << ": " << table.classes().size() << " classes, " << table.characters().size()
           << " characters\n";
        for (const auto& c : report.checks) os << "checked: " << c << '\n';
        for (const auto& f : report.failures) os << "FAILED: " << f << '\n';
        os << (report.ok() ? "valid" : "invalid") << '\n';
      }
      emit(output, os.str(), out);
      return report.ok() ? 0 : 1;
    }

    std::vector<std::string> chars = select_characters(table, chars_spec);

    if (*solve) {
      if (order < 2) throw UsageError("--order must be at least 2");
      SolutionStore store;
      SolutionSet set;
      if (s_prime) {
        if (order % *s_prime != 0 || !is_prime(order / *s_prime))
          throw UsageError("--s-constant needs an order s*t with t prime");
        set = solve_s_constant(table, chars, *s_prime, order / *s_prime, store, options);
      } else {
        set = solve_order(table, chars, order, store, options);
      }
      const CharacterTable shown = s_prime ? collapse_order(table, chars, *s_prime) : table;
      emit(output, output.format == "json" ? render_solutions_json(shown, set) : render_solutions_text(shown, set), out);
      return set.status == SolveStatus::Complete ? 0 : 2;
    }

    if (*verify) {
      std::ifstream probe(chain_arg);
      std::string text = probe ? read_file(chain_arg) : chain_arg;
      PAChain chain = parse_chain(table, order, text);
      VerifyReport report = verify_chain(table, chars, order, chain);
      std::ostringstream os;
      if (output.format == "json") {
        nlohmann::ordered_json j;
        j["unit_order"] = order;
        j["chain"] = render_chain(table, chain);
        j["satisfied"] = report.satisfied;
        j["classification"] = classify_chain(chain) == ChainClass::Trivial ? "trivial" : "nontrivial";
        j["violations"] = report.violations;
        j["skipped"] = report.skipped;
        os << j.dump(2) << '\n';
      } else {
        os << render_chain(table, chain) << ": " << (report.satisfied ? "satisfied" : "violated") << ", "
           << (classify_chain(chain) == ChainClass::Trivial ? "trivial" : "nontrivial") << '\n';
        for (const auto& v : report.violations) os << "  violated: " << v << '\n';
        for (const auto& s : report.skipped) os << "  skipped: " << s << '\n';
      }
      emit(output, os.str(), out);
      return 0;
    }

    if (*pq) {
      PQOptions pq_options;
      pq_options.characters = chars;
      pq_options.solve = options;
      pq_options.assume_coverage = assume_coverage;
      if (!pair_args.empty()) {
        pq_options.only_pairs.emplace();
        for (const auto& a : pair_args) pq_options.only_pairs->push_back(parse_pair(a));
      }
      for (const auto& a : plan_args) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw UsageError("bad plan " + a + " (expected P,Q=chars[@s])");
        PrimePair pair = parse_pair(a.substr(0, eq));
        std::string rest = a.substr(eq + 1);
        PairPlan plan;
        auto at = rest.find('@');
        if (at != std::string::npos) {
          plan.s_constant = parse_long(rest.substr(at + 1), "s-constant prime");
          rest = rest.substr(0, at);
        }
        plan.characters = select_characters(table, rest);
        pq_options.plans[pair] = plan;
      }
      PQReport report = pq_check(table, pq_options);
      emit(output, output.format == "json" ? render_report_json(table, report) : render_report_text(table, report), out);
      return report.verdict == Verdict::Incomplete ? 2 : 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace helix
