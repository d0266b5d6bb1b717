#include "wordmap/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "wordmap/distribution.hpp"
#include "wordmap/errors.hpp"
#include "wordmap/formulas.hpp"
#include "wordmap/fp_poly.hpp"
#include "wordmap/io.hpp"
#include "wordmap/verifier.hpp"

namespace wordmap::cli {

namespace {

struct GroupFlags {
  std::string family;
  std::int64_t p = 2;
  int n = 0;
  int m = 1;
  int epsilon = 0;
  std::optional<std::int64_t> r;
};

struct Flags {
  GroupFlags group;
  std::string word;
  std::optional<int> k;
  std::string tuple;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_evals;
  std::string out;
  std::string csv;
  std::optional<unsigned> workers;
  std::string engine = "exhaustive";
  std::string poly;
  int vars = -1;
  int max_length = 0;
  int lift_samples = 3;
  bool exhaustive_lifts = false;
  bool bound = false;
};

void add_group_flags(CLI::App* sub, GroupFlags& g) {
  sub->add_option("--family", g.family, "dihedral, quaternion, semidihedral or modular")
      ->check(CLI::IsMember({"dihedral", "quaternion", "semidihedral", "modular"}));
  sub->add_option("--p", g.p, "prime p")->capture_default_str();
  sub->add_option("--n", g.n, "order of a is p^n")->required();
  sub->add_option("--m", g.m, "order of b is p^m (custom groups)")->capture_default_str();
  sub->add_option("--epsilon", g.epsilon, "b^{p^m} = a^{p^{n-epsilon}} (custom groups)")->capture_default_str();
  sub->add_option("--r", g.r, "b a b^-1 = a^r (custom groups)");
}

void add_word_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--word", f.word, "word, e.g. \"[x1,x2]^2 x3\"")->required();
  sub->add_option("--k", f.k, "arity; defaults to the largest variable index");
}

void add_engine_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--max-evals", f.max_evals, "evaluation budget");
  sub->add_option("--workers", f.workers, "worker threads");
}

void add_out_flag(CLI::App* sub, Flags& f) { sub->add_option("--out", f.out, "write JSON here instead of stdout"); }

Presentation build_group(const GroupFlags& g) {
  if (!g.family.empty()) {
    if (g.r) throw ParameterError("--r cannot be combined with --family");
    return make_family(resolve_family(g.family, g.p), g.p, g.n);
  }
  if (!g.r) throw ParameterError("give --family, or --r (with --m and --epsilon) for a custom group");
  return Presentation::make(g.p, g.n, g.m, g.epsilon, *g.r);
}

EngineOptions engine_options(const Flags& f) {
  EngineOptions options;
  if (f.max_evals) options.max_evals = *f.max_evals;
  if (f.workers) options.workers = std::max(1u, *f.workers);
  return options;
}

int arity_of(const Flags& f, const FreeWord& word) {
  const int k = f.k.value_or(std::max(1, word.arity()));
  if (k < 1) throw ParameterError("--k must be positive");
  if (k < word.arity())
    throw ParameterError("--k " + std::to_string(k) + " is below the word's largest variable x" +
                         std::to_string(word.arity()));
  return k;
}

std::vector<Element> parse_tuple(const std::string& text, const Presentation& group) {
  static const std::regex pair(R"(\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::vector<Element> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ';')) {
    std::smatch match;
    if (!std::regex_match(item, match, pair))
      throw ParameterError("malformed tuple entry '" + item + "'; expected (alpha,beta)");
    const Element x{std::stoll(match[1]), std::stoll(match[2])};
    if (!group.contains(x))
      throw ParameterError("(" + match[1].str() + "," + match[2].str() +
                           ") is not a normal form; need 0 <= alpha < p^n and 0 <= beta < p^m");
    out.push_back(x);
  }
  if (out.empty()) throw ParameterError("--tuple is empty");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  file << text;
}

void emit(const Flags& f, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (f.out.empty())
    out << text;
  else
    write_text(f.out, text);
}

Json command_header(const Presentation& group) { return {{"label", label(group)}, {"group", to_json(group)}}; }

// ---------------------------------------------------------------------------

int group_info(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  Json doc = command_header(group);
  doc["order"] = group.order();
  doc["nilpotency_class"] = nilpotency_class(group);
  const Element z = center_z(group);
  Json center = Json::array();
  for (std::int64_t i = 0; i < group.p(); ++i) center.push_back(to_json(power(group, z, i)));
  doc["z_generator"] = to_json(z);
  doc["z"] = std::move(center);
  emit(f, doc, out);
  err << label(group) << ": order " << group.order() << ", class " << doc["nilpotency_class"].get<int>()
      << ", Z = <" << to_string(z) << ">\n";
  return kPass;
}

int eval(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  const FreeWord word = parse_word(f.word);
  const auto tuple = parse_tuple(f.tuple, group);
  if (static_cast<int>(tuple.size()) < word.arity())
    throw ParameterError("--tuple has " + std::to_string(tuple.size()) + " entries but the word uses x" +
                         std::to_string(word.arity()));
  const Element value = evaluate(group, word, tuple);
  Json doc = command_header(group);
  doc["word"] = render(word);
  Json args = Json::array();
  for (Element x : tuple) args.push_back(to_json(x));
  doc["tuple"] = std::move(args);
  doc["value"] = to_json(value);
  emit(f, doc, out);
  err << to_string(value) << "\n";
  return kPass;
}

int dist(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  const FreeWord word = parse_word(f.word);
  const int k = arity_of(f, word);
  const EngineOptions options = engine_options(f);
  const Distribution d = f.engine == "coset" ? distribution_coset_split(group, word, k, options)
                                             : distribution_exhaustive(group, word, k, options);
  Json doc = to_json(d);
  doc["word"] = render(word);
  emit(f, doc, out);
  if (!f.csv.empty()) write_text(f.csv, distribution_csv(d));
  err << label(group) << ", w = " << render(word) << ", k = " << k << ": |G_w| = " << d.image_size()
      << ", min P = " << Rational(d.min_count(), d.total()).str() << "\n";
  return kPass;
}

int verify(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  const FreeWord word = parse_word(f.word);
  const int k = arity_of(f, word);
  const Distribution d = distribution_exhaustive(group, word, k, engine_options(f));
  const VerificationReport report = amit_ashurst_check(word, d);
  Json doc = to_json(report);
  doc["dichotomy"] = to_json(dichotomy_check(group, word, d));
  doc["intersection"] = to_json(intersection_lemma_check(group, d));
  emit(f, doc, out);
  err << (report.pass ? "pass" : "FAIL") << ": " << label(group) << ", w = " << render(word)
      << ", min P = " << report.min_probability.str() << " vs 1/|G| = " << report.bound.str() << "\n";
  return report.pass ? kPass : kCheckFailed;
}

int scan(const Flags& f, std::ostream& out, std::ostream& err) {
  CampaignConfig config = campaign_config_from_json(read_json_file(f.config));
  if (f.workers) config.workers = std::max(1u, *f.workers);
  if (f.seed) config.extract.seed = *f.seed;
  if (f.max_evals) config.engine.max_evals = *f.max_evals;
  const CampaignReport report = scan_campaign(config);
  emit(f, to_json(report), out);
  if (!f.csv.empty()) write_text(f.csv, campaign_csv(report));

  err << report.rows.size() << " (group, word) pairs over " << report.groups.size() << " groups\n";
  for (const auto& [name, tally] : report.checks)
    err << "  " << name << ": " << tally.pass << " pass, " << tally.fail << " fail, " << tally.not_applicable
        << " n/a\n";
  for (const auto& failure : report.failures)
    err << "  FAIL " << failure.check << " " << failure.group_label << " w = " << failure.word << ": "
        << failure.detail << "\n";
  if (report.budget_exceeded) err << "  " << report.budget_exceeded << " pairs exceeded the budget\n";
  if (!report.pass()) return kCheckFailed;
  return report.budget_exceeded ? kBudget : kPass;
}

int formulas(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  const FormulaSuiteReport report = run_formula_suite(group, f.max_length);
  Json doc = command_header(group);
  doc["suite"] = to_json(report);
  emit(f, doc, out);
  err << (report.pass() ? "pass" : "FAIL") << ": " << report.group << ", lengths 2.." << report.max_length
      << ", " << report.comparisons << " comparisons, " << report.mismatch_count << " mismatches\n";
  return report.pass() ? kPass : kCheckFailed;
}

int interp(const Flags& f, std::ostream& out, std::ostream& err) {
  const Presentation group = build_group(f.group);
  const FreeWord word = parse_word(f.word);
  const int k = arity_of(f, word);
  const EngineOptions engine = engine_options(f);
  ZExtractOptions options;
  options.lift_samples = f.lift_samples;
  options.exhaustive_lifts = f.exhaustive_lifts;
  options.seed = f.seed.value_or(0);
  const Distribution d = distribution_exhaustive(group, word, k, engine);
  const ZPolynomialResult z = z_word_polynomial_extract(group, word, k, d, options);
  Json doc = command_header(group);
  doc["word"] = render(word);
  doc["k"] = k;
  doc["extract"] = to_json(z);
  bool pass = z.well_defined && z.degree_within_class;
  if (f.bound && pass) {
    const ZBoundResult b = z_word_probability_bound_check(group, word, k, z, d, engine);
    doc["bound"] = to_json(b);
    pass = b.pass;
  }
  doc["pass"] = pass;
  emit(f, doc, out);
  err << (pass ? "pass" : "FAIL") << ": degree " << (z.polynomial.is_zero() ? std::string("-inf") : std::to_string(z.degree))
      << " in " << z.num_vars_effective << " variables, class " << z.nilpotency_class
      << (z.well_defined ? "" : ", depends on the lift") << "\n";
  return pass ? kPass : kCheckFailed;
}

int cw(const Flags& f, std::ostream& out, std::ostream& err) {
  Json terms;
  try {
    terms = Json::parse(f.poly);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("--poly is not valid JSON: ") + e.what());
  }
  const FpPolynomial q = polynomial_from_json(terms, static_cast<int>(f.group.p), f.vars);
  const ChevalleyWarningReport report = chevalley_warning_check(q);
  Json doc{{"p", q.p()}, {"polynomial", to_json(q)}, {"report", to_json(report)}};
  emit(f, doc, out);
  if (!report.applicable)
    err << "not applicable: " << report.reason << "\n";
  else
    err << (report.pass ? "pass" : "FAIL") << ": degree " << report.degree << " in " << report.num_vars
        << " variables over F_" << q.p() << "\n";
  return !report.applicable || report.pass ? kPass : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word-map probabilities on metacyclic p-groups", "wordmap"};
  app.require_subcommand(1);
  Flags f;

  auto* info_cmd = app.add_subcommand("group-info", "presentation, order, class and Z");
  add_group_flags(info_cmd, f.group);
  add_out_flag(info_cmd, f);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a word at a tuple");
  add_group_flags(eval_cmd, f.group);
  eval_cmd->add_option("--word", f.word, "word, e.g. \"[x1,x2]\"")->required();
  eval_cmd->add_option("--tuple", f.tuple, "\"(alpha,beta);(alpha,beta);...\"")->required();
  add_out_flag(eval_cmd, f);

  auto* dist_cmd = app.add_subcommand("dist", "exact distribution of a word map");
  add_group_flags(dist_cmd, f.group);
  add_word_flags(dist_cmd, f);
  dist_cmd->add_option("--engine", f.engine, "exhaustive or coset")
      ->check(CLI::IsMember({"exhaustive", "coset"}))
      ->capture_default_str();
  add_engine_flags(dist_cmd, f);
  add_out_flag(dist_cmd, f);
  dist_cmd->add_option("--csv", f.csv, "also write alpha,beta,count here");

  auto* verify_cmd = app.add_subcommand("verify", "check min P >= 1/|G| on the image");
  add_group_flags(verify_cmd, f.group);
  add_word_flags(verify_cmd, f);
  add_engine_flags(verify_cmd, f);
  add_out_flag(verify_cmd, f);

  auto* scan_cmd = app.add_subcommand("scan", "run a campaign from a JSON config");
  scan_cmd->add_option("--config", f.config, "campaign config (JSON)")->required()->check(CLI::ExistingFile);
  scan_cmd->add_option("--seed", f.seed, "lift sampling seed; overrides the config");
  add_engine_flags(scan_cmd, f);
  add_out_flag(scan_cmd, f);
  scan_cmd->add_option("--csv", f.csv, "also write one row per (group, word) here");

  auto* formulas_cmd = app.add_subcommand("formulas", "closed-form commutator agreement suite");
  add_group_flags(formulas_cmd, f.group);
  formulas_cmd->add_option("--max-length", f.max_length, "longest commutator; 0 means the class")
      ->capture_default_str();
  add_out_flag(formulas_cmd, f);

  auto* interp_cmd = app.add_subcommand("interp", "F_p polynomial of a word with image in Z");
  add_group_flags(interp_cmd, f.group);
  add_word_flags(interp_cmd, f);
  interp_cmd->add_option("--seed", f.seed, "lift sampling seed");
  interp_cmd->add_option("--lift-samples", f.lift_samples, "random lifts per table point")->capture_default_str();
  interp_cmd->add_flag("--exhaustive-lifts", f.exhaustive_lifts, "check every lift instead of sampling");
  interp_cmd->add_flag("--bound", f.bound, "also run the Chevalley-Warning probability bound");
  add_engine_flags(interp_cmd, f);
  add_out_flag(interp_cmd, f);

  auto* cw_cmd = app.add_subcommand("cw", "Chevalley-Warning count for a polynomial");
  cw_cmd->add_option("--poly", f.poly, "JSON list of {\"exps\":[...],\"coeff\":c}")->required();
  cw_cmd->add_option("--p", f.group.p, "prime p")->capture_default_str();
  cw_cmd->add_option("--vars", f.vars, "variable count; defaults to the first term's");
  add_out_flag(cw_cmd, f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (info_cmd->parsed()) return group_info(f, out, err);
    if (eval_cmd->parsed()) return eval(f, out, err);
    if (dist_cmd->parsed()) return dist(f, out, err);
    if (verify_cmd->parsed()) return verify(f, out, err);
    if (scan_cmd->parsed()) return scan(f, out, err);
    if (formulas_cmd->parsed()) return formulas(f, out, err);
    if (interp_cmd->parsed()) return interp(f, out, err);
    if (cw_cmd->parsed()) return cw(f, out, err);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "malformed word: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace wordmap::cli
