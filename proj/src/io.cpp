#include "wordmap/io.hpp"

#include <sstream>

#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

template <typename T>
T field(const Json& record, const char* key) {
  if (!record.is_object() || !record.contains(key))
    throw PreconditionError(std::string("missing field '") + key + "'");
  try {
    return record.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw PreconditionError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& record, const char* key, T fallback) {
  return record.is_object() && record.contains(key) ? field<T>(record, key) : fallback;
}

}  // namespace

Json to_json(const Presentation& group) {
  return {{"p", group.p()},
          {"n", group.n()},
          {"m", group.m()},
          {"epsilon", group.epsilon()},
          {"r", group.r()},
          {"family_tag", std::string(to_string(group.family()))}};
}

Json to_json(Element x) { return {{"alpha", x.alpha}, {"beta", x.beta}}; }

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const Distribution& dist) {
  Json counts = Json::array();
  const auto& raw = dist.counts();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Element g = dist.group().element(i);
    counts.push_back({{"alpha", g.alpha}, {"beta", g.beta}, {"n", raw[i]}});
  }
  return {{"k", dist.arity()}, {"group", to_json(dist.group())}, {"counts", std::move(counts)}};
}

Json to_json(const FpPolynomial& q) {
  Json terms = Json::array();
  for (const auto& [exps, coeff] : q.terms()) terms.push_back({{"exps", exps}, {"coeff", coeff}});
  return terms;
}

Json to_json(const ChevalleyWarningReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"target", row.target}, {"solutions", row.solutions}, {"bound", row.bound}, {"pass", row.pass}});
  Json out{{"applicable", report.applicable}};
  if (!report.reason.empty()) out["reason"] = report.reason;
  out["num_vars"] = report.num_vars;
  out["degree"] = report.degree == FpPolynomial::kZeroDegree ? Json(nullptr) : Json(report.degree);
  out["rows"] = std::move(rows);
  out["pass"] = report.pass;
  return out;
}

Json to_json(const FormulaSuiteReport& report) {
  Json mismatches = Json::array();
  for (const auto& m : report.mismatches) {
    Json tuple = Json::array();
    for (Element x : m.tuple) tuple.push_back(to_json(x));
    mismatches.push_back({{"formula", m.formula}, {"length", m.length}, {"tuple", std::move(tuple)},
                          {"expected", m.expected}, {"got", m.got}});
  }
  return {{"group", report.group},
          {"max_length", report.max_length},
          {"formulas", report.formulas},
          {"tuples_checked", report.tuples_checked},
          {"comparisons", report.comparisons},
          {"mismatch_count", report.mismatch_count},
          {"mismatches", std::move(mismatches)},
          {"pass", report.pass()}};
}

Json to_json(const DichotomyResult& result) {
  Json out{{"applicable", result.applicable}};
  if (!result.reason.empty()) out["reason"] = result.reason;
  out["observed"] = result.observed ? Json(std::string(to_string(*result.observed))) : Json(nullptr);
  out["predicted"] = std::string(to_string(result.predicted));
  out["exponent_gcd"] = result.exponent_gcd;
  out["pass"] = result.pass;
  return out;
}

Json to_json(const IntersectionResult& result) {
  Json out{{"applicable", result.applicable}};
  if (!result.reason.empty()) out["reason"] = result.reason;
  out["z_proper_subset"] = result.z_proper_subset;
  out["fibre_relations"] = result.fibre_relations;
  out["bound"] = result.bound;
  out["comparisons"] = result.comparisons;
  out["pass"] = result.pass;
  return out;
}

Json to_json(const ZPolynomialResult& result) {
  return {{"polynomial", to_json(result.polynomial)},
          {"p", result.polynomial.p()},
          {"effective_variables", result.effective_variables},
          {"num_vars_effective", result.num_vars_effective},
          {"num_vars_full", result.num_vars_full},
          {"degree", result.degree == FpPolynomial::kZeroDegree ? Json(nullptr) : Json(result.degree)},
          {"nilpotency_class", result.nilpotency_class},
          {"well_defined", result.well_defined},
          {"degree_within_class", result.degree_within_class},
          {"lift_checks", result.lift_checks}};
}

Json to_json(const ZBoundResult& result) {
  Json rows = Json::array();
  for (const auto& row : result.rows)
    rows.push_back({{"target", row.target},
                    {"word_count", row.word_count},
                    {"cw_solutions", row.cw_solutions},
                    {"lift_bound", row.lift_bound},
                    {"probability", to_json(row.probability)},
                    {"count_identity", row.count_identity},
                    {"pass", row.pass}});
  return {{"arity", result.arity},
          {"padded_arity", result.padded_arity},
          {"degree", result.degree},
          {"nilpotency_class", result.nilpotency_class},
          {"chevalley_warning", to_json(result.chevalley_warning)},
          {"rows", std::move(rows)},
          {"class_bound", to_json(result.class_bound)},
          {"class_bound_beats_order", result.class_bound_beats_order},
          {"pass", result.pass}};
}

Json to_json(const VerificationReport& report) {
  Json out{{"group", to_json(report.group)},
           {"label", label(report.group)},
           {"word", render(report.word)},
           {"k", report.arity},
           {"image_size", report.image_size},
           {"image_location", std::string(to_string(report.image_location))},
           {"min_probability", to_json(report.min_probability)},
           {"bound", to_json(report.bound)},
           {"pass", report.pass}};
  if (report.polynomial_detail) out["polynomial_detail"] = to_json(*report.polynomial_detail);
  return out;
}

Json to_json(const CampaignReport& report) {
  Json groups = Json::array();
  for (const auto& g : report.groups) {
    Json histogram = Json::array();
    for (const auto& [q, count] : g.histogram)
      histogram.push_back({{"min_probability", to_json(q)}, {"words", count}});
    groups.push_back({{"label", g.label},
                      {"group", to_json(g.group)},
                      {"nilpotency_class", g.nilpotency_class},
                      {"words", g.words},
                      {"min_probability", g.min_probability ? to_json(*g.min_probability) : Json(nullptr)},
                      {"histogram", std::move(histogram)},
                      {"equality_witness", g.equality_witness},
                      {"z_words", g.z_words},
                      {"z_words_equal_z", g.z_words_equal_z}});
  }
  Json checks = Json::object();
  for (const auto& [name, tally] : report.checks)
    checks[name] = {{"pass", tally.pass}, {"fail", tally.fail}, {"not_applicable", tally.not_applicable}};
  Json failures = Json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"label", f.group_label}, {"group", to_json(f.group)}, {"word", f.word},
                        {"k", f.arity}, {"check", f.check}, {"detail", f.detail}});
  return {{"groups", std::move(groups)},
          {"checks", std::move(checks)},
          {"failures", std::move(failures)},
          {"rows", report.rows.size()},
          {"budget_exceeded", report.budget_exceeded},
          {"pass", report.pass()}};
}

// ---------------------------------------------------------------------------

Family resolve_family(std::string_view name, std::int64_t p) {
  if (name == "modular") return p == 2 ? Family::Modular2 : Family::ModularOdd;
  return family_from_string(name);
}

namespace {

Presentation presentation_with_n(const Json& record, int n) {
  const std::string family = field_or<std::string>(record, "family", "custom");
  const auto p = field<std::int64_t>(record, "p");
  if (family != "custom") return make_family(resolve_family(family, p), p, n);
  return Presentation::make(p, n, field<int>(record, "m"), field<int>(record, "epsilon"),
                            field<std::int64_t>(record, "r"));
}

}  // namespace

Presentation presentation_from_json(const Json& record) {
  return presentation_with_n(record, field<int>(record, "n"));
}

std::vector<Presentation> presentations_from_json(const Json& record) {
  if (!record.is_object()) throw PreconditionError("group record must be an object");
  if (record.contains("n") && record.at("n").is_array()) {
    std::vector<Presentation> out;
    for (const Json& n : record.at("n")) {
      if (!n.is_number_integer()) throw PreconditionError("field 'n' has the wrong type");
      out.push_back(presentation_with_n(record, n.get<int>()));
    }
    return out;
  }
  return {presentation_from_json(record)};
}

FpPolynomial polynomial_from_json(const Json& terms, int p, int num_vars) {
  if (!terms.is_array()) throw PreconditionError("polynomial must be a list of {exps, coeff} terms");
  std::vector<std::pair<FpPolynomial::Exponents, std::int64_t>> parsed;
  for (const Json& term : terms) {
    auto exps = field<std::vector<int>>(term, "exps");
    if (num_vars < 0) num_vars = static_cast<int>(exps.size());
    parsed.emplace_back(std::move(exps), field<std::int64_t>(term, "coeff"));
  }
  return FpPolynomial::from_terms(p, std::max(num_vars, 0), parsed);
}

CampaignConfig campaign_config_from_json(const Json& document) {
  if (!document.is_object()) throw PreconditionError("campaign config must be a JSON object");
  CampaignConfig config;

  if (!document.contains("groups") || !document.at("groups").is_array())
    throw PreconditionError("campaign config needs a 'groups' list");
  for (const Json& record : document.at("groups"))
    for (auto& g : presentations_from_json(record)) config.groups.push_back(std::move(g));

  auto word_spec = [](const Json& record) {
    WordGenSpec spec;
    const auto mode = field_or<std::string>(record, "mode", "exhaustive");
    if (mode == "exhaustive")
      spec.mode = WordGenMode::Exhaustive;
    else if (mode == "random")
      spec.mode = WordGenMode::Random;
    else
      throw PreconditionError("unknown word mode '" + mode + "'");
    spec.k_max = field<int>(record, "k_max");
    spec.len_max = field<int>(record, "len_max");
    spec.count = field_or<std::uint64_t>(record, "count", 0);
    spec.seed = field_or<std::uint64_t>(record, "seed", 0);
    return spec;
  };
  if (!document.contains("words")) throw PreconditionError("campaign config needs 'words'");
  const Json& words = document.at("words");
  if (words.is_array())
    for (const Json& record : words) config.words.push_back(word_spec(record));
  else
    config.words.push_back(word_spec(words));

  if (document.contains("checks")) {
    static const std::set<std::string> known{"amit_ashurst", "dichotomy", "intersection",
                                             "zpoly", "zbound", "quotient"};
    config.checks = {"amit_ashurst"};
    for (const auto& name : field<std::vector<std::string>>(document, "checks")) {
      if (!known.contains(name)) throw PreconditionError("unknown check '" + name + "'");
      config.checks.insert(name);
    }
  }

  const Json budgets = document.value("budgets", Json::object());
  config.engine.max_evals = field_or<std::uint64_t>(budgets, "max_evals", config.engine.max_evals);
  config.zpoly_max_order = field_or<std::uint64_t>(budgets, "zpoly_max_order", config.zpoly_max_order);
  config.zpoly_max_k = field_or<int>(budgets, "zpoly_max_k", config.zpoly_max_k);
  config.extract.lift_samples = field_or<int>(budgets, "lift_samples", config.extract.lift_samples);
  config.extract.class_cap = field_or<std::uint64_t>(budgets, "max_class_order", config.extract.class_cap);

  const auto engine = field_or<std::string>(document, "engine", "exhaustive");
  if (engine != "exhaustive" && engine != "coset") throw PreconditionError("unknown engine '" + engine + "'");
  config.coset_split = engine == "coset";
  config.workers = field_or<unsigned>(document, "workers", 1);
  config.extract.seed = field_or<std::uint64_t>(document, "seed", 0);
  return config;
}

std::string distribution_csv(const Distribution& dist) {
  std::ostringstream os;
  os << "alpha,beta,count\n";
  const auto& raw = dist.counts();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Element g = dist.group().element(i);
    os << g.alpha << ',' << g.beta << ',' << raw[i] << '\n';
  }
  return os.str();
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string campaign_csv(const CampaignReport& report) {
  std::ostringstream os;
  os << "group,word,image_size,min_prob_num,min_prob_den,pass\n";
  for (const auto& row : report.rows)
    os << csv_field(row.group) << ',' << csv_field(row.word) << ',' << row.image_size << ','
       << row.min_probability.num() << ',' << row.min_probability.den() << ','
       << (row.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace wordmap
