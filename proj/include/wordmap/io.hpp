#ifndef WORDMAP_IO_HPP
#define WORDMAP_IO_HPP

// JSON and CSV forms of presentations, distributions, polynomials and reports.
// Objects keep insertion order so that equal inputs serialise to equal bytes.

#include <string>

#include "json.hpp"
#include "wordmap/distribution.hpp"
#include "wordmap/formulas.hpp"
#include "wordmap/fp_poly.hpp"
#include "wordmap/metacyclic.hpp"
#include "wordmap/verifier.hpp"

namespace wordmap {

using Json = nlohmann::ordered_json;

Json to_json(const Presentation& group);
Json to_json(Element x);
Json to_json(const Rational& q);
Json to_json(const Distribution& dist);
Json to_json(const FpPolynomial& q);
Json to_json(const ChevalleyWarningReport& report);
Json to_json(const FormulaSuiteReport& report);
Json to_json(const DichotomyResult& result);
Json to_json(const IntersectionResult& result);
Json to_json(const ZPolynomialResult& result);
Json to_json(const ZBoundResult& result);
Json to_json(const VerificationReport& report);
Json to_json(const CampaignReport& report);

/// Family names as accepted in configs and on the command line; "modular"
/// resolves to modular2 or modular_odd by p.
Family resolve_family(std::string_view name, std::int64_t p);

/// {p, n, m, epsilon, r} for a custom group, or {family, p, n}. ParameterError
/// on invalid parameters, PreconditionError on a malformed record.
Presentation presentation_from_json(const Json& record);

/// A group record whose "n" may be a list expands to one group per entry.
std::vector<Presentation> presentations_from_json(const Json& record);

/// [{exps: [...], coeff: c}, ...]; num_vars < 0 takes it from the first term.
FpPolynomial polynomial_from_json(const Json& terms, int p, int num_vars = -1);

/// {groups: [...], words: {...} or [{...}], checks: [...], budgets: {...},
///  engine: "exhaustive" | "coset", workers, seed}.
CampaignConfig campaign_config_from_json(const Json& document);

/// alpha,beta,count
std::string distribution_csv(const Distribution& dist);

/// group,word,image_size,min_prob_num,min_prob_den,pass
std::string campaign_csv(const CampaignReport& report);

}  // namespace wordmap

#endif  // WORDMAP_IO_HPP
