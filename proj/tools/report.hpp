#pragma once

#include <string>

#include "json.hpp"

#include "hopfcert/catalog.hpp"
#include "hopfcert/character.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/obstruction.hpp"

namespace hopfcert::report {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;
inline constexpr const char* kToolName = "hopfcert";
inline constexpr const char* kToolVersion = "1.0.0";

/// Rationals and big integers are written as strings so no JSON number ever
/// carries a fraction or overflows.
Json rational(const Rational& r);
Json integer(const Integer& n);

Json certificate(const ObstructionCertificate& c);
Json klein_classification(const KleinClassification& k, const FiniteGroup& g);
Json central_type_subgroups(const FiniteField& f);

/// Element-by-element comparison of the brute-force induced character with
/// the tabulated one, plus value multiplicities.
Json character_table(const GroupPtr& g);

/// Order, closed form, and element-order multiplicities.
Json group_stats(const FiniteGroup& g);

/// Envelope with schema, tool, command, config echo and payload. Keys are
/// sorted by the JSON object type itself.
Json envelope(const std::string& command, Json config, Json payload);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace hopfcert::report
