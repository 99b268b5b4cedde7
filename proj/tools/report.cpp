#include "report.hpp"

#include <map>

namespace hopfcert::report {

Json rational(const Rational& r) { return r.str(); }
Json integer(const Integer& n) { return n.get_str(); }

Json certificate(const ObstructionCertificate& c) {
    Json setup = {
        {"family", c.family},   {"q", c.q},           {"m", c.m_label},         {"m_order", c.m_order},
        {"tau", c.tau},         {"character", c.character}, {"case", c.setup_case},
    };
    Json out = {
        {"setup", setup},
        {"value", rational(c.value)},
        {"reduced_denominator", integer(c.reduced_denominator)},
        {"denominator_gcd_with_M", integer(c.gcd_with_M)},
        {"methods",
         {{"direct", rational(c.methods.direct)},
          {"quadloop", rational(c.methods.quadloop)},
          {"fiber", rational(c.methods.fiber)}}},
        {"methods_agree", c.methods_agree},
        {"conclusion", to_string(c.conclusion)},
    };
    if (c.closed_form) {
        out["closed_form"] = rational(*c.closed_form);
        out["closed_form_match"] = *c.closed_form == c.value;
    } else {
        out["closed_form"] = nullptr;
        out["closed_form_match"] = nullptr;
    }
    return out;
}

Json klein_classification(const KleinClassification& k, const FiniteGroup& g) {
    Json reps = Json::array();
    for (const auto& r : k.representatives) {
        Json members = Json::array();
        for (Index x : r.members()) members.push_back(g.matrix(x).codes());
        reps.push_back(members);
    }
    return {
        {"class_count", k.class_count},
        {"orbit_sizes", k.orbit_sizes},
        {"total", k.total},
        {"containing_h", k.containing_h},
        {"representatives", reps},
    };
}

Json central_type_subgroups(const FiniteField& f) {
    Json out = Json::array();
    for (const auto& basis : central_type_additive_bases(f)) {
        Integer order = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) order *= f.characteristic();
        out.push_back({{"basis", basis}, {"order", integer(order)}});
    }
    return out;
}

Json character_table(const GroupPtr& g) {
    const ClassFunction chi = induced_character(sylow_subgroup(g));
    const CharacterTable table = closed_form_character(g->family(), g->q());
    std::map<Rational, std::uint64_t> counts;
    std::uint64_t mismatches = 0;
    Rational sum;
    for (Index x = 0; x < g->order(); ++x) {
        if (!(chi(x) == table.at(*g, x))) ++mismatches;
        sum += chi(x);
        ++counts[chi(x)];
    }
    Json values = Json::array();
    for (const auto& [v, n] : counts) values.push_back({{"value", rational(v)}, {"count", n}});
    Json nontrivial = Json::object();
    for (const auto& [label, v] : table.nontrivial) nontrivial[label] = rational(v);
    return {
        {"family", to_string(g->family())},
        {"q", g->q()},
        {"group_order", g->order()},
        {"identity_value", rational(chi(g->identity()))},
        {"closed_form", {{"identity", rational(table.identity)}, {"nontrivial", nontrivial}}},
        {"value_counts", values},
        {"mismatches", mismatches},
        {"elementwise_match", mismatches == 0},
        {"sum_over_group", rational(sum)},
    };
}

Json group_stats(const FiniteGroup& g) {
    std::map<std::uint64_t, std::uint64_t> orders;
    for (Index x = 0; x < g.order(); ++x) ++orders[g.element_order(x)];
    Json by_order = Json::object();
    for (const auto& [o, n] : orders) by_order[std::to_string(o)] = n;
    const std::uint64_t expected = closed_form_order(g.family(), g.q());
    return {
        {"family", to_string(g.family())},
        {"q", g.q()},
        {"field_modulus", g.field().modulus()},
        {"order", g.order()},
        {"closed_form_order", expected},
        {"order_matches", expected == g.order()},
        {"element_order_counts", by_order},
    };
}

Json envelope(const std::string& command, Json config, Json payload) {
    return {
        {"schema", kSchema},   {"tool", kToolName},       {"version", kToolVersion},
        {"command", command},  {"config", std::move(config)}, {"payload", std::move(payload)},
    };
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hopfcert::report
