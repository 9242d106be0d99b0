#include "dstruct/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dstruct {

ProbCategory substitute_probability(double p, const SubstitutionScheme& scheme) {
    if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(p))
        throw std::domain_error("substitute_probability: p outside [0,1]");
    if (p == 0.0) return ProbCategory::Zero;
    if (p == 1.0) return ProbCategory::One;
    if (p < scheme.p_ab()) return ProbCategory::A;
    if (p < scheme.p_bc()) return ProbCategory::B;
    return ProbCategory::C;
}

ValCategory substitute_value(double v, const SubstitutionScheme& scheme) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::domain_error("substitute_value: v negative or non-finite");
    if (v == 0.0) return ValCategory::Zero;
    if (v < scheme.v_ab()) return ValCategory::A;
    if (v < scheme.v_bc()) return ValCategory::B;
    return ValCategory::C;
}

ProbCategory substitute_uncertain_probability(double lo, double hi,
                                              const SubstitutionScheme& scheme) {
    if (!(lo >= 0.0 && hi <= 1.0) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::domain_error("substitute_uncertain_probability: bounds outside [0,1]");
    if (lo > hi) throw std::domain_error("substitute_uncertain_probability: inverted interval");
    if (lo == hi) return substitute_probability(lo, scheme);

    const int lo_rank = rank(substitute_probability(lo, scheme));
    const int hi_rank = rank(substitute_probability(hi, scheme));
    const int candidate = lo_rank + 1;
    if (candidate <= std::min(hi_rank, 3)) return static_cast<ProbCategory>(candidate);
    // the whole range sits inside one interior category
    return substitute_probability(0.5 * (lo + hi), scheme);
}

ProbCategory branch_prob_category(const Branch& b, const SubstitutionScheme& scheme,
                                  AmbiguityRule rule) {
    if (!b.ambiguity) return substitute_probability(b.probability, scheme);
    const ProbInterval& iv = *b.ambiguity;
    if (rule == AmbiguityRule::PessimisticMin)
        return substitute_uncertain_probability(iv.lo, iv.hi, scheme);
    return substitute_probability(0.5 * (iv.lo + iv.hi), scheme);
}

double branch_effective_probability(const Branch& b, AmbiguityRule rule) {
    if (!b.ambiguity) return b.probability;
    const ProbInterval& iv = *b.ambiguity;
    return rule == AmbiguityRule::PessimisticMin ? iv.lo : 0.5 * (iv.lo + iv.hi);
}

std::vector<Token> tokenize(const Gamble& g, OptionId option, const SubstitutionScheme& scheme,
                            AmbiguityRule rule) {
    std::vector<Token> out;
    const auto& branches = g.branches();
    for (int i = 0; i < static_cast<int>(branches.size()); ++i) {
        const Branch& b = branches[i];
        if (b.implicit) continue;  // unwritten remainder, never substituted
        if (b.probability == 0.0 && !b.ambiguity) continue;  // can never occur
        out.push_back(Token{option, i, Dimension::Prob,
                            rank(branch_prob_category(b, scheme, rule)),
                            branch_effective_probability(b, rule)});
        out.push_back(Token{option, i, Dimension::Value,
                            rank(substitute_value(b.reward, scheme)), b.reward});
    }
    return out;
}

PairMatrices build_matrices(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                            AmbiguityRule rule) {
    PairMatrices m;
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        const Gamble& g = o == OptionId::X ? x : y;
        for (const Token& t : tokenize(g, o, scheme, rule))
            (t.dim == Dimension::Prob ? m.prob : m.value).insert(t);
    }
    return m;
}

DecisionMatrix product(const DecisionMatrix& a, const DecisionMatrix& b) {
    DecisionMatrix out;
    for (int i = 0; i < 4; ++i) {
        for (const Token& t : a.cell(static_cast<CellPos>(i))) out.insert(t);
        for (const Token& t : b.cell(static_cast<CellPos>(i))) out.insert(t);
    }
    return out;
}

namespace {

SubstitutionScheme scheme_from_json(const nlohmann::json& j) {
    if (!j.contains("prob_cutoffs") || !j.contains("value_cutoffs"))
        throw std::invalid_argument("scheme: need prob_cutoffs and value_cutoffs");
    const auto& p = j.at("prob_cutoffs");
    const auto& v = j.at("value_cutoffs");
    if (!p.is_array() || p.size() != 2 || !v.is_array() || v.size() != 2)
        throw std::invalid_argument("scheme: cutoffs must be two-element arrays");
    return SubstitutionScheme({p[0].get<double>(), p[1].get<double>()},
                              {v[0].get<double>(), v[1].get<double>()});
}

}  // namespace

SubstitutionScheme scheme_from_json_text(const std::string& text) {
    return scheme_from_json(nlohmann::json::parse(text));
}

SubstitutionScheme load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scheme file: " + path);
    nlohmann::json j;
    in >> j;
    return scheme_from_json(j);
}

std::string scheme_to_json_text(const SubstitutionScheme& s) {
    nlohmann::json j;
    j["prob_cutoffs"] = {s.p_ab(), s.p_bc()};
    j["value_cutoffs"] = {s.v_ab(), s.v_bc()};
    return j.dump();
}

}  // namespace dstruct
