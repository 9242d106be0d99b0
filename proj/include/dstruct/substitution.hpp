#pragma once

// Substitution: numeric probabilities and rewards become ordinal category
// tokens, gambles become decision matrices, and the matrix product joins the
// two dimensions cellwise.

#include <string>
#include <vector>

#include "dstruct/model.hpp"

namespace dstruct {

// How ambiguous (interval-valued) probabilities are binned. PessimisticMin
// is the model's law for uncertainty: the smallest attainable category.
// Midpoint treats the credal range as if its center were known.
enum class AmbiguityRule { PessimisticMin, Midpoint };

ProbCategory substitute_probability(double p, const SubstitutionScheme& scheme);
ValCategory substitute_value(double v, const SubstitutionScheme& scheme);

// Pessimistic binning of a credal range (lo, hi): the minimal category
// attainable strictly above the lower end. Category bounds are read at the
// concept level, so an interval open just above a small probability starts
// at the middle concept even when the numeric gap is tiny. Open endpoints
// never reach the constants 0 and 1. A degenerate interval falls back to
// plain substitution.
ProbCategory substitute_uncertain_probability(double lo, double hi,
                                              const SubstitutionScheme& scheme);

// Category and effective numeric of one branch's probability under a rule.
ProbCategory branch_prob_category(const Branch& b, const SubstitutionScheme& scheme,
                                  AmbiguityRule rule = AmbiguityRule::PessimisticMin);
double branch_effective_probability(const Branch& b,
                                    AmbiguityRule rule = AmbiguityRule::PessimisticMin);

// All tokens of one option, rank-0 entries included (they never enter a
// matrix but participate in dominance comparisons).
std::vector<Token> tokenize(const Gamble& g, OptionId option, const SubstitutionScheme& scheme,
                            AmbiguityRule rule = AmbiguityRule::PessimisticMin);

struct PairMatrices {
    DecisionMatrix prob;
    DecisionMatrix value;
};

// Each live branch contributes one probability token and, unless the reward
// is zero, one value token.
PairMatrices build_matrices(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                            AmbiguityRule rule = AmbiguityRule::PessimisticMin);

// Cellwise multiset union; token identity is preserved, so the result holds
// count(a) + count(b) tokens. Commutative and associative.
DecisionMatrix product(const DecisionMatrix& a, const DecisionMatrix& b);

// Scheme config file: {"prob_cutoffs": [p_ab, p_bc], "value_cutoffs": [v_ab, v_bc]}.
SubstitutionScheme load_scheme(const std::string& path);
SubstitutionScheme scheme_from_json_text(const std::string& text);
std::string scheme_to_json_text(const SubstitutionScheme& scheme);

}  // namespace dstruct
