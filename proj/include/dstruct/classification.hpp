#pragma once

// Classification of a combined decision structure into the zero/first/second
// order taxonomy, dominance ("superiority position") detection on arbitrary
// pairs, and the cancellation procedure that shrinks a multi-branch pair to
// a single-branch one for the reduction engine.

#include <optional>
#include <vector>

#include "dstruct/model.hpp"
#include "dstruct/substitution.hpp"

namespace dstruct {

// Sign rule over the four category ranks of a single-branch pair:
// both dimensions tied        -> second order, options paralleling
// exactly one dimension tied  -> first order, favoring the other dimension's leader
// same option ahead on both   -> zero order favoring it
// different leaders           -> second order, options crossing
// Total over all rank combinations 0..4.
StructureClass classify_ranks(int x_prob, int y_prob, int x_value, int y_value);

StructureClass classify(const StructureState& state);

// Matrix form; requires a single-branch pair (one live branch per option).
StructureClass classify(const DecisionMatrix& prob, const DecisionMatrix& value);

// Dominance scan. An option holds the superiority position when, on every
// dimension, its best token weakly covers all of the rival's tokens and
// strictly beats at least one of them; zero-reward branches take part as
// rank-0 value tokens. Tied categories make the scan mutual, which decides
// nothing.
std::optional<OptionId> superiority(const Gamble& x, const Gamble& y,
                                    const SubstitutionScheme& scheme,
                                    AmbiguityRule rule = AmbiguityRule::PessimisticMin);

struct CancelResult {
    // Verdict reached without reduction: a dominance winner, or Indifferent
    // when cancellation wipes out an option.
    std::optional<Outcome> verdict;
    // Otherwise the surviving single-branch pair.
    std::optional<StructureState> reduced;
    // True when at least one branch pair was cancelled.
    bool cancelled_any = false;
};

// Multi-branch entry point. Checks superiority; then cancels, one-for-one
// across options, (a) zero-reward branches with matching probability
// category, (b) numerically identical branches; then collapses each option
// to its highest-reward surviving branch.
CancelResult cancel_and_reduce(const Gamble& x, const Gamble& y,
                               const SubstitutionScheme& scheme,
                               AmbiguityRule rule = AmbiguityRule::PessimisticMin);

// Single-branch pair -> state (categories plus the numerics behind them).
StructureState make_state(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                          AmbiguityRule rule = AmbiguityRule::PessimisticMin);

bool is_single_branch_pair(const Gamble& x, const Gamble& y);

// ---------------------------------------------------------------------------
// Structure catalog: the canonical table of archetype structures, one entry
// per catalog id. Component entries are one-dimension matrices; composite
// entries are component products. Nine composites (ids 30..38) were recorded
// with cell contents that disagree with the union of their own components;
// those carry the as-recorded signature so the mismatch is logged rather
// than silently matched.

struct CatalogComponent {
    int id;
    Dimension dim;
    int x_rank, y_rank;
    StructureKind section;
};

struct ComposedSignature {
    int x_prob, y_prob, x_value, y_value;
};

struct CatalogEntry {
    int id;
    int prob_component, value_component;
    StructureKind section;
    ComposedSignature composed;                    // union of the two components
    std::optional<ComposedSignature> recorded;     // set only when it differs
};

const std::vector<CatalogComponent>& catalog_components();
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace dstruct
