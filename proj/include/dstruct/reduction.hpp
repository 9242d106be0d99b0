#pragma once

// The order-reduction (dtau) rewrite engine: admissible steps per structure
// class, the full path tree, choice distributions over its leaves, seeded
// path sampling, and deliberation-time accounting.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dstruct/classification.hpp"
#include "dstruct/model.hpp"

namespace dstruct {

enum class ParallelSplitRule { LargerRelativeGap, EnumerateBoth };

// Abstract deliberation-time unit costs: substitution round, dtau step out
// of second order, dtau step out of first order, and the flat cost of an
// expected-value calculation.
struct TimeParams {
    double t0 = 1.0;
    double t1 = 1.0;
    double t2 = 1.0;
    double t_cal = 1.0;

    void validate() const;
    bool operator==(const TimeParams&) const = default;
};

struct ReductionPolicy {
    // Empty map means uniform weight over each node's children; otherwise
    // weights are keyed by step label (unlabeled steps weigh 1) and
    // normalized per node.
    std::map<StepLabel, double> path_weights;
    ParallelSplitRule parallel_split_rule = ParallelSplitRule::LargerRelativeGap;
    // Resolve indifferent leaves by comparing expected values.
    bool calc_fallback = false;
    TimeParams time_params;
    AmbiguityRule ambiguity = AmbiguityRule::PessimisticMin;
    int max_tree_depth = 4;

    void validate() const;
    bool operator==(const ReductionPolicy&) const = default;
};

// Policy config file:
// {"path_weights": "uniform" | {"risk-seeking": w, ...},
//  "parallel_split_rule": "larger_relative_gap" | "enumerate_both",
//  "calc_fallback": bool, "time_params": [t0,t1,t2,t_cal],
//  "ambiguity_law_b": bool, "max_tree_depth": n}
ReductionPolicy load_policy(const std::string& path);
ReductionPolicy policy_from_json_text(const std::string& text);
std::string policy_to_json_text(const ReductionPolicy& policy);

struct ReductionStep {
    StepKind kind = StepKind::Dtau2;
    std::optional<StepLabel> label;
    StructureState next;
    StructureClass next_class;
};

// Admissible dtau rewrites of a single-branch state:
//   crossing  -> exactly four: on each dimension, re-bin the laggard's token
//                up to the leader's cell or the leader's down to the
//                laggard's; upward moves are seeking, downward aversion
//   parallel  -> split one dimension by the underlying numeric order (the
//                larger number's token moves up one cell, or the smaller
//                moves down when the shared cell is already the top one);
//                dimension chosen by relative gap or enumerated
//   first     -> one step: the tied dimension splits to agree with the
//                differentiating one
//   zero      -> none
std::vector<ReductionStep> admissible_steps(const StructureState& state,
                                            const ReductionPolicy& policy);

struct ReductionNode {
    StructureState state;
    StructureClass cls;
    bool leaf = false;
    Outcome outcome = Outcome::Indifferent;  // meaningful at leaves
    bool used_calc = false;                  // leaf resolved by calculation

    struct Edge {
        StepKind kind = StepKind::Dtau2;
        std::optional<StepLabel> label;
        std::vector<ReductionNode> node;  // exactly one element
        const ReductionNode& child() const { return node.front(); }
    };
    std::vector<Edge> children;
};

// How the pair entered the engine.
enum class TreeEntry {
    Direct,       // single-branch pair
    Collapsed,    // multi-branch, shrunk by cancellation/collapse
    Superiority,  // multi-branch, decided by dominance scan
    Cancelled     // multi-branch, cancellation wiped out an option
};

std::string to_string(TreeEntry e);

struct ReductionTree {
    TreeEntry entry = TreeEntry::Direct;
    std::optional<Outcome> immediate;     // Superiority / Cancelled verdict
    std::optional<ReductionNode> root;    // present unless decided immediately
    double ev_x = 0.0, ev_y = 0.0;        // of the original pair
};

ReductionTree reduction_tree(const Gamble& x, const Gamble& y,
                             const SubstitutionScheme& scheme, const ReductionPolicy& policy);

struct ReductionPath {
    ReductionTrace trace;
    double weight = 0.0;
};

// All root-to-leaf paths with their policy weights (weights sum to 1).
std::vector<ReductionPath> enumerate_paths(const ReductionTree& tree,
                                           const ReductionPolicy& policy);

struct ChoiceDistribution {
    double x = 0.0;
    double y = 0.0;
    double indifferent = 0.0;

    double total() const { return x + y + indifferent; }
    bool operator==(const ChoiceDistribution&) const = default;
};

ChoiceDistribution choice_distribution(const ReductionTree& tree, const ReductionPolicy& policy);
ChoiceDistribution choice_distribution(const Gamble& x, const Gamble& y,
                                       const SubstitutionScheme& scheme,
                                       const ReductionPolicy& policy);

// One path drawn according to the policy weights; identical seeds give
// identical traces.
ReductionTrace sample_path(const ReductionTree& tree, const ReductionPolicy& policy,
                           std::uint64_t seed);
ReductionTrace sample_path(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                           const ReductionPolicy& policy, std::uint64_t seed);

// t0 * rounds + t1 * (#dtau2) + t2 * (#dtau1) + t_cal * (calc present).
double deliberation_time(const ReductionTrace& trace, const TimeParams& params,
                         int substitution_rounds);

}  // namespace dstruct
