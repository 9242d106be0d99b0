#include "dstruct/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <json.hpp>

#include "dstruct/compensatory.hpp"

namespace dstruct {

void TimeParams::validate() const {
    for (double t : {t0, t1, t2, t_cal})
        if (!(t >= 0.0) || !std::isfinite(t))
            throw std::invalid_argument("time params must be nonnegative");
}

void ReductionPolicy::validate() const {
    time_params.validate();
    for (const auto& [label, w] : path_weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("path weights must be nonnegative");
    if (max_tree_depth < 2) throw std::invalid_argument("max_tree_depth must be >= 2");
}

namespace {

double relative_gap(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

int clamp_cell(int r) { return std::clamp(r, 1, 3); }

StepLabel seeking(Dimension d) {
    return d == Dimension::Prob ? StepLabel::RiskSeeking : StepLabel::ValueSeeking;
}
StepLabel aversion(Dimension d) {
    return d == Dimension::Prob ? StepLabel::RiskAversion : StepLabel::ValueAversion;
}

ReductionStep make_step(StepKind kind, std::optional<StepLabel> label, StructureState next) {
    return ReductionStep{kind, label, next, classify(next)};
}

// Splits one dimension of a paralleling state by the numeric order: the
// larger number's token moves one cell up, except out of the top cell,
// where the smaller one moves down instead.
ReductionStep parallel_split(const StructureState& s, Dimension d) {
    const OptionId larger =
        s.numeric(OptionId::X, d) > s.numeric(OptionId::Y, d) ? OptionId::X : OptionId::Y;
    const int tied_rank = s.rank(OptionId::X, d);
    StructureState next = s;
    if (tied_rank < 3) {
        next.set_rank(larger, d, tied_rank + 1);
        return make_step(StepKind::Dtau2, seeking(d), next);
    }
    next.set_rank(other(larger), d, tied_rank - 1);
    return make_step(StepKind::Dtau2, aversion(d), next);
}

}  // namespace

std::vector<ReductionStep> admissible_steps(const StructureState& s,
                                            const ReductionPolicy& policy) {
    const StructureClass cls = classify(s);
    std::vector<ReductionStep> steps;

    switch (cls.kind) {
    case StructureKind::ZeroOrder:
        break;

    case StructureKind::SecondOrderCrossing:
        // four successors: equate either dimension by moving either token
        for (Dimension d : {Dimension::Prob, Dimension::Value}) {
            const OptionId leader =
                s.rank(OptionId::X, d) > s.rank(OptionId::Y, d) ? OptionId::X : OptionId::Y;
            const OptionId laggard = other(leader);

            StructureState down = s;
            down.set_rank(leader, d, s.rank(laggard, d));
            steps.push_back(make_step(StepKind::Dtau2, aversion(d), down));

            StructureState up = s;
            up.set_rank(laggard, d, s.rank(leader, d));
            steps.push_back(make_step(StepKind::Dtau2, seeking(d), up));
        }
        break;

    case StructureKind::SecondOrderParallel: {
        std::vector<Dimension> splittable;
        for (Dimension d : {Dimension::Prob, Dimension::Value})
            if (relative_gap(s.numeric(OptionId::X, d), s.numeric(OptionId::Y, d)) > 0.0)
                splittable.push_back(d);
        if (splittable.empty()) break;

        if (policy.parallel_split_rule == ParallelSplitRule::EnumerateBoth) {
            for (Dimension d : splittable) steps.push_back(parallel_split(s, d));
        } else {
            Dimension pick = splittable.front();
            if (splittable.size() == 2) {
                const double gp = relative_gap(s[OptionId::X].p, s[OptionId::Y].p);
                const double gv = relative_gap(s[OptionId::X].v, s[OptionId::Y].v);
                pick = gv >= gp ? Dimension::Value : Dimension::Prob;
            }
            steps.push_back(parallel_split(s, pick));
        }
        break;
    }

    case StructureKind::FirstOrder: {
        // split the tied dimension so it agrees with the differentiating one
        const Dimension tied = *cls.tied;
        const Dimension diff = tied == Dimension::Prob ? Dimension::Value : Dimension::Prob;
        const OptionId leader = *cls.favored;
        const OptionId lagger = other(leader);

        int target_leader = clamp_cell(s.rank(leader, diff));
        int target_lagger = clamp_cell(s.rank(lagger, diff));
        if (target_leader == target_lagger) {
            if (target_lagger > 1)
                --target_lagger;
            else
                ++target_leader;
        }
        StructureState next = s;
        next.set_rank(leader, tied, target_leader);
        next.set_rank(lagger, tied, target_lagger);
        steps.push_back(make_step(StepKind::Dtau1, std::nullopt, next));
        break;
    }
    }
    return steps;
}

std::string to_string(TreeEntry e) {
    switch (e) {
    case TreeEntry::Direct: return "direct";
    case TreeEntry::Collapsed: return "collapsed";
    case TreeEntry::Superiority: return "superiority";
    default: return "cancelled";
    }
}

namespace {

Outcome ev_verdict(double ev_x, double ev_y) {
    const double tol = 1e-12 * std::max({1.0, std::abs(ev_x), std::abs(ev_y)});
    if (std::abs(ev_x - ev_y) <= tol) return Outcome::Indifferent;
    return ev_x > ev_y ? Outcome::X : Outcome::Y;
}

ReductionNode build_node(const StructureState& state, const ReductionPolicy& policy,
                         double ev_x, double ev_y, int depth) {
    ReductionNode node;
    node.state = state;
    node.cls = classify(state);

    if (node.cls.kind == StructureKind::ZeroOrder) {
        node.leaf = true;
        node.outcome = to_outcome(*node.cls.favored);
        return node;
    }

    auto steps = admissible_steps(state, policy);
    if (steps.empty() || depth >= policy.max_tree_depth) {
        if (policy.calc_fallback) {
            ReductionNode resolved;
            resolved.state = state;
            resolved.cls = node.cls;
            resolved.leaf = true;
            resolved.outcome = ev_verdict(ev_x, ev_y);
            resolved.used_calc = true;
            ReductionNode::Edge edge;
            edge.kind = StepKind::Calc;
            edge.node.push_back(std::move(resolved));
            node.children.push_back(std::move(edge));
        } else {
            node.leaf = true;
            node.outcome = Outcome::Indifferent;
        }
        return node;
    }

    for (const ReductionStep& step : steps) {
        ReductionNode::Edge edge;
        edge.kind = step.kind;
        edge.label = step.label;
        edge.node.push_back(build_node(step.next, policy, ev_x, ev_y, depth + 1));
        node.children.push_back(std::move(edge));
    }
    return node;
}

}  // namespace

ReductionTree reduction_tree(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                             const ReductionPolicy& policy) {
    policy.validate();
    ReductionTree tree;
    tree.ev_x = expected_value(x);
    tree.ev_y = expected_value(y);

    std::optional<StructureState> state;
    if (is_single_branch_pair(x, y)) {
        tree.entry = TreeEntry::Direct;
        state = make_state(x, y, scheme, policy.ambiguity);
    } else {
        CancelResult cr = cancel_and_reduce(x, y, scheme, policy.ambiguity);
        if (cr.verdict) {
            tree.entry = *cr.verdict == Outcome::Indifferent ? TreeEntry::Cancelled
                                                             : TreeEntry::Superiority;
            tree.immediate = *cr.verdict;
            return tree;
        }
        tree.entry = TreeEntry::Collapsed;
        state = *cr.reduced;
    }
    tree.root = build_node(*state, policy, tree.ev_x, tree.ev_y, 0);
    return tree;
}

namespace {

std::vector<double> child_weights(const ReductionNode& node, const ReductionPolicy& policy) {
    std::vector<double> w;
    w.reserve(node.children.size());
    for (const auto& edge : node.children) {
        double wi = 1.0;
        if (edge.label && !policy.path_weights.empty()) {
            auto it = policy.path_weights.find(*edge.label);
            if (it != policy.path_weights.end()) wi = it->second;
        }
        w.push_back(wi);
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum <= 0.0) throw std::invalid_argument("path weights not normalizable at a node");
    for (double& wi : w) wi /= sum;
    return w;
}

void collect_paths(const ReductionNode& node, const ReductionPolicy& policy,
                   ReductionTrace prefix, double weight, std::vector<ReductionPath>& out) {
    if (node.leaf) {
        prefix.outcome = node.outcome;
        out.push_back(ReductionPath{std::move(prefix), weight});
        return;
    }
    const auto weights = child_weights(node, policy);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& edge = node.children[i];
        ReductionTrace t = prefix;
        t.steps.push_back(TraceStep{edge.kind, edge.label, edge.child().cls});
        collect_paths(edge.child(), policy, std::move(t), weight * weights[i], out);
    }
}

ReductionTrace immediate_trace(const ReductionTree& tree) {
    ReductionTrace t;
    std::optional<StructureClass> cls;
    if (*tree.immediate != Outcome::Indifferent)
        cls = StructureClass::zero_order(*tree.immediate == Outcome::X ? OptionId::X
                                                                       : OptionId::Y);
    t.steps.push_back(TraceStep{StepKind::Substitute, std::nullopt, cls});
    t.outcome = *tree.immediate;
    return t;
}

}  // namespace

std::vector<ReductionPath> enumerate_paths(const ReductionTree& tree,
                                           const ReductionPolicy& policy) {
    std::vector<ReductionPath> out;
    if (!tree.root) {
        out.push_back(ReductionPath{immediate_trace(tree), 1.0});
        return out;
    }
    ReductionTrace prefix;
    prefix.steps.push_back(TraceStep{StepKind::Substitute, std::nullopt, tree.root->cls});
    collect_paths(*tree.root, policy, std::move(prefix), 1.0, out);
    return out;
}

ChoiceDistribution choice_distribution(const ReductionTree& tree, const ReductionPolicy& policy) {
    ChoiceDistribution d;
    for (const ReductionPath& p : enumerate_paths(tree, policy)) {
        switch (p.trace.outcome) {
        case Outcome::X: d.x += p.weight; break;
        case Outcome::Y: d.y += p.weight; break;
        default: d.indifferent += p.weight; break;
        }
    }
    return d;
}

ChoiceDistribution choice_distribution(const Gamble& x, const Gamble& y,
                                       const SubstitutionScheme& scheme,
                                       const ReductionPolicy& policy) {
    return choice_distribution(reduction_tree(x, y, scheme, policy), policy);
}

ReductionTrace sample_path(const ReductionTree& tree, const ReductionPolicy& policy,
                           std::uint64_t seed) {
    if (!tree.root) return immediate_trace(tree);

    std::mt19937_64 rng(seed);
    ReductionTrace t;
    const ReductionNode* node = &*tree.root;
    t.steps.push_back(TraceStep{StepKind::Substitute, std::nullopt, node->cls});
    while (!node->leaf) {
        const auto weights = child_weights(*node, policy);
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        const auto& edge = node->children[pick(rng)];
        t.steps.push_back(TraceStep{edge.kind, edge.label, edge.child().cls});
        node = &edge.child();
    }
    t.outcome = node->outcome;
    return t;
}

ReductionTrace sample_path(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                           const ReductionPolicy& policy, std::uint64_t seed) {
    return sample_path(reduction_tree(x, y, scheme, policy), policy, seed);
}

double deliberation_time(const ReductionTrace& trace, const TimeParams& params,
                         int substitution_rounds) {
    params.validate();
    if (substitution_rounds < 0)
        throw std::invalid_argument("substitution_rounds must be nonnegative");
    return params.t0 * substitution_rounds + params.t1 * trace.count(StepKind::Dtau2) +
           params.t2 * trace.count(StepKind::Dtau1) +
           params.t_cal * (trace.count(StepKind::Calc) > 0 ? 1.0 : 0.0);
}

// ---------------------------------------------------------------------------
// Policy config IO.

namespace {

const std::map<std::string, StepLabel>& label_names() {
    static const std::map<std::string, StepLabel> names = {
        {"risk-seeking", StepLabel::RiskSeeking},
        {"risk-aversion", StepLabel::RiskAversion},
        {"value-seeking", StepLabel::ValueSeeking},
        {"value-aversion", StepLabel::ValueAversion},
    };
    return names;
}

ReductionPolicy policy_from_json(const nlohmann::json& j) {
    ReductionPolicy p;
    if (j.contains("path_weights")) {
        const auto& pw = j.at("path_weights");
        if (pw.is_string()) {
            if (pw.get<std::string>() != "uniform")
                throw std::invalid_argument("policy: unknown path_weights keyword");
        } else if (pw.is_object()) {
            for (const auto& [key, value] : pw.items()) {
                auto it = label_names().find(key);
                if (it == label_names().end())
                    throw std::invalid_argument("policy: unknown step label " + key);
                p.path_weights[it->second] = value.get<double>();
            }
        } else {
            throw std::invalid_argument("policy: path_weights must be \"uniform\" or an object");
        }
    }
    if (j.contains("parallel_split_rule")) {
        const std::string rule = j.at("parallel_split_rule").get<std::string>();
        if (rule == "larger_relative_gap")
            p.parallel_split_rule = ParallelSplitRule::LargerRelativeGap;
        else if (rule == "enumerate_both")
            p.parallel_split_rule = ParallelSplitRule::EnumerateBoth;
        else
            throw std::invalid_argument("policy: unknown parallel_split_rule " + rule);
    }
    if (j.contains("calc_fallback")) p.calc_fallback = j.at("calc_fallback").get<bool>();
    if (j.contains("time_params")) {
        const auto& t = j.at("time_params");
        if (!t.is_array() || t.size() != 4)
            throw std::invalid_argument("policy: time_params must be [t0,t1,t2,t_cal]");
        p.time_params = TimeParams{t[0].get<double>(), t[1].get<double>(), t[2].get<double>(),
                                   t[3].get<double>()};
    }
    if (j.contains("ambiguity_law_b"))
        p.ambiguity = j.at("ambiguity_law_b").get<bool>() ? AmbiguityRule::PessimisticMin
                                                          : AmbiguityRule::Midpoint;
    if (j.contains("max_tree_depth")) p.max_tree_depth = j.at("max_tree_depth").get<int>();
    p.validate();
    return p;
}

}  // namespace

ReductionPolicy policy_from_json_text(const std::string& text) {
    return policy_from_json(nlohmann::json::parse(text));
}

ReductionPolicy load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open policy file: " + path);
    nlohmann::json j;
    in >> j;
    return policy_from_json(j);
}

std::string policy_to_json_text(const ReductionPolicy& p) {
    nlohmann::json j;
    if (p.path_weights.empty()) {
        j["path_weights"] = "uniform";
    } else {
        nlohmann::json pw;
        for (const auto& [label, w] : p.path_weights) pw[to_string(label)] = w;
        j["path_weights"] = pw;
    }
    j["parallel_split_rule"] = p.parallel_split_rule == ParallelSplitRule::LargerRelativeGap
                                   ? "larger_relative_gap"
                                   : "enumerate_both";
    j["calc_fallback"] = p.calc_fallback;
    j["time_params"] = {p.time_params.t0, p.time_params.t1, p.time_params.t2, p.time_params.t_cal};
    j["ambiguity_law_b"] = p.ambiguity == AmbiguityRule::PessimisticMin;
    j["max_tree_depth"] = p.max_tree_depth;
    return j.dump();
}

}  // namespace dstruct
