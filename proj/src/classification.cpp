#include "dstruct/classification.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dstruct {

StructureClass classify_ranks(int x_prob, int y_prob, int x_value, int y_value) {
    for (int r : {x_prob, y_prob, x_value, y_value})
        if (r < 0 || r > 4) throw std::invalid_argument("classify: rank outside 0..4");

    const int dp = (x_prob > y_prob) - (x_prob < y_prob);
    const int dv = (x_value > y_value) - (x_value < y_value);

    if (dp == 0 && dv == 0) return StructureClass::parallel();
    if (dp == 0) return StructureClass::first_order(Dimension::Prob,
                                                    dv > 0 ? OptionId::X : OptionId::Y);
    if (dv == 0) return StructureClass::first_order(Dimension::Value,
                                                    dp > 0 ? OptionId::X : OptionId::Y);
    if (dp == dv) return StructureClass::zero_order(dp > 0 ? OptionId::X : OptionId::Y);
    return StructureClass::crossing();
}

StructureClass classify(const StructureState& s) {
    return classify_ranks(s[OptionId::X].prob_rank, s[OptionId::Y].prob_rank,
                          s[OptionId::X].value_rank, s[OptionId::Y].value_rank);
}

StructureClass classify(const DecisionMatrix& prob, const DecisionMatrix& value) {
    std::array<int, 2> p{}, v{};
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        const auto pr = prob.ranks_of(o, Dimension::Prob);
        const auto vr = value.ranks_of(o, Dimension::Value);
        if (pr.size() > 1 || vr.size() > 1)
            throw std::logic_error("classify: multi-branch pair, reduce it first");
        p[static_cast<int>(o)] = pr.empty() ? 0 : pr.front();
        v[static_cast<int>(o)] = vr.empty() ? 0 : vr.front();
    }
    return classify_ranks(p[0], p[1], v[0], v[1]);
}

namespace {

struct DimSpan {
    int max = -1;
    int min = 5;
};

// max/min token rank per dimension; zero-reward branches appear as rank-0
// value entries, and a dimension with no tokens at all reads as the zero
// concept.
std::array<DimSpan, 2> rank_spans(const std::vector<Token>& tokens) {
    std::array<DimSpan, 2> spans;
    for (const Token& t : tokens) {
        DimSpan& s = spans[t.dim == Dimension::Prob ? 0 : 1];
        s.max = std::max(s.max, t.category);
        s.min = std::min(s.min, t.category);
    }
    for (DimSpan& s : spans)
        if (s.max < 0) s = DimSpan{0, 0};
    return spans;
}

bool dominates(const std::array<DimSpan, 2>& own, const std::array<DimSpan, 2>& rival) {
    for (int d = 0; d < 2; ++d) {
        if (own[d].max < rival[d].max) return false;  // some rival token uncovered
        if (own[d].max <= rival[d].min) return false; // no strict win on this dimension
    }
    return true;
}

}  // namespace

std::optional<OptionId> superiority(const Gamble& x, const Gamble& y,
                                    const SubstitutionScheme& scheme, AmbiguityRule rule) {
    const auto sx = rank_spans(tokenize(x, OptionId::X, scheme, rule));
    const auto sy = rank_spans(tokenize(y, OptionId::Y, scheme, rule));
    const bool x_sup = dominates(sx, sy);
    const bool y_sup = dominates(sy, sx);
    if (x_sup == y_sup) return std::nullopt;  // neither, or mutual
    return x_sup ? OptionId::X : OptionId::Y;
}

namespace {

struct BranchView {
    const Branch* branch;
    int index;
    int prob_rank;
    double eff_p;
    bool cancelled = false;
};

std::vector<BranchView> live_branches(const Gamble& g, const SubstitutionScheme& scheme,
                                      AmbiguityRule rule) {
    std::vector<BranchView> out;
    const auto& bs = g.branches();
    for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
        const Branch& b = bs[i];
        if (b.implicit || (b.probability == 0.0 && !b.ambiguity)) continue;
        out.push_back(BranchView{&b, i, rank(branch_prob_category(b, scheme, rule)),
                                 branch_effective_probability(b, rule)});
    }
    return out;
}

OptionState collapse(const std::vector<BranchView>& views, const SubstitutionScheme& scheme) {
    const BranchView* best = nullptr;
    for (const BranchView& v : views) {
        if (v.cancelled) continue;
        if (!best || v.branch->reward > best->branch->reward ||
            (v.branch->reward == best->branch->reward && v.eff_p > best->eff_p))
            best = &v;
    }
    OptionState s;
    s.prob_rank = best->prob_rank;
    s.value_rank = rank(substitute_value(best->branch->reward, scheme));
    s.p = best->eff_p;
    s.v = best->branch->reward;
    return s;
}

}  // namespace

CancelResult cancel_and_reduce(const Gamble& x, const Gamble& y,
                               const SubstitutionScheme& scheme, AmbiguityRule rule) {
    CancelResult result;
    if (auto winner = superiority(x, y, scheme, rule)) {
        result.verdict = to_outcome(*winner);
        return result;
    }

    auto xs = live_branches(x, scheme, rule);
    auto ys = live_branches(y, scheme, rule);

    // zero-reward branches cancel across options when their probability
    // categories match, one for one
    for (BranchView& bx : xs) {
        if (bx.branch->reward != 0.0) continue;
        for (BranchView& by : ys) {
            if (by.cancelled || by.branch->reward != 0.0 || by.prob_rank != bx.prob_rank)
                continue;
            bx.cancelled = by.cancelled = true;
            result.cancelled_any = true;
            break;
        }
    }
    // numerically identical branches cancel each other
    for (BranchView& bx : xs) {
        if (bx.cancelled) continue;
        for (BranchView& by : ys) {
            if (by.cancelled || !(*bx.branch == *by.branch)) continue;
            bx.cancelled = by.cancelled = true;
            result.cancelled_any = true;
            break;
        }
    }

    auto alive = [](const std::vector<BranchView>& vs) {
        return std::any_of(vs.begin(), vs.end(), [](const BranchView& v) { return !v.cancelled; });
    };
    if (!alive(xs) || !alive(ys)) {
        result.verdict = Outcome::Indifferent;
        return result;
    }

    StructureState state;
    state[OptionId::X] = collapse(xs, scheme);
    state[OptionId::Y] = collapse(ys, scheme);
    result.reduced = state;
    return result;
}

bool is_single_branch_pair(const Gamble& x, const Gamble& y) {
    return x.live_branch_count() == 1 && y.live_branch_count() == 1;
}

StructureState make_state(const Gamble& x, const Gamble& y, const SubstitutionScheme& scheme,
                          AmbiguityRule rule) {
    if (!is_single_branch_pair(x, y))
        throw std::logic_error("make_state: multi-branch pair");
    StructureState s;
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        auto views = live_branches(o == OptionId::X ? x : y, scheme, rule);
        s[o] = collapse(views, scheme);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Catalog tables.

const std::vector<CatalogComponent>& catalog_components() {
    static const std::vector<CatalogComponent> table = {
        {5, Dimension::Prob, 1, 2, StructureKind::ZeroOrder},
        {6, Dimension::Prob, 1, 3, StructureKind::ZeroOrder},
        {7, Dimension::Prob, 2, 3, StructureKind::ZeroOrder},
        {8, Dimension::Value, 1, 2, StructureKind::ZeroOrder},
        {9, Dimension::Value, 1, 3, StructureKind::ZeroOrder},
        {10, Dimension::Value, 2, 3, StructureKind::ZeroOrder},
        {12, Dimension::Prob, 1, 1, StructureKind::FirstOrder},
        {13, Dimension::Prob, 2, 2, StructureKind::FirstOrder},
        {14, Dimension::Prob, 3, 3, StructureKind::FirstOrder},
        {15, Dimension::Value, 1, 2, StructureKind::FirstOrder},
        {16, Dimension::Value, 1, 3, StructureKind::FirstOrder},
        {17, Dimension::Value, 2, 3, StructureKind::FirstOrder},
        {27, Dimension::Prob, 1, 2, StructureKind::FirstOrder},
        {28, Dimension::Prob, 1, 3, StructureKind::FirstOrder},
        {29, Dimension::Prob, 2, 3, StructureKind::FirstOrder},
        {39, Dimension::Value, 1, 1, StructureKind::SecondOrderParallel},
        {40, Dimension::Value, 2, 2, StructureKind::SecondOrderParallel},
        {41, Dimension::Value, 3, 3, StructureKind::SecondOrderParallel},
        {51, Dimension::Value, 2, 1, StructureKind::SecondOrderCrossing},
        {52, Dimension::Value, 3, 1, StructureKind::SecondOrderCrossing},
        {53, Dimension::Value, 3, 2, StructureKind::SecondOrderCrossing},
    };
    return table;
}

namespace {

const CatalogComponent& component(int id) {
    for (const CatalogComponent& c : catalog_components())
        if (c.id == id) return c;
    throw std::logic_error("unknown catalog component");
}

std::vector<CatalogEntry> build_entries() {
    std::vector<CatalogEntry> out;
    auto compose = [](int pc, int vc) {
        const CatalogComponent& p = component(pc);
        const CatalogComponent& v = component(vc);
        return ComposedSignature{p.x_rank, p.y_rank, v.x_rank, v.y_rank};
    };
    auto block = [&](int first_id, std::array<int, 3> probs, std::array<int, 3> values,
                     StructureKind section, bool recorded_differs) {
        int id = first_id;
        for (int pi = 0; pi < 3; ++pi) {
            for (int vi = 0; vi < 3; ++vi, ++id) {
                CatalogEntry e{id, probs[pi], values[vi], section,
                               compose(probs[pi], values[vi]), std::nullopt};
                if (recorded_differs) {
                    // recorded cells tie both options' value tokens at the
                    // value component's own level instead of using it
                    const CatalogComponent& p = component(probs[pi]);
                    const int level = vi + 1;
                    e.recorded = ComposedSignature{p.x_rank, p.y_rank, level, level};
                }
                out.push_back(e);
            }
        }
    };

    out.push_back(CatalogEntry{11, 5, 8, StructureKind::ZeroOrder, compose(5, 8), std::nullopt});
    block(18, {12, 13, 14}, {15, 16, 17}, StructureKind::FirstOrder, false);
    block(30, {27, 28, 29}, {15, 16, 17}, StructureKind::FirstOrder, true);
    block(42, {12, 13, 14}, {39, 40, 41}, StructureKind::SecondOrderParallel, false);
    block(54, {5, 6, 7}, {51, 52, 53}, StructureKind::SecondOrderCrossing, false);
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> table = build_entries();
    return table;
}

}  // namespace dstruct
