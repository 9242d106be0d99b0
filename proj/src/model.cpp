#include "dstruct/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dstruct {

std::string to_string(Dimension d) { return d == Dimension::Prob ? "prob" : "value"; }
std::string to_string(OptionId o) { return o == OptionId::X ? "x" : "y"; }

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::X: return "x";
    case Outcome::Y: return "y";
    default: return "indifferent";
    }
}

std::string to_string(ProbCategory c) {
    static const char* names[] = {"0", "a", "b", "c", "1"};
    return names[rank(c)];
}

std::string to_string(ValCategory c) {
    static const char* names[] = {"0", "a'", "b'", "c'", "inf"};
    return names[rank(c)];
}

std::string category_symbol(Dimension d, int r) {
    return d == Dimension::Prob ? to_string(static_cast<ProbCategory>(r))
                                : to_string(static_cast<ValCategory>(r));
}

SubstitutionScheme::SubstitutionScheme(std::pair<double, double> prob_cutoffs,
                                       std::pair<double, double> value_cutoffs)
    : p_ab_(prob_cutoffs.first),
      p_bc_(prob_cutoffs.second),
      v_ab_(value_cutoffs.first),
      v_bc_(value_cutoffs.second) {
    if (!(p_ab_ > 0.0 && p_ab_ < p_bc_ && p_bc_ < 1.0))
        throw std::invalid_argument("scheme: need 0 < p_ab < p_bc < 1");
    if (!(v_ab_ > 0.0 && v_ab_ < v_bc_) || !std::isfinite(v_bc_))
        throw std::invalid_argument("scheme: need 0 < v_ab < v_bc < inf");
}

SubstitutionScheme SubstitutionScheme::with_default_probs(double v_ab, double v_bc) {
    return SubstitutionScheme(kDefaultProbCutoffs, {v_ab, v_bc});
}

Gamble::Gamble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw std::invalid_argument("gamble: no branches");
    double sum = 0.0;
    for (const Branch& b : branches_) {
        if (!(b.probability >= 0.0 && b.probability <= 1.0) || !std::isfinite(b.probability))
            throw std::invalid_argument("gamble: branch probability outside [0,1]");
        if (!(b.reward >= 0.0) || !std::isfinite(b.reward))
            throw std::invalid_argument("gamble: branch reward negative or non-finite");
        if (b.ambiguity) {
            const auto& iv = *b.ambiguity;
            if (!(iv.lo >= 0.0 && iv.lo <= iv.hi && iv.hi <= 1.0))
                throw std::invalid_argument("gamble: ambiguity interval outside [0,1] or inverted");
        }
        sum += b.probability;
    }
    if (sum > 1.0 + kProbSumTolerance)
        throw std::invalid_argument("gamble: probabilities sum beyond 1");
    if (sum < 1.0 - kProbSumTolerance)
        branches_.push_back(Branch{1.0 - sum, 0.0, std::nullopt, true});
    if (branches_.size() > kMaxBranches)
        throw std::invalid_argument("gamble: more than 8 branches");
}

std::size_t Gamble::live_branch_count() const {
    std::size_t n = 0;
    for (const Branch& b : branches_)
        if (!b.implicit && (b.probability > 0.0 || b.ambiguity)) ++n;
    return n;
}

std::string to_string(const Token& t) {
    return category_symbol(t.dim, t.category) + "_" + to_string(t.option);
}

namespace {
bool token_less(const Token& a, const Token& b) {
    auto key = [](const Token& t) {
        return std::tuple(static_cast<int>(t.dim), static_cast<int>(t.option), t.branch,
                          t.category, t.numeric);
    };
    return key(a) < key(b);
}
}  // namespace

void DecisionMatrix::insert(const Token& t) {
    if (t.category < 0 || t.category > 4)
        throw std::invalid_argument("matrix: token rank outside 0..4");
    if (t.category == 0) return;  // rank-0 tokens stay outside the cells
    auto& cell = cells_[t.category - 1];
    cell.insert(std::upper_bound(cell.begin(), cell.end(), t, token_less), t);
}

std::size_t DecisionMatrix::token_count() const {
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.size();
    return n;
}

std::vector<int> DecisionMatrix::ranks_of(OptionId o, Dimension d) const {
    std::vector<int> out;
    for (const auto& cell : cells_)
        for (const Token& t : cell)
            if (t.option == o && t.dim == d) out.push_back(t.category);
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const DecisionMatrix& m) {
    static const char* cell_names[] = {"a", "b", "c", "1"};
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 4; ++i) {
        if (i) os << " | ";
        os << cell_names[i] << ":";
        const auto& cell = m.cell(static_cast<CellPos>(i));
        if (cell.empty()) {
            os << " -";
        } else {
            for (const Token& t : cell) os << " " << to_string(t);
        }
    }
    os << "]";
    return os.str();
}

StructureClass StructureClass::zero_order(OptionId favored) {
    return {StructureKind::ZeroOrder, favored, std::nullopt};
}
StructureClass StructureClass::first_order(Dimension tied, OptionId favored) {
    return {StructureKind::FirstOrder, favored, tied};
}
StructureClass StructureClass::parallel() {
    return {StructureKind::SecondOrderParallel, std::nullopt, std::nullopt};
}
StructureClass StructureClass::crossing() {
    return {StructureKind::SecondOrderCrossing, std::nullopt, std::nullopt};
}

std::string to_string(const StructureClass& c) {
    switch (c.kind) {
    case StructureKind::ZeroOrder:
        return "zero-order(" + to_string(*c.favored) + ")";
    case StructureKind::FirstOrder:
        return "first-order(tied " + to_string(*c.tied) + ", favors " + to_string(*c.favored) + ")";
    case StructureKind::SecondOrderParallel:
        return "second-order-parallel";
    default:
        return "second-order-crossing";
    }
}

int StructureState::rank(OptionId o, Dimension d) const {
    const OptionState& s = (*this)[o];
    return d == Dimension::Prob ? s.prob_rank : s.value_rank;
}

double StructureState::numeric(OptionId o, Dimension d) const {
    const OptionState& s = (*this)[o];
    return d == Dimension::Prob ? s.p : s.v;
}

void StructureState::set_rank(OptionId o, Dimension d, int r) {
    OptionState& s = (*this)[o];
    (d == Dimension::Prob ? s.prob_rank : s.value_rank) = r;
}

DecisionMatrix combined_matrix(const StructureState& s) {
    DecisionMatrix m;
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        const OptionState& os = s[o];
        m.insert(Token{o, 0, Dimension::Prob, os.prob_rank, os.p});
        m.insert(Token{o, 0, Dimension::Value, os.value_rank, os.v});
    }
    return m;
}

std::string to_string(StepKind k) {
    switch (k) {
    case StepKind::Substitute: return "substitute";
    case StepKind::Dtau2: return "dtau2";
    case StepKind::Dtau1: return "dtau1";
    default: return "calc";
    }
}

std::string to_string(StepLabel l) {
    switch (l) {
    case StepLabel::RiskSeeking: return "risk-seeking";
    case StepLabel::RiskAversion: return "risk-aversion";
    case StepLabel::ValueSeeking: return "value-seeking";
    default: return "value-aversion";
    }
}

int ReductionTrace::count(StepKind k) const {
    int n = 0;
    for (const TraceStep& s : steps)
        if (s.kind == k) ++n;
    return n;
}

std::string to_string(const ReductionTrace& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (i) os << " > ";
        os << to_string(t.steps[i].kind);
        if (t.steps[i].label) os << "(" << to_string(*t.steps[i].label) << ")";
    }
    os << " => " << to_string(t.outcome);
    return os.str();
}

}  // namespace dstruct
