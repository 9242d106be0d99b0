#pragma once

// Core domain types of the ordinal decision-structure model: five-rank
// category chains for probabilities and rewards, gambles, categorized
// tokens, the 2x2 positional decision matrix, structure classes and
// reduction traces. Types here are immutable values with no algorithms.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dstruct {

enum class Dimension { Prob, Value };
enum class OptionId { X = 0, Y = 1 };
enum class Outcome { X, Y, Indifferent };

inline OptionId other(OptionId o) { return o == OptionId::X ? OptionId::Y : OptionId::X; }
inline Outcome to_outcome(OptionId o) { return o == OptionId::X ? Outcome::X : Outcome::Y; }

std::string to_string(Dimension d);
std::string to_string(OptionId o);
std::string to_string(Outcome o);

// Ordered category chains 0 < a < b < c < anchor. Ranks 0 and 4 are the two
// constant concepts (gain nothing; certainty resp. unbounded reward), ranks
// 1..3 the three acquired interval concepts.
enum class ProbCategory : int { Zero = 0, A = 1, B = 2, C = 3, One = 4 };
enum class ValCategory : int { Zero = 0, A = 1, B = 2, C = 3, Inf = 4 };

constexpr int rank(ProbCategory c) { return static_cast<int>(c); }
constexpr int rank(ValCategory c) { return static_cast<int>(c); }

std::string to_string(ProbCategory c);
std::string to_string(ValCategory c);

// Category symbol for a (dimension, rank) pair: "a", "b'", "1", "inf", ...
std::string category_symbol(Dimension d, int rank);

// Cutoffs mapping numbers onto the category chains. Probability intervals
// are a=(0,p_ab), b=[p_ab,p_bc), c=[p_bc,1); reward intervals are
// a'=(0,v_ab), b'=[v_ab,v_bc), c'=[v_bc,inf). Interval boundaries are closed
// on the left; exact 0 and exact 1 always map to the constant concepts.
// There is no universal default for the value cutoffs -- reward binning is
// scenario-relative and must be supplied.
class SubstitutionScheme {
public:
    SubstitutionScheme(std::pair<double, double> prob_cutoffs,
                       std::pair<double, double> value_cutoffs);

    static constexpr std::pair<double, double> kDefaultProbCutoffs{0.35, 0.7};

    // Default probability cutoffs, caller-supplied value cutoffs.
    static SubstitutionScheme with_default_probs(double v_ab, double v_bc);

    double p_ab() const { return p_ab_; }
    double p_bc() const { return p_bc_; }
    double v_ab() const { return v_ab_; }
    double v_bc() const { return v_bc_; }

    bool operator==(const SubstitutionScheme&) const = default;

private:
    double p_ab_, p_bc_;
    double v_ab_, v_bc_;
};

// Credal range for an ambiguous probability.
struct ProbInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const ProbInterval&) const = default;
};

struct Branch {
    double probability = 0.0;
    double reward = 0.0;
    std::optional<ProbInterval> ambiguity;
    // Remainder branch added to complete the unit mass. Only branches the
    // caller wrote down take part in substitution; the implicit "otherwise
    // nothing" stays out of every matrix.
    bool implicit = false;

    Branch() = default;
    Branch(double p, double v, std::optional<ProbInterval> amb = std::nullopt, bool imp = false)
        : probability(p), reward(v), ambiguity(std::move(amb)), implicit(imp) {}

    bool operator==(const Branch&) const = default;
};

// A gamble over non-negative rewards. Probabilities must sum to one within
// kProbSumTolerance; a shortfall is filled by an implicit zero-reward
// remainder branch. At most kMaxBranches branches.
class Gamble {
public:
    static constexpr double kProbSumTolerance = 1e-9;
    static constexpr std::size_t kMaxBranches = 8;

    explicit Gamble(std::vector<Branch> branches);
    Gamble(std::initializer_list<Branch> branches)
        : Gamble(std::vector<Branch>(branches)) {}

    const std::vector<Branch>& branches() const { return branches_; }

    // Branches that can actually occur (probability > 0).
    std::size_t live_branch_count() const;

    bool operator==(const Gamble&) const = default;

private:
    std::vector<Branch> branches_;
};

// One categorized branch element. `category` is the rank 0..4 on the
// dimension's chain; `numeric` keeps the original number (the pessimistic
// lower end for ambiguous probabilities).
struct Token {
    OptionId option = OptionId::X;
    int branch = 0;
    Dimension dim = Dimension::Prob;
    int category = 0;
    double numeric = 0.0;

    bool operator==(const Token&) const = default;
};

std::string to_string(const Token& t);

enum class CellPos : int { A = 0, B = 1, C = 2, Anchor = 3 };

// Four ordered cells a < b < c < anchor, each a multiset of tokens. Tokens
// of rank 1..4 land in cells 0..3; rank-0 tokens are recorded by the callers
// but never placed in a cell. Cell contents are kept canonically sorted so
// matrices compare and print deterministically.
class DecisionMatrix {
public:
    void insert(const Token& t);

    const std::vector<Token>& cell(CellPos p) const { return cells_[static_cast<int>(p)]; }
    std::size_t token_count() const;
    bool empty() const { return token_count() == 0; }

    // Ranks present for one option on one dimension, ascending.
    std::vector<int> ranks_of(OptionId o, Dimension d) const;

    bool operator==(const DecisionMatrix&) const = default;

private:
    std::array<std::vector<Token>, 4> cells_;
};

// One-line cell rendering, e.g. "[a: a_x a'_x | b: b_y b'_y | c: - | 1: -]".
std::string to_string(const DecisionMatrix& m);

enum class StructureKind { ZeroOrder, FirstOrder, SecondOrderParallel, SecondOrderCrossing };

// Classification of a single-branch pair structure. ZeroOrder and FirstOrder
// carry the favored option; FirstOrder also the tied dimension.
struct StructureClass {
    StructureKind kind = StructureKind::SecondOrderParallel;
    std::optional<OptionId> favored;
    std::optional<Dimension> tied;

    static StructureClass zero_order(OptionId favored);
    static StructureClass first_order(Dimension tied, OptionId favored);
    static StructureClass parallel();
    static StructureClass crossing();

    bool operator==(const StructureClass&) const = default;
};

std::string to_string(const StructureClass& c);

// One option of a collapsed single-branch pair: category ranks on both
// dimensions plus the underlying numerics that drive split decisions.
struct OptionState {
    int prob_rank = 0;
    int value_rank = 0;
    double p = 0.0;  // effective probability (credal lower end if ambiguous)
    double v = 0.0;

    bool operator==(const OptionState&) const = default;
};

struct StructureState {
    std::array<OptionState, 2> opt;

    const OptionState& operator[](OptionId o) const { return opt[static_cast<int>(o)]; }
    OptionState& operator[](OptionId o) { return opt[static_cast<int>(o)]; }

    int rank(OptionId o, Dimension d) const;
    double numeric(OptionId o, Dimension d) const;
    void set_rank(OptionId o, Dimension d, int r);

    bool operator==(const StructureState&) const = default;
};

// Combined (prob o value) matrix of a single-branch pair state.
DecisionMatrix combined_matrix(const StructureState& s);

enum class StepKind { Substitute, Dtau2, Dtau1, Calc };
enum class StepLabel { RiskSeeking, RiskAversion, ValueSeeking, ValueAversion };

std::string to_string(StepKind k);
std::string to_string(StepLabel l);

struct TraceStep {
    StepKind kind = StepKind::Substitute;
    std::optional<StepLabel> label;
    std::optional<StructureClass> resulting_class;

    bool operator==(const TraceStep&) const = default;
};

// One root-to-leaf path through the reduction process. Step kinds appear in
// nonincreasing severity: no Dtau2 after a Dtau1, Calc only last.
struct ReductionTrace {
    std::vector<TraceStep> steps;
    Outcome outcome = Outcome::Indifferent;

    int count(StepKind k) const;
    bool operator==(const ReductionTrace&) const = default;
};

std::string to_string(const ReductionTrace& t);

}  // namespace dstruct
