#include "dstruct/phenomena.hpp"

#include <cmath>

#include "dstruct/classification.hpp"
#include "dstruct/substitution.hpp"

namespace dstruct {

std::string to_string(PiVerdict v) {
    switch (v) {
    case PiVerdict::Overweighted: return "overweighted";
    case PiVerdict::Underweighted: return "underweighted";
    default: return "exact";
    }
}

PiVerdict pi_behavior(double p, const SubstitutionScheme& scheme,
                      const ProbRepresentatives& reps) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("pi_behavior: p must be strictly inside (0,1)");
    const ProbCategory cat = substitute_probability(p, scheme);
    double rep = 0.0;
    switch (cat) {
    case ProbCategory::A: rep = reps.a; break;
    case ProbCategory::B: rep = reps.b; break;
    default: rep = reps.c; break;
    }
    if (std::abs(rep - p) <= 1e-12) return PiVerdict::Exact;
    return rep > p ? PiVerdict::Overweighted : PiVerdict::Underweighted;
}

namespace {
Branch br(double p, double v) { return Branch{p, v, std::nullopt}; }
}  // namespace

GamblePair allais_pair1() {
    return GamblePair{"allais-1",
                      Gamble{br(1.0, 1'000'000.0)},
                      Gamble{br(0.10, 5'000'000.0), br(0.89, 1'000'000.0), br(0.01, 0.0)}};
}

GamblePair allais_pair2() {
    return GamblePair{"allais-2",
                      Gamble{br(0.11, 1'000'000.0), br(0.89, 0.0)},
                      Gamble{br(0.10, 5'000'000.0), br(0.90, 0.0)}};
}

SubstitutionScheme allais_scheme() {
    return SubstitutionScheme::with_default_probs(1'000.0, 1'000'000.0);
}

namespace {
constexpr double kThird = 1.0 / 3.0;
constexpr double kTwoThirds = 2.0 / 3.0;
}  // namespace

GamblePair ellsberg_ab() {
    Branch known{kThird, 100.0, std::nullopt};
    Branch ambiguous{kThird, 100.0, ProbInterval{0.0, kTwoThirds}};
    return GamblePair{"ellsberg-ab", Gamble{{known, Branch{kTwoThirds, 0.0, std::nullopt}}},
                      Gamble{{ambiguous, Branch{kTwoThirds, 0.0, std::nullopt}}}};
}

GamblePair ellsberg_cd() {
    Branch ambiguous{kTwoThirds, 100.0, ProbInterval{kThird, 1.0}};
    Branch known{kTwoThirds, 100.0, std::nullopt};
    return GamblePair{"ellsberg-cd", Gamble{{ambiguous, Branch{kThird, 0.0, std::nullopt}}},
                      Gamble{{known, Branch{kThird, 0.0, std::nullopt}}}};
}

SubstitutionScheme ellsberg_scheme() {
    return SubstitutionScheme::with_default_probs(50.0, 1'000.0);
}

namespace {

Outcome winner(const GamblePair& pair, const SubstitutionScheme& scheme,
               const ReductionPolicy& policy) {
    const ReductionTree tree = reduction_tree(pair.x, pair.y, scheme, policy);
    if (tree.immediate) return *tree.immediate;
    const ChoiceDistribution d = choice_distribution(tree, policy);
    if (d.x > d.y && d.x > d.indifferent) return Outcome::X;
    if (d.y > d.x && d.y > d.indifferent) return Outcome::Y;
    return Outcome::Indifferent;
}

}  // namespace

AllaisPrediction allais_predict(const SubstitutionScheme& scheme, const ReductionPolicy& policy) {
    AllaisPrediction p;
    p.pair1 = winner(allais_pair1(), scheme, policy);
    p.pair2 = winner(allais_pair2(), scheme, policy);
    return p;
}

EllsbergPrediction ellsberg_predict(const SubstitutionScheme& scheme, bool law_b,
                                    ReductionPolicy policy) {
    policy.ambiguity = law_b ? AmbiguityRule::PessimisticMin : AmbiguityRule::Midpoint;
    EllsbergPrediction p;
    p.ab = winner(ellsberg_ab(), scheme, policy);
    p.cd = winner(ellsberg_cd(), scheme, policy);
    return p;
}

}  // namespace dstruct
