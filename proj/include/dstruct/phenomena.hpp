#pragma once

// Worked scenarios shipped as executable fixtures: the two Allais pairs, the
// four Ellsberg gambles with their credal ranges, and the probability
// weighting behavior implied by the substitution representatives.

#include "dstruct/model.hpp"
#include "dstruct/reduction.hpp"

namespace dstruct {

enum class PiVerdict { Overweighted, Underweighted, Exact };

std::string to_string(PiVerdict v);

// Representative (perceived) probability per interval concept.
struct ProbRepresentatives {
    double a = 0.3, b = 0.5, c = 0.7;
};

// Weight distortion of a stated probability: the perceived weight is the
// interval's representative, so the distortion sign is the sign of
// (representative - p). Certainties carry no distortion and are rejected.
PiVerdict pi_behavior(double p, const SubstitutionScheme& scheme,
                      const ProbRepresentatives& reps = {});

struct GamblePair {
    std::string id;
    Gamble x;
    Gamble y;
};

// certain 1M  vs  (.10 of 5M, .89 of 1M, .01 of nothing)
GamblePair allais_pair1();
// (.11 of 1M) vs (.10 of 5M)
GamblePair allais_pair2();
// value bins placing both prizes in the top reward concept
SubstitutionScheme allais_scheme();

// urn gambles: known 1/3 vs ambiguous (0,2/3); ambiguous (1/3,1) vs known 2/3
GamblePair ellsberg_ab();
GamblePair ellsberg_cd();
// value bins placing the 100 prize in the middle reward concept
SubstitutionScheme ellsberg_scheme();

struct AllaisPrediction {
    Outcome pair1 = Outcome::Indifferent;  // X is the certain option
    Outcome pair2 = Outcome::Indifferent;  // Y is the long-shot option
};

AllaisPrediction allais_predict(const SubstitutionScheme& scheme,
                                const ReductionPolicy& policy = {});

struct EllsbergPrediction {
    Outcome ab = Outcome::Indifferent;  // X known risk, Y ambiguous
    Outcome cd = Outcome::Indifferent;  // X ambiguous, Y known risk
};

// law_b = false replaces the pessimistic credal binning by midpoints.
EllsbergPrediction ellsberg_predict(const SubstitutionScheme& scheme, bool law_b = true,
                                    ReductionPolicy policy = {});

}  // namespace dstruct
