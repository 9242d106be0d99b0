#include <doctest.h>

#include <random>

#include "dstruct/classification.hpp"
#include "dstruct/compensatory.hpp"
#include "dstruct/phenomena.hpp"

using namespace dstruct;

namespace {
const SubstitutionScheme kDefault = SubstitutionScheme::with_default_probs(10.0, 100.0);
}

TEST_CASE("weight distortion follows the representative") {
    CHECK(pi_behavior(0.1, kDefault) == PiVerdict::Overweighted);
    CHECK(pi_behavior(0.2, kDefault) == PiVerdict::Overweighted);
    CHECK(pi_behavior(0.35, kDefault) == PiVerdict::Overweighted);  // perceived as .5
    CHECK(pi_behavior(0.45, kDefault) == PiVerdict::Overweighted);
    CHECK(pi_behavior(0.6, kDefault) == PiVerdict::Underweighted);
    CHECK(pi_behavior(0.69, kDefault) == PiVerdict::Underweighted);
    CHECK(pi_behavior(0.8, kDefault) == PiVerdict::Underweighted);
    CHECK(pi_behavior(0.3, kDefault) == PiVerdict::Exact);
    CHECK(pi_behavior(0.5, kDefault) == PiVerdict::Exact);
    CHECK(pi_behavior(0.7, kDefault) == PiVerdict::Exact);
}

TEST_CASE("certainties carry no weight distortion") {
    CHECK_THROWS_AS(pi_behavior(0.0, kDefault), std::domain_error);
    CHECK_THROWS_AS(pi_behavior(1.0, kDefault), std::domain_error);
}

TEST_CASE("distortion is antisymmetric around each representative") {
    const ProbRepresentatives reps;
    auto flip = [](PiVerdict v) {
        return v == PiVerdict::Overweighted ? PiVerdict::Underweighted : PiVerdict::Overweighted;
    };
    // stay inside the representative's own interval on both sides
    for (double rep : {reps.a, reps.b}) {
        for (double delta = 0.005; delta < 0.045; delta += 0.005) {
            const PiVerdict below = pi_behavior(rep - delta, kDefault);
            const PiVerdict above = pi_behavior(rep + delta, kDefault);
            CHECK(above == flip(below));
        }
    }
}

TEST_CASE("the Allais verdicts come out as certainty then long shot") {
    const AllaisPrediction p = allais_predict(allais_scheme());
    CHECK(p.pair1 == Outcome::X);  // option A
    CHECK(p.pair2 == Outcome::Y);  // option D
}

TEST_CASE("the first Allais verdict contradicts expected value") {
    const GamblePair p1 = allais_pair1();
    CHECK(expected_value(p1.x) == doctest::Approx(1'000'000.0));
    CHECK(expected_value(p1.y) == doctest::Approx(1'390'000.0));
    // the richer option loses anyway
    CHECK(expected_value(p1.y) > expected_value(p1.x));
    CHECK(allais_predict(allais_scheme()).pair1 == Outcome::X);
}

TEST_CASE("splitting the prize bins turns the first pairing into a toss-up") {
    // 1M mid-bin, 5M top-bin: no dominance position remains
    const SubstitutionScheme split = SubstitutionScheme::with_default_probs(1e3, 2e6);
    const GamblePair p1 = allais_pair1();
    CHECK(superiority(p1.x, p1.y, split) == std::nullopt);

    const ReductionPolicy policy;
    const ReductionTree tree = reduction_tree(p1.x, p1.y, split, policy);
    REQUIRE(tree.root.has_value());
    CHECK(tree.root->cls.kind == StructureKind::SecondOrderCrossing);
    const ChoiceDistribution d = choice_distribution(tree, policy);
    CHECK(d.x == doctest::Approx(0.5));
    CHECK(d.y == doctest::Approx(0.5));
    CHECK(allais_predict(split).pair1 == Outcome::Indifferent);
}

TEST_CASE("the Ellsberg verdicts prefer the known risks") {
    const EllsbergPrediction p = ellsberg_predict(ellsberg_scheme());
    CHECK(p.ab == Outcome::X);  // gamble A
    CHECK(p.cd == Outcome::Y);  // gamble D
}

TEST_CASE("the Ellsberg verdicts survive any cutoffs keeping 1/3 small and 2/3 middling") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> lo(0.34, 0.66), hi(0.67, 0.99);
    for (int i = 0; i < 200; ++i) {
        const SubstitutionScheme s({lo(rng), hi(rng)}, {50.0, 1000.0});
        const EllsbergPrediction p = ellsberg_predict(s);
        CHECK(p.ab == Outcome::X);
        CHECK(p.cd == Outcome::Y);
    }
}

TEST_CASE("midpoint binning erases the ambiguity premium") {
    // with the credal ranges read at their centers both pairings tie
    const EllsbergPrediction p = ellsberg_predict(ellsberg_scheme(), /*law_b=*/false);
    CHECK(p.ab == Outcome::Indifferent);
    CHECK(p.cd == Outcome::Indifferent);
}
