#include <doctest.h>

#include <random>

#include "dstruct/substitution.hpp"

using namespace dstruct;

namespace {
const SubstitutionScheme kScheme = SubstitutionScheme::with_default_probs(10.0, 100.0);
}

TEST_CASE("probability substitution hits the documented points") {
    CHECK(substitute_probability(0.0, kScheme) == ProbCategory::Zero);
    CHECK(substitute_probability(0.1, kScheme) == ProbCategory::A);
    CHECK(substitute_probability(0.5, kScheme) == ProbCategory::B);
    CHECK(substitute_probability(0.9, kScheme) == ProbCategory::C);
    CHECK(substitute_probability(1.0, kScheme) == ProbCategory::One);
}

TEST_CASE("interval boundaries are closed on the left") {
    CHECK(substitute_probability(0.35, kScheme) == ProbCategory::B);
    CHECK(substitute_probability(0.7, kScheme) == ProbCategory::C);
    CHECK(substitute_probability(0.349999, kScheme) == ProbCategory::A);
}

TEST_CASE("out-of-range probabilities are a domain error") {
    CHECK_THROWS_AS(substitute_probability(-0.1, kScheme), std::domain_error);
    CHECK_THROWS_AS(substitute_probability(1.1, kScheme), std::domain_error);
}

TEST_CASE("value substitution per scenario cutoffs") {
    CHECK(substitute_value(0.0, kScheme) == ValCategory::Zero);
    const SubstitutionScheme allais = SubstitutionScheme::with_default_probs(1e3, 1e6);
    CHECK(substitute_value(1'000'000.0, allais) == ValCategory::C);
    const SubstitutionScheme ellsberg = SubstitutionScheme::with_default_probs(50.0, 1e3);
    CHECK(substitute_value(100.0, ellsberg) == ValCategory::B);
    CHECK_THROWS_AS(substitute_value(-1.0, kScheme), std::domain_error);
    CHECK_THROWS_AS(substitute_value(std::numeric_limits<double>::infinity(), kScheme),
                    std::domain_error);
}

TEST_CASE("uncertain probabilities bin to the minimal attainable concept") {
    CHECK(substitute_uncertain_probability(0.0, 2.0 / 3.0, kScheme) == ProbCategory::A);
    CHECK(substitute_uncertain_probability(1.0 / 3.0, 1.0, kScheme) == ProbCategory::B);
    // degenerate interval delegates
    CHECK(substitute_uncertain_probability(0.5, 0.5, kScheme) == ProbCategory::B);
    // range inside a single concept keeps it
    CHECK(substitute_uncertain_probability(0.4, 0.6, kScheme) == ProbCategory::B);
    CHECK(substitute_uncertain_probability(0.8, 0.95, kScheme) == ProbCategory::C);
    CHECK(substitute_uncertain_probability(0.0, 1.0, kScheme) == ProbCategory::A);
    CHECK_THROWS_AS(substitute_uncertain_probability(0.7, 0.3, kScheme), std::domain_error);
}

TEST_CASE("substitution is monotone in the number") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double p = unit(rng), q = unit(rng);
        if (p > q) std::swap(p, q);
        CHECK(rank(substitute_probability(p, kScheme)) <= rank(substitute_probability(q, kScheme)));
        const double v = 200.0 * p, w = 200.0 * q;
        CHECK(rank(substitute_value(v, kScheme)) <= rank(substitute_value(w, kScheme)));
    }
}

TEST_CASE("every probability on a fine grid maps to exactly one concept") {
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const ProbCategory c = substitute_probability(p, kScheme);
        // partition: recompute membership from the interval definition
        ProbCategory expect;
        if (p == 0.0) expect = ProbCategory::Zero;
        else if (p == 1.0) expect = ProbCategory::One;
        else if (p < kScheme.p_ab()) expect = ProbCategory::A;
        else if (p < kScheme.p_bc()) expect = ProbCategory::B;
        else expect = ProbCategory::C;
        CHECK(c == expect);
    }
}

TEST_CASE("equal numerics get equal categories") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double p = unit(rng);
        CHECK(substitute_probability(p, kScheme) == substitute_probability(p, kScheme));
        CHECK(substitute_value(p * 300.0, kScheme) == substitute_value(p * 300.0, kScheme));
    }
}

TEST_CASE("the ambiguity rule is pessimistic") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double lo = unit(rng), hi = unit(rng);
        if (lo > hi) std::swap(lo, hi);
        if (hi - lo < 1e-9) continue;
        const int got = rank(substitute_uncertain_probability(lo, hi, kScheme));
        CHECK(got >= 1);
        CHECK(got <= 3);
        // attainable set at the concept level: strictly above lo's concept,
        // bounded by hi's
        const int lo_r = rank(substitute_probability(lo, kScheme));
        const int hi_r = rank(substitute_probability(hi, kScheme));
        for (int s = 0; s < 20; ++s) {
            const double p = lo + (hi - lo) * unit(rng);
            const int pr = rank(substitute_probability(p, kScheme));
            if (pr > lo_r && pr <= std::min(hi_r, 3)) CHECK(got <= pr);
        }
    }
}

TEST_CASE("gamble branches land in the documented matrix cells") {
    const SubstitutionScheme allais = SubstitutionScheme::with_default_probs(1e3, 1e6);
    const Gamble x{Branch{1.0, 1e6, std::nullopt}};
    const Gamble y{Branch{0.10, 5e6, std::nullopt}, Branch{0.89, 1e6, std::nullopt},
                   Branch{0.01, 0.0, std::nullopt}};
    const PairMatrices m = build_matrices(x, y, allais);

    CHECK(m.prob.cell(CellPos::Anchor).size() == 1);
    CHECK(m.prob.cell(CellPos::Anchor)[0].option == OptionId::X);
    CHECK(m.prob.cell(CellPos::A).size() == 2);  // y's long shot and its dud branch
    CHECK(m.prob.cell(CellPos::B).empty());
    CHECK(m.prob.cell(CellPos::C).size() == 1);  // the .89 fallback is a large chance

    CHECK(m.value.cell(CellPos::C).size() == 3);  // both prizes are top-bin rewards
    CHECK(m.value.token_count() == 3);            // the zero reward stays outside
}

TEST_CASE("simple pair produces the expected single-token cells") {
    const Gamble x{Branch{0.1, 20.0, std::nullopt}};
    const Gamble y{Branch{0.5, 30.0, std::nullopt}};
    const PairMatrices m = build_matrices(x, y, kScheme);
    CHECK(m.prob.cell(CellPos::A).size() == 1);
    CHECK(m.prob.cell(CellPos::A)[0].option == OptionId::X);
    CHECK(m.prob.cell(CellPos::B).size() == 1);
    CHECK(m.prob.cell(CellPos::B)[0].option == OptionId::Y);
}

TEST_CASE("a zero-probability branch contributes no token") {
    const Gamble x{Branch{0.0, 42.0, std::nullopt}, Branch{1.0, 0.0, std::nullopt}};
    const Gamble y{Branch{1.0, 5.0, std::nullopt}};
    const PairMatrices m = build_matrices(x, y, kScheme);
    CHECK(m.prob.ranks_of(OptionId::X, Dimension::Prob) == std::vector<int>{4});
    CHECK(m.value.ranks_of(OptionId::X, Dimension::Value).empty());
}

TEST_CASE("product is the cellwise union and keeps token identity") {
    const Gamble x{Branch{0.1, 5.0, std::nullopt}};
    const Gamble y{Branch{0.5, 50.0, std::nullopt}};
    const PairMatrices m = build_matrices(x, y, kScheme);
    const DecisionMatrix g = product(m.prob, m.value);
    CHECK(g.token_count() == m.prob.token_count() + m.value.token_count());
    CHECK(g.cell(CellPos::A).size() == 2);  // a_x with a'_x
    CHECK(g.cell(CellPos::B).size() == 2);  // b_y with b'_y

    const DecisionMatrix empty;
    CHECK(product(m.prob, empty) == m.prob);
}

TEST_CASE("product of tied probabilities with split values") {
    const Gamble x{Branch{0.1, 5.0, std::nullopt}};
    const Gamble y{Branch{0.2, 50.0, std::nullopt}};
    const PairMatrices m = build_matrices(x, y, kScheme);
    const DecisionMatrix g = product(m.prob, m.value);
    CHECK(g.cell(CellPos::A).size() == 3);  // a_x a_y a'_x
    CHECK(g.cell(CellPos::B).size() == 1);  // b'_y
}

TEST_CASE("product is commutative and associative") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> rank_of(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_matrix = [&](int tokens) {
        DecisionMatrix m;
        for (int i = 0; i < tokens; ++i)
            m.insert(Token{unit(rng) < 0.5 ? OptionId::X : OptionId::Y, i,
                           unit(rng) < 0.5 ? Dimension::Prob : Dimension::Value, rank_of(rng),
                           unit(rng)});
        return m;
    };
    for (int i = 0; i < 100; ++i) {
        const DecisionMatrix a = random_matrix(3), b = random_matrix(2), c = random_matrix(4);
        CHECK(product(a, b) == product(b, a));
        CHECK(product(product(a, b), c) == product(a, product(b, c)));
    }
}

TEST_CASE("scheme config round-trips through JSON") {
    const SubstitutionScheme s({0.35, 0.7}, {1e3, 1e6});
    const SubstitutionScheme back = scheme_from_json_text(scheme_to_json_text(s));
    CHECK(back == s);
    CHECK_THROWS(scheme_from_json_text("{\"prob_cutoffs\": [0.35, 0.7]}"));
    CHECK_THROWS(scheme_from_json_text("{\"prob_cutoffs\": [0.7, 0.35], \"value_cutoffs\": [1, 2]}"));
}
