#pragma once

// Compensatory baselines (expected value, expected utility, prospect-style
// weighting) and the coefficient bridge expressing them as special cases of
// the substitution scheme.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dstruct/model.hpp"

namespace dstruct {

double expected_value(const Gamble& g);

// Strictly increasing value map with u(0) = 0, checked on a grid when the
// function is registered.
class UtilityFn {
public:
    UtilityFn(std::string name, std::function<double(double)> f);

    double operator()(double v) const { return f_(v); }
    const std::string& name() const { return name_; }

    static UtilityFn identity();
    static UtilityFn power(double alpha);  // v^alpha, 0 < alpha <= 1

private:
    std::string name_;
    std::function<double(double)> f_;
};

// Probability weighting map with w(0) = 0, w(1) = 1, nondecreasing.
class WeightFn {
public:
    WeightFn(std::string name, std::function<double(double)> f);

    double operator()(double p) const { return f_(p); }
    const std::string& name() const { return name_; }

    static WeightFn identity();
    // Inverse-S preset w(p) = p^g / (p^g + (1-p)^g)^(1/g).
    static WeightFn inverse_s(double gamma);

private:
    std::string name_;
    std::function<double(double)> f_;
};

double expected_utility(const Gamble& g, const UtilityFn& u);

// Gains only: sum of w(p) * u(v) over branches with nonzero reward.
double prospect_value(const Gamble& g, const WeightFn& w, const UtilityFn& u);

// Point values standing in for the category symbols when the bridge needs
// numbers: probability representatives default to (.3, .5, .7); value
// representatives default to the scheme's bin midpoints (top bin: twice its
// lower cutoff).
struct RepresentativeValues {
    double a = 0.3, b = 0.5, c = 0.7;
    double av = 0.0, bv = 0.0, cv = 0.0;

    static RepresentativeValues for_scheme(const SubstitutionScheme& scheme);
};

// Per-level coefficients tying each option's numbers to the shared category
// representatives: level L representative = k[L] * P_x = k_other[L] * P_y,
// and likewise m for values.
struct CoefficientSet {
    std::array<double, 3> k{}, k_other{};  // probability side, options x / y
    std::array<double, 3> m{}, m_other{};  // value side
    double p_x = 0.0, p_y = 0.0, v_x = 0.0, v_y = 0.0;

    double cell_product_x(int level) const;  // k*m*P*V, equals rep_p * rep_v
    double cell_product_y(int level) const;
};

CoefficientSet derive_coefficients(double p_x, double p_y, double v_x, double v_y,
                                   const RepresentativeValues& reps);

struct CellCheck {
    int level = 0;          // 0..2 for the a/b/c cells
    double product_x = 0.0; // the cell products being compared
    double product_y = 0.0;
    bool pass = false;
};

struct CorollaryReport {
    int which = 1;
    std::vector<CellCheck> cells;
    Outcome cell_order = Outcome::Indifferent;   // ordering implied by the cells
    Outcome model_order = Outcome::Indifferent;  // EV / EU / PT ordering
    bool passed = false;
};

// Verifies the collapse of the coefficient bridge on a single-branch pair:
//   1: unit coefficients -- every cell product equals P*V, cell comparison
//      is expected-value comparison
//   2: unit probability coefficients, free value coefficients from u --
//      cell comparison reproduces the expected-utility ordering
//   3: free coefficients from (w, u) -- cell comparison reproduces the
//      prospect ordering
CorollaryReport corollary_check(int which, const Gamble& x, const Gamble& y,
                                const UtilityFn& u = UtilityFn::identity(),
                                const WeightFn& w = WeightFn::identity());

}  // namespace dstruct
