#include "dstruct/compensatory.hpp"

#include <algorithm>
#include <cmath>

namespace dstruct {

double expected_value(const Gamble& g) {
    double ev = 0.0;
    for (const Branch& b : g.branches()) ev += b.probability * b.reward;
    return ev;
}

namespace {

// registration grids
const std::vector<double> kValueGrid = {0.0, 1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0,
                                        5.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e8};

void check_utility(const std::string& name, const std::function<double(double)>& f) {
    if (std::abs(f(0.0)) > 1e-12)
        throw std::invalid_argument("utility " + name + ": u(0) must be 0");
    double prev = f(kValueGrid.front());
    for (std::size_t i = 1; i < kValueGrid.size(); ++i) {
        const double cur = f(kValueGrid[i]);
        if (!std::isfinite(cur) || cur <= prev)
            throw std::invalid_argument("utility " + name + ": not strictly increasing");
        prev = cur;
    }
}

void check_weight(const std::string& name, const std::function<double(double)>& f) {
    if (std::abs(f(0.0)) > 1e-9 || std::abs(f(1.0) - 1.0) > 1e-9)
        throw std::invalid_argument("weighting " + name + ": needs w(0)=0 and w(1)=1");
    double prev = f(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double cur = f(i / 100.0);
        if (!std::isfinite(cur) || cur < prev)
            throw std::invalid_argument("weighting " + name + ": not monotone");
        prev = cur;
    }
}

}  // namespace

UtilityFn::UtilityFn(std::string name, std::function<double(double)> f)
    : name_(std::move(name)), f_(std::move(f)) {
    check_utility(name_, f_);
}

UtilityFn UtilityFn::identity() {
    return UtilityFn("identity", [](double v) { return v; });
}

UtilityFn UtilityFn::power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("power utility: alpha must be in (0,1]");
    return UtilityFn("power(" + std::to_string(alpha) + ")",
                     [alpha](double v) { return std::pow(v, alpha); });
}

WeightFn::WeightFn(std::string name, std::function<double(double)> f)
    : name_(std::move(name)), f_(std::move(f)) {
    check_weight(name_, f_);
}

WeightFn WeightFn::identity() {
    return WeightFn("identity", [](double p) { return p; });
}

WeightFn WeightFn::inverse_s(double gamma) {
    return WeightFn("inverse-s(" + std::to_string(gamma) + ")", [gamma](double p) {
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return 1.0;
        const double pg = std::pow(p, gamma);
        const double qg = std::pow(1.0 - p, gamma);
        return pg / std::pow(pg + qg, 1.0 / gamma);
    });
}

double expected_utility(const Gamble& g, const UtilityFn& u) {
    double eu = 0.0;
    for (const Branch& b : g.branches()) eu += b.probability * u(b.reward);
    return eu;
}

double prospect_value(const Gamble& g, const WeightFn& w, const UtilityFn& u) {
    double pv = 0.0;
    for (const Branch& b : g.branches())
        if (b.reward != 0.0) pv += w(b.probability) * u(b.reward);
    return pv;
}

RepresentativeValues RepresentativeValues::for_scheme(const SubstitutionScheme& scheme) {
    RepresentativeValues r;
    r.av = 0.5 * scheme.v_ab();
    r.bv = 0.5 * (scheme.v_ab() + scheme.v_bc());
    r.cv = 2.0 * scheme.v_bc();
    return r;
}

double CoefficientSet::cell_product_x(int level) const {
    return k[level] * m[level] * p_x * v_x;
}
double CoefficientSet::cell_product_y(int level) const {
    return k_other[level] * m_other[level] * p_y * v_y;
}

CoefficientSet derive_coefficients(double p_x, double p_y, double v_x, double v_y,
                                   const RepresentativeValues& reps) {
    for (double q : {p_x, p_y, v_x, v_y})
        if (!(q > 0.0) || !std::isfinite(q))
            throw std::domain_error("derive_coefficients: inputs must be strictly positive");

    CoefficientSet c;
    c.p_x = p_x;
    c.p_y = p_y;
    c.v_x = v_x;
    c.v_y = v_y;
    const std::array<double, 3> rp{reps.a, reps.b, reps.c};
    const std::array<double, 3> rv{reps.av, reps.bv, reps.cv};
    for (int l = 0; l < 3; ++l) {
        c.k[l] = rp[l] / p_x;
        c.k_other[l] = rp[l] / p_y;
        c.m[l] = rv[l] / v_x;
        c.m_other[l] = rv[l] / v_y;
    }
    return c;
}

namespace {

// representative branch of an option: its best live branch
const Branch& head_branch(const Gamble& g) {
    const Branch* best = nullptr;
    for (const Branch& b : g.branches()) {
        if (b.probability <= 0.0) continue;
        if (!best || b.reward > best->reward ||
            (b.reward == best->reward && b.probability > best->probability))
            best = &b;
    }
    return *best;
}

Outcome order_of(double x, double y) {
    const double tol = 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x - y) <= tol) return Outcome::Indifferent;
    return x > y ? Outcome::X : Outcome::Y;
}

}  // namespace

namespace {

// ratio giving coeff * denom == num, tolerating u(0) = 0 at reward 0
double coeff_ratio(double num, double denom) { return denom == 0.0 ? 1.0 : num / denom; }

}  // namespace

CorollaryReport corollary_check(int which, const Gamble& x, const Gamble& y,
                                const UtilityFn& u, const WeightFn& w) {
    if (which < 1 || which > 3) throw std::invalid_argument("corollary_check: which must be 1..3");

    const Branch& bx = head_branch(x);
    const Branch& by = head_branch(y);

    CoefficientSet coeffs;
    coeffs.p_x = bx.probability;
    coeffs.p_y = by.probability;
    coeffs.v_x = bx.reward;
    coeffs.v_y = by.reward;
    coeffs.k.fill(1.0);
    coeffs.k_other.fill(1.0);
    coeffs.m.fill(1.0);
    coeffs.m_other.fill(1.0);

    // what the cell products must reproduce under the regime
    double target_x = 0.0, target_y = 0.0, model_x = 0.0, model_y = 0.0;
    switch (which) {
    case 1:
        target_x = bx.probability * bx.reward;
        target_y = by.probability * by.reward;
        model_x = expected_value(x);
        model_y = expected_value(y);
        break;
    case 2:
        coeffs.m.fill(coeff_ratio(u(bx.reward), bx.reward));
        coeffs.m_other.fill(coeff_ratio(u(by.reward), by.reward));
        target_x = bx.probability * u(bx.reward);
        target_y = by.probability * u(by.reward);
        model_x = expected_utility(x, u);
        model_y = expected_utility(y, u);
        break;
    default:
        coeffs.k.fill(coeff_ratio(w(bx.probability), bx.probability));
        coeffs.k_other.fill(coeff_ratio(w(by.probability), by.probability));
        coeffs.m.fill(coeff_ratio(u(bx.reward), bx.reward));
        coeffs.m_other.fill(coeff_ratio(u(by.reward), by.reward));
        target_x = w(bx.probability) * u(bx.reward);
        target_y = w(by.probability) * u(by.reward);
        model_x = prospect_value(x, w, u);
        model_y = prospect_value(y, w, u);
        break;
    }

    CorollaryReport report;
    report.which = which;
    report.model_order = order_of(model_x, model_y);
    report.cell_order = order_of(coeffs.cell_product_x(0), coeffs.cell_product_y(0));

    for (int level = 0; level < 3; ++level) {
        CellCheck cell;
        cell.level = level;
        cell.product_x = coeffs.cell_product_x(level);
        cell.product_y = coeffs.cell_product_y(level);
        const double tol_x = 1e-12 * std::max(1.0, std::abs(target_x));
        const double tol_y = 1e-12 * std::max(1.0, std::abs(target_y));
        cell.pass = std::abs(cell.product_x - target_x) <= tol_x &&
                    std::abs(cell.product_y - target_y) <= tol_y &&
                    order_of(cell.product_x, cell.product_y) == report.model_order;
        report.cells.push_back(cell);
    }
    report.passed = report.cell_order == report.model_order &&
                    std::all_of(report.cells.begin(), report.cells.end(),
                                [](const CellCheck& c) { return c.pass; });
    return report;
}

}  // namespace dstruct
