#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hexctl/fuzzy.hpp"

using namespace hexctl;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

RuleBase random_rule_base(std::mt19937& rng, int n_inputs, int n_rules) {
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    std::uniform_real_distribution<double> w(0.4, 2.0);
    std::uniform_real_distribution<double> b(-1.5, 1.5);
    RuleBase rb(n_inputs);
    for (int r = 0; r < n_rules; ++r) {
        Eigen::VectorXd center(n_inputs);
        for (int k = 0; k < n_inputs; ++k) center(k) = c(rng);
        FuzzyRule rule = make_isotropic_rule(center, w(rng));
        for (int k = 0; k <= n_inputs; ++k) rule.consequent(k) = b(rng);
        rb.add(std::move(rule));
    }
    return rb;
}

// Direct evaluation of the normalized TS sum, no log-space shift.
double naive_inference(const RuleBase& rb, const Eigen::VectorXd& z) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < rb.size(); ++i) {
        const FuzzyRule& r = rb.rule(i);
        const Eigen::VectorXd d = z - r.center;
        const double fire = std::exp(-d.dot(r.sigma_inv * d));
        const double local = r.consequent(0) + r.consequent.tail(z.size()).dot(z);
        num += fire * local;
        den += fire;
    }
    return num / den;
}

}  // namespace

TEST_CASE("firing strength: center fires with one, unit distance with 1/e") {
    FuzzyRule rule = make_isotropic_rule(vec2(0.3, -0.7), 1.0);
    CHECK(firing_strength(rule, vec2(0.3, -0.7)) == 1.0);
    CHECK(firing_strength(rule, vec2(1.3, -0.7)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("firing strength: hand-evaluated anisotropic quadratic form") {
    FuzzyRule rule = make_isotropic_rule(vec2(0.0, 0.0), 1.0);
    rule.sigma_inv = Eigen::Vector2d(4.0, 1.0).asDiagonal();
    rule.log_det_sigma = -std::log(4.0);
    CHECK(firing_strength(rule, vec2(0.5, 1.0)) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("firing strength: dimension mismatch is a contract error") {
    const FuzzyRule rule = make_isotropic_rule(vec2(0, 0), 1.0);
    Eigen::VectorXd z(3);
    z << 1, 2, 3;
    CHECK_THROWS_AS(firing_strength(rule, z), std::invalid_argument);
}

TEST_CASE("infer: single rule is its own consequent with unit weight") {
    RuleBase rb(2);
    FuzzyRule rule = make_isotropic_rule(vec2(0, 0), 1.0);
    rule.consequent << 0.5, 2.0, -1.0;
    rb.add(rule);
    const InferenceResult res = infer(rb, vec2(0.25, 0.5));
    CHECK(res.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.output == doctest::Approx(0.5 + 2.0 * 0.25 - 1.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("infer: identical consequents are invariant to the firing split") {
    RuleBase rb(2);
    for (double cx : {-1.0, 2.0}) {
        FuzzyRule rule = make_isotropic_rule(vec2(cx, 0.0), 0.8);
        rule.consequent << 0.3, 1.0, 0.5;
        rb.add(rule);
    }
    const Eigen::VectorXd z = vec2(0.7, -0.4);
    const double expected = 0.3 + 1.0 * z(0) + 0.5 * z(1);
    CHECK(infer(rb, z).output == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("infer matches the brute-force oracle on random rule bases") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> zin(-2.5, 2.5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 4;
        const RuleBase rb = random_rule_base(rng, n, 1 + trial % 10);
        Eigen::VectorXd z(n);
        for (int k = 0; k < n; ++k) z(k) = zin(rng);
        const InferenceResult res = infer(rb, z);
        CHECK(std::abs(res.output - naive_inference(rb, z)) < 1e-12);
        CHECK(std::abs(res.weights.sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("infer: output is a convex combination of the local models") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> zin(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const RuleBase rb = random_rule_base(rng, 2, 4);
        const Eigen::VectorXd z = vec2(zin(rng), zin(rng));
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < rb.size(); ++i) {
            const double local =
                rb.rule(i).consequent(0) + rb.rule(i).consequent.tail(2).dot(z);
            lo = std::min(lo, local);
            hi = std::max(hi, local);
        }
        const double out = infer(rb, z).output;
        CHECK(out >= lo - 1e-12);
        CHECK(out <= hi + 1e-12);
    }
}

TEST_CASE("infer: regressor contracted with stacked consequents equals the output") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> zin(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        const RuleBase rb = random_rule_base(rng, n, 2 + trial % 6);
        Eigen::VectorXd z(n);
        for (int k = 0; k < n; ++k) z(k) = zin(rng);
        const InferenceResult res = infer(rb, z);
        Eigen::VectorXd omega(static_cast<Eigen::Index>(rb.size()) * (n + 1));
        for (int i = 0; i < rb.size(); ++i)
            omega.segment(static_cast<Eigen::Index>(i) * (n + 1), n + 1) = rb.rule(i).consequent;
        CHECK(std::abs(omega.dot(res.regressor) - res.output) < 1e-12);
    }
}

TEST_CASE("infer: scaling every inverse covariance keeps the winner") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> zin(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        RuleBase rb = random_rule_base(rng, 2, 5);
        const Eigen::VectorXd z = vec2(zin(rng), zin(rng));
        int w1 = 0;
        infer(rb, z).weights.maxCoeff(&w1);
        for (int i = 0; i < rb.size(); ++i) rb.rule(i).sigma_inv *= 3.5;
        int w2 = 0;
        infer(rb, z).weights.maxCoeff(&w2);
        CHECK(w1 == w2);
    }
}

TEST_CASE("infer: all-underflow inputs fall back to a nearest-rule one-hot") {
    RuleBase rb(2);
    rb.add(make_isotropic_rule(vec2(0.0, 0.0), 0.01));
    rb.add(make_isotropic_rule(vec2(1.0, 0.0), 0.01));
    const InferenceResult res = infer(rb, vec2(400.0, 0.0));  // far beyond both
    CHECK(res.weights.sum() == 1.0);
    CHECK(res.weights(1) == 1.0);  // nearest center
    CHECK(res.weights(0) == 0.0);
}

TEST_CASE("infer: empty rule base is an explicit error") {
    RuleBase rb(2);
    CHECK_THROWS_AS(infer(rb, vec2(0, 0)), EmptyRuleBaseError);
}

TEST_CASE("rule dump lists every rule with covariance and consequents") {
    RuleBase rb(2);
    FuzzyRule rule = make_isotropic_rule(vec2(0.5, -0.25), 2.0);
    rule.consequent << 1.0, 2.0, 3.0;
    rb.add(rule);
    std::ostringstream os;
    write_rule_dump(os, rb);
    const std::string text = os.str();
    CHECK(text.find("rule,center_0,center_1,cov_00,cov_11,cov_01,b_0,b_1,b_2") == 0);
    CHECK(text.find(",4,") != std::string::npos);  // isotropic variance 2^2
}
