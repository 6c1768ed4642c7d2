#include "hexctl/fuzzy.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace hexctl {

FuzzyRule make_isotropic_rule(const Eigen::VectorXd& center, double width) {
    const int n = static_cast<int>(center.size());
    FuzzyRule r;
    r.center = center;
    r.sigma_inv = Eigen::MatrixXd::Identity(n, n) / (width * width);
    r.log_det_sigma = 2.0 * n * std::log(width);
    r.consequent = Eigen::VectorXd::Zero(n + 1);
    return r;
}

RuleBase::RuleBase(int n_inputs) : n_inputs_(n_inputs) {
    if (n_inputs < 1) throw std::invalid_argument("RuleBase: n_inputs must be >= 1");
}

void RuleBase::add(FuzzyRule r) {
    if (r.center.size() != n_inputs_ || r.sigma_inv.rows() != n_inputs_ ||
        r.sigma_inv.cols() != n_inputs_ || r.consequent.size() != n_inputs_ + 1)
        throw std::invalid_argument("RuleBase::add: rule dimensions do not match n_inputs");
    rules_.push_back(std::move(r));
}

void RuleBase::remove(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end(), std::greater<int>());
    for (int idx : indices) {
        if (idx < 0 || idx >= size()) throw std::out_of_range("RuleBase::remove: bad index");
        rules_.erase(rules_.begin() + idx);
    }
}

namespace {

double mahalanobis_sq(const FuzzyRule& rule, const Eigen::VectorXd& z) {
    const Eigen::VectorXd d = z - rule.center;
    return d.dot(rule.sigma_inv * d);
}

}  // namespace

double firing_strength(const FuzzyRule& rule, const Eigen::VectorXd& z) {
    if (z.size() != rule.center.size())
        throw std::invalid_argument("firing_strength: input dimension mismatch");
    return std::max(std::exp(-mahalanobis_sq(rule, z)), kFiringFloor);
}

InferenceResult infer(const RuleBase& rb, const Eigen::VectorXd& z) {
    if (rb.empty()) throw EmptyRuleBaseError{};
    if (z.size() != rb.input_dim()) throw std::invalid_argument("infer: input dimension mismatch");

    const int n = rb.input_dim();
    const int count = rb.size();
    InferenceResult res;
    res.firing.resize(count);
    res.weights.resize(count);
    res.regressor = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count) * (n + 1));

    Eigen::VectorXd dist_sq(count);
    for (int i = 0; i < count; ++i) {
        dist_sq(i) = mahalanobis_sq(rb.rule(i), z);
        res.firing(i) = std::max(std::exp(-dist_sq(i)), kFiringFloor);
    }

    int nearest = 0;
    dist_sq.minCoeff(&nearest);

    static const double kUnderflowDist = -std::log(kFiringFloor);
    if (dist_sq(nearest) > kUnderflowDist) {
        // Every firing underflowed: nearest-rule one-hot keeps the weights
        // well defined far from all rules.
        res.weights.setZero();
        res.weights(nearest) = 1.0;
    } else {
        // Log-space shift by the largest exponent before normalizing.
        for (int i = 0; i < count; ++i) res.weights(i) = std::exp(dist_sq(nearest) - dist_sq(i));
        res.weights /= res.weights.sum();
    }

    for (int i = 0; i < count; ++i) {
        const FuzzyRule& rule = rb.rule(i);
        const double local = rule.consequent(0) + rule.consequent.tail(n).dot(z);
        res.output += res.weights(i) * local;
        res.regressor(static_cast<Eigen::Index>(i) * (n + 1)) = res.weights(i);
        res.regressor.segment(static_cast<Eigen::Index>(i) * (n + 1) + 1, n) = res.weights(i) * z;
    }
    return res;
}

void write_rule_dump(std::ostream& os, const RuleBase& rb) {
    const int n = rb.input_dim();
    os << "rule";
    for (int k = 0; k < n; ++k) os << ",center_" << k;
    for (int k = 0; k < n; ++k) os << ",cov_" << k << k;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) os << ",cov_" << r << c;
    for (int k = 0; k <= n; ++k) os << ",b_" << k;
    os << "\n";

    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ',' << buf;
    };
    for (int i = 0; i < rb.size(); ++i) {
        const FuzzyRule& rule = rb.rule(i);
        const Eigen::MatrixXd cov = rule.sigma_inv.inverse();
        os << i;
        for (int k = 0; k < n; ++k) put(rule.center(k));
        for (int k = 0; k < n; ++k) put(cov(k, k));
        for (int r = 0; r < n; ++r)
            for (int c = r + 1; c < n; ++c) put(cov(r, c));
        for (int k = 0; k <= n; ++k) put(rule.consequent(k));
        os << "\n";
    }
}

}  // namespace hexctl
