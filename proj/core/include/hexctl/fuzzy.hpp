#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "hexctl/errors.hpp"

namespace hexctl {

// Takagi-Sugeno rule with a multivariate-Gaussian premise and a first-order
// consequent.  The inverse covariance is the stored form (inference consumes
// it directly); log det(Sigma) is maintained alongside so volume ratios never
// touch raw determinants.
struct FuzzyRule {
    Eigen::VectorXd center;         // Theta, length n
    Eigen::MatrixXd sigma_inv;      // Sigma^-1, n x n SPD
    double log_det_sigma = 0.0;     // log det(Sigma)
    Eigen::VectorXd consequent;     // b, length n+1, bias first
};

// Isotropic rule: Sigma = width^2 * I, zero consequent.
FuzzyRule make_isotropic_rule(const Eigen::VectorXd& center, double width);

class RuleBase {
public:
    explicit RuleBase(int n_inputs);

    int input_dim() const { return n_inputs_; }
    int size() const { return static_cast<int>(rules_.size()); }
    bool empty() const { return rules_.empty(); }

    const FuzzyRule& rule(int i) const { return rules_.at(static_cast<size_t>(i)); }
    FuzzyRule& rule(int i) { return rules_.at(static_cast<size_t>(i)); }
    const std::vector<FuzzyRule>& rules() const { return rules_; }

    void add(FuzzyRule r);
    // Removes the given rule indices (any order, no duplicates).
    void remove(std::vector<int> indices);

private:
    int n_inputs_;
    std::vector<FuzzyRule> rules_;
};

struct InferenceResult {
    double output = 0.0;        // y_hat
    Eigen::VectorXd firing;     // R_i, floored at 1e-300
    Eigen::VectorXd weights;    // psi_i, sums to 1
    Eigen::VectorXd regressor;  // psi_ext: stacked psi_i * (1, Z), length (n+1)*R
};

// exp(-(Z-Theta)^T Sigma^-1 (Z-Theta)), floored at 1e-300.
double firing_strength(const FuzzyRule& rule, const Eigen::VectorXd& z);

// Normalized TS inference.  Weights are computed with a log-space shift; when
// every firing underflows, the nearest rule (smallest Mahalanobis distance)
// gets weight one.  Throws EmptyRuleBaseError on an empty rule base.
InferenceResult infer(const RuleBase& rb, const Eigen::VectorXd& z);

// Plain-text dump: one CSV row per rule with center, covariance diagonal,
// upper-triangle off-diagonals and consequent (see header line in the output).
void write_rule_dump(std::ostream& os, const RuleBase& rb);

inline constexpr double kFiringFloor = 1e-300;

}  // namespace hexctl
