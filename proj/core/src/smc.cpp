#include "hexctl/smc.hpp"

#include <algorithm>
#include <cmath>

namespace hexctl {

double sliding_value(double e, double e_dot, double e_int, const SlidingState& ss) {
    if (ss.alpha1 < ss.alpha_floor)
        throw std::logic_error("sliding_value: alpha1 below floor; enforce the floor upstream");
    return e + (ss.alpha2 / ss.alpha1) * e_dot + (ss.alpha3 / ss.alpha1) * e_int;
}

void adapt_consequents(SlidingState& ss, const Eigen::VectorXd& regressor, double s, double dt) {
    if (regressor.size() != ss.omega.size() || ss.gain.rows() != ss.omega.size())
        throw std::invalid_argument("adapt_consequents: dimension mismatch; resize on rule change");

    const Eigen::VectorXd g_psi = ss.gain * regressor;
    ss.omega -= dt * ss.alpha1 * s * g_psi;

    // Exact one-step integral of G_dot = -G psi psi^T G (Sherman-Morrison on
    // G^-1 + dt psi psi^T); explicit Euler could lose positive definiteness.
    const double denom = 1.0 + dt * regressor.dot(g_psi);
    ss.gain -= (dt / denom) * g_psi * g_psi.transpose();
    ss.gain = 0.5 * (ss.gain + ss.gain.transpose()).eval();

    if (!ss.omega.allFinite()) throw NumericError("adapt_consequents: non-finite omega");
    if (!ss.gain.allFinite()) throw NumericError("adapt_consequents: non-finite gain matrix");
}

void grow_rule_block(SlidingState& ss, int block_size, int donor_rule) {
    const Eigen::Index old_dim = ss.omega.size();
    const Eigen::Index new_dim = old_dim + block_size;

    Eigen::VectorXd omega = Eigen::VectorXd::Zero(new_dim);
    omega.head(old_dim) = ss.omega;
    if (donor_rule >= 0) {
        const Eigen::Index at = static_cast<Eigen::Index>(donor_rule) * block_size;
        if (at + block_size > old_dim)
            throw std::out_of_range("grow_rule_block: donor index out of range");
        omega.tail(block_size) = ss.omega.segment(at, block_size);
    }

    Eigen::MatrixXd gain = Eigen::MatrixXd::Zero(new_dim, new_dim);
    gain.topLeftCorner(old_dim, old_dim) = ss.gain;
    gain.bottomRightCorner(block_size, block_size) =
        ss.init_gain * Eigen::MatrixXd::Identity(block_size, block_size);

    ss.omega = std::move(omega);
    ss.gain = std::move(gain);
}

void drop_rule_blocks(SlidingState& ss, int block_size, std::vector<int> rule_indices) {
    std::sort(rule_indices.begin(), rule_indices.end(), std::greater<int>());
    for (int rule : rule_indices) {
        const Eigen::Index at = static_cast<Eigen::Index>(rule) * block_size;
        const Eigen::Index dim = ss.omega.size();
        if (rule < 0 || at + block_size > dim)
            throw std::out_of_range("drop_rule_blocks: rule index out of range");
        const Eigen::Index tail = dim - at - block_size;

        Eigen::VectorXd omega(dim - block_size);
        omega.head(at) = ss.omega.head(at);
        omega.tail(tail) = ss.omega.tail(tail);

        Eigen::MatrixXd gain(dim - block_size, dim - block_size);
        gain.topLeftCorner(at, at) = ss.gain.topLeftCorner(at, at);
        gain.topRightCorner(at, tail) = ss.gain.topRightCorner(at, tail);
        gain.bottomLeftCorner(tail, at) = ss.gain.bottomLeftCorner(tail, at);
        gain.bottomRightCorner(tail, tail) = ss.gain.bottomRightCorner(tail, tail);

        ss.omega = std::move(omega);
        ss.gain = std::move(gain);
    }
}

void adapt_sliding_params(SlidingState& ss, double s, double e, double e_dot, double dt) {
    ss.alpha1 = std::clamp(ss.alpha1 + dt * ss.gamma1 * std::abs(s), ss.alpha_floor,
                           ss.alpha1_ceiling);
    ss.alpha2 = std::min(ss.alpha2 + dt * ss.gamma2 * std::abs(s * e_dot), ss.alpha2_ceiling);
    ss.alpha3 = std::min(ss.alpha3 + dt * ss.gamma3 * std::abs(s * e), ss.alpha3_ceiling);
}

double robustifying_term(double s, const SlidingState& ss) {
    if (!(ss.boundary_layer > 0.0))
        throw std::logic_error("robustifying_term: boundary layer must be > 0");
    return -ss.robust_gain * std::clamp(s / ss.boundary_layer, -1.0, 1.0);
}

}  // namespace hexctl
