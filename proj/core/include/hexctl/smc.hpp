#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hexctl/errors.hpp"

namespace hexctl {

// Sliding-mode adaptation state: the sliding-surface coefficients, the
// concatenated consequent vector omega (one (n+1) block per rule), and the
// positive-definite adaptation gain matrix G.
//
// Consequents follow  omega_dot = -alpha1 * G * psi * s  and the gain follows
// the contraction  G_dot = -G psi psi^T G, integrated exactly per step via
// its rank-one closed form (which keeps G SPD at any dt).
struct SlidingState {
    double alpha1 = 1e-6;
    double alpha2 = 1e-6;
    double alpha3 = 0.0;
    double error_integral = 0.0;  // [m*s]

    Eigen::VectorXd omega;  // length (n+1) * R
    Eigen::MatrixXd gain;   // G, SPD

    // Learning rates and bounds of the self-organizing sliding parameters.
    double gamma1 = 0.3;
    double gamma2 = 0.3;
    double gamma3 = 1.0;
    double alpha_floor = 1e-6;
    double alpha1_ceiling = 1.0;
    double alpha2_ceiling = 1.0;
    double alpha3_ceiling = 0.5;

    double init_gain = 100.0;      // g0 for each new diagonal block of G
    double robust_gain = 0.2;      // k_r [rad]
    double boundary_layer = 0.5;   // phi_b, saturation width of the robust term
};

// s = e + (alpha2/alpha1) e_dot + (alpha3/alpha1) e_int.
// Throws std::logic_error when alpha1 reads below its floor.
double sliding_value(double e, double e_dot, double e_int, const SlidingState& ss);

// One adaptation step: omega -= dt * alpha1 * G * psi * s (with the
// pre-update G), then G -= dt * G psi psi^T G / (1 + dt * psi^T G psi).
void adapt_consequents(SlidingState& ss, const Eigen::VectorXd& regressor, double s, double dt);

// Appends one rule block: omega gains a copy of the donor block (zeros when
// donor < 0), G gains a decoupled diagonal block init_gain * I.
void grow_rule_block(SlidingState& ss, int block_size, int donor_rule);

// Deletes the blocks of the given rules (rows and columns of G included).
void drop_rule_blocks(SlidingState& ss, int block_size, std::vector<int> rule_indices);

// alpha1 += dt*gamma1*|s|, alpha2 += dt*gamma2*|s*e_dot|, alpha3 += dt*gamma3*|s*e|,
// each clamped to its ceiling; alpha1 additionally floored.
void adapt_sliding_params(SlidingState& ss, double s, double e, double e_dot, double dt);

// u_r = -k_r * sat(s / phi_b), |u_r| <= k_r.
double robustifying_term(double s, const SlidingState& ss);

}  // namespace hexctl
