#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "hexctl/fuzzy.hpp"

namespace hexctl {

// Recursive mean/variance of the absolute tracking error; the previous pair
// is retained for the growth gate (the rule base may only grow while the
// error statistic is worsening).
struct ErrorStats {
    long n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double prev_mean = 0.0;
    double prev_variance = 0.0;
};

ErrorStats update_error_stats(const ErrorStats& st, double abs_error);

struct EvolutionConfig {
    double growth_threshold = 0.1;   // g, on the volume-ratio significance
    double prune_delta = 0.1;        // delta in [0.0001, 1]; prune cut k_e = 0.1 * delta
    double winner_rate = 0.05;       // beta_w, winner-takes-all premise learning rate
    double logdet_clip = 0.05;       // max |Delta log det Sigma| per winner update
    double overlap_factor = 0.5;     // new-rule width = overlap * distance to nearest center
    double first_rule_width = 0.5;   // isotropic width of the very first rule
    double min_width = 0.05;         // eigenvalue floor = min_width^2
    int firing_window = 200;         // samples for the average-firing estimate
    bool eta_volume_only = false;    // true: eta_i == 1 (pure volume-ratio pruning)
    bool det_exponent_inverse = false;  // true: det^(1/k) instead of det^k

    double prune_cut() const { return 0.1 * prune_delta; }
    void validate() const;  // throws ConfigError
};

enum class EventKind { Grow, Prune, AdaptWinner };

const char* to_string(EventKind k);

struct EvolutionEvent {
    double t = 0.0;
    EventKind kind = EventKind::Grow;
    int rule_index = 0;
    double metric = 0.0;  // D_sig for grow, E_inf for prune, winner firing otherwise
};

struct GrowthDecision {
    bool grow = false;
    double significance = 0.0;  // D_sig of the hypothetical new rule
};

struct AddedRule {
    int index = 0;
    int donor = -1;  // nearest existing rule whose consequent was copied, -1 if none
};

struct PruneCandidate {
    int index = 0;
    double influence = 0.0;  // E_inf
};

// Online evolution of a rule base: growth by datum significance, pruning by
// rule influence, premise adaptation by a clip-bounded winner update.  Holds
// the error statistics and the per-rule firing windows; all structural edits
// to the rule base go through this class.
class StructureLearner {
public:
    explicit StructureLearner(EvolutionConfig cfg);

    const EvolutionConfig& config() const { return cfg_; }
    const ErrorStats& stats() const { return stats_; }

    void observe_error(double abs_error);

    // Empty rule base always grows.  Otherwise the error-increase gate is
    // checked first; only then is the volume-ratio significance compared to
    // the growth threshold.
    GrowthDecision growth_check(const RuleBase& rb, const Eigen::VectorXd& z) const;

    AddedRule add_rule(RuleBase& rb, const Eigen::VectorXd& z);

    // Rules whose influence falls at or below the prune cut.  Never selects
    // the last remaining rule; if every rule qualifies the strongest one is
    // kept.
    std::vector<PruneCandidate> prune_check(const RuleBase& rb) const;

    void remove_rules(RuleBase& rb, const std::vector<int>& indices);

    // Moves the best-matching rule toward the sample; the covariance tracks
    // the sample outer product with the same rate, eigenvalues floored, and
    // the log-determinant change clipped to +-logdet_clip per update.
    // Returns the winner index.
    int gart_update_winner(RuleBase& rb, const Eigen::VectorXd& z);

    // Feeds one normalized firing vector into the sliding windows.
    void record_firing(const Eigen::VectorXd& weights);

private:
    double candidate_width(const RuleBase& rb, const Eigen::VectorXd& z) const;
    double significance(const RuleBase& rb, double candidate_log_det) const;
    double eta(int rule_index) const;

    EvolutionConfig cfg_;
    ErrorStats stats_;
    std::vector<std::deque<double>> windows_;  // one per rule, newest at back
};

}  // namespace hexctl
