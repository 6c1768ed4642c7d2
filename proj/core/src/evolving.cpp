#include "hexctl/evolving.hpp"

#include <algorithm>
#include <cmath>

namespace hexctl {

ErrorStats update_error_stats(const ErrorStats& st, double abs_error) {
    ErrorStats out;
    out.n = st.n + 1;
    out.prev_mean = st.mean;
    out.prev_variance = st.variance;
    const double frac = static_cast<double>(out.n - 1) / static_cast<double>(out.n);
    const double dev = abs_error - st.mean;
    out.mean = frac * st.mean + abs_error / static_cast<double>(out.n);
    out.variance = frac * st.variance + dev * dev / static_cast<double>(out.n);
    return out;
}

void EvolutionConfig::validate() const {
    if (!(growth_threshold > 0.0 && growth_threshold < 1.0))
        throw ConfigError("evolution: growth_threshold must be in (0,1)");
    if (!(prune_delta >= 0.0001 && prune_delta <= 1.0))
        throw ConfigError("evolution: prune_delta must be in [0.0001, 1]");
    if (!(winner_rate > 0.0 && winner_rate < 1.0))
        throw ConfigError("evolution: winner_rate must be in (0,1)");
    if (!(logdet_clip > 0.0 && logdet_clip < 1.0))
        throw ConfigError("evolution: logdet_clip must be in (0,1)");
    if (!(overlap_factor > 0.0)) throw ConfigError("evolution: overlap_factor must be > 0");
    if (!(first_rule_width > 0.0)) throw ConfigError("evolution: first_rule_width must be > 0");
    if (!(min_width > 0.0)) throw ConfigError("evolution: min_width must be > 0");
    if (firing_window < 1) throw ConfigError("evolution: firing_window must be >= 1");
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::Grow: return "grow";
        case EventKind::Prune: return "prune";
        case EventKind::AdaptWinner: return "adapt-winner";
    }
    return "?";
}

StructureLearner::StructureLearner(EvolutionConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void StructureLearner::observe_error(double abs_error) {
    stats_ = update_error_stats(stats_, abs_error);
}

double StructureLearner::candidate_width(const RuleBase& rb, const Eigen::VectorXd& z) const {
    if (rb.empty()) return cfg_.first_rule_width;
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rb.size(); ++i)
        nearest = std::min(nearest, (z - rb.rule(i).center).norm());
    return std::max(cfg_.overlap_factor * nearest, cfg_.min_width);
}

double StructureLearner::significance(const RuleBase& rb, double candidate_log_det) const {
    const double n = static_cast<double>(rb.input_dim());
    const double ke = cfg_.det_exponent_inverse ? 1.0 / n : n;

    double peak = ke * candidate_log_det;
    for (int i = 0; i < rb.size(); ++i) peak = std::max(peak, ke * rb.rule(i).log_det_sigma);

    const double cand = std::exp(ke * candidate_log_det - peak);
    double total = cand;
    for (int i = 0; i < rb.size(); ++i)
        total += std::exp(ke * rb.rule(i).log_det_sigma - peak);
    return cand / total;
}

GrowthDecision StructureLearner::growth_check(const RuleBase& rb, const Eigen::VectorXd& z) const {
    if (rb.empty()) return GrowthDecision{true, 1.0};
    const double now = stats_.mean + stats_.variance;
    const double before = stats_.prev_mean + stats_.prev_variance;
    if (!(now - before > 0.0)) return GrowthDecision{false, 0.0};

    const double width = candidate_width(rb, z);
    const double cand_log_det = 2.0 * rb.input_dim() * std::log(width);
    const double d_sig = significance(rb, cand_log_det);
    return GrowthDecision{d_sig >= cfg_.growth_threshold, d_sig};
}

AddedRule StructureLearner::add_rule(RuleBase& rb, const Eigen::VectorXd& z) {
    int donor = -1;
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rb.size(); ++i) {
        const double d = (z - rb.rule(i).center).norm();
        if (d < nearest) {
            nearest = d;
            donor = i;
        }
    }
    FuzzyRule rule = make_isotropic_rule(z, candidate_width(rb, z));
    if (donor >= 0) rule.consequent = rb.rule(donor).consequent;
    rb.add(std::move(rule));
    windows_.emplace_back();
    return AddedRule{rb.size() - 1, donor};
}

double StructureLearner::eta(int rule_index) const {
    if (cfg_.eta_volume_only) return 1.0;
    if (windows_[rule_index].empty()) return 1.0;  // newborn rules are protected
    auto mean_of = [](const std::deque<double>& w) {
        double s = 0.0;
        for (double v : w) s += v;
        return s / static_cast<double>(w.size());
    };
    double peak = 0.0;
    for (const auto& w : windows_)
        if (!w.empty()) peak = std::max(peak, mean_of(w));
    if (peak <= 0.0) return 1.0;
    return mean_of(windows_[rule_index]) / peak;
}

std::vector<PruneCandidate> StructureLearner::prune_check(const RuleBase& rb) const {
    std::vector<PruneCandidate> out;
    if (rb.size() <= 1) return out;

    const double n = static_cast<double>(rb.input_dim());
    const double ke = cfg_.det_exponent_inverse ? 1.0 / n : n;
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < rb.size(); ++i) peak = std::max(peak, ke * rb.rule(i).log_det_sigma);
    double total = 0.0;
    for (int i = 0; i < rb.size(); ++i)
        total += std::exp(ke * rb.rule(i).log_det_sigma - peak);

    std::vector<double> influence(rb.size());
    for (int i = 0; i < rb.size(); ++i)
        influence[i] = eta(i) * std::exp(ke * rb.rule(i).log_det_sigma - peak) / total;

    for (int i = 0; i < rb.size(); ++i)
        if (influence[i] <= cfg_.prune_cut()) out.push_back(PruneCandidate{i, influence[i]});

    if (static_cast<int>(out.size()) == rb.size()) {
        // Keep the most influential rule; the base never empties.
        int keep = 0;
        for (size_t k = 1; k < out.size(); ++k)
            if (out[k].influence > out[keep].influence) keep = static_cast<int>(k);
        out.erase(out.begin() + keep);
    }
    return out;
}

void StructureLearner::remove_rules(RuleBase& rb, const std::vector<int>& indices) {
    rb.remove(indices);
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end(), std::greater<int>());
    for (int idx : sorted) windows_.erase(windows_.begin() + idx);
}

int StructureLearner::gart_update_winner(RuleBase& rb, const Eigen::VectorXd& z) {
    if (rb.empty()) throw EmptyRuleBaseError{};

    int winner = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < rb.size(); ++i) {
        const Eigen::VectorXd d = z - rb.rule(i).center;
        const double dist = -d.dot(rb.rule(i).sigma_inv * d);
        if (dist > best) {
            best = dist;
            winner = i;
        }
    }

    FuzzyRule& rule = rb.rule(winner);
    const int n = rb.input_dim();
    const double beta = cfg_.winner_rate;
    const Eigen::VectorXd delta = z - rule.center;
    rule.center += beta * delta;

    Eigen::MatrixXd sigma = rule.sigma_inv.inverse();
    sigma = 0.5 * (sigma + sigma.transpose());
    Eigen::MatrixXd updated = (1.0 - beta) * sigma + beta * delta * delta.transpose();
    updated = 0.5 * (updated + updated.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(updated);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(cfg_.min_width * cfg_.min_width);

    double log_det = 0.0;
    for (int i = 0; i < n; ++i) log_det += std::log(lam(i));

    // Limited grow/shrink: clip the volume change, scaling all eigenvalues.
    const double change = log_det - rule.log_det_sigma;
    const double clipped = std::clamp(change, -cfg_.logdet_clip, cfg_.logdet_clip);
    if (clipped != change) lam *= std::exp((clipped - change) / n);

    rule.log_det_sigma += clipped;
    rule.sigma_inv = eig.eigenvectors() * lam.cwiseInverse().asDiagonal() *
                     eig.eigenvectors().transpose();
    rule.sigma_inv = 0.5 * (rule.sigma_inv + rule.sigma_inv.transpose());
    return winner;
}

void StructureLearner::record_firing(const Eigen::VectorXd& weights) {
    if (weights.size() != static_cast<Eigen::Index>(windows_.size()))
        throw std::invalid_argument("record_firing: weight count does not match rule count");
    for (size_t i = 0; i < windows_.size(); ++i) {
        windows_[i].push_back(weights(static_cast<Eigen::Index>(i)));
        if (static_cast<int>(windows_[i].size()) > cfg_.firing_window) windows_[i].pop_front();
    }
}

}  // namespace hexctl
