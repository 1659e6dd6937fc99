#include "ngems/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngems/errors.hpp"

namespace ngems {

namespace {
constexpr double kProbSumTol = 1e-12;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> support,
                                             std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty()) {
        throw DataError("distribution: empty support");
    }
    if (support_.size() != probs_.size()) {
        throw DataError("distribution: support has " + std::to_string(support_.size()) +
                        " points but probs has " + std::to_string(probs_.size()));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (!std::isfinite(support_[i])) {
            throw DataError("distribution: non-finite support value");
        }
        if (i > 0 && !(support_[i] > support_[i - 1])) {
            throw DataError("distribution: support must be strictly increasing");
        }
        if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
            throw DataError("distribution: probabilities must be >= 0");
        }
        total += probs_[i];
    }
    if (std::abs(total - 1.0) > kProbSumTol) {
        throw DataError("distribution: probabilities sum to " + std::to_string(total) +
                        ", expected 1");
    }
}

EmpiricalDistribution EmpiricalDistribution::singleton(double value) {
    return EmpiricalDistribution({value}, {1.0});
}

EmpiricalDistribution EmpiricalDistribution::from_weighted(
    std::vector<std::pair<double, double>> points) {
    if (points.empty()) {
        throw DataError("distribution: no weighted points");
    }
    std::sort(points.begin(), points.end());
    std::vector<double> support;
    std::vector<double> weights;
    double total = 0.0;
    for (const auto& [value, w] : points) {
        if (!(w >= 0.0)) {
            throw DataError("distribution: negative weight " + std::to_string(w));
        }
        total += w;
        if (w == 0.0) continue;
        if (!support.empty() && support.back() == value) {
            weights.back() += w;
        } else {
            support.push_back(value);
            weights.push_back(w);
        }
    }
    if (!(total > 0.0)) {
        throw DataError("distribution: total weight must be positive");
    }
    for (double& w : weights) w /= total;
    // Renormalize away accumulation dust so the validating ctor's 1e-12 check
    // cannot trip on long inputs.
    double check = 0.0;
    for (double w : weights) check += w;
    for (double& w : weights) w /= check;
    return EmpiricalDistribution(std::move(support), std::move(weights));
}

double EmpiricalDistribution::expectation() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) acc += probs_[i] * support_[i];
    return acc;
}

double EmpiricalDistribution::sample(Rng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        acc += probs_[i];
        if (u < acc) return support_[i];
    }
    return support_.back();  // u landed in the rounding tail
}

namespace {

// Shared greedy quantile binner. Values must be sorted strictly increasing
// with positive masses. `closes(cum, b)` decides whether bin b is full after
// absorbing cumulative mass `cum`; integer and floating callers plug in exact
// and epsilon comparisons respectively.
template <typename Mass, typename Closes>
EmpiricalDistribution bin_quantiles(const std::vector<double>& values,
                                    const std::vector<Mass>& masses, double total,
                                    int n_states, Closes closes) {
    std::vector<double> support;
    std::vector<double> probs;
    support.reserve(static_cast<std::size_t>(n_states));
    probs.reserve(static_cast<std::size_t>(n_states));

    Mass cum{};
    double bin_mass = 0.0;
    double bin_weighted_sum = 0.0;
    int b = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        cum += masses[i];
        const double m = static_cast<double>(masses[i]);
        bin_mass += m;
        bin_weighted_sum += m * values[i];
        const bool last_value = (i + 1 == values.size());
        if (last_value || (b < n_states - 1 && closes(cum, b))) {
            support.push_back(bin_weighted_sum / bin_mass);
            probs.push_back(bin_mass / total);
            bin_mass = 0.0;
            bin_weighted_sum = 0.0;
            ++b;
        }
    }
    return EmpiricalDistribution::from_weighted([&] {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < support.size(); ++i) pts.emplace_back(support[i], probs[i]);
        return pts;
    }());
}

}  // namespace

EmpiricalDistribution discretize(const std::vector<double>& samples, int n_states) {
    if (n_states < 1) {
        throw ConfigError("discretize: n_states must be >= 1, got " + std::to_string(n_states));
    }
    if (samples.empty()) {
        throw DataError("discretize: empty sample set");
    }
    for (double s : samples) {
        if (!std::isfinite(s)) throw DataError("discretize: non-finite sample");
    }

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> values;
    std::vector<long long> counts;
    for (double s : sorted) {
        if (!values.empty() && values.back() == s) {
            ++counts.back();
        } else {
            values.push_back(s);
            counts.push_back(1);
        }
    }

    const long long total = static_cast<long long>(sorted.size());
    if (static_cast<int>(values.size()) <= n_states) {
        // Few enough distinct values: return the exact empirical distribution.
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < values.size(); ++i) {
            pts.emplace_back(values[i], static_cast<double>(counts[i]));
        }
        return EmpiricalDistribution::from_weighted(std::move(pts));
    }

    // Exact integer boundary test: bin b closes once cum/M >= (b+1)/n.
    const long long n = n_states;
    return bin_quantiles(values, counts, static_cast<double>(total), n_states,
                         [&](long long cum, int b) { return cum * n >= (b + 1) * total; });
}

EmpiricalDistribution discretize(const EmpiricalDistribution& dist, int n_states) {
    if (n_states < 1) {
        throw ConfigError("discretize: n_states must be >= 1, got " + std::to_string(n_states));
    }
    if (static_cast<int>(dist.size()) <= n_states) return dist;
    return bin_quantiles(dist.support(), dist.probs(), 1.0, n_states,
                         [&](double cum, int b) {
                             return cum + 1e-12 >= static_cast<double>(b + 1) / n_states;
                         });
}

}  // namespace ngems
