#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ngems/rng.hpp"

namespace ngems {

// Finite discrete distribution over a scalar (power in kW throughout this
// project). Support is strictly increasing; probabilities are non-negative
// and sum to 1 within 1e-12. Everything downstream (expectations in the
// Bellman backup, bounds for the constraint calculus, sampling in the
// simulator) runs off this one representation.
class EmpiricalDistribution {
public:
    // Validating constructor; throws DataError if the invariants fail.
    EmpiricalDistribution(std::vector<double> support, std::vector<double> probs);

    // Point mass at value.
    static EmpiricalDistribution singleton(double value);

    // Build from unsorted (value, weight) points: sorts, merges equal values,
    // drops zero-weight points, normalizes weights. Throws DataError if no
    // positive weight remains.
    static EmpiricalDistribution from_weighted(std::vector<std::pair<double, double>> points);

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    double expectation() const;
    double min() const { return support_.front(); }
    double max() const { return support_.back(); }

    // Inverse-CDF sampling. Consumes exactly one uniform draw per call, which
    // keeps common-random-number streams aligned across policies.
    double sample(Rng& rng) const;

    bool operator==(const EmpiricalDistribution&) const = default;

private:
    std::vector<double> support_;
    std::vector<double> probs_;
};

// Reduce a raw sample set to at most n_states support points by quantile
// binning: sorted distinct values are grouped into contiguous bins of
// near-equal sample mass; each bin becomes one support point at its
// probability-weighted mean with the bin's empirical mass. If the number of
// distinct values is <= n_states the exact empirical distribution is
// returned. Heavily skewed data can fill bins early and yield fewer than
// n_states points. Throws DataError on empty samples, ConfigError on
// n_states < 1.
EmpiricalDistribution discretize(const std::vector<double>& samples, int n_states);

// Same reduction applied to an existing distribution's probability mass
// (used to compress a predicted measurement distribution after mapping it
// through the plant model).
EmpiricalDistribution discretize(const EmpiricalDistribution& dist, int n_states);

}  // namespace ngems
