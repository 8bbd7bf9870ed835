#pragma once

#include "tripletcv/gaussian.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Cross-validation harness: analytic variances against the Monte-Carlo
// sampler on randomized (state, observable) pairs, plus the sampler's
// rejection path for unphysical covariances.
namespace tripletcv::validate {

using gaussian::GaussianState;
using gaussian::QuadratureObservable;

struct CheckResult {
    std::string name;
    double analytic = 0.0;
    double sampled = 0.0;
    double std_error = 0.0;
    double deviation_se = 0.0;  // |sampled - analytic| in standard errors
    bool passed = false;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_passed = true;
};

/// Random physical state: a few squeezers, rotations, beamsplitters and
/// loss channels on a 2- or 3-mode vacuum.
inline GaussianState random_state(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mode_count(2, 3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> r_dist(0.0, 1.2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = mode_count(rng);
    GaussianState state = gaussian::make_vacuum(n);
    for (int m = 0; m < n; ++m)
        state = gaussian::apply_squeezer(state, {m, r_dist(rng), angle(rng)});
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 2; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i == j) j = (j + 1) % n;
        state = gaussian::apply_beamsplitter(state, {i, j, unit(rng), angle(rng)});
    }
    state = gaussian::apply_loss(state, {pick(rng), 0.5 + 0.5 * unit(rng)});
    return state;
}

inline QuadratureObservable random_observable(std::mt19937_64& rng, int n_modes) {
    std::uniform_int_distribution<int> term_count(1, 3);
    std::uniform_int_distribution<int> pick(0, n_modes - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> weight(-2.0, 2.0);
    QuadratureObservable obs;
    const int k = term_count(rng);
    for (int i = 0; i < k; ++i) {
        double w = weight(rng);
        if (std::abs(w) < 0.1) w = 0.1;  // keep the observable non-degenerate
        obs.terms.push_back({pick(rng), angle(rng), w});
    }
    return obs;
}

/// Runs n_cases randomized oracle comparisons at the given sample count.
/// A check passes when the analytic and sampled variances agree within
/// max_se standard errors.
inline Report run(std::uint64_t seed, std::int64_t n_samples, int n_cases = 50,
                  double max_se = 5.0) {
    Report report;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n_cases; ++i) {
        const GaussianState state = random_state(rng);
        const QuadratureObservable obs = random_observable(rng, state.n_modes);
        const double analytic = gaussian::variance(state, obs);
        const auto stats = gaussian::sample_monte_carlo(state, obs, n_samples, rng());
        CheckResult check;
        check.name = "mc-oracle-" + std::to_string(i);
        check.analytic = analytic;
        check.sampled = stats.variance;
        check.std_error = stats.std_error;
        check.deviation_se = std::abs(stats.variance - analytic) / stats.std_error;
        check.passed = check.deviation_se <= max_se;
        report.checks.push_back(check);
        report.all_passed = report.all_passed && check.passed;
    }

    // rejection path: a tampered covariance with a negative eigenvalue
    // must be refused by the sampler
    CheckResult rejection;
    rejection.name = "psd-rejection";
    GaussianState bad = gaussian::make_vacuum(1);
    bad.cov(0, 0) = -0.1;
    try {
        (void)gaussian::sample_monte_carlo(bad, QuadratureObservable::single(0, 0.0), 1000, seed);
        rejection.passed = false;
    } catch (const std::domain_error&) {
        rejection.passed = true;
    }
    report.checks.push_back(rejection);
    report.all_passed = report.all_passed && rejection.passed;
    return report;
}

}  // namespace tripletcv::validate
