#pragma once

#include "tripletcv/gaussian.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Numerical model of the polarization-entanglement setup: two Kerr-type
// squeezed inputs, a slightly asymmetric entangling beamsplitter with an
// interference-visibility loss model, and dark-plane Stokes measurements
// combined with a variable electronic gain.
//
// In the dark S1-S2 plane the Stokes observables of a bright circularly
// polarized beam behave exactly like the quadratures of a single vacuum
// mode, so S(theta) maps one-to-one onto a rotated quadrature X(theta).
namespace tripletcv::experiment {

using gaussian::GaussianState;
using gaussian::QuadratureObservable;
using gaussian::kVacuumVariance;

inline double db_to_variance(double db) { return std::pow(10.0, db / 10.0) * kVacuumVariance; }

struct KerrInputSpec {
    double squeezing_db = 0.0;      // <= 0
    double antisqueezing_db = 0.0;  // >= 0
    double theta_sq = 0.0;          // squeezing-ellipse skew, radians
};

enum class OutputMode { C = 0, D = 1 };

enum class StokesReference { squeezed, antisqueezed };  // theta_sq or theta_sq + pi/2

struct StokesObservable {
    OutputMode mode = OutputMode::C;
    double angle = 0.0;  // dark-plane angle from the declared reference, radians
    StokesReference reference = StokesReference::squeezed;
};

enum class CombinerSign { sum, difference };

struct CombinerSpec {
    double gain = 1.0;
    CombinerSign sign = CombinerSign::sum;
};

struct ExperimentConfig {
    KerrInputSpec input_a;
    KerrInputSpec input_b;
    double bs_transmittance = 0.5;
    double relative_phase = M_PI / 2.0;
    double visibility = 1.0;  // interference visibility in [0,1]
    CombinerSpec combiner;
    // echoed into outputs, never used in computation
    std::map<std::string, double> metadata;
};

/// Squeezed thermal state with independently set variances along the
/// squeezed and antisqueezed directions; accommodates the strongly
/// impure Kerr inputs without a microscopic fiber model.
inline GaussianState build_kerr_state(const KerrInputSpec& spec) {
    if (spec.squeezing_db > 0.0 || spec.antisqueezing_db < 0.0)
        throw std::invalid_argument("build_kerr_state: need squeezing_db <= 0 <= antisqueezing_db");
    if (-spec.squeezing_db > spec.antisqueezing_db + 1e-12)
        throw std::invalid_argument(
            "build_kerr_state: |squeezing_db| must not exceed antisqueezing_db");
    const double v_sq = db_to_variance(spec.squeezing_db);
    const double v_asq = db_to_variance(spec.antisqueezing_db);
    if (v_sq * v_asq < 1.0 / 16.0 - 1e-12)
        throw std::invalid_argument("build_kerr_state: variances violate the uncertainty bound");
    const double c = std::cos(spec.theta_sq), s = std::sin(spec.theta_sq);
    Eigen::Matrix2d g;
    g << c, -s, s, c;
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = v_sq;
    d(1, 1) = v_asq;
    return GaussianState(1, Eigen::VectorXd::Zero(2), g * d * g.transpose());
}

/// Joint two-mode state of the beamsplitter outputs C and D. Imperfect
/// interference is modeled by mixing each input with vacuum on a virtual
/// beamsplitter of amplitude transmittance V (power transmittance V^2)
/// before the entangling beamsplitter.
inline GaussianState entangle(const ExperimentConfig& config) {
    if (config.visibility < 0.0 || config.visibility > 1.0)
        throw std::invalid_argument("entangle: visibility must be in [0,1]");
    const GaussianState in_a = build_kerr_state(config.input_a);
    const GaussianState in_b = build_kerr_state(config.input_b);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
    cov.block<2, 2>(0, 0) = in_a.cov;
    cov.block<2, 2>(2, 2) = in_b.cov;
    GaussianState joint(2, Eigen::VectorXd::Zero(4), cov);

    const double eta = config.visibility * config.visibility;
    joint = gaussian::apply_loss(joint, {0, eta});
    joint = gaussian::apply_loss(joint, {1, eta});
    return gaussian::apply_beamsplitter(
        joint, {0, 1, config.bs_transmittance, config.relative_phase});
}

/// Dark-plane Stokes observable as a rotated quadrature of the
/// corresponding output mode. theta_sq fixes the frame.
inline QuadratureObservable to_quadrature(const StokesObservable& obs, double theta_sq,
                                          double weight = 1.0) {
    const double reference =
        theta_sq + (obs.reference == StokesReference::antisqueezed ? M_PI / 2.0 : 0.0);
    return QuadratureObservable::single(static_cast<int>(obs.mode), reference + obs.angle, weight);
}

/// Inverse of to_quadrature for single-term observables.
inline StokesObservable from_quadrature(const QuadratureObservable& obs, double theta_sq,
                                        StokesReference reference) {
    if (obs.terms.size() != 1)
        throw std::invalid_argument("from_quadrature: expected a single-term observable");
    const auto& t = obs.terms.front();
    StokesObservable s;
    s.mode = static_cast<OutputMode>(t.mode_index);
    s.reference = reference;
    s.angle = t.phase - theta_sq -
              (reference == StokesReference::antisqueezed ? M_PI / 2.0 : 0.0);
    return s;
}

struct CorrelationResult {
    double variance_linear = 0.0;
    double variance_db = 0.0;
};

/// Shot-noise reference for S_C + g S_D: two vacuum modes, the second
/// weighted by g. Equals 0.5 at unit gain.
inline double shot_reference(double gain) {
    return (1.0 + gain * gain) * kVacuumVariance;
}

inline CorrelationResult measure_correlation(const GaussianState& state,
                                             const StokesObservable& obs_c,
                                             const StokesObservable& obs_d,
                                             const CombinerSpec& comb, double theta_sq) {
    const double g = (comb.sign == CombinerSign::sum ? comb.gain : -comb.gain);
    QuadratureObservable q = to_quadrature(obs_c, theta_sq, 1.0);
    const QuadratureObservable qd = to_quadrature(obs_d, theta_sq, g);
    q.terms.push_back(qd.terms.front());
    const double v = gaussian::variance(state, q);
    return {v, gaussian::to_db(v, shot_reference(comb.gain))};
}

enum class SweepMode { fixed_phi2, mirror };

struct SweepRow {
    double phi1_deg = 0.0;
    double phi2_deg = 0.0;
    double variance_linear = 0.0;
    double variance_db = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

/// Angle sweep of the correlated variance, measured from the
/// antisqueezing reference. fixed_phi2 scans phi1 with phi2 held;
/// mirror scans phi1 = -phi, phi2 = +phi.
inline SweepResult sweep(const ExperimentConfig& config, SweepMode mode, double phi2_fixed_deg,
                         double start_deg, double stop_deg, double step_deg) {
    if (!(step_deg > 0.0)) throw std::invalid_argument("sweep: step must be positive");
    const double span = stop_deg - start_deg;
    const int n_steps = static_cast<int>(std::floor(std::abs(span) / step_deg + 1e-9));
    const double dir = (span >= 0.0) ? 1.0 : -1.0;

    const GaussianState state = entangle(config);
    const double theta_sq = config.input_a.theta_sq;
    SweepResult result;
    for (int i = 0; i <= n_steps; ++i) {
        const double v = start_deg + dir * step_deg * i;
        double phi1_deg, phi2_deg;
        if (mode == SweepMode::fixed_phi2) {
            phi1_deg = v;
            phi2_deg = phi2_fixed_deg;
        } else {
            phi1_deg = -v;
            phi2_deg = v;
        }
        const StokesObservable oc{OutputMode::C, deg_to_rad(phi1_deg),
                                  StokesReference::antisqueezed};
        const StokesObservable od{OutputMode::D, deg_to_rad(phi2_deg),
                                  StokesReference::antisqueezed};
        const CorrelationResult r =
            measure_correlation(state, oc, od, config.combiner, theta_sq);
        result.rows.push_back({phi1_deg, phi2_deg, r.variance_linear, r.variance_db});
    }
    if (result.rows.empty()) throw std::invalid_argument("sweep: empty range");
    return result;
}

struct GainOptimum {
    double gain = 0.0;
    double variance_linear = 0.0;
};

/// Closed-form minimizer of Var(S_C +- g S_D) over the gain g.
inline GainOptimum optimize_gain(const GaussianState& state, const StokesObservable& obs_c,
                                 const StokesObservable& obs_d, CombinerSign sign,
                                 double theta_sq) {
    const QuadratureObservable qc = to_quadrature(obs_c, theta_sq);
    const QuadratureObservable qd = to_quadrature(obs_d, theta_sq);
    const Eigen::VectorXd wc = gaussian::coefficient_vector(qc, state.n_modes);
    const Eigen::VectorXd wd = gaussian::coefficient_vector(qd, state.n_modes);
    const double var_d = wd.dot(state.cov * wd);
    if (var_d < 1e-300)
        throw std::domain_error("optimize_gain: degenerate input, Var(S_D) is zero");
    const double cov_cd = wc.dot(state.cov * wd);
    const double g = (sign == CombinerSign::sum ? -1.0 : 1.0) * cov_cd / var_d;
    const double sgn = (sign == CombinerSign::sum ? 1.0 : -1.0);
    const Eigen::VectorXd w = wc + sgn * g * wd;
    return {g, w.dot(state.cov * w)};
}

struct NoisePoint {
    double angle_deg = 0.0;
    double variance_db = 0.0;
};

/// Single-beam noise of mode C or D versus dark-plane angle from the
/// squeezing reference, in dB relative to shot noise.
inline std::vector<NoisePoint> individual_noise(const GaussianState& state, OutputMode mode,
                                                const std::vector<double>& angle_grid_deg,
                                                double theta_sq) {
    std::vector<NoisePoint> points;
    points.reserve(angle_grid_deg.size());
    for (double deg : angle_grid_deg) {
        const StokesObservable obs{mode, deg_to_rad(deg), StokesReference::squeezed};
        const double v = gaussian::variance(state, to_quadrature(obs, theta_sq));
        points.push_back({deg, gaussian::to_db(v, kVacuumVariance)});
    }
    return points;
}

}  // namespace tripletcv::experiment
