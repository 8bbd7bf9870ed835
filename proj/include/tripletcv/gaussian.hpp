#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <stdexcept>
#include <vector>

// Multimode Gaussian states in the convention a = X + iP, [X,P] = i/2,
// vacuum quadrature variance 1/4. Phase-space ordering is interleaved:
// (X1, P1, X2, P2, ...).
namespace tripletcv::gaussian {

inline constexpr double kVacuumVariance = 0.25;

/// Standard symplectic form for the interleaved ordering.
inline Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

struct GaussianState {
    int n_modes = 0;
    Eigen::VectorXd mean;  // length 2n
    Eigen::MatrixXd cov;   // 2n x 2n, symmetric

    GaussianState() = default;
    GaussianState(int n, Eigen::VectorXd mu, Eigen::MatrixXd sigma)
        : n_modes(n), mean(std::move(mu)), cov(std::move(sigma)) {
        if (n_modes < 1) throw std::invalid_argument("GaussianState: n_modes must be >= 1");
        if (mean.size() != 2 * n_modes || cov.rows() != 2 * n_modes || cov.cols() != 2 * n_modes)
            throw std::invalid_argument("GaussianState: dimension mismatch");
        if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("GaussianState: covariance not symmetric");
        // keep exactly symmetric against accumulated round-off
        cov = 0.5 * (cov + cov.transpose().eval());
    }
};

inline GaussianState make_vacuum(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("make_vacuum: n_modes must be >= 1");
    return GaussianState(n_modes, Eigen::VectorXd::Zero(2 * n_modes),
                         kVacuumVariance * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

/// Smallest eigenvalue of cov + (i/4)Omega; physical states have >= 0
/// up to round-off.
inline double min_uncertainty_eigenvalue(const GaussianState& s) {
    const Eigen::MatrixXcd omega = symplectic_form(s.n_modes).cast<std::complex<double>>();
    Eigen::MatrixXcd h = s.cov.cast<std::complex<double>>() + std::complex<double>(0.0, 0.25) * omega;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline bool is_physical(const GaussianState& s, double tol = 1e-10) {
    return min_uncertainty_eigenvalue(s) >= -tol;
}

/// Symplectic eigenvalues of the covariance matrix (moduli of the
/// eigenvalues of i*Omega*cov). Vacuum gives 1/4 in every mode.
inline Eigen::VectorXd symplectic_eigenvalues(const GaussianState& s) {
    const Eigen::MatrixXcd m =
        std::complex<double>(0.0, 1.0) * symplectic_form(s.n_modes).cast<std::complex<double>>() *
        s.cov.cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    Eigen::VectorXd nu(s.n_modes);
    std::vector<double> mags(2 * s.n_modes);
    for (int i = 0; i < 2 * s.n_modes; ++i) mags[i] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    // eigenvalues come in +/- pairs; take one of each
    for (int i = 0; i < s.n_modes; ++i) nu(i) = 0.5 * (mags[2 * i] + mags[2 * i + 1]);
    return nu;
}

inline double purity(const GaussianState& s) {
    const Eigen::VectorXd nu = symplectic_eigenvalues(s);
    double p = 1.0;
    for (int i = 0; i < s.n_modes; ++i) p *= kVacuumVariance / nu(i);
    return p;
}

struct SqueezerSpec {
    int mode_index = 0;
    double r = 0.0;      // >= 0
    double angle = 0.0;  // orientation of the squeezed quadrature
};

struct BeamsplitterSpec {
    int mode_a = 0;
    int mode_b = 1;
    double transmittance = 0.5;
    double relative_phase = 0.0;  // phase shift applied to mode_b before mixing
};

struct LossChannel {
    int mode_index = 0;
    double transmittance = 1.0;  // power transmittance in [0,1]
};

struct QuadratureTerm {
    int mode_index = 0;
    double phase = 0.0;  // X(phi) = cos(phi) X + sin(phi) P
    double weight = 1.0;
};

struct QuadratureObservable {
    std::vector<QuadratureTerm> terms;

    static QuadratureObservable single(int mode, double phase, double weight = 1.0) {
        return QuadratureObservable{{{mode, phase, weight}}};
    }
};

/// Expansion coefficients of the observable in (X1, P1, X2, P2, ...).
inline Eigen::VectorXd coefficient_vector(const QuadratureObservable& obs, int n_modes) {
    if (obs.terms.empty()) throw std::invalid_argument("QuadratureObservable: no terms");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * n_modes);
    for (const auto& t : obs.terms) {
        if (t.mode_index < 0 || t.mode_index >= n_modes)
            throw std::invalid_argument("QuadratureObservable: mode index out of range");
        w(2 * t.mode_index) += t.weight * std::cos(t.phase);
        w(2 * t.mode_index + 1) += t.weight * std::sin(t.phase);
    }
    return w;
}

/// Linear phase-space map x -> matrix*x + displacement. Only used for
/// unitary (symplectic) transformations; loss goes through LossChannel.
struct SymplecticOp {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd displacement;
};

inline double symplectic_defect(const Eigen::MatrixXd& m, int n_modes) {
    const Eigen::MatrixXd omega = symplectic_form(n_modes);
    return (m * omega * m.transpose() - omega).cwiseAbs().maxCoeff();
}

namespace detail {

// 2x2 phase-space rotation for a -> e^{i theta} a.
inline Eigen::Matrix2d rotation2(double theta) {
    Eigen::Matrix2d g;
    g << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return g;
}

// Embed a complex mode-operator matrix u (a' = sum u_jk a_k) into the
// real quadrature representation: each entry becomes [[Re,-Im],[Im,Re]].
inline Eigen::MatrixXd embed_complex(const Eigen::MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    Eigen::MatrixXd m(2 * n, 2 * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            m(2 * j, 2 * k) = u(j, k).real();
            m(2 * j, 2 * k + 1) = -u(j, k).imag();
            m(2 * j + 1, 2 * k) = u(j, k).imag();
            m(2 * j + 1, 2 * k + 1) = u(j, k).real();
        }
    return m;
}

}  // namespace detail

inline SymplecticOp squeezer_op(int n_modes, const SqueezerSpec& spec) {
    if (spec.mode_index < 0 || spec.mode_index >= n_modes)
        throw std::invalid_argument("squeezer_op: mode index out of range");
    if (spec.r < 0.0) throw std::invalid_argument("squeezer_op: r must be >= 0");
    if (spec.r > 25.0)
        std::cerr << "tripletcv: warning: squeezing r=" << spec.r
                  << " gives covariance condition number ~e^{4r}; results may be ill-conditioned\n";
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = std::exp(-spec.r);
    d(1, 1) = std::exp(spec.r);
    const Eigen::Matrix2d g = detail::rotation2(spec.angle);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    m.block<2, 2>(2 * spec.mode_index, 2 * spec.mode_index) = g * d * g.transpose();
    return {m, Eigen::VectorXd::Zero(2 * n_modes)};
}

inline SymplecticOp rotation_op(int n_modes, int mode_index, double theta) {
    if (mode_index < 0 || mode_index >= n_modes)
        throw std::invalid_argument("rotation_op: mode index out of range");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    m.block<2, 2>(2 * mode_index, 2 * mode_index) = detail::rotation2(theta);
    return {m, Eigen::VectorXd::Zero(2 * n_modes)};
}

// Convention: a phase shift e^{i phi} on mode_b followed by the real
// mixing a_C = t a_A + s b, a_D = s a_A - t b with t = sqrt(T),
// s = sqrt(1-T). At T = 1/2, phi = pi/2 this is exactly
// a_{C,D} = (a_A +- i a_B)/sqrt(2).
inline SymplecticOp beamsplitter_op(int n_modes, const BeamsplitterSpec& spec) {
    if (spec.mode_a < 0 || spec.mode_a >= n_modes || spec.mode_b < 0 || spec.mode_b >= n_modes)
        throw std::invalid_argument("beamsplitter_op: mode index out of range");
    if (spec.mode_a == spec.mode_b)
        throw std::invalid_argument("beamsplitter_op: modes must be distinct");
    if (spec.transmittance < 0.0 || spec.transmittance > 1.0)
        throw std::invalid_argument("beamsplitter_op: transmittance must be in [0,1]");
    const double t = std::sqrt(spec.transmittance);
    const double s = std::sqrt(1.0 - spec.transmittance);
    const std::complex<double> ph = std::polar(1.0, spec.relative_phase);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
    u(spec.mode_a, spec.mode_a) = t;
    u(spec.mode_a, spec.mode_b) = s * ph;
    u(spec.mode_b, spec.mode_a) = s;
    u(spec.mode_b, spec.mode_b) = -t * ph;
    return {detail::embed_complex(u), Eigen::VectorXd::Zero(2 * n_modes)};
}

inline GaussianState apply(const GaussianState& state, const SymplecticOp& op) {
    if (op.matrix.rows() != 2 * state.n_modes)
        throw std::invalid_argument("apply: operator dimension mismatch");
    return GaussianState(state.n_modes, op.matrix * state.mean + op.displacement,
                         op.matrix * state.cov * op.matrix.transpose());
}

inline GaussianState apply_squeezer(const GaussianState& state, const SqueezerSpec& spec) {
    return apply(state, squeezer_op(state.n_modes, spec));
}

inline GaussianState apply_rotation(const GaussianState& state, int mode_index, double theta) {
    return apply(state, rotation_op(state.n_modes, mode_index, theta));
}

inline GaussianState apply_beamsplitter(const GaussianState& state, const BeamsplitterSpec& spec) {
    return apply(state, beamsplitter_op(state.n_modes, spec));
}

/// Gaussian loss channel: mixing the mode with vacuum on a beamsplitter
/// of power transmittance eta and tracing out the vacuum port.
inline GaussianState apply_loss(const GaussianState& state, const LossChannel& ch) {
    if (ch.mode_index < 0 || ch.mode_index >= state.n_modes)
        throw std::invalid_argument("apply_loss: mode index out of range");
    if (ch.transmittance < 0.0 || ch.transmittance > 1.0)
        throw std::invalid_argument("apply_loss: transmittance must be in [0,1]");
    const double sq = std::sqrt(ch.transmittance);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * state.n_modes, 2 * state.n_modes);
    m(2 * ch.mode_index, 2 * ch.mode_index) = sq;
    m(2 * ch.mode_index + 1, 2 * ch.mode_index + 1) = sq;
    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(2 * state.n_modes, 2 * state.n_modes);
    noise(2 * ch.mode_index, 2 * ch.mode_index) = (1.0 - ch.transmittance) * kVacuumVariance;
    noise(2 * ch.mode_index + 1, 2 * ch.mode_index + 1) =
        (1.0 - ch.transmittance) * kVacuumVariance;
    return GaussianState(state.n_modes, m * state.mean, m * state.cov * m.transpose() + noise);
}

inline double variance(const GaussianState& state, const QuadratureObservable& obs) {
    const Eigen::VectorXd w = coefficient_vector(obs, state.n_modes);
    return w.dot(state.cov * w);
}

inline double mean_value(const GaussianState& state, const QuadratureObservable& obs) {
    return coefficient_vector(obs, state.n_modes).dot(state.mean);
}

inline double to_db(double variance_value, double shot_reference) {
    if (!(variance_value > 0.0) || !(shot_reference > 0.0))
        throw std::invalid_argument("to_db: inputs must be strictly positive");
    return 10.0 * std::log10(variance_value / shot_reference);
}

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;  // standard error of the variance estimate
};

/// Monte-Carlo estimate of the observable statistics, independent of the
/// analytic variance() path. Deterministic for a given seed.
inline SampleStats sample_monte_carlo(const GaussianState& state, const QuadratureObservable& obs,
                                      std::int64_t n_samples, std::uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("sample_monte_carlo: need at least 2 samples");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state.cov);
    const double scale = std::max(1.0, state.cov.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        throw std::domain_error("sample_monte_carlo: covariance is not positive semidefinite");
    const Eigen::MatrixXd root =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

    // Sample only the observable value: w.(mean + root z) with z ~ N(0,I).
    const Eigen::VectorXd w = coefficient_vector(obs, state.n_modes);
    const Eigen::VectorXd wr = root.transpose() * w;
    const double mu = w.dot(state.mean);
    const int dim = static_cast<int>(wr.size());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double m = 0.0, m2 = 0.0;  // Welford
    for (std::int64_t i = 0; i < n_samples; ++i) {
        double v = mu;
        for (int k = 0; k < dim; ++k) v += wr(k) * normal(rng);
        const double delta = v - m;
        m += delta / static_cast<double>(i + 1);
        m2 += delta * (v - m);
    }
    SampleStats stats;
    stats.mean = m;
    stats.variance = m2 / static_cast<double>(n_samples - 1);
    // SE of the sample variance of a normal: s^2 sqrt(2/(n-1))
    stats.std_error = stats.variance * std::sqrt(2.0 / static_cast<double>(n_samples - 1));
    return stats;
}

}  // namespace tripletcv::gaussian
