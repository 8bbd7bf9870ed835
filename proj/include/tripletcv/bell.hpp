#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

// Exact two-qubit algebra: axis-angle Bloch rotations, the four Bell
// states, their U(x)U / U(x)U* invariance pattern, and the geometry of
// perfectly correlated measurement directions.
namespace tripletcv::bell {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using State = Eigen::Vector4cd;  // basis |00>, |01>, |10>, |11>

enum class BellLabel { psi_minus, psi_plus, phi_minus, phi_plus };

inline const char* to_string(BellLabel label) {
    switch (label) {
        case BellLabel::psi_minus: return "psi-";
        case BellLabel::psi_plus: return "psi+";
        case BellLabel::phi_minus: return "phi-";
        case BellLabel::phi_plus: return "phi+";
    }
    throw std::invalid_argument("unknown BellLabel");
}

inline BellLabel bell_label_from_string(const std::string& s) {
    if (s == "psi-") return BellLabel::psi_minus;
    if (s == "psi+") return BellLabel::psi_plus;
    if (s == "phi-") return BellLabel::phi_minus;
    if (s == "phi+") return BellLabel::phi_plus;
    throw std::invalid_argument("unknown Bell state label: " + s);
}

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::psi_minus, BellLabel::psi_plus, BellLabel::phi_minus, BellLabel::phi_plus};

inline State bell_state(BellLabel label) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    State psi = State::Zero();
    switch (label) {
        case BellLabel::psi_minus:
            psi(1) = inv_sqrt2;
            psi(2) = -inv_sqrt2;
            break;
        case BellLabel::psi_plus:
            psi(1) = inv_sqrt2;
            psi(2) = inv_sqrt2;
            break;
        case BellLabel::phi_minus:
            psi(0) = inv_sqrt2;
            psi(3) = -inv_sqrt2;
            break;
        case BellLabel::phi_plus:
            psi(0) = inv_sqrt2;
            psi(3) = inv_sqrt2;
            break;
    }
    return psi;
}

struct RotationSpec {
    double theta = 0.0;  // axis polar angle
    double phi = 0.0;    // axis azimuth
    double alpha = 0.0;  // rotation angle about the axis
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    BlochVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("BlochVector: zero vector");
        return {x / n, y / n, z / n};
    }
};

inline const Matrix2c& pauli_x() {
    static const Matrix2c s = (Matrix2c() << 0, 1, 1, 0).finished();
    return s;
}
inline const Matrix2c& pauli_y() {
    static const Matrix2c s = (Matrix2c() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return s;
}
inline const Matrix2c& pauli_z() {
    static const Matrix2c s = (Matrix2c() << 1, 0, 0, -1).finished();
    return s;
}

/// exp(-i (alpha/2) n.sigma) for the axis n(theta, phi).
inline Matrix2c rotation_unitary(const RotationSpec& spec) {
    const double nx = std::sin(spec.theta) * std::cos(spec.phi);
    const double ny = std::sin(spec.theta) * std::sin(spec.phi);
    const double nz = std::cos(spec.theta);
    const double c = std::cos(spec.alpha / 2.0);
    const double s = std::sin(spec.alpha / 2.0);
    Matrix2c u = c * Matrix2c::Identity() -
                 Complex(0, 1) * s * (nx * pauli_x() + ny * pauli_y() + nz * pauli_z());
    return u;
}

enum class Axis { x, y, z };

inline Matrix2c axis_unitary(Axis axis, double alpha) {
    switch (axis) {
        case Axis::x: return rotation_unitary({M_PI / 2.0, 0.0, alpha});
        case Axis::y: return rotation_unitary({M_PI / 2.0, M_PI / 2.0, alpha});
        case Axis::z: return rotation_unitary({0.0, 0.0, alpha});
    }
    throw std::invalid_argument("unknown axis");
}

inline bool is_unitary(const Matrix2c& u, double tol = 1e-10) {
    return (u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() < tol;
}

inline State apply_local(const State& state, const Matrix2c& u_a, const Matrix2c& u_b) {
    if (!is_unitary(u_a) || !is_unitary(u_b))
        throw std::invalid_argument("apply_local: matrices must be unitary");
    State out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Complex acc = 0.0;
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) acc += u_a(a, ap) * u_b(b, bp) * state(2 * ap + bp);
            out(2 * a + b) = acc;
        }
    return out;
}

/// |<a|b>|^2; global phase is physically irrelevant.
inline double fidelity(const State& a, const State& b) {
    return std::norm(a.dot(b));
}

// The six joint transformations of the invariance table, in column order
// Ux(x)Ux, Uy(x)Uy, Uz(x)Uz, Ux(x)Ux*, Uy(x)Uy*, Uz(x)Uz*.
inline constexpr std::array<const char*, 6> kTransformNames = {
    "UxUx", "UyUy", "UzUz", "UxUx*", "UyUy*", "UzUz*"};

struct InvarianceTable {
    // rows in kAllBellLabels order, columns in kTransformNames order
    std::array<std::array<bool, 6>, 4> invariant{};
    // for each "no" entry, an angle at which fidelity drops below 0.999
    std::array<std::array<double, 6>, 4> witness_alpha{};
    std::array<std::array<double, 6>, 4> witness_fidelity{};
};

inline double transformed_fidelity(BellLabel label, int column, double alpha) {
    const Axis axis = static_cast<Axis>(column % 3);
    const Matrix2c u = axis_unitary(axis, alpha);
    // The starred transformation is the reverse rotation about the same
    // axis. For x and z this equals the elementwise conjugate; for the
    // real-valued y rotation the two differ.
    const Matrix2c u2 = (column < 3) ? u : axis_unitary(axis, -alpha);
    const State psi = bell_state(label);
    return fidelity(psi, apply_local(psi, u, u2));
}

/// Tests each Bell state against the six transformations over a 24-point
/// angle grid plus 10 pseudo-random angles. "Invariant" requires fidelity
/// above 1-1e-10 at every angle.
inline InvarianceTable invariance_table() {
    InvarianceTable table;
    std::mt19937_64 rng(0x5eedful);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);
    std::array<double, 34> alphas{};
    for (int i = 0; i < 24; ++i) alphas[i] = 2.0 * M_PI * (i + 1) / 24.0;
    for (int i = 24; i < 34; ++i) alphas[i] = uniform(rng);

    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 6; ++col) {
            bool invariant = true;
            double worst_f = 1.0, worst_alpha = 0.0;
            for (double alpha : alphas) {
                const double f = transformed_fidelity(kAllBellLabels[row], col, alpha);
                if (f < worst_f) {
                    worst_f = f;
                    worst_alpha = alpha;
                }
                if (f < 1.0 - 1e-10) invariant = false;
            }
            table.invariant[row][col] = invariant;
            table.witness_alpha[row][col] = worst_alpha;
            table.witness_fidelity[row][col] = worst_f;
        }
    }
    return table;
}

/// Projector eigenstate |+n> of n.sigma.
inline Eigen::Vector2cd plus_eigenstate(const BlochVector& n) {
    const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
    const double phi = std::atan2(n.y, n.x);
    Eigen::Vector2cd v;
    v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
    return v;
}

inline BlochVector bloch_of(const Eigen::Vector2cd& v) {
    const Complex c = std::conj(v(0)) * v(1);
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(v(0)) - std::norm(v(1))};
}

/// Bloch direction of qubit two conditioned on projecting qubit one
/// onto +n. Computed directly from the projected state vector.
inline BlochVector correlated_direction(BellLabel label, const BlochVector& n_in) {
    const BlochVector n = n_in.normalized();
    const Eigen::Vector2cd p = plus_eigenstate(n);
    const State psi = bell_state(label);
    Eigen::Vector2cd cond;
    for (int b = 0; b < 2; ++b)
        cond(b) = std::conj(p(0)) * psi(0 + b) + std::conj(p(1)) * psi(2 + b);
    const double norm = cond.norm();
    if (norm < 1e-12)
        throw std::runtime_error("correlated_direction: projection annihilates the state");
    cond /= norm;
    return bloch_of(cond);
}

/// Fits the linear map n -> correlated_direction(label, n) over a
/// 26-direction grid and checks it is orthogonal with determinant -1
/// (a plane reflection for the triplets, -I for the singlet).
inline Eigen::Matrix3d mirror_matrix(BellLabel label) {
    Eigen::Matrix3d mnt = Eigen::Matrix3d::Zero();  // sum m n^T
    Eigen::Matrix3d nnt = Eigen::Matrix3d::Zero();  // sum n n^T
    std::vector<BlochVector> dirs;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                dirs.push_back(BlochVector{double(i), double(j), double(k)}.normalized());
            }
    for (const auto& n : dirs) {
        const BlochVector m = correlated_direction(label, n);
        Eigen::Vector3d nv(n.x, n.y, n.z), mv(m.x, m.y, m.z);
        mnt += mv * nv.transpose();
        nnt += nv * nv.transpose();
    }
    const Eigen::Matrix3d r = mnt * nnt.inverse();

    double residual = 0.0;
    for (const auto& n : dirs) {
        const BlochVector m = correlated_direction(label, n);
        Eigen::Vector3d nv(n.x, n.y, n.z), mv(m.x, m.y, m.z);
        residual = std::max(residual, (r * nv - mv).cwiseAbs().maxCoeff());
    }
    if (residual > 1e-9)
        throw std::runtime_error("mirror_matrix: correlation map is not linear (residual too large)");
    if ((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error("mirror_matrix: fitted map is not orthogonal");
    if (std::abs(r.determinant() + 1.0) > 1e-9)
        throw std::runtime_error("mirror_matrix: fitted map must have determinant -1");
    return r;
}

}  // namespace tripletcv::bell
