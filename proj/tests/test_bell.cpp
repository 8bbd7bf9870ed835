#include "tripletcv/bell.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tripletcv::bell;
using Catch::Matchers::WithinAbs;

namespace {

// Table of expected invariances, column order UxUx, UyUy, UzUz,
// UxUx*, UyUy*, UzUz*.
constexpr bool kExpected[4][6] = {
    {true, true, true, false, false, false},   // psi-
    {false, false, true, true, true, false},   // psi+
    {true, false, false, false, true, true},   // phi-
    {false, true, false, true, false, true},   // phi+
};

BlochVector random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    BlochVector n{normal(rng), normal(rng), normal(rng)};
    while (n.norm() < 1e-6) n = {normal(rng), normal(rng), normal(rng)};
    return n.normalized();
}

double pauli_expectation(const State& psi, const BlochVector& na, const BlochVector& nb) {
    const Matrix2c sa = na.x * pauli_x() + na.y * pauli_y() + na.z * pauli_z();
    const Matrix2c sb = nb.x * pauli_x() + nb.y * pauli_y() + nb.z * pauli_z();
    Complex acc = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    acc += std::conj(psi(2 * a + b)) * sa(a, ap) * sb(b, bp) * psi(2 * ap + bp);
    return acc.real();
}

}  // namespace

TEST_CASE("rotation_unitary") {
    SECTION("alpha = 0 is the identity for any axis") {
        const Matrix2c u = rotation_unitary({1.1, 2.2, 0.0});
        CHECK((u - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("z axis gives diag(e^{-ia/2}, e^{+ia/2})") {
        const double alpha = 0.9;
        const Matrix2c u = rotation_unitary({0.0, 0.0, alpha});
        CHECK(std::abs(u(0, 0) - std::polar(1.0, -alpha / 2.0)) < 1e-14);
        CHECK(std::abs(u(1, 1) - std::polar(1.0, alpha / 2.0)) < 1e-14);
        CHECK(std::abs(u(0, 1)) < 1e-14);
        CHECK(std::abs(u(1, 0)) < 1e-14);
    }
    SECTION("x axis at alpha = pi is -i sigma_x") {
        const Matrix2c u = axis_unitary(Axis::x, M_PI);
        const Matrix2c expect = Complex(0, -1) * pauli_x();
        CHECK((u - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("unitarity over random specs") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        for (int i = 0; i < 50; ++i) {
            const Matrix2c u = rotation_unitary({angle(rng), angle(rng), angle(rng)});
            CHECK((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("axis_unitary") {
    SECTION("x-axis matrix elements") {
        const double alpha = 1.3;
        const Matrix2c u = axis_unitary(Axis::x, alpha);
        CHECK(std::abs(u(0, 0) - std::cos(alpha / 2.0)) < 1e-14);
        CHECK(std::abs(u(0, 1) - Complex(0, -std::sin(alpha / 2.0))) < 1e-14);
        CHECK(std::abs(u(1, 0) - Complex(0, -std::sin(alpha / 2.0))) < 1e-14);
        CHECK(std::abs(u(1, 1) - std::cos(alpha / 2.0)) < 1e-14);
    }
    SECTION("y at 0 is the identity") {
        CHECK((axis_unitary(Axis::y, 0.0) - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("z rotations compose additively") {
        const double a = 0.7, b = 1.9;
        const Matrix2c prod = axis_unitary(Axis::z, a) * axis_unitary(Axis::z, b);
        CHECK((prod - axis_unitary(Axis::z, a + b)).cwiseAbs().maxCoeff() < 1e-13);
    }
    SECTION("conjugation rule: U*(alpha) = U(-alpha) for x and z, U_y real") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        for (int i = 0; i < 20; ++i) {
            const double alpha = angle(rng);
            CHECK((axis_unitary(Axis::x, alpha).conjugate() - axis_unitary(Axis::x, -alpha))
                      .cwiseAbs()
                      .maxCoeff() < 1e-13);
            CHECK((axis_unitary(Axis::z, alpha).conjugate() - axis_unitary(Axis::z, -alpha))
                      .cwiseAbs()
                      .maxCoeff() < 1e-13);
            CHECK((axis_unitary(Axis::y, alpha).conjugate() - axis_unitary(Axis::y, alpha))
                      .cwiseAbs()
                      .maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("apply_local") {
    SECTION("singlet is invariant under U (x) U") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        const State singlet = bell_state(BellLabel::psi_minus);
        for (int i = 0; i < 20; ++i) {
            const Matrix2c u = rotation_unitary({angle(rng), angle(rng), angle(rng)});
            CHECK_THAT(fidelity(singlet, apply_local(singlet, u, u)), WithinAbs(1.0, 1e-12));
        }
    }
    SECTION("identity leaves any state unchanged") {
        const State psi = bell_state(BellLabel::phi_minus);
        const State out = apply_local(psi, Matrix2c::Identity(), Matrix2c::Identity());
        CHECK((out - psi).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("phi+ is invariant under Uz (x) Uz*") {
        const Matrix2c u = axis_unitary(Axis::z, 0.7);
        const State phi = bell_state(BellLabel::phi_plus);
        CHECK_THAT(fidelity(phi, apply_local(phi, u, u.conjugate())), WithinAbs(1.0, 1e-12));
    }
    SECTION("rejects non-unitary input") {
        Matrix2c bad = Matrix2c::Identity();
        bad(0, 0) = 2.0;
        CHECK_THROWS_AS(apply_local(bell_state(BellLabel::psi_plus), bad, Matrix2c::Identity()),
                        std::invalid_argument);
    }
}

TEST_CASE("invariance_table reproduces the expected pattern") {
    const InvarianceTable table = invariance_table();
    for (int row = 0; row < 4; ++row) {
        int yes_count = 0;
        for (int col = 0; col < 6; ++col) {
            INFO("state " << to_string(kAllBellLabels[row]) << " transform "
                          << kTransformNames[col]);
            CHECK(table.invariant[row][col] == kExpected[row][col]);
            if (table.invariant[row][col]) {
                ++yes_count;
            } else {
                // the recorded witness must break invariance decisively
                CHECK(table.witness_fidelity[row][col] < 0.999);
                CHECK_THAT(transformed_fidelity(kAllBellLabels[row], col,
                                                table.witness_alpha[row][col]),
                           WithinAbs(table.witness_fidelity[row][col], 1e-12));
            }
        }
        CHECK(yes_count == 3);  // each Bell state keeps exactly three symmetries
    }
}

TEST_CASE("correlated_direction examples") {
    const BlochVector z{0, 0, 1}, x{1, 0, 0}, y{0, 1, 0};
    auto close = [](const BlochVector& a, const BlochVector& b) {
        return std::abs(a.x - b.x) < 1e-12 && std::abs(a.y - b.y) < 1e-12 &&
               std::abs(a.z - b.z) < 1e-12;
    };
    CHECK(close(correlated_direction(BellLabel::psi_minus, z), {0, 0, -1}));
    CHECK(close(correlated_direction(BellLabel::psi_plus, x), {1, 0, 0}));
    CHECK(close(correlated_direction(BellLabel::psi_plus, z), {0, 0, -1}));
    CHECK(close(correlated_direction(BellLabel::phi_plus, y), {0, -1, 0}));
}

TEST_CASE("mirror_matrix geometry") {
    const Eigen::Matrix3d singlet = mirror_matrix(BellLabel::psi_minus);
    CHECK((singlet + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);

    const Eigen::Matrix3d psi_plus = mirror_matrix(BellLabel::psi_plus);
    CHECK((psi_plus - Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <
          1e-9);

    const Eigen::Matrix3d phi_minus = mirror_matrix(BellLabel::phi_minus);
    CHECK((phi_minus - Eigen::Vector3d(-1, 1, 1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <
          1e-9);

    const Eigen::Matrix3d phi_plus = mirror_matrix(BellLabel::phi_plus);
    CHECK((phi_plus - Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <
          1e-9);

    SECTION("triplet maps are symmetric plane reflections, det -1") {
        for (BellLabel label : {BellLabel::psi_plus, BellLabel::phi_minus, BellLabel::phi_plus}) {
            const Eigen::Matrix3d r = mirror_matrix(label);
            CHECK(std::abs(r.determinant() + 1.0) < 1e-9);
            CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-9);
            // a coordinate plane is fixed pointwise: two +1 eigenvalues
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(r);
            CHECK_THAT(es.eigenvalues()(0), WithinAbs(-1.0, 1e-9));
            CHECK_THAT(es.eigenvalues()(1), WithinAbs(1.0, 1e-9));
            CHECK_THAT(es.eigenvalues()(2), WithinAbs(1.0, 1e-9));
        }
    }

    SECTION("applying the correlation twice returns the original direction") {
        std::mt19937_64 rng(31);
        for (BellLabel label : kAllBellLabels) {
            for (int i = 0; i < 25; ++i) {
                const BlochVector n = random_direction(rng);
                const BlochVector twice =
                    correlated_direction(label, correlated_direction(label, n));
                CHECK(std::abs(twice.x - n.x) < 1e-9);
                CHECK(std::abs(twice.y - n.y) < 1e-9);
                CHECK(std::abs(twice.z - n.z) < 1e-9);
            }
        }
    }

    SECTION("perfect correlation: <n.sigma (x) (Rn).sigma> = +1") {
        std::mt19937_64 rng(37);
        for (BellLabel label : kAllBellLabels) {
            const Eigen::Matrix3d r = mirror_matrix(label);
            const State psi = bell_state(label);
            for (int i = 0; i < 25; ++i) {
                const BlochVector n = random_direction(rng);
                const Eigen::Vector3d m = r * Eigen::Vector3d(n.x, n.y, n.z);
                CHECK_THAT(pauli_expectation(psi, n, {m(0), m(1), m(2)}), WithinAbs(1.0, 1e-9));
            }
        }
    }
}
