#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctqw/graph.hpp"
#include "ctqw/linalg.hpp"
#include "test_support.hpp"

using namespace ctqw;
using ctqw::testing::basis_vector;
using ctqw::testing::random_hermitian;
using ctqw::testing::random_state;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("operator factories validate structure") {
    CHECK_NOTHROW(Operator::hermitian(pauli_x()));

    Matrix bad(2, 2);
    bad << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(Operator::hermitian(bad), NonHermitianInput);

    const Operator trap = Operator::hermitian_plus_trap(pauli_x(), 0.7, 1);
    CHECK(trap.structure == Structure::HermitianPlusTrap);
    CHECK(trap.mat(1, 1) == Complex(0.0, -0.7));
    CHECK((trap.hermitian_part() - pauli_x()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(Operator::hermitian_plus_trap(pauli_x(), -1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(Operator::hermitian_plus_trap(pauli_x(), 1.0, 5), InvalidNode);
}

TEST_CASE("hermitian_eig: pauli-x spectrum") {
    const Spectrum s = hermitian_eig(Operator::hermitian(pauli_x()));
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: reduced complete-graph matrix, N=5") {
    Matrix m(2, 2);
    m << 0.0, 2.0, 2.0, 3.0;
    // characteristic polynomial x^2 - 3x - 4 = (x-4)(x+1)
    const Spectrum s = hermitian_eig(Operator::hermitian(m));
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: hypercube d=3 spectrum is sums of three signs") {
    const Spectrum s = hermitian_eig(adjacency(hypercube(3)));
    const double expected[] = {-3, -1, -1, -1, 1, 1, 1, 3};
    for (int k = 0; k < 8; ++k)
        CHECK(s.eigenvalues(k) == doctest::Approx(expected[k]).epsilon(1e-10));
}

TEST_CASE("hermitian_eig: round trip and residuals on random input") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Operator m = Operator::hermitian(random_hermitian(9, seed));
        const Spectrum s = hermitian_eig(m);
        const double scale = m.mat.norm();
        const Matrix rebuilt =
            s.eigenvectors * s.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
            s.eigenvectors.adjoint();
        CHECK((rebuilt - m.mat).norm() <= 1e-9 * scale);
        for (Index k = 0; k < 9; ++k)
            CHECK((m.mat * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k))
                      .norm() <= tol::eigen_residual * scale);
        const Matrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
        CHECK((gram - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("expm_mul: zero generator is the identity") {
    const Operator zero = Operator::hermitian(Matrix::Zero(3, 3));
    const Vector v = random_state(3, 11);
    const Vector w = expm_mul(zero, v, 2.7);
    CHECK((w - v).norm() <= 1e-14);
}

TEST_CASE("expm_mul: pauli-x half period") {
    const Operator m = Operator::hermitian(pauli_x());
    const Vector w = expm_mul(m, basis_vector(2, 0), std::numbers::pi / 2.0);
    CHECK(std::abs(w(0)) <= 1e-12);
    CHECK(std::abs(w(1) - Complex(0.0, -1.0)) <= 1e-12);
}

TEST_CASE("expm_mul: scalar trap decay") {
    const Operator m = Operator::hermitian_plus_trap(Matrix::Zero(1, 1), 1.0, 0);
    const Vector w = expm_mul(m, basis_vector(1, 0), 1.0);
    CHECK(std::abs(w(0) - std::exp(-1.0)) <= 1e-12);
    CHECK(w.squaredNorm() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("expm_mul: dimension and time guards") {
    const Operator m = Operator::hermitian(pauli_x());
    CHECK_THROWS_AS(expm_mul(m, basis_vector(3, 0), 1.0), DimensionMismatch);
    CHECK_THROWS_AS(expm_mul(m, basis_vector(2, 0), -1.0), InvalidParameter);
}

TEST_CASE("hermitian evolution preserves norm") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Index n = 2 + static_cast<Index>(seed % 15);
        const Operator m = Operator::hermitian(random_hermitian(n, 1000 + seed));
        const Vector v = random_state(n, 2000 + seed);
        for (const double t : {0.1, 1.0, 10.0}) {
            CHECK(std::abs(expm_mul(m, v, t).norm() - 1.0) <= tol::algebra);
            ++checked;
        }
    }
    CHECK(checked == 300);
}

TEST_CASE("group property of the propagator") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Operator m = Operator::hermitian(random_hermitian(8, 37 + seed));
        const Vector v = random_state(8, 91 + seed);
        const Vector two_step = expm_mul(m, expm_mul(m, v, 0.8), 1.9);
        const Vector one_step = expm_mul(m, v, 2.7);
        CHECK((two_step - one_step).norm() <= 1e-9);
    }
}

TEST_CASE("spectral fast path agrees with the Padé path") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Operator m = Operator::hermitian(random_hermitian(10, 500 + seed));
        const Spectrum s = hermitian_eig(m);
        const Vector v = random_state(10, 600 + seed);
        for (const double t : {0.3, 2.0, 9.0})
            CHECK((expm_mul_spectral(s, v, t) - expm_mul(m, v, t)).norm() <= tol::algebra);
    }
}

TEST_CASE("trap evolution never grows the norm") {
    const Operator m = Operator::hermitian_plus_trap(adjacency(complete(6)).mat, 1.3, 2);
    StepEvolution evolution(m, testing::uniform_superposition(6), 0.05);
    double prev = evolution.state().norm();
    for (int k = 0; k < 400; ++k) {
        evolution.advance();
        const double now = evolution.state().norm();
        CHECK(now <= prev + tol::algebra);
        prev = now;
    }
    CHECK(prev < 0.2); // complete-graph mixture component decays into the trap
}

TEST_CASE("integrate_trace: constant, linear, exponential") {
    auto grid = [](double a, double b, std::size_t count) {
        std::vector<double> t(count);
        for (std::size_t k = 0; k < count; ++k)
            t[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
        return t;
    };

    const auto t1 = grid(0.0, 1.0, 11);
    const std::vector<double> ones(11, 1.0);
    CHECK(integrate_trace(t1, ones) == doctest::Approx(1.0).epsilon(1e-14));

    const auto t2 = grid(0.0, 2.0, 21);
    CHECK(integrate_trace(t2, t2) == doctest::Approx(2.0).epsilon(1e-14));

    const auto t3 = grid(0.0, 20.0, 2001);
    std::vector<double> decay(t3.size());
    for (std::size_t k = 0; k < t3.size(); ++k) decay[k] = std::exp(-t3[k]);
    CHECK(std::abs(integrate_trace(t3, decay) - 1.0) <= 1e-4);

    const std::vector<double> bad_times = {0.0, 1.0, 1.0};
    const std::vector<double> bad_values = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(integrate_trace(bad_times, bad_values), NonMonotonicTimes);
}

} // TEST_SUITE
