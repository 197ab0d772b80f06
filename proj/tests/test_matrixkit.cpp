#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaintune/matrixkit.hpp"

using namespace gaintune;

namespace {

Mat mat2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

// Independent eigenvalue oracle for 2x2 symmetric matrices: quadratic
// formula on trace and determinant.
std::pair<double, double> eig2_oracle(const Mat& m) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

} // namespace

TEST_CASE("sym_eig identity") {
    SymEig e = sym_eig(Mat::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(e.eigenvalues(i) == doctest::Approx(1.0));
    CHECK(inf_norm(e.eigenvectors * e.eigenvectors.transpose() - Mat::Identity(3, 3)) < 1e-12);
}

TEST_CASE("sym_eig 2x2 hand case") {
    SymEig e = sym_eig(mat2(1, 2, 2, 1));
    CHECK(e.eigenvalues(0) == doctest::Approx(3.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(-1.0));
}

TEST_CASE("sym_eig zermelo full penalty matrix") {
    Mat k2 = mat2(1.7421, 0.9560, 0.9560, 1.1414);
    auto [lo_hi, lo_lo] = eig2_oracle(k2);
    SymEig e = sym_eig(k2);
    CHECK(e.eigenvalues(0) == doctest::Approx(lo_hi).epsilon(1e-12));
    CHECK(e.eigenvalues(1) == doctest::Approx(lo_lo).epsilon(1e-12));
    // Values from the quadratic-formula oracle.
    CHECK(e.eigenvalues(0) == doctest::Approx(2.4438).epsilon(1e-4));
    CHECK(e.eigenvalues(1) == doctest::Approx(0.4397).epsilon(1e-3));
}

TEST_CASE("sym_eig rejects asymmetric and non-square input") {
    CHECK_THROWS_AS(sym_eig(mat2(1, 2, 3, 4)), InvalidMatrix);
    CHECK_THROWS_AS(sym_eig(Mat::Zero(2, 3)), InvalidMatrix);
}

TEST_CASE("sym_eig reconstruction and orthonormality over random matrices") {
    std::mt19937_64 rng(7231);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7); // 2..8
        Mat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = g(rng);
        a = Mat(0.5 * (a + a.transpose()));
        SymEig e = sym_eig(a);
        const Mat rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
        const double scale = std::max(inf_norm(a), 1e-30);
        REQUIRE(inf_norm(rec - a) <= 1e-10 * scale);
        REQUIRE(inf_norm(e.eigenvectors.transpose() * e.eigenvectors - Mat::Identity(n, n)) <= 1e-10);
        for (int i = 0; i + 1 < n; ++i) REQUIRE(e.eigenvalues(i) >= e.eigenvalues(i + 1));
    }
}

TEST_CASE("sym_eig is deterministic") {
    Mat a(4, 4);
    a << 4, 1, 0.5, 0.25, 1, 3, 1, 0.5, 0.5, 1, 2, 1, 0.25, 0.5, 1, 1;
    SymEig e1 = sym_eig(a);
    SymEig e2 = sym_eig(a);
    CHECK(e1.eigenvalues == e2.eigenvalues);
    CHECK(e1.eigenvectors == e2.eigenvectors);
}

TEST_CASE("linsolve trivial and hand cases") {
    Vec b(2);
    b << 2, 8;
    Mat i2 = Mat::Identity(2, 2);
    CHECK(inf_norm(linsolve(i2, b) - b) == 0.0);

    Mat d = mat2(2, 0, 0, 4);
    Vec x = linsolve(d, b);
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(2.0));

    // (I - X) with X = [[0,-1],[1,0]]: inverse is 0.5*[[1,-1],[1,1]]
    Mat imx = mat2(1, 1, -1, 1);
    Mat inv = linsolve(imx, i2);
    CHECK(inf_norm(inv - 0.5 * mat2(1, -1, 1, 1)) < 1e-14);
}

TEST_CASE("linsolve rejects singular systems") {
    Mat s = mat2(1, 2, 2, 4);
    CHECK_THROWS_AS(linsolve(s, Mat::Identity(2, 2)), SingularSystem);
}

TEST_CASE("solve_care double integrator closed form") {
    Mat a = mat2(0, 1, 0, 0);
    Mat b(2, 1);
    b << 0, 1;
    Mat q = Mat::Identity(2, 2);
    Mat r = Mat::Identity(1, 1);
    CareSolution s = solve_care(a, b, q, r);
    CHECK(s.k(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.k(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("solve_care stable system with zero state cost") {
    Mat a = -Mat::Identity(2, 2);
    Mat b = Mat::Identity(2, 2);
    CareSolution s = solve_care(a, b, Mat::Zero(2, 2), Mat::Identity(2, 2));
    CHECK(inf_norm(s.p) < 1e-12);
    CHECK(inf_norm(s.k) < 1e-12);
}

TEST_CASE("solve_care scalar case") {
    Mat a(1, 1), b(1, 1), q(1, 1), r(1, 1);
    a << 0;
    b << 1;
    q << 1;
    r << 1;
    CareSolution s = solve_care(a, b, q, r);
    CHECK(s.p(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.k(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solve_care rejects indefinite R") {
    Mat a = mat2(0, 1, 0, 0);
    Mat b(2, 1);
    b << 0, 1;
    Mat r(1, 1);
    r << -1;
    CHECK_THROWS_AS(solve_care(a, b, Mat::Identity(2, 2), r), RiccatiFailure);
}

TEST_CASE("solve_care residual bound on random stabilizable systems") {
    std::mt19937_64 rng(40571);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5); // 2..6
        const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        Mat a(n, n), b(n, m), c(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = g(rng);
                c(i, j) = g(rng);
            }
            for (int j = 0; j < m; ++j) b(i, j) = g(rng);
        }
        Mat q = c.transpose() * c;
        Mat l(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) l(i, j) = g(rng);
        Mat r = l.transpose() * l + 0.1 * Mat::Identity(m, m);

        CareSolution s = solve_care(a, b, q, r);
        const Mat rinv_bt = r.llt().solve(b.transpose());
        const Mat res = a.transpose() * s.p + s.p * a - s.p * b * rinv_bt * s.p + q;
        REQUIRE(inf_norm(res) <= 1e-9 * std::max(inf_norm(q), 1e-9));
        REQUIRE(is_hurwitz(a - b * s.k));
    }
}

TEST_CASE("solve_lyapunov agrees with direct residual") {
    Mat a = mat2(-1, 0.3, 0, -2);
    Mat q = mat2(1, 0.1, 0.1, 2);
    Mat p = solve_lyapunov(a, q);
    CHECK(inf_norm(a.transpose() * p + p * a + q) < 1e-12);
}
