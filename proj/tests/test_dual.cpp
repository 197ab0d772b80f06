#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gaintune/dual.hpp"

using gaintune::Dual;

namespace {

// f(x, y) = sin(x) * exp(y) + sqrt(x*x + y*y) / (1 + atan2(y, x))
template <class T>
T testfun(const T& x, const T& y) {
    using std::sin;
    using std::exp;
    using std::sqrt;
    using std::atan2;
    return sin(x) * exp(y) + sqrt(x * x + y * y) / (1.0 + atan2(y, x));
}

double fd_partial(double x, double y, int slot) {
    const double h = 1e-6;
    const double dx = slot == 0 ? h : 0.0;
    const double dy = slot == 1 ? h : 0.0;
    return (testfun(x + dx, y + dy) - testfun(x - dx, y - dy)) / (2.0 * h);
}

} // namespace

TEST_CASE("two-slot gradient matches central differences") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng), y = u(rng);
        auto gx = testfun(Dual<2>::seed(x, 0), Dual<2>::seed(y, 1));
        CHECK(gx.v == doctest::Approx(testfun(x, y)).epsilon(1e-14));
        CHECK(gx.d[0] == doctest::Approx(fd_partial(x, y, 0)).epsilon(1e-6));
        CHECK(gx.d[1] == doctest::Approx(fd_partial(x, y, 1)).epsilon(1e-6));
    }
}

TEST_CASE("elementary derivative identities") {
    auto x = Dual<1>::seed(0.7, 0);
    CHECK(gaintune::cos(x).d[0] == doctest::Approx(-std::sin(0.7)));
    CHECK(gaintune::tan(x).d[0] == doctest::Approx(1.0 / std::pow(std::cos(0.7), 2)));
    CHECK(gaintune::log(x).d[0] == doctest::Approx(1.0 / 0.7));
    CHECK(gaintune::pow(x, 3.0).d[0] == doctest::Approx(3.0 * 0.49));
    CHECK(gaintune::acos(x).d[0] == doctest::Approx(-1.0 / std::sqrt(1.0 - 0.49)));
    CHECK(gaintune::abs(-x).d[0] == doctest::Approx(1.0));
}

TEST_CASE("division and compound ops") {
    auto x = Dual<1>::seed(2.0, 0);
    auto r = (x * x + 1.0) / (x - 0.5); // f = (x^2+1)/(x-0.5), f'(2) = (2x(x-.5)-(x^2+1))/ (x-.5)^2
    const double expect = (2 * 2.0 * 1.5 - 5.0) / (1.5 * 1.5);
    CHECK(r.v == doctest::Approx(5.0 / 1.5));
    CHECK(r.d[0] == doctest::Approx(expect));
}
