#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bernvand/bezout.hpp"
#include "test_util.hpp"

using namespace bernvand;

namespace {

CoefficientVector random_poly(std::mt19937_64& g, int len) {
    std::vector<double> c(static_cast<std::size_t>(len));
    for (double& v : c) v = testutil::uniform(g, -1.0, 1.0);
    return CoefficientVector{Basis::Bernstein, std::move(c)};
}

// Derivative of a Bernstein-coefficient polynomial of degree m:
// coefficients m (c_{k+1} - c_k) at degree m-1.
CoefficientVector derivative(const CoefficientVector& p) {
    const int m = p.degree();
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        d[static_cast<std::size_t>(k)] =
            m * (p.coeffs[static_cast<std::size_t>(k + 1)] - p.coeffs[static_cast<std::size_t>(k)]);
    return CoefficientVector{Basis::Bernstein, std::move(d)};
}

double bilinear(const BezoutMatrix& b, double s, double t) {
    const int n = b.n;
    double r = 0.0;
    for (int i = 0; i <= n; ++i) {
        double bi = bernstein_eval(n, i, s);
        if (bi == 0.0) continue;
        for (int j = 0; j <= n; ++j)
            r += bi * bernstein_eval(n, j, t) *
                 b.entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return r;
}

}  // namespace

TEST_CASE("degree-one inputs give the 1x1 resultant-like entry") {
    // v = x (coefficients 0,1), w = 1 (coefficients 1,1):
    // (s - t) / (s - t) = 1 = b_00 B^0_0 B^0_0.
    CoefficientVector v{Basis::Bernstein, {0.0, 1.0}};
    CoefficientVector w{Basis::Bernstein, {1.0, 1.0}};
    BezoutMatrix b = bezout_recurrence(v, w);
    REQUIRE(b.n == 0);
    CHECK_THAT(b.entries(0, 0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    BezoutMatrix bc = bezout_closed_form(v, w);
    CHECK_THAT(bc.entries(0, 0), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("input validation") {
    CoefficientVector v{Basis::Bernstein, {0.0, 1.0, 2.0}};
    CoefficientVector w{Basis::Bernstein, {1.0, 1.0}};
    CHECK_THROWS_AS(bezout_recurrence(v, w), std::invalid_argument);
    CHECK_THROWS_AS(bezout_closed_form(v, w), std::invalid_argument);
    CoefficientVector m{Basis::Monomial, {0.0, 1.0, 2.0}};
    CHECK_THROWS_AS(bezout_recurrence(v, m), std::invalid_argument);
    CoefficientVector c0{Basis::Bernstein, {1.0}};
    CHECK_THROWS_AS(bezout_recurrence(c0, c0), std::invalid_argument);
}

TEST_CASE("recurrence and closed form agree to relative 1e-12") {
    auto g = testutil::rng(101);
    for (int n = 0; n <= 15; ++n) {
        CoefficientVector v = random_poly(g, n + 2);
        CoefficientVector w = random_poly(g, n + 2);
        BezoutMatrix br = bezout_recurrence(v, w);
        BezoutMatrix bc = bezout_closed_form(v, w);
        double scale = std::max(max_abs(br.entries), 1e-30);
        for (std::size_t i = 0; i < br.entries.rows(); ++i)
            for (std::size_t j = 0; j < br.entries.cols(); ++j)
                CHECK_THAT(br.entries(i, j),
                           Catch::Matchers::WithinAbs(bc.entries(i, j), 1e-12 * scale));
    }
}

TEST_CASE("factored operator matches the dense matrix action") {
    auto g = testutil::rng(102);
    for (int n : {0, 1, 2, 5, 9, 15}) {
        CoefficientVector v = random_poly(g, n + 2);
        CoefficientVector w = random_poly(g, n + 2);
        BezoutMatrix br = bezout_recurrence(v, w);
        BezoutOperator op = bezout_factored(v, w);
        std::vector<double> x(static_cast<std::size_t>(n) + 1);
        for (double& e : x) e = testutil::uniform(g, -1.0, 1.0);
        std::vector<double> dense = matvec(br.entries, x);
        std::vector<double> fast = op.apply(x);
        double scale = std::max(max_abs(br.entries) * norm2(x), 1e-30);
        for (std::size_t i = 0; i < dense.size(); ++i)
            CHECK_THAT(fast[i], Catch::Matchers::WithinAbs(dense[i], 1e-12 * scale));
    }
}

TEST_CASE("swapping the arguments negates the matrix") {
    auto g = testutil::rng(103);
    for (int n : {1, 4, 8}) {
        CoefficientVector v = random_poly(g, n + 2);
        CoefficientVector w = random_poly(g, n + 2);
        BezoutMatrix bvw = bezout_recurrence(v, w);
        BezoutMatrix bwv = bezout_recurrence(w, v);
        double scale = std::max(max_abs(bvw.entries), 1e-30);
        for (std::size_t i = 0; i < bvw.entries.rows(); ++i)
            for (std::size_t j = 0; j < bvw.entries.cols(); ++j)
                CHECK_THAT(bvw.entries(i, j),
                           Catch::Matchers::WithinAbs(-bwv.entries(i, j), 1e-13 * scale));
    }
}

TEST_CASE("matrix of a polynomial against itself vanishes") {
    auto g = testutil::rng(104);
    CoefficientVector v = random_poly(g, 8);
    BezoutMatrix b = bezout_recurrence(v, v);
    CHECK(max_abs(b.entries) < 1e-13);
}

TEST_CASE("bilinear form reproduces the divided difference of the cross product") {
    auto g = testutil::rng(105);
    for (int n = 0; n <= 12; ++n) {
        CoefficientVector v = random_poly(g, n + 2);
        CoefficientVector w = random_poly(g, n + 2);
        BezoutMatrix b = bezout_recurrence(v, w);
        for (int rep = 0; rep < 20; ++rep) {
            double s = testutil::uniform(g, 0.0, 1.0);
            double t = testutil::uniform(g, 0.0, 1.0);
            if (std::abs(s - t) < 0.05) {
                t = s + (t >= s ? 0.05 : -0.05);
                if (t > 1.0) t = s - 0.05;
                if (t < 0.0) t = s + 0.05;
            }
            double expect =
                (evaluate(v, s) * evaluate(w, t) - evaluate(v, t) * evaluate(w, s)) / (s - t);
            double got = bilinear(b, s, t);
            double scale = std::max(1.0, std::abs(expect));
            CHECK_THAT(got, Catch::Matchers::WithinAbs(expect, 1e-10 * scale));
        }
    }
}

TEST_CASE("diagonal of the bilinear form is the wronskian") {
    auto g = testutil::rng(106);
    for (int n = 0; n <= 12; ++n) {
        CoefficientVector v = random_poly(g, n + 2);
        CoefficientVector w = random_poly(g, n + 2);
        BezoutMatrix b = bezout_recurrence(v, w);
        CoefficientVector dv = derivative(v);
        CoefficientVector dw = derivative(w);
        for (int rep = 0; rep < 5; ++rep) {
            double s = testutil::uniform(g, 0.0, 1.0);
            double expect = evaluate(dv, s) * evaluate(w, s) - evaluate(v, s) * evaluate(dw, s);
            double got = bilinear(b, s, s);
            double scale = std::max(1.0, std::abs(expect));
            CHECK_THAT(got, Catch::Matchers::WithinAbs(expect, 1e-8 * scale));
        }
    }
}

TEST_CASE("operator rejects mismatched input length") {
    CoefficientVector v{Basis::Bernstein, {0.0, 0.5, 1.0}};
    BezoutOperator op = bezout_factored(v, v);
    CHECK_THROWS_AS(op.apply(std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
}
