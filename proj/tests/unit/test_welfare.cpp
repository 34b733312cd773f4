#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fairdiv/welfare.hpp"

using namespace fairdiv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double naive_p_mean(const std::vector<double>& x, double p) {
    double acc = 0.0;
    for (double v : x) acc += std::pow(v, p);
    return std::pow(acc / static_cast<double>(x.size()), 1.0 / p);
}

std::vector<double> log_uniform_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::vector<double> x(static_cast<size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (auto& v : x) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = std::exp(llo + u * (lhi - llo));
    }
    return x;
}

}  // namespace

TEST_CASE("p_mean special exponents") {
    CHECK(p_mean(std::vector<double>{2, 4}, {1.0, {}}) == doctest::Approx(3.0));
    CHECK(p_mean(std::vector<double>{4, 9}, {0.0, {}}) == doctest::Approx(6.0));
    CHECK(p_mean(std::vector<double>{3, 5}, {-kInf, {}}) == 3.0);
}

TEST_CASE("p_mean matches the raw formula at p = -10") {
    const std::vector<double> x{1, 2};
    const double direct = naive_p_mean(x, -10.0);  // ((1 + 2^-10)/2)^(-1/10)
    CHECK(direct == doctest::Approx(1.0716688).epsilon(1e-6));
    CHECK(p_mean(x, {-10.0, {}}) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("p_mean zero handling") {
    CHECK(nsw(std::vector<double>{0, 100}) == 0.0);
    CHECK(nsw(std::vector<double>{4, 9}) == doctest::Approx(6.0));
    CHECK(nsw(std::vector<double>{2, 3, 4}) == doctest::Approx(std::pow(24.0, 1.0 / 3.0)));
    CHECK(p_mean(std::vector<double>{0, 5}, {-2.0, {}}) == 0.0);
    CHECK(p_mean(std::vector<double>{0, 5}, {0.5, {}}) ==
          doctest::Approx(naive_p_mean({0, 5}, 0.5)));
    CHECK(p_mean(std::vector<double>{0, 0}, {0.5, {}}) == 0.0);
}

TEST_CASE("p_mean input validation") {
    CHECK_THROWS_AS(p_mean(std::vector<double>{}, {1.0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(p_mean(std::vector<double>{-1, 2}, {1.0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(p_mean(std::vector<double>{1, 2}, {2.0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(p_mean(std::vector<double>{1, 2}, {1.0, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(p_mean(std::vector<double>{1, 2}, {1.0, {1.0}}), std::invalid_argument);
}

TEST_CASE("weighted nash welfare matches the product form") {
    const std::vector<double> x{2, 8, 5};
    const std::vector<double> eta{1, 3, 0.5};
    const double direct = std::pow(std::pow(2, 1.0) * std::pow(8, 3.0) * std::pow(5, 0.5),
                                   1.0 / (1.0 + 3.0 + 0.5));
    CHECK(p_mean(x, {0.0, eta}) == doctest::Approx(direct).epsilon(1e-12));
    // Zero-weight agents do not annihilate the product.
    CHECK(p_mean(std::vector<double>{0, 4}, {0.0, {0.0, 2.0}}) == doctest::Approx(4.0));
}

TEST_CASE("weighted finite p matches the normalized sum") {
    const std::vector<double> x{2, 8, 5};
    const std::vector<double> eta{1, 3, 0.5};
    for (double p : {1.0, 0.5, -0.5, -3.0}) {
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) acc += eta[i] * std::pow(x[i], p);
        const double direct = std::pow(acc / 4.5, 1.0 / p);
        CHECK(p_mean(x, {p, eta}) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("effective_p clamps deep exponents") {
    CHECK(effective_p(-0.5, 3) == -0.5);
    CHECK(effective_p(-100.0, 4) == -kInf);
    CHECK(effective_p(-kInf, 2) == -kInf);
    CHECK(effective_p(0.7, 5) == 0.7);
    // boundary: threshold is -n*log2(n)
    CHECK(effective_p(-2.0, 2) == -kInf);
    CHECK(effective_p(-1.99, 2) == -1.99);
    CHECK(effective_p(-5.0, 1) == -5.0);  // single agent never clamps
}

TEST_CASE("generalized mean is monotone in p") {
    std::mt19937_64 rng(42);
    const std::vector<double> grid{-kInf, -30, -8, -2, -0.5, 0, 0.25, 0.5, 1};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        auto x = log_uniform_vector(rng, n, 0.05, 50.0);
        double prev = -1.0;
        for (double p : grid) {
            const double cur = p_mean(x, {p, {}});
            CHECK(cur >= prev * (1.0 - 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("deep-exponent sandwich around the minimum") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        auto x = log_uniform_vector(rng, n, 1e-3, 1e3);
        const double p = -static_cast<double>(n) * std::log2(static_cast<double>(n));
        const double mp = p_mean(x, {p, {}});
        const double lo = *std::min_element(x.begin(), x.end());
        CHECK(mp >= lo * (1.0 - 1e-12));
        CHECK(mp <= std::pow(2.0, 1.0 / n) * lo + 1e-9);
    }
}

TEST_CASE("p_mean approaches the geometric mean as p -> 0") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        auto x = log_uniform_vector(rng, n, 0.1, 20.0);
        const double geo = p_mean(x, {0.0, {}});
        for (double p : {1e-6, -1e-6}) {
            CHECK(p_mean(x, {p, {}}) ==
                  doctest::Approx(geo).epsilon(1e-4));
        }
    }
}

TEST_CASE("p_mean scale covariance") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        auto x = log_uniform_vector(rng, n, 0.1, 20.0);
        for (double p : {1.0, 0.5, 0.0, -1.0, -7.0, -kInf}) {
            const double c = 0.25 + static_cast<double>(rng() % 100);
            std::vector<double> scaled = x;
            for (auto& v : scaled) v *= c;
            CHECK(p_mean(scaled, {p, {}}) ==
                  doctest::Approx(c * p_mean(x, {p, {}})).epsilon(1e-11));
        }
    }
}

TEST_CASE("log_sum_exp basics") {
    CHECK(log_sum_exp(std::vector<double>{0.0, 0.0}) == doctest::Approx(std::log(2.0)));
    CHECK(log_sum_exp(std::vector<double>{-1000.0, -1000.0}) ==
          doctest::Approx(-1000.0 + std::log(2.0)));
    CHECK(std::isinf(log_sum_exp(std::vector<double>{})));
}
