#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "disvar/rng.hpp"

using namespace disvar;

TEST_CASE("generator streams are deterministic per seed") {
    Rng a(12345), b(12345), c(54321);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    REQUIRE(all_equal);
    REQUIRE(any_diff);
}

TEST_CASE("seed mixing separates nearby keys") {
    REQUIRE(mix_seed(1, 0, 0) != mix_seed(2, 0, 0));
    REQUIRE(mix_seed(1, 0, 0) != mix_seed(1, 1, 0));
    REQUIRE(mix_seed(1, 0, 1) != mix_seed(1, 1, 0));
    REQUIRE(mix_seed(7, 3, 5) == mix_seed(7, 3, 5));
}

TEST_CASE("fnv1a64 matches the reference offset basis and separates strings") {
    REQUIRE(fnv1a64("") == 0xcbf29ce484222325ULL);
    REQUIRE(fnv1a64("AT") != fnv1a64("TA"));
    REQUIRE(fnv1a64("AT") == fnv1a64("AT"));
}

TEST_CASE("uniform01 stays in [0, 1)") {
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("normal draws have standard moments") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        ss += z * z;
    }
    const double mean = sum / n;
    const double var = ss / n - mean * mean;
    REQUIRE(std::abs(mean) < 0.01);
    REQUIRE(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("gamma draws match the target mean and variance") {
    // shape k: mean k, variance k
    for (const double shape : {0.4, 2.5, 9.0}) {
        Rng rng(1234);
        const int n = 200000;
        double sum = 0.0, ss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = rng.gamma(shape);
            REQUIRE(g >= 0.0);
            sum += g;
            ss += g * g;
        }
        const double mean = sum / n;
        const double var = ss / n - mean * mean;
        REQUIRE(std::abs(mean - shape) < 0.05 * shape + 0.01);
        REQUIRE(std::abs(var - shape) < 0.08 * shape + 0.02);
    }
}

TEST_CASE("dirichlet draws are valid compositions with the right mean") {
    Rng rng(5);
    const std::vector<double> alpha = {2.0, 5.0, 3.0};
    const double total = 10.0;
    std::vector<double> mean(3, 0.0);
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const auto x = rng.dirichlet(alpha);
        double sum = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            REQUIRE(x[j] >= 0.0);
            sum += x[j];
            mean[j] += x[j];
        }
        REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
    }
    for (std::size_t j = 0; j < 3; ++j) {
        REQUIRE(mean[j] / n == Catch::Approx(alpha[j] / total).margin(0.01));
    }
}
