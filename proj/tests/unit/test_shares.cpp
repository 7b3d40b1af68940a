#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "disvar/rng.hpp"
#include "disvar/shares.hpp"

using namespace disvar;
using Catch::Approx;

namespace {

std::string thrown_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("share vector construction enforces the simplex") {
    REQUIRE_NOTHROW(ShareVector({0.2, 0.3, 0.5}));
    REQUIRE_NOTHROW(ShareVector({0.5, 0.5}));
    REQUIRE_NOTHROW(ShareVector({1.0, 0.0, 0.0}));
    REQUIRE_THROWS_AS(ShareVector({1.0}), ValidationError);
    REQUIRE_THROWS_AS(ShareVector({0.6, 0.5}), ValidationError);
    REQUIRE_THROWS_AS(ShareVector({-0.1, 0.6, 0.5}), ValidationError);
    REQUIRE_THROWS_AS(ShareVector({0.5, 0.4}), ValidationError);

    const ShareVector s({0.2, 0.3, 0.5});
    REQUIRE(s.size() == 3);
    REQUIRE(s[2] == 0.5);
}

TEST_CASE("renormalize absorbs rounding inside the tolerance") {
    SECTION("uniform rescale") {
        const ShareVector s = renormalize({0.33, 0.33, 0.33}, 0.02);
        for (std::size_t i = 0; i < 3; ++i) {
            REQUIRE(s[i] == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
        }
    }
    SECTION("sum beyond tolerance is rejected with the offending sum") {
        const std::string msg =
            thrown_message([] { renormalize({0.5, 0.5, 0.5}, 0.02); });
        REQUIRE(msg.find("sum 1.5") != std::string::npos);
        REQUIRE(msg.find("outside tolerance") != std::string::npos);
    }
    SECTION("exact input with zero tolerance passes through unchanged") {
        const ShareVector s = renormalize({0.2, 0.3, 0.5}, 0.0);
        REQUIRE(s[0] == 0.2);
        REQUIRE(s[1] == 0.3);
        REQUIRE(s[2] == 0.5);
    }
    SECTION("negative entries are rejected before summing") {
        const std::string msg =
            thrown_message([] { renormalize({-0.2, 0.6, 0.6}, 0.5); });
        REQUIRE(msg.find("negative share") != std::string::npos);
    }
    SECTION("all-zero input cannot be renormalized") {
        REQUIRE_THROWS_AS(renormalize({0.0, 0.0, 0.0}, 2.0), ValidationError);
    }
}

TEST_CASE("random raw vectors renormalize into valid simplex points") {
    Rng rng(321);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> raw(3);
        double sum = 0.0;
        for (auto& v : raw) {
            v = rng.uniform01();
            sum += v;
        }
        // scale close to 1 with up to +-1% perturbation
        const double wobble = 1.0 + 0.02 * (rng.uniform01() - 0.5);
        for (auto& v : raw) v = v / sum * wobble;
        const ShareVector s = renormalize(raw, 0.02);
        double check = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(s[i] >= 0.0);
            check += s[i];
        }
        REQUIRE(std::abs(check - 1.0) <= ShareVector::kSumTolerance);
    }
}

TEST_CASE("consumer collapse maps six categories onto (P, E, M)") {
    SECTION("hand example") {
        const ShareVector c = collapse_consumer_categories(
            ShareVector({0.1, 0.2, 0.3, 0.2, 0.1, 0.1}));
        REQUIRE(c[0] == Catch::Approx(0.3).epsilon(1e-15));
        REQUIRE(c[1] == Catch::Approx(0.4).epsilon(1e-15));
        REQUIRE(c[2] == Catch::Approx(0.3).epsilon(1e-15));
    }
    SECTION("all strong-positive maps to P") {
        const ShareVector c = collapse_consumer_categories(
            ShareVector({1.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
        REQUIRE(c[0] == 1.0);
        REQUIRE(c[1] == 0.0);
        REQUIRE(c[2] == 0.0);
    }
    SECTION("mass is preserved on random compositions") {
        Rng rng(99);
        const std::vector<double> alpha(6, 1.0);
        for (int trial = 0; trial < 500; ++trial) {
            const ShareVector raw(rng.dirichlet(alpha));
            const ShareVector c = collapse_consumer_categories(raw);
            const double in_sum = raw[0] + raw[1] + raw[2] + raw[3] + raw[4] + raw[5];
            // pairwise sums reassociate the addition, so allow rounding slack
            REQUIRE(c[0] + c[1] + c[2] == Approx(in_sum).margin(1e-14));
        }
    }
    SECTION("wrong arity is rejected") {
        REQUIRE_THROWS_AS(collapse_consumer_categories(ShareVector({0.5, 0.3, 0.2})),
                          ValidationError);
    }
}
