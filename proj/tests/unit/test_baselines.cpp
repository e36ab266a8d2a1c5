#include <doctest.h>

#include <cmath>

#include "twinmarket/analytics/moments.hpp"
#include "twinmarket/baselines/brock_hommes.hpp"
#include "twinmarket/baselines/hpm.hpp"
#include "twinmarket/common/errors.hpp"

using namespace twinmarket;
using namespace twinmarket::baselines;

TEST_CASE("HPM without noise stays at the fundamental") {
    HPMParams p;
    p.sigma_f = 0.0;
    p.sigma_c = 0.0;
    p.T = 200;
    const auto r = simulate_hpm(p);
    REQUIRE(r.prices.size() == 200);
    CHECK(r.returns.size() == 199);
    for (double x : r.prices) CHECK(x == p.price_scale);
    for (double x : r.returns) CHECK(x == 0.0);
}

TEST_CASE("HPM fractions follow the predisposition logit when other terms vanish") {
    HPMParams p;
    p.alpha_n = 0.0;
    p.alpha_p = 0.0;
    p.beta = 1.7;
    p.T = 300;
    const double expected = 1.0 / (1.0 + std::exp(-p.beta * p.alpha0));
    for (double nf : simulate_hpm(p).fundamentalists) CHECK(nf == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("HPM is seeded and validated") {
    HPMParams p;
    p.T = 500;
    CHECK(simulate_hpm(p).prices == simulate_hpm(p).prices);
    HPMParams q = p;
    q.seed = 2;
    CHECK(simulate_hpm(q).prices != simulate_hpm(p).prices);
    q.sigma_c = -1.0;
    CHECK_THROWS_AS(simulate_hpm(q), ParameterDomain);
}

TEST_CASE("HPM at canonical parameters has fat tails on average") {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        HPMParams p;
        p.seed = seed;
        total += analytics::kurtosis(simulate_hpm(p).returns);
    }
    CHECK(total / 10.0 > 3.0);
}

TEST_CASE("discrete choice") {
    const auto u = discrete_choice({0.3, 0.3, 0.3, 0.3}, 50.0);
    for (double x : u) CHECK(x == doctest::Approx(0.25));
    for (double x : discrete_choice({1.0, -4.0, 2.0}, 0.0)) CHECK(x == doctest::Approx(1.0 / 3.0));
    const auto two = discrete_choice({1.0, 0.0}, 2.0);
    CHECK(two[0] == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
    const auto big = discrete_choice({1000.0, 0.0}, 10.0);  // no overflow
    CHECK(big[0] == 1.0);
}

TEST_CASE("BH with one noiseless type sits at the fundamental") {
    BHParams p;
    p.types = {{0.0, 0.0, 0.0}};
    p.sigma = 0.0;
    p.T = 100;
    const auto r = simulate_bh(p);
    for (double x : r.prices) CHECK(x == p.p_star);
    for (const auto& f : r.fractions) CHECK(f == std::vector<double>{1.0});
}

TEST_CASE("BH fractions are a distribution and runs are seeded") {
    BHParams p;
    p.T = 1000;
    const auto r = simulate_bh(p);
    for (const auto& f : r.fractions) {
        double s = 0.0;
        for (double x : f) {
            CHECK(x >= 0.0);
            s += x;
        }
        CHECK(s == doctest::Approx(1.0));
    }
    CHECK(simulate_bh(p).prices == r.prices);
}

TEST_CASE("BH rejects bad parameters and explosive paths") {
    BHParams p;
    p.types.clear();
    CHECK_THROWS_AS(simulate_bh(p), ParameterDomain);
    p = {};
    p.sv_persistence = 1.0;
    CHECK_THROWS_AS(simulate_bh(p), ParameterDomain);
    p = {};
    p.types = {{3.0, 0.0, 0.0}};
    p.sigma = 1.0;
    CHECK_THROWS_AS(simulate_bh(p), ParameterDomain);
}

TEST_CASE("BH at canonical parameters has fat tails") {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        BHParams p;
        p.seed = seed;
        total += analytics::kurtosis(simulate_bh(p).returns);
    }
    CHECK(total / 10.0 > 3.0);
}
