#include "doctest.h"

#include "dpconvex/geometry.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace dpconvex;
using namespace std::complex_literals;

namespace {

DomainSpec random_domain(Rng& rng, std::size_t max_n = 6) {
    std::uniform_int_distribution<std::size_t> nd(1, max_n);
    std::uniform_real_distribution<double> pd(2.0, 6.0);
    DomainSpec dom;
    dom.p.resize(nd(rng));
    for (auto& p : dom.p)
        p = pd(rng);
    return dom;
}

ComplexVector random_point(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> scale(-3.0, 1.0);
    auto z = sample_complex_gaussian(n, rng);
    const double s = std::pow(10.0, scale(rng));
    for (auto& v : z)
        v *= s;
    return z;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("minkowski examples") {
    CHECK(minkowski(DomainSpec::ball(2, 2.0), ComplexVector{0.0, 0.0}).rho == 0.0);
    CHECK(std::abs(minkowski(DomainSpec::ball(2, 2.0), ComplexVector{0.6, 0.8i}).rho - 1.0) < 1e-12);

    const DomainSpec dom{{2.0, 4.0}};
    const ComplexVector z{0.5, 0.5};
    const double expected = oracle::rho_bisection(dom.p, z);
    const double rho = minkowski(dom, z).rho;
    CHECK(std::abs(rho - expected) < 1e-12);
    CHECK(std::abs(0.25 / (rho * rho) + 0.0625 / std::pow(rho, 4) - 1.0) < 1e-12);
}

TEST_CASE("minkowski rejects bad input") {
    const auto dom = DomainSpec::ball(2, 2.0);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        minkowski(dom, ComplexVector{nan, 0.0});
        FAIL("expected NonFiniteInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFiniteInput);
    }
    CHECK_THROWS_AS(minkowski(dom, ComplexVector{1.0}), Error);
    CHECK_THROWS_AS((DomainSpec{{1.0, 2.0}}.validate()), Error);
    CHECK_THROWS_AS((DomainSpec{{1.5, 2.0}}.require_criterion_exponents()), Error);
    CHECK_NOTHROW((DomainSpec{{1.5, 2.0}}.validate()));
}

TEST_CASE("defining residual, Euclidean agreement and bracket on random points") {
    Rng rng = derive_rng(11, 0);
    for (int t = 0; t < 10000; ++t) {
        const DomainSpec dom = random_domain(rng);
        const auto z = random_point(dom.n(), rng);
        const RhoResult r = minkowski(dom, z);
        REQUIRE(r.rho > 0.0);
        CHECK(std::abs(defining_sum(dom, z, r.rho) - 1.0) <= 1e-10);
        CHECK(std::abs(r.residual) <= 1e-10);

        const double mx = norm_inf(z);
        CHECK(r.rho >= mx * (1 - 1e-14));
        CHECK(r.rho <= std::pow(static_cast<double>(dom.n()), 1.0 / dom.min_exponent()) * mx * (1 + 1e-14));

        const DomainSpec euclid = DomainSpec::ball(dom.n(), 2.0);
        CHECK(std::abs(minkowski(euclid, z).rho - norm2(z)) <= 1e-12 * std::max(1.0, norm2(z)));
    }
}

TEST_CASE("absolute homogeneity") {
    Rng rng = derive_rng(12, 0);
    const std::array<Complex, 4> lambdas{0.5, 2.0, 1i, -1.0 + 1i};
    for (int t = 0; t < 1000; ++t) {
        const DomainSpec dom = random_domain(rng);
        const auto z = random_point(dom.n(), rng);
        const double rho = minkowski(dom, z).rho;
        for (const auto& lam : lambdas) {
            ComplexVector lz = z;
            for (auto& v : lz)
                v *= lam;
            CHECK(std::abs(minkowski(dom, lz).rho - std::abs(lam) * rho) <= 1e-10 * std::max(1.0, rho));
        }
    }
}

TEST_CASE("rho_bar_gradient examples") {
    const auto g = rho_bar_gradient(DomainSpec::ball(2, 2.0), ComplexVector{0.3, 0.4});
    CHECK(std::abs(g[0] - 0.3) < 1e-12);
    CHECK(std::abs(g[1] - 0.4) < 1e-12);

    const DomainSpec dom{{2.0, 4.0}};
    CHECK(rho_bar_gradient(dom, ComplexVector{0.5, 0.0})[1] == Complex(0.0));

    const ComplexVector z{0.5, 0.3 + 0.2i};
    const auto closed = rho_bar_gradient(dom, z);
    const auto fd = oracle::wirtinger_gradient_fd(dom.p, {z.begin(), z.end()});
    for (std::size_t l = 0; l < 2; ++l)
        CHECK(std::abs(closed[l] - fd[l]) <= 1e-6 * std::abs(fd[l]));

    try {
        rho_bar_gradient(dom, ComplexVector{0.0, 0.0});
        FAIL("expected ZeroPoint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroPoint);
    }
}

TEST_CASE("rho_bar_gradient matches the Wirtinger difference oracle") {
    Rng rng = derive_rng(13, 0);
    int tested = 0;
    while (tested < 1000) {
        const DomainSpec dom = random_domain(rng, 4);
        const auto z = sample_interior(dom, rng, 0.0);
        if (norm_inf(z) == 0.0)
            continue;
        bool big = true;
        for (const auto& v : z)
            big = big && std::abs(v) > 1e-3;
        if (!big)
            continue;
        ++tested;
        const auto closed = rho_bar_gradient(dom, z);
        const auto fd = oracle::wirtinger_gradient_fd(dom.p, {z.begin(), z.end()});
        double scale = 0.0;
        for (const auto& v : fd)
            scale = std::max(scale, std::abs(v));
        for (std::size_t l = 0; l < z.size(); ++l)
            CHECK(std::abs(closed[l] - fd[l]) <= 1e-6 * scale);
    }
}

TEST_CASE("contains examples and agreement with rho < 1") {
    CHECK(contains(DomainSpec::ball(2, 2.0), ComplexVector{0.0, 0.0}));
    CHECK_FALSE(contains(DomainSpec::ball(2, 2.0), ComplexVector{1.0, 0.0}));
    CHECK(contains(DomainSpec::ball(2, 3.0), ComplexVector{0.7, 0.7}));

    Rng rng = derive_rng(14, 0);
    for (int t = 0; t < 5000; ++t) {
        const DomainSpec dom = random_domain(rng);
        auto z = sample_complex_gaussian(dom.n(), rng);
        const double rho = minkowski(dom, z).rho;
        if (std::abs(rho - 1.0) < 1e-9)
            continue;
        CHECK(contains(dom, z) == (rho < 1.0));
    }
}

TEST_CASE("interior sampling") {
    const DomainSpec dom{{2.0, 3.0, 5.0}};
    Rng a(3), b(3);
    CHECK(sample_interior(dom, a, 0.3) == sample_interior(dom, b, 0.3));

    Rng rng(4);
    double sum = 0.0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        const auto z = sample_interior(dom, rng, 0.0);
        const double rho = minkowski(dom, z).rho;
        CHECK(contains(dom, z));
        CHECK(rho < 1.0);
        sum += rho;
    }
    CHECK(std::abs(sum / draws - 0.5) <= 0.02);

    for (int t = 0; t < 1000; ++t) {
        const auto z = sample_interior(dom, rng, 0.7);
        const double rho = minkowski(dom, z).rho;
        CHECK(rho > 0.7);
        CHECK(contains(dom, z));
    }
    for (int t = 0; t < 1000; ++t) {
        const auto z = sample_shell(dom, rng, 0.2, 0.4);
        const double rho = minkowski(dom, z).rho;
        CHECK(rho > 0.2);
        CHECK(rho < 0.4);
    }
}

}
