#include "doctest.h"

#include "dpconvex/criterion.hpp"
#include "dpconvex/hypotheses.hpp"

#include <cmath>
#include <map>

using namespace dpconvex;
using namespace std::complex_literals;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidConfig;
}

const ConditionMargin& margin_of(const CheckReport& r, const std::string& id) {
    for (const auto& m : r.margins)
        if (m.condition_id == id)
            return m;
    FAIL("missing condition " << id);
    static ConditionMargin none;
    return none;
}

bool all_margins_nonnegative(const CheckReport& r) {
    for (const auto& m : r.margins)
        if (m.margin < kPassThreshold)
            return false;
    return true;
}

CheckOptions options(std::size_t samples, std::uint64_t seed = 42) {
    CheckOptions o;
    o.samples = samples;
    o.seed = seed;
    return o;
}

CustomComponent terms(std::initializer_list<Monomial> ms) {
    CustomComponent c;
    c.terms.assign(ms);
    return c;
}

} // namespace

TEST_SUITE("hypotheses") {

TEST_CASE("identity satisfies every theorem") {
    for (std::size_t n : {2u, 3u, 4u}) {
        const auto dom = DomainSpec::ball(n, 3.0);
        const auto id = MappingSpec::identity(n);
        const auto r1 = check_theorem1(dom, id, options(200));
        CHECK(r1.passed);
        CHECK(all_margins_nonnegative(r1));
        CHECK(check_theorem2(dom, id, options(200)).passed);
        for (int k = 2; k <= static_cast<int>(n); ++k)
            CHECK(check_theorem3(dom, id, k, options(200)).passed);
    }
    CHECK(check_corollary1(DomainSpec::ball(3, 2.0), MappingSpec::identity(3), options(100)).passed);
    CHECK(code_of([] { check_corollary1(DomainSpec::ball(2, 2.0), MappingSpec::identity(2)); }) ==
          ErrorCode::ShapeMismatch);
}

TEST_CASE("report bookkeeping") {
    const auto dom = DomainSpec{{2.0, 3.0, 3.0}};
    const auto r = check_theorem1(dom, MappingSpec::example1({0.03, 0.03, 0.03}, 2, 0.5), options(100, 9));
    CHECK(r.theorem == "theorem1");
    CHECK(r.seed == 9);
    CHECK(r.samples_used > 100);
    CHECK_FALSE(r.notes.empty());
    for (const auto& m : r.margins) {
        CHECK(std::isfinite(m.margin));
        CHECK(m.margin == doctest::Approx(m.rhs - m.lhs));
        REQUIRE(m.witness_z.size() == 3);
        CHECK(contains(dom, m.witness_z));
    }
    CHECK(r.passed == all_margins_nonnegative(r));
}

TEST_CASE("theorem1 on Example1 instances") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const auto good = check_theorem1(dom, MappingSpec::example1({0.03, 0.03, 0.03}, 2, 0.5), options(1000));
    CHECK(good.passed);

    const auto bad = check_theorem1(dom, MappingSpec::example1({0.3, 0.3, 0.3}, 2, 0.5), options(1000));
    CHECK_FALSE(bad.passed);
    const bool cond2_or_3 = margin_of(bad, "T1.2a").margin < 0 || margin_of(bad, "T1.2b").margin < 0 ||
                            margin_of(bad, "T1.3").margin < 0;
    CHECK(cond2_or_3);
}

TEST_CASE("theorem2 on Example3 instances") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const auto spec = MappingSpec::example3({0.005, 0.005, 0.005}, 2, 0.5);
    CHECK(validate_example3(dom, spec).passed);
    CHECK(check_theorem2(dom, spec, options(1000)).passed);

    const auto bad = MappingSpec::example3({0.005, 0.5, 0.005}, 2, 0.5);
    CHECK_FALSE(check_theorem2(dom, bad, options(1000)).passed);
}

TEST_CASE("theorem3 agrees with theorem2 when k = n") {
    // f = (z_1 + a z_2^2 + b z_1 z_3^2, z_2 + c z_2^2 + d z_3^2, z_3 + e z_3^2) has both shapes.
    const DomainSpec dom{{2.0, 2.0, 2.0}};
    for (double scale : {0.02, 0.6}) {
        const auto spec = MappingSpec::custom({
            terms({Monomial{scale, {0, 2, 0}}, Monomial{scale, {1, 0, 2}}}),
            terms({Monomial{scale, {0, 2, 0}}, Monomial{scale, {0, 0, 2}}}),
            terms({Monomial{scale, {0, 0, 2}}}),
        });
        const auto r2 = check_theorem2(dom, spec, options(500));
        const auto r3 = check_theorem3(dom, spec, 3, options(500));
        CHECK(r2.passed == r3.passed);
        CHECK(r2.passed == (scale < 0.1));
    }
}

TEST_CASE("theorem3 fails on a strong coupling with tight exponents") {
    const DomainSpec dom{{2.0, 2.0, 3.0}};
    const auto spec = MappingSpec::custom({CustomComponent{}, terms({Monomial{0.5, {0, 0, 2}}}), CustomComponent{}});
    const auto r = check_theorem3(dom, spec, 3, options(500));
    CHECK_FALSE(r.passed);
    CHECK(margin_of(r, "T3.4").margin < 0.0);
    CHECK(margin_of(r, "T3.3").margin >= 0.0);
}

TEST_CASE("shape mismatches are rejected") {
    const auto dom4 = DomainSpec::ball(4, 2.0);
    CHECK(code_of([&] { check_theorem1(dom4, MappingSpec::example3({0.01, 0.01, 0.01, 0.01}, 1, 0.5)); }) ==
          ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { check_theorem2(dom4, MappingSpec::example1({0.01, 0.01, 0.01, 0.01}, 1, 0.5)); }) ==
          ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { check_theorem3(dom4, MappingSpec::example3({0.01, 0.01, 0.01, 0.01}, 1, 0.5), 4); }) ==
          ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { check_theorem3(dom4, MappingSpec::identity(4), 1); }) == ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { check_theorem1(DomainSpec{{1.5, 2.0}}, MappingSpec::identity(2)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { check_theorem1(DomainSpec::ball(3, 2.0), MappingSpec::identity(2)); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("theorem4 coefficient inequalities") {
    const auto zero = check_theorem4(MappingSpec::theorem4(0.0, 0.0, 0.0, 0.0));
    CHECK(zero.passed);
    for (const auto& m : zero.margins)
        CHECK(m.margin == 1.0);

    const auto spec = MappingSpec::theorem4(0.05, 0.05, 0.05, 0.05);
    const auto r = check_theorem4(spec);
    CHECK(r.passed);
    // 4a + 2a + 8a^2 + 2a + 4a^2 + 8a^2 + 4a^2 and 2a + 2a + 4a^2 + 4a + 8a^2 + 4a^2 + 8a^2 at a = 0.05
    const double a = 0.05;
    CHECK(margin_of(r, "T4.eq4").lhs == doctest::Approx(8 * a + 24 * a * a).epsilon(1e-14));
    CHECK(margin_of(r, "T4.eq5").lhs == doctest::Approx(8 * a + 24 * a * a).epsilon(1e-14));
    CHECK(margin_of(r, "T4.eq4").lhs == doctest::Approx(0.46).epsilon(1e-14));

    const auto big = check_theorem4(MappingSpec::theorem4(0.5, 0.0, 0.0, 0.0));
    CHECK_FALSE(big.passed);
    CHECK(margin_of(big, "T4.eq4").lhs == doctest::Approx(2.0));

    const auto again = check_theorem4(spec);
    REQUIRE(again.margins.size() == r.margins.size());
    for (std::size_t i = 0; i < r.margins.size(); ++i) {
        CHECK(again.margins[i].margin == r.margins[i].margin);
        CHECK(again.margins[i].lhs == r.margins[i].lhs);
    }

    CHECK(code_of([] { check_theorem4(MappingSpec::identity(2)); }) == ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { check_theorem4(DomainSpec{{2.0, 3.0}}, spec); }) == ErrorCode::ParamOutOfRange);
    CHECK(check_theorem4(DomainSpec::ball(2, 3.0), spec).passed);
}

TEST_CASE("Example1 validator") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const auto zero = validate_example1(dom, MappingSpec::example1({0.0, 0.0, 0.0}, 2, 0.5));
    CHECK(zero.passed);
    CHECK(margin_of(zero, "E1.1").margin == doctest::Approx(0.5 / 13.0));

    const auto ok = validate_example1(dom, MappingSpec::example1({0.03, 0.03, 0.03}, 2, 0.5));
    CHECK(ok.passed);
    CHECK(margin_of(ok, "E1.1").rhs == doctest::Approx(0.0384615384615).epsilon(1e-10));

    const auto fail = validate_example1(dom, MappingSpec::example1({0.05, 0.05, 0.05}, 2, 0.5));
    CHECK_FALSE(fail.passed);
    CHECK(margin_of(fail, "E1.1").margin < 0.0);

    // per-j inequality against a hand evaluation
    const double a = 0.03, k = 2, lam = 0.5;
    const double lhs = ((2.0 + 3.0) / (1 - 2 * a) + 2.0 * (k + 1) * a / ((1 - 2 * a) * (1 - 2 * a))) * a;
    const double rhs = 3.0 * (1 - lam) / ((k + 1) * (k + lam));
    CHECK(margin_of(ok, "E1.2[j=3]").lhs == doctest::Approx(lhs).epsilon(1e-14));
    CHECK(margin_of(ok, "E1.2[j=3]").rhs == doctest::Approx(rhs).epsilon(1e-14));
}

TEST_CASE("validator preconditions") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    CHECK(code_of([&] { validate_example1(dom, MappingSpec::example1({0.01, 0.01, 0.01}, 2, 0.0)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { validate_example1(dom, MappingSpec::example1({0.01, 0.01, 0.01}, 2, 1.5)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { validate_example1(DomainSpec{{3.0, 2.0, 3.0}}, MappingSpec::example1({0.01, 0.01, 0.01}, 2, 0.5)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { validate_example1(dom, MappingSpec::example1({0.01, 0.01, 0.01}, 3, 0.5)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { validate_example1(dom, MappingSpec::example2({0.01, 0.01, 0.01}, 2)); }) ==
          ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { validate_example4(dom, MappingSpec::example4({0.01, 0.01, 0.3}, 2)); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { validate_example(5, dom, MappingSpec::example4({0.01, 0.01, 0.01}, 2)); }) ==
          ErrorCode::ParamOutOfRange);
}

TEST_CASE("Example4 at the boundary a_n = 1/4") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const auto r = validate_example4(dom, MappingSpec::example4({0.0, 0.001, 0.25}, 2));
    // s = 2(0.25)/(1 - 0.5) = 1 makes both right-hand sides 0
    CHECK(margin_of(r, "E4.1").rhs == 0.0);
    CHECK(margin_of(r, "E4.2").rhs == 0.0);
    CHECK_FALSE(r.passed);
}

TEST_CASE("validator margins do not decrease when coefficients shrink") {
    Rng rng = derive_rng(41, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto phase = [&] { return std::polar(1.0, 6.283 * u(rng)); };
    for (int t = 0; t < 200; ++t) {
        const int which = 1 + t % 4;
        const std::size_t n = 3 + static_cast<std::size_t>(t % 2);
        DomainSpec dom;
        dom.p.assign(n, 2.0);
        for (std::size_t j = 1; j < n; ++j)
            dom.p[j] = 2.0 + u(rng);
        dom.p.back() = 3.0;
        std::vector<Complex> a(n);
        for (auto& c : a)
            c = 0.01 * u(rng) * phase();
        const Complex lam = 0.8 * u(rng) * phase() + 0.05;
        auto make = [&](double s) {
            std::vector<Complex> scaled = a;
            for (auto& c : scaled)
                c *= s;
            switch (which) {
            case 1: return MappingSpec::example1(scaled, 2, lam);
            case 2: return MappingSpec::example2(scaled, 2);
            case 3: return MappingSpec::example3(scaled, 2, lam);
            default: {
                scaled.back() = 0.01 + 0.1 * std::abs(scaled.back());
                return MappingSpec::example4(scaled, 2);
            }
            }
        };
        const auto base = validate_example(which, dom, make(1.0));
        const auto shrunk = validate_example(which, dom, make(u(rng)));
        REQUIRE(base.margins.size() == shrunk.margins.size());
        for (std::size_t i = 0; i < base.margins.size(); ++i)
            CHECK(shrunk.margins[i].margin >= base.margins[i].margin - 1e-12);
    }
}

TEST_CASE("an injected witness is reported") {
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const Mapping map{MappingSpec::example1({0.3, 0.3, 0.3}, 2, 0.5)};
    Rng rng = derive_rng(42, 0);
    ComplexVector witness;
    std::string failing;
    for (int t = 0; t < 1000 && witness.empty(); ++t) {
        const auto z = sample_interior(dom, rng, 0.0);
        for (const auto& c : theorem1_conditions(dom, map, z))
            if (c.rhs - c.lhs <= -1e-3) {
                witness = z;
                failing = c.condition_id;
                break;
            }
    }
    REQUIRE_FALSE(witness.empty());
    CheckOptions o;
    o.samples = 0;
    o.probe_axes = false;
    o.extra_points = {witness};
    const auto r = check_theorem1(dom, map.spec(), o);
    CHECK_FALSE(r.passed);
    CHECK(r.samples_used == 1);
    CHECK(margin_of(r, failing).margin <= -1e-3);
    CHECK(margin_of(r, failing).witness_z == witness);

    o.extra_points = {ComplexVector{0.0, 0.0, 0.0}};
    CHECK(code_of([&] { check_theorem1(dom, map.spec(), o); }) == ErrorCode::ParamOutOfRange);
}

TEST_CASE("soundness chain: validated instances pass their theorem and the criterion scan") {
    struct Instance {
        int which;
        DomainSpec dom;
        MappingSpec spec;
    };
    std::vector<Instance> cases{
        {1, DomainSpec{{2.0, 3.0, 3.0}}, MappingSpec::example1({0.03, 0.03, 0.03}, 2, 0.5)},
        {1, DomainSpec{{2.0, 2.5, 2.5, 3.0}}, MappingSpec::example1({0.02, -0.01i, 0.02, 0.01}, 2, 0.3i)},
        {2, DomainSpec{{2.0, 2.0, 2.0}}, MappingSpec::example2({0.05, 0.05, 0.05}, 1)},
        {2, DomainSpec{{2.0, 2.0, 2.0, 2.0}}, MappingSpec::example2({0.03i, 0.04, -0.02, 0.05}, 1)},
        {3, DomainSpec{{2.0, 3.0, 3.0}}, MappingSpec::example3({0.005, 0.005, 0.005}, 2, 0.5)},
        {3, DomainSpec{{2.0, 2.0, 2.0}}, MappingSpec::example3({0.01, 0.01i, 0.01}, 1, -0.6)},
        {4, DomainSpec{{2.0, 3.0, 3.0}}, MappingSpec::example4({0.005, 0.005, 0.005}, 2)},
        {4, DomainSpec{{2.0, 2.5, 3.0, 3.0}}, MappingSpec::example4({0.0, 0.004, 0.003i, 0.005}, 2)},
    };
    for (const auto& c : cases) {
        CAPTURE(c.which);
        CAPTURE(c.dom.n());
        REQUIRE(validate_example(c.which, c.dom, c.spec).passed);
        const auto check = c.which <= 2 ? check_theorem1(c.dom, c.spec, options(1000))
                                        : check_theorem2(c.dom, c.spec, options(1000));
        CHECK(check.passed);
        ScanOptions so;
        so.samples = 10000;
        CHECK(scan(c.dom, c.spec, so).min_j >= -1e-8);
    }
}

TEST_CASE("Example2 with p_j > 2 passes its validator but not theorem1") {
    // Documented finding: the a_j z_j^2 terms of f_2 make T1.4 fail as z_j -> 0.
    const DomainSpec dom{{2.0, 3.0, 3.0}};
    const auto spec = MappingSpec::example2({0.02, 0.02, 0.02}, 2);
    CHECK(validate_example2(dom, spec).passed);
    const auto r = check_theorem1(dom, spec, options(1000));
    CHECK_FALSE(r.passed);
    CHECK(margin_of(r, "T1.4").margin < 0.0);
    ScanOptions so;
    so.samples = 10000;
    CHECK(scan(dom, spec, so).min_j >= -1e-8);
}

}
