#include "doctest.h"

#include "nlbound/bounds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace nlbound;

namespace {

TracePolynomial monomial(const FieldCtx& ctx, std::uint64_t coeff, std::uint64_t exp) {
    return TracePolynomial(ctx, {{ctx.element(coeff), exp}});
}

const BoundEntry* entry(const BoundReport& r, const std::string& name) {
    for (const auto& e : r.entries)
        if (e.name == name) return &e;
    return nullptr;
}

long long ceil_of(const BoundReport& r, const std::string& name) {
    const BoundEntry* e = entry(r, name);
    return e ? e->integer_bound : -1;
}

} // namespace

TEST_CASE("rounding invariant: real <= ceil < real + 1") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        int n = 3 + int(rng() % 18);
        int v = int(rng() % (n + 1));
        std::uint64_t q = rng() % (std::uint64_t(1) << n);
        BoundEntry e = bound_main(n, q, v);
        CHECK(e.real_value <= double(e.integer_bound));
        CHECK(double(e.integer_bound) < e.real_value + 1.0);
        CHECK(std::llabs(e.display_round - e.integer_bound) <= 1);
    }
}

TEST_CASE("carlet generic cubic bound") {
    BoundEntry e3 = bound_carlet_cubic(3);
    CHECK(e3.real_value == doctest::Approx(1.172).epsilon(0.001));
    CHECK(e3.integer_bound == 2);
    CHECK(e3.soundness_caveat);

    BoundEntry e10 = bound_carlet_cubic(10);
    CHECK(e10.real_value == doctest::Approx(149.98).epsilon(0.001));
    CHECK(e10.integer_bound == 150);
    CHECK_FALSE(e10.soundness_caveat);

    // ratio to 2^(n-1) approaches 1 - 2^(-1/2)
    BoundEntry e30 = bound_carlet_cubic(30);
    CHECK(e30.real_value / double(1u << 29) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("histogram max bound") {
    // f7 n=5 distribution {1:16, 3:15}: both branches give exactly 6
    BoundEntry e5 = bound_mesnager_max(5, {{1, 16}, {3, 15}});
    CHECK(e5.integer_bound == 6);
    CHECK(e5.real_value == doctest::Approx(6.0));

    // f7 n=7 distribution {1:64, 3:63}: radicand 3168, bound 36
    BoundEntry e7 = bound_mesnager_max(7, {{1, 64}, {3, 63}});
    CHECK(std::uint64_t(e7.radicand) == 3168);
    CHECK(e7.integer_bound == 36);
    CHECK(e7.display_round == 36);

    // degenerate histogram r_a = n: non-positive, flagged vacuous
    BoundEntry ed = bound_mesnager_max(6, {{6, 63}});
    CHECK(ed.vacuous);

    CHECK_THROWS_AS(bound_mesnager_max(5, {}), std::invalid_argument);
    CHECK_THROWS_AS(bound_mesnager_max(5, {{2, 3}}), std::invalid_argument); // parity
}

TEST_CASE("monomial bounds reproduce the printed values") {
    BoundEntry g20 = bound_gode_f(20, 9);
    CHECK(g20.integer_bound == 153561);
    CHECK(g20.display_round == 153560);
    CHECK(g20.applicable);
    BoundEntry g19 = bound_gode_f(19, 9);
    CHECK(g19.integer_bound == 76781);
    CHECK(g19.display_round == 76780);
    CHECK_FALSE(bound_gode_f(8, 4).applicable); // needs n > 2i

    BoundEntry t8 = bound_gode_g(20);
    CHECK(std::uint64_t(t8.radicand) == (1ull << 20) + ((1ull << 20) - 1) * (1ull << 12));
    CHECK_FALSE(bound_gode_g(3).applicable);
}

TEST_CASE("index-range bounds reproduce the printed values") {
    BoundEntry l20 = bound_lihugao(20, 4, 9, 5);
    CHECK(l20.integer_bound == 393216);
    CHECK(l20.display_round == 393215);
    BoundEntry l19 = bound_lihugao(19, 4, 9, 5);
    CHECK(l19.integer_bound == 196608);

    // case dispatch
    CHECK(bound_lihugao(10, 3, 8, 5).reason.find("case 1") != std::string::npos);
    CHECK(bound_lihugao(12, 4, 8, 5).reason.find("case 2") != std::string::npos);
    CHECK(bound_lihugao(16, 4, 8, 5).reason.find("case 3") != std::string::npos);
    CHECK(bound_lihugao(20, 4, 9, 5).reason.find("case 4") != std::string::npos);
    CHECK_FALSE(bound_lihugao(16, 8, 8, -1).applicable); // n = 2t, s = t undefined

    BoundEntry lg20 = bound_lihugao_g(20, 9);
    CHECK(lg20.integer_bound == 153561);
    BoundEntry lg19 = bound_lihugao_g(19, 9);
    CHECK(lg19.integer_bound == 76781);
}

TEST_CASE("root-number bound reproduces the printed values") {
    BoundEntry m20 = bound_main(20, (1ull << 20) - 1, 10);
    CHECK(m20.integer_bound == 431605);
    CHECK(m20.display_round == 431605);
    BoundEntry m19 = bound_main(19, (1ull << 19) - 1, 6);
    CHECK(m19.integer_bound == 238971);

    // n=4, q=14, v=2: exactly 2 (the radicand is a perfect square)
    BoundEntry m4 = bound_main(4, 14, 2);
    CHECK(m4.real_value == doctest::Approx(2.0));
    CHECK(m4.integer_bound == 2);

    // simplified form at q = 2^n-1: radicand 2^n + (2^n-1) 2^floor((n+v)/2)
    BoundEntry m5 = bound_main(5, 31, 3);
    CHECK(std::uint64_t(m5.radicand) == (1ull << 5) + 31ull * (1ull << 4));
}

TEST_CASE("root-number bound monotonicity") {
    for (int n : {6, 11, 16}) {
        const std::uint64_t full = (std::uint64_t(1) << n) - 1;
        for (int v = 0; v + 1 <= n; ++v)
            CHECK(bound_main(n, full, v).real_value >= bound_main(n, full, v + 1).real_value);
        for (std::uint64_t q = 0; q < full; q += full / 7 + 1)
            CHECK(bound_main(n, q, 2).real_value <= bound_main(n, std::min(full, q + full / 7 + 1), 2).real_value);
    }
}

TEST_CASE("gmu coprime displays") {
    // n=5: 16 - sqrt(784)/2 = 2
    BoundEntry e5 = bound_gmu_coprime(5, std::nullopt);
    CHECK(std::uint64_t(e5.radicand) == 784);
    CHECK(e5.real_value == doctest::Approx(2.0));
    CHECK(e5.integer_bound == 2);

    // n=7: display radicand 6240, bound 25 (ceil), 25 (round)
    BoundEntry e7 = bound_gmu_coprime(7, std::nullopt);
    CHECK(std::uint64_t(e7.radicand) == 6240);
    CHECK(e7.integer_bound == 25);

    // n=8 (n = 2 mod 6): 9-scaled radicand 9*2^8 + 21*2^12 - 30*2^4
    BoundEntry e8 = bound_gmu_coprime(8, std::nullopt);
    CHECK(std::uint64_t(e8.radicand) == 9ull * 256 + 21ull * 4096 - 30ull * 16);
    CHECK(e8.scale == 3);

    // n=6 (n = 0 mod 6)
    BoundEntry e6 = bound_gmu_coprime(6, std::nullopt);
    CHECK(std::uint64_t(e6.radicand) == 9ull * 64 + 24ull * 512 - 24ull * 8);
    CHECK(e6.integer_bound == 14);

    // n=9 needs wt(f7)
    CHECK_THROWS_AS(bound_gmu_coprime(9, std::nullopt), std::invalid_argument);
    FieldCtx f9(9);
    std::uint64_t wt = truth_table(monomial(f9, 1, 7)).weight();
    BoundEntry e9 = bound_gmu_coprime(9, wt);
    CHECK(std::uint64_t(e9.radicand) ==
          (1ull << 9) + ((1ull << 9) - 1) * (1ull << 6) - wt * (1ull << 5));
}

TEST_CASE("gmu noncoprime branches") {
    // n=12, r=3 (s=4 even): ||n||_2 < ||r||_2, scaled by 2^g+1
    BoundEntry e12 = bound_gmu_noncoprime(12, 3);
    const unsigned __int128 den = 9, num = den * (1ull << 12) + ((1ull << 12) - 1) * (1ull << 6) * (1ull << 7);
    CHECK(e12.scale == 9);
    CHECK(e12.radicand == num * den);

    // n=15, r=3 (s=5 odd): exponent (n+3r)/2 = 12
    BoundEntry e15 = bound_gmu_noncoprime(15, 3);
    CHECK(std::uint64_t(e15.radicand) == (1ull << 15) + ((1ull << 15) - 1) * (1ull << 12));

    // n=14, r=2 (s=7): radicand 2^14 + (2^14-1) 2^10 (the 2^(5r) family value)
    BoundEntry e14 = bound_gmu_noncoprime(14, 2);
    CHECK(std::uint64_t(e14.radicand) == (1ull << 14) + ((1ull << 14) - 1) * (1ull << 10));

    // n = 3r keeps the tighter 2^(2r) exponent with the trace condition noted
    BoundEntry e9 = bound_gmu_noncoprime(9, 3);
    CHECK(std::uint64_t(e9.radicand) == (1ull << 9) + ((1ull << 9) - 1) * (1ull << 6));
    CHECK(e9.reason.find("relative trace") != std::string::npos);

    BoundEntry eg1 = bound_gmu_noncoprime(10, 3); // gcd = 1: computed but inapplicable
    CHECK_FALSE(eg1.applicable);
}

TEST_CASE("compare_report reproduces the worked n=20/n=19 example set") {
    FieldCtx f20(20);
    BoundReport r20 = compare_report(monomial(f20, 1, (1ull << 9) + (1ull << 5) + 1));
    CHECK(r20.vres.v == 10);
    CHECK(r20.q_size == (1ull << 20) - 1);
    CHECK(ceil_of(r20, "gode_gangopadhyay_f") == 153561);
    CHECK(ceil_of(r20, "li_hu_gao_f") == 393216);
    CHECK(ceil_of(r20, "root_number_v") == 431605);

    FieldCtx f19(19);
    BoundReport r19 = compare_report(monomial(f19, 1, (1ull << 9) + (1ull << 5) + 1));
    CHECK(r19.vres.v == 6);
    CHECK(ceil_of(r19, "gode_gangopadhyay_f") == 76781);
    CHECK(ceil_of(r19, "li_hu_gao_f") == 196608);
    CHECK(ceil_of(r19, "root_number_v") == 238971);

    // the gcd-structured variant at n=20/19: Tr(x^(2^18+2^10+1))
    BoundReport g20 = compare_report(monomial(f20, 1, (1ull << 18) + (1ull << 10) + 1));
    CHECK(g20.vres.v == 12);
    CHECK(ceil_of(g20, "li_hu_gao_g") == 153561);
    CHECK(ceil_of(g20, "root_number_v") == 393216);

    BoundReport g19 = compare_report(monomial(f19, 1, (1ull << 18) + (1ull << 10) + 1));
    CHECK(g19.vres.v == 6);
    CHECK(ceil_of(g19, "li_hu_gao_g") == 76781);
    CHECK(ceil_of(g19, "root_number_v") == 238971);
}

TEST_CASE("compare_report ties the small cases to exact nl2") {
    FieldCtx f4(4);
    BoundReport r4 = compare_report(monomial(f4, 1, 7));
    REQUIRE(r4.nl2.has_value());
    CHECK(*r4.nl2 == 2);
    CHECK(r4.q_size == 14);
    CHECK(r4.vres.v == 2);
    CHECK(ceil_of(r4, "root_number_v") == 2); // tight
    // the (2^n-1)-factor bounds are inapplicable with affine derivatives present
    REQUIRE(entry(r4, "li_hu_gao_f") != nullptr);
    CHECK_FALSE(entry(r4, "li_hu_gao_f")->applicable);
    REQUIRE(entry(r4, "carlet_cubic") != nullptr);
    CHECK_FALSE(entry(r4, "carlet_cubic")->applicable);

    FieldCtx f3(3);
    BoundReport r3 = compare_report(monomial(f3, 1, 7));
    REQUIRE(r3.nl2.has_value());
    CHECK(*r3.nl2 == 1);
    CHECK(ceil_of(r3, "root_number_v") == 1); // tight
}

TEST_CASE("compare_report above the exhaustive-Q cap") {
    FieldCtx f18(18);
    // two-term: |Q| assumed full, recorded on the root-number entry
    TracePolynomial two(f18, {{f18.one(), (1ull << 9) + (1ull << 5) + 1},
                              {f18.element(3), (1ull << 7) + (1ull << 2) + 1}});
    BoundReport r = compare_report(two);
    CHECK_FALSE(r.q_exact);
    CHECK(r.q_size == (1ull << 18) - 1);
    REQUIRE(entry(r, "root_number_v") != nullptr);
    CHECK(entry(r, "root_number_v")->applicable);
    CHECK_FALSE(entry(r, "root_number_v")->reason.empty());

    // monomial with n = i + j has affine derivatives: criterion fails, the
    // (2^n-1)-factor bounds and the overstated-q root bound are flagged
    BoundReport m = compare_report(monomial(f18, 1, (1ull << 10) + (1ull << 8) + 1));
    CHECK_FALSE(m.q_exact);
    REQUIRE(entry(m, "root_number_v") != nullptr);
    CHECK_FALSE(entry(m, "root_number_v")->applicable);
    REQUIRE(entry(m, "li_hu_gao_f") != nullptr);
    CHECK_FALSE(entry(m, "li_hu_gao_f")->applicable);

    // monomial passing the no-affine-derivative criterion keeps everything
    BoundReport g = compare_report(monomial(f18, 1, (1ull << 9) + (1ull << 5) + 1));
    CHECK(g.q_exact);
    CHECK(entry(g, "root_number_v")->applicable);
    CHECK(entry(g, "li_hu_gao_f")->applicable);
}

TEST_CASE("compare_report holds its ordering asserts on every cubic monomial, n <= 10") {
    for (int n = 3; n <= 10; ++n) {
        FieldCtx f(n);
        for (int i = 2; i < n; ++i)
            for (int j = 1; j < i; ++j) {
                std::uint64_t e = (1ull << i) + (1ull << j) + 1;
                if (e > f.group_order()) continue;
                CAPTURE(n);
                CAPTURE(i);
                CAPTURE(j);
                CHECK_NOTHROW(compare_report(monomial(f, 1, e)));
            }
    }
}

TEST_CASE("compare_report ordering and soundness on random two-term cubics") {
    std::mt19937_64 rng(4242);
    for (int n : {4, 5, 6}) {
        FieldCtx f(n);
        int done = 0;
        while (done < 25) {
            int i1 = 2 + int(rng() % (n - 2)), j1 = 1 + int(rng() % (i1 - 1));
            int i2 = 2 + int(rng() % (n - 2)), j2 = 1 + int(rng() % (i2 - 1));
            std::uint64_t d1 = (1ull << i1) + (1ull << j1) + 1;
            std::uint64_t d2 = (1ull << i2) + (1ull << j2) + 1;
            if (d1 == d2 || d1 > f.group_order() || d2 > f.group_order()) continue;
            std::vector<TraceTerm> terms{{FieldElement(1 + rng() % (f.field_size() - 1)), d1},
                                         {FieldElement(1 + rng() % (f.field_size() - 1)), d2}};
            TracePolynomial g(f, std::move(terms));
            if (g.max_exponent_weight() < 3) continue;
            // compare_report throws std::logic_error on any ordering or
            // soundness violation; reaching here green is the assertion
            BoundReport rep = compare_report(g);
            REQUIRE(rep.nl2.has_value());
            ++done;
        }
    }
}
