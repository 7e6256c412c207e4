#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "relclass/forms.hpp"
#include "relclass/orders.hpp"

using namespace relclass;

namespace {

std::vector<unsigned long> squarefree_list(unsigned long lo, unsigned long hi) {
    std::vector<unsigned long> out;
    auto table = squarefree_table(static_cast<std::uint32_t>(hi));
    for (unsigned long m = lo; m <= hi; ++m) {
        if (table[m]) out.push_back(m);
    }
    return out;
}

}  // namespace

TEST_CASE("psi anchors") {
    CHECK(psi(184, 1) == 1);
    CHECK(psi(184, 2) == 2);
    CHECK(psi(184, 23) == 23);
    CHECK(psi(184, 3) == 2);
    CHECK(psi(184, 46) == 46);  // both primes divide d0
    CHECK(psi(5, 5) == 5);
    CHECK(psi(5, 2) == 3);  // (5/2) = -1
    CHECK_THROWS_AS(psi(20, 2), std::domain_error);  // 20 is not fundamental
    CHECK_THROWS_AS(psi(184, 0), std::domain_error);
}

TEST_CASE("phi anchors") {
    CHECK(phi(184, 23) == 1);
    CHECK(phi(184, 2) == 1);
    CHECK(phi(184, 5) == 2);
    CHECK(phi(184, 1) == 1);
    CHECK(phi(5, 5) == 5);    // Fibonacci: first index with 5 | F_n is 5
    CHECK(phi(5, 2) == 3);    // F_3 = 2
    CHECK(phi(5, 10) == 15);  // F_15 = 610
    CHECK(phi(8, 3) == 4);
}

TEST_CASE("phi divisor search agrees with the exhaustive scan") {
    std::vector<unsigned long> ms = squarefree_list(2, 30);
    ms.push_back(46);
    for (unsigned long m : ms) {
        QuadUnit eps = fundamental_unit(m);
        for (unsigned long f = 2; f <= 50; ++f) {
            REQUIRE(phi(eps, Int(f)) == phi_exhaustive(eps, Int(f)));
        }
    }
}

TEST_CASE("phi marks the first entry into the order") {
    for (unsigned long m : {10ul, 46ul, 5ul, 13ul}) {
        QuadUnit eps = fundamental_unit(m);
        for (unsigned long f = 2; f <= 25; ++f) {
            Int ph = phi(eps, Int(f));
            CHECK(coords_mod(eps, ph, Int(f)).second == 0);
            for (Int n(1); n < ph; ++n) {
                REQUIRE(coords_mod(eps, n, Int(f)).second != 0);
            }
        }
    }
}

TEST_CASE("relative class number anchors") {
    CHECK(relative_class_number(184, 23) == 23);
    CHECK(relative_class_number(184, 2) == 2);
    CHECK(relative_class_number(184, 1) == 1);
    CHECK(relative_class_number(184, 4) == 4);
    CHECK(relative_class_number(40, 2) == 1);
    CHECK(relative_class_number(40, 6) == 2);
    CHECK(relative_class_number(5, 1) == 1);
    CHECK_THROWS_AS(relative_class_number(184, 0), std::domain_error);
}

TEST_CASE("relative class number over a non-maximal base matches the form oracle") {
    // d = 20 = 5 * 2^2: h(500)/h(20), cross-checked through H and the
    // strict/wide unit-norm bookkeeping
    Int h_rel = relative_class_number(20, 5);
    CHECK(h_rel == 1);

    auto [hp500, h500] = strict_and_wide(500);
    auto [hp20, h20] = strict_and_wide(20);
    CHECK(hp500 == form_class_number(500));
    CHECK(hp20 == form_class_number(20));
    REQUIRE(divides(h20, h500));
    CHECK(h_rel == h500 / h20);
}

TEST_CASE("class_record for d0 = 184: both norms +1, all three relatives equal") {
    for (unsigned long f : {2ul, 3ul, 4ul, 5ul, 23ul}) {
        ClassRecord rec = class_record(184, Int(f));
        CHECK(rec.norm_eps_d0 == 1);
        CHECK(rec.norm_eps_d0f2 == 1);
        CHECK(rec.h_plus_rel == rec.h_rel);
        CHECK(rec.H_rel == rec.h_rel);
        CHECK(rec.order.m == 46);
    }
    CHECK(class_record(184, 2).h_rel == 2);
    CHECK(class_record(184, 23).h_rel == 23);
}

TEST_CASE("class_record strict doubling at d0 = 8, f = 3") {
    ClassRecord rec = class_record(8, 3);
    CHECK(rec.psi == 4);
    CHECK(rec.phi == 4);
    CHECK(rec.h_rel == 1);
    CHECK(rec.norm_eps_d0 == -1);
    CHECK(rec.norm_eps_d0f2 == 1);  // even power of a norm -1 unit
    CHECK(rec.h_plus_rel == 2);
    // independent route: H(72)/H(8)
    CHECK(relative_form_class_number(8, 3) == 2);
}

TEST_CASE("class_record at d0 = 5, f = 5 stays trivial") {
    ClassRecord rec = class_record(5, 5);
    CHECK(rec.h_rel == 1);
    CHECK(rec.norm_eps_d0 == -1);
    CHECK(rec.norm_eps_d0f2 == -1);  // phi = 5 is odd
    CHECK(rec.h_plus_rel == 1);
    CHECK(rec.H_rel == 1);
}

TEST_CASE("integrality sweep: phi divides psi, quotient at least 1") {
    for (unsigned long m : squarefree_list(2, 100)) {
        QuadUnit eps = fundamental_unit(m);
        Int d0 = eps.c == 2 ? eps.m : Int(4 * eps.m);
        for (unsigned long f = 1; f <= 200; ++f) {
            Int ps = psi(d0, Int(f));
            Int ph = phi(eps, Int(f));
            REQUIRE(divides(ph, ps));
            REQUIRE(ps / ph >= 1);
        }
    }
}

TEST_CASE("strict/wide norm bookkeeping: +1 never degrades to -1") {
    for (unsigned long m : squarefree_list(2, 50)) {
        QuadUnit eps = fundamental_unit(m);
        for (unsigned long f = 1; f <= 20; ++f) {
            ClassRecord rec = class_record(eps, Int(f));
            REQUIRE_FALSE((rec.norm_eps_d0 == 1 && rec.norm_eps_d0f2 == -1));
            bool doubles = rec.norm_eps_d0 == -1 && rec.norm_eps_d0f2 == 1;
            REQUIRE(rec.h_plus_rel == (doubles ? Int(2 * rec.h_rel) : rec.h_rel));
        }
    }
}

TEST_CASE("half_power_membership anchors for m = 46") {
    QuadUnit eps = fundamental_unit(46);
    CHECK(half_power_membership(eps, 3));
    CHECK(half_power_membership(eps, 5));
    CHECK(half_power_membership(eps, 7));
    CHECK(half_power_membership(Int(46), Int(5)));  // radicand overload
    for (std::uint32_t f : primes_up_to(500)) {
        if (f == 2 || f == 23) continue;
        CHECK(half_power_membership(eps, Int(f)));
    }
}

TEST_CASE("half_power_membership rejects bad inputs") {
    QuadUnit eps46 = fundamental_unit(46);
    CHECK_THROWS_AS(half_power_membership(eps46, 2), std::domain_error);   // even
    CHECK_THROWS_AS(half_power_membership(eps46, 23), std::domain_error);  // divides m
    CHECK_THROWS_AS(half_power_membership(eps46, 9), std::domain_error);   // composite
    QuadUnit eps2 = fundamental_unit(2);
    CHECK_THROWS_AS(half_power_membership(eps2, 5), std::domain_error);    // norm -1
}

TEST_CASE("trivial relative order witnesses") {
    auto w10 = has_trivial_relative_order(10);
    REQUIRE(w10.has_value());
    CHECK(*w10 == 2);
    CHECK(relative_class_number(40, 2) == 1);

    CHECK_FALSE(has_trivial_relative_order(46).has_value());
    CHECK_FALSE(has_trivial_relative_order(430).has_value());

    for (unsigned long m : squarefree_list(2, 45)) {
        auto w = has_trivial_relative_order(m);
        REQUIRE(w.has_value());
        CHECK(is_prime(*w));
        CHECK(divides(*w, Int(m)));
    }
}

TEST_CASE("relative divisibility along conductor divisors") {
    CHECK(relative_divisibility_check(184, 2, 4));
    CHECK(relative_divisibility_check(184, 23, 23));
    CHECK(relative_divisibility_check(184, 5, 5));
    CHECK(relative_divisibility_check(40, 2, 6));
    CHECK_THROWS_AS(relative_divisibility_check(184, 3, 4), std::domain_error);
    // spot-check the lemma more widely at d0 = 184
    for (unsigned long f = 1; f <= 12; ++f) {
        for (unsigned long g = f; g <= 48; g += f) {
            REQUIRE(relative_divisibility_check(184, Int(f), Int(g)));
        }
    }
}
