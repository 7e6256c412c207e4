#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "relclass/forms.hpp"

using namespace relclass;

namespace {

bool contains(const std::vector<IndefiniteForm>& forms, long a, long b, long c) {
    for (const auto& F : forms) {
        if (F.a == a && F.b == b && F.c == c) return true;
    }
    return false;
}

std::vector<Int> discriminants_up_to(unsigned long limit) {
    std::vector<Int> out;
    for (unsigned long d = 5; d <= limit; ++d) {
        if (d % 4 != 0 && d % 4 != 1) continue;
        if (is_square(Int(d))) continue;
        out.push_back(Int(d));
    }
    return out;
}

}  // namespace

TEST_CASE("reduced forms of small discriminants") {
    auto f5 = reduced_forms(5);
    REQUIRE(f5.size() == 2);
    CHECK(contains(f5, 1, 1, -1));
    CHECK(contains(f5, -1, 1, 1));
    CHECK(form_class_number(5) == 1);

    auto f8 = reduced_forms(8);
    CHECK(contains(f8, 1, 2, -1));
    CHECK(form_class_number(8) == 1);

    auto f12 = reduced_forms(12);
    CHECK(contains(f12, 1, 2, -2));
    CHECK(contains(f12, -1, 2, 2));
    CHECK(form_class_number(12) == 2);

    CHECK_THROWS_AS(reduced_forms(16), std::domain_error);  // square
    CHECK_THROWS_AS(reduced_forms(7), std::domain_error);   // 3 mod 4
    CHECK_THROWS_AS(reduced_forms(Int(-4)), std::domain_error);
}

TEST_CASE("every enumerated form is valid, reduced, primitive, ordered") {
    for (const Int& d : discriminants_up_to(600)) {
        auto forms = reduced_forms(d);
        REQUIRE(!forms.empty());
        for (std::size_t i = 0; i < forms.size(); ++i) {
            const auto& F = forms[i];
            REQUIRE(F.b * F.b - 4 * F.a * F.c == d);
            REQUIRE(gcd_int(gcd_int(F.a, F.b), F.c) == 1);
            REQUIRE(is_reduced(F));
            REQUIRE(F.eval(1, 0) == F.a);
            REQUIRE(F.eval(0, 1) == F.c);
            REQUIRE(F.eval(1, 1) == F.a + F.b + F.c);
            if (i > 0) {
                REQUIRE((forms[i - 1].a < F.a || (forms[i - 1].a == F.a && forms[i - 1].b < F.b)));
            }
        }
    }
}

TEST_CASE("bounded enumeration matches the naive wide scan") {
    for (const Int& d : discriminants_up_to(2000)) {
        auto fast = reduced_forms(d);
        auto wide = oracle::naive_reduced_scan(d);
        REQUIRE(fast.size() == wide.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            REQUIRE(fast[i] == wide[i]);
        }
    }
}

TEST_CASE("rho_step anchors") {
    IndefiniteForm F{1, 2, -1, 8};
    IndefiniteForm G = rho_step(F);
    CHECK(G.a == -1);
    CHECK(G.b == 2);
    CHECK(G.c == 1);
    CHECK(rho_step(G) == F);

    // cycle through d = 5 returns to start in finitely many steps
    IndefiniteForm start{1, 1, -1, 5};
    IndefiniteForm cur = start;
    int steps = 0;
    do {
        cur = rho_step(cur);
        ++steps;
        REQUIRE(steps <= 100);
    } while (!(cur == start));
    CHECK(steps == 2);
    CHECK(steps % 2 == 0);

    IndefiniteForm not_reduced{1, 1, -46, 185};
    CHECK_THROWS_AS(rho_step(not_reduced), std::domain_error);
    IndefiniteForm imprimitive{2, 2, -2, 20};
    CHECK_THROWS_AS(rho_step(imprimitive), std::domain_error);
}

TEST_CASE("rho is a bijection on the reduced set and cycles have even length") {
    for (const Int& d : discriminants_up_to(500)) {
        auto forms = reduced_forms(d);
        std::map<std::pair<Int, Int>, int> preimages;
        for (const auto& F : forms) {
            IndefiniteForm G = rho_step(F);
            ++preimages[{G.a, G.b}];
        }
        REQUIRE(preimages.size() == forms.size());
        for (const auto& [key, count] : preimages) REQUIRE(count == 1);

        std::size_t total = 0;
        for (const auto& cyc : form_cycles(d)) {
            REQUIRE(cyc.forms.size() % 2 == 0);
            REQUIRE(rho_step(cyc.forms.back()) == cyc.forms.front());
            total += cyc.forms.size();
        }
        REQUIRE(total == forms.size());
    }
}

TEST_CASE("form class number anchors") {
    CHECK(form_class_number(5) == 1);
    CHECK(form_class_number(125) == 1);
    CHECK(form_class_number(184) == 2);
    CHECK(form_class_number(40) == 2);
    CHECK(form_class_number(72) == 2);
    CHECK(form_class_number(32) == 2);
    CHECK(form_class_number(20) == 1);
}

TEST_CASE("strict and wide class numbers") {
    CHECK(strict_and_wide(184) == std::pair<Int, Int>{2, 1});
    CHECK(strict_and_wide(5) == std::pair<Int, Int>{1, 1});
    CHECK(strict_and_wide(8) == std::pair<Int, Int>{1, 1});
    CHECK(strict_and_wide(32) == std::pair<Int, Int>{2, 1});
    CHECK(strict_and_wide(72) == std::pair<Int, Int>{2, 1});
}

TEST_CASE("relative form class numbers") {
    CHECK(relative_form_class_number(5, 5) == 1);
    CHECK(relative_form_class_number(184, 2) == 2);
    CHECK(relative_form_class_number(184, 1) == 1);
    CHECK(relative_form_class_number(8, 1) == 1);
    CHECK_THROWS_AS(relative_form_class_number(20, 2), std::domain_error);
}

TEST_CASE("class counts never shrink under conductors") {
    for (unsigned long m : {2ul, 3ul, 5ul, 6ul, 7ul, 10ul, 46ul}) {
        Int d0 = discriminant_of(Int(m));
        Int H0 = form_class_number(d0);
        REQUIRE(H0 >= 1);
        for (unsigned long f = 1; f <= 6; ++f) {
            Int Ht = form_class_number(d0 * f * f);
            REQUIRE(Ht >= H0);
            REQUIRE(divides(H0, Ht));
        }
    }
}
