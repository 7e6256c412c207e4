#pragma once

#include <map>
#include <utility>
#include <vector>

#include "relclass/arith.hpp"
#include "relclass/orders.hpp"
#include "relclass/pell.hpp"

namespace relclass {

/// Properly primitive integral binary quadratic form a x^2 + b xy + c y^2 of
/// positive non-square discriminant d = b^2 - 4ac.
struct IndefiniteForm {
    Int a;
    Int b;
    Int c;
    Int d;

    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }

    bool operator==(const IndefiniteForm& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

/// One reduction cycle: applying rho_step to the last form yields the first.
struct FormCycle {
    std::vector<IndefiniteForm> forms;
};

namespace detail {

inline void require_discriminant(const Int& d, const char* who) {
    if (d <= 0) throw std::domain_error(std::string(who) + ": discriminant must be positive");
    Int r4 = mod(d, 4);
    if (r4 == 2 || r4 == 3) throw std::domain_error(std::string(who) + ": d = 2,3 (mod 4) is not a discriminant");
    if (is_square(d)) throw std::domain_error(std::string(who) + ": square discriminant");
}

inline void require_valid_form(const IndefiniteForm& F, const char* who) {
    require_discriminant(F.d, who);
    if (F.a == 0 || F.c == 0) throw std::domain_error(std::string(who) + ": outer coefficient is zero");
    if (F.b * F.b - 4 * F.a * F.c != F.d) throw std::domain_error(std::string(who) + ": discriminant mismatch");
    if (gcd_int(gcd_int(F.a, F.b), F.c) != 1) throw std::domain_error(std::string(who) + ": form is not properly primitive");
}

}  // namespace detail

/// Reduction convention: 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b.
/// With s = isqrt(d) and d non-square these are the exact integer tests
/// b <= s, 2|a| >= s+1-b, 2|a| <= s+b.
inline bool is_reduced(const IndefiniteForm& F) {
    Int s = isqrt(F.d);
    if (F.b < 1 || F.b > s) return false;
    Int twoa = 2 * abs(F.a);
    return twoa >= s + 1 - F.b && twoa <= s + F.b;
}

/// All properly primitive reduced forms of discriminant d, ordered
/// lexicographically by (a, b).  c is forced by (a, b, d), so the scan over
/// the reduced (a, b) box is complete.
inline std::vector<IndefiniteForm> reduced_forms(const Int& d) {
    detail::require_discriminant(d, "reduced_forms");
    Int s = isqrt(d);
    std::vector<IndefiniteForm> out;
    for (Int b = mpz_odd_p(d.get_mpz_t()) ? 1 : 2; b <= s; b += 2) {
        Int num = b * b - d;  // = 4ac < 0
        Int lo = s + 1 - b;   // <= 2|a|
        Int aa_lo = lo <= 2 ? Int(1) : Int((lo + 1) / 2);
        Int aa_hi = (s + b) / 2;
        for (Int aa = aa_lo; aa <= aa_hi; ++aa) {
            if (!divides(4 * aa, num)) continue;
            Int cc = num / (4 * aa);  // c for a = +|a|
            if (gcd_int(gcd_int(aa, b), cc) != 1) continue;
            out.push_back({aa, b, cc, d});
            out.push_back({-aa, b, -cc, d});
        }
    }
    std::sort(out.begin(), out.end(), [](const IndefiniteForm& x, const IndefiniteForm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

/// Right neighbor of a reduced form: (a, b, c) -> (c, b', c') with
/// b' = -b (mod 2|c|) taken in the reduced window (sqrt(d) - 2|c|, sqrt(d)).
/// The output is reduced and properly equivalent to the input; iterating
/// returns to the start, and the cycles partition the reduced forms.
inline IndefiniteForm rho_step(const IndefiniteForm& F) {
    detail::require_valid_form(F, "rho_step");
    if (!is_reduced(F)) throw std::domain_error("rho_step: form is not reduced");
    Int s = isqrt(F.d);
    Int two_c = 2 * abs(F.c);
    Int bp = s - mod(s + F.b, two_c);
    Int cp = (bp * bp - F.d) / (4 * F.c);
    return {F.c, bp, cp, F.d};
}

/// The rho-cycles of discriminant d, each started from its least unvisited
/// form in (a, b) order.
inline std::vector<FormCycle> form_cycles(const Int& d) {
    auto forms = reduced_forms(d);
    std::map<std::pair<Int, Int>, std::size_t> index;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        index.emplace(std::make_pair(forms[i].a, forms[i].b), i);
    }
    std::vector<char> visited(forms.size(), 0);
    std::vector<FormCycle> cycles;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (visited[i]) continue;
        FormCycle cyc;
        std::size_t at = i;
        do {
            visited[at] = 1;
            cyc.forms.push_back(forms[at]);
            IndefiniteForm next = rho_step(forms[at]);
            auto it = index.find({next.a, next.b});
            if (it == index.end() || !(forms[it->second] == next)) {
                throw verification_error("form_cycles: rho stepped outside the reduced set for d = " + d.get_str());
            }
            at = it->second;
        } while (at != i);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

/// H(d): number of proper equivalence classes of properly primitive forms,
/// counted as rho-cycles.
inline Int form_class_number(const Int& d) {
    return Int(static_cast<unsigned long>(form_cycles(d).size()));
}

/// (h_plus, h) of the order of discriminant d = d0 f^2: the strict class
/// number is H(d) by the form/ideal correspondence, and the wide one drops a
/// factor 2 exactly when the order's fundamental unit has norm +1.
inline std::pair<Int, Int> strict_and_wide(const Int& d) {
    auto [d0, f] = split_discriminant(d);
    Int h_plus = form_class_number(d);
    QuadUnit eps = fundamental_unit(detail::m_of_fundamental(d0));
    int norm_order = (eps.norm == -1 && mpz_odd_p(phi(eps, f).get_mpz_t())) ? -1 : +1;
    if (norm_order == -1) return {h_plus, h_plus};
    if (!divides(Int(2), h_plus)) {
        throw verification_error("strict_and_wide: strict class number must be even when the unit norm is +1, d = " + d.get_str());
    }
    return {h_plus, h_plus / 2};
}

/// H_{d0}(f) = H(d0 f^2) / H(d0); the quotient is an integer.
inline Int relative_form_class_number(const Int& d0, const Int& f) {
    if (f < 1) throw std::domain_error("relative_form_class_number: conductor must be >= 1");
    detail::require_fundamental(d0, "relative_form_class_number");
    Int base = form_class_number(d0);
    Int total = form_class_number(d0 * f * f);
    if (!divides(base, total)) {
        throw verification_error("relative_form_class_number: H(d0) does not divide H(d0 f^2) at d0 = " +
                                 d0.get_str() + ", f = " + f.get_str());
    }
    return total / base;
}

}  // namespace relclass
