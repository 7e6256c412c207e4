#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relclass/arith.hpp"
#include "relclass/forms.hpp"
#include "relclass/orders.hpp"
#include "relclass/parallel.hpp"
#include "relclass/pell.hpp"

namespace relclass {

using KV = std::vector<std::pair<std::string, std::string>>;

struct CampaignItem {
    std::string kind;
    KV fields;

    bool operator==(const CampaignItem&) const = default;
};

/// Outcome of one batch verification.  The item list is deterministic given
/// the parameters — independent of thread count and scheduling; only wall_ms
/// varies between runs.
struct CampaignResult {
    std::string name;
    KV parameters;
    std::vector<CampaignItem> items;
    bool passed = true;
    KV counts;
    std::int64_t wall_ms = 0;
};

namespace detail {

inline std::string str(const Int& v) { return v.get_str(); }

inline std::string sign_str(int s) { return s >= 0 ? "+1" : "-1"; }

class Stopwatch {
  public:
    std::int64_t ms() const {
        auto dt = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Relative class number evidence for one prime conductor of the field
// Q(sqrt(m)): the half-power route where it applies, psi/phi directly
// otherwise.  Used for the m | y hits beyond the proven m = 46 case.
struct ConductorEvidence {
    Int h;
    bool half_power_applies = false;
    bool half_power = false;
};

inline ConductorEvidence conductor_evidence(const QuadUnit& eps, const Int& f) {
    ConductorEvidence ev;
    ev.h = relative_class_number(eps, f);
    if (eps.norm == 1 && mpz_odd_p(f.get_mpz_t()) && gcd_int(f, 2 * eps.m) == 1) {
        ev.half_power_applies = true;
        ev.half_power = half_power_membership(eps, f);
    }
    return ev;
}

}  // namespace detail

/// Every non-maximal order of Q(sqrt(46)) has relative ideal class number
/// greater than one.  Checks every prime conductor f <= f_max — exact values
/// h(2) = 2 and h(23) = 23 for the two primes dividing 46, the half-power
/// criterion plus h >= 2 for all others — and every composite conductor up
/// to min(f_max, 1000) both directly and through the divisibility of
/// relative class numbers along divisors.  Any failure throws.
inline CampaignResult verify_q46(const Int& f_max, unsigned jobs = 0) {
    if (f_max < 2) throw std::domain_error("verify_q46: f_max must be >= 2");
    detail::Stopwatch timer;
    const QuadUnit eps = fundamental_unit(46);
    const Int d0(184);

    std::vector<std::uint64_t> conductors;
    std::uint64_t fmax = to_ulong(f_max);
    std::uint64_t dense_top = std::min<std::uint64_t>(fmax, 1000);
    for (std::uint64_t f = 2; f <= dense_top; ++f) conductors.push_back(f);
    if (fmax > dense_top) {
        for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(fmax))) {
            if (p > dense_top) conductors.push_back(p);
        }
    }

    std::uint64_t primes_checked = 0, composites_checked = 0;
    auto items = parallel_map(conductors, jobs, [&](std::uint64_t fv) -> CampaignItem {
        Int f(static_cast<unsigned long>(fv));
        Int ps = psi(d0, f);
        Int ph = phi(eps, f);
        Int h = ps / ph;
        std::string mechanism;
        if (is_prime(f)) {
            if (f == 2 || f == 23) {
                mechanism = "unit_in_order";
                if (ph != 1) throw verification_error("verify_q46: unit should lie in the order at f = " + f.get_str());
                if ((f == 2 && h != 2) || (f == 23 && h != 23)) {
                    throw verification_error("verify_q46: h(184, " + f.get_str() + ") = " + h.get_str());
                }
            } else {
                mechanism = "half_power";
                if (!half_power_membership(eps, f)) {
                    throw verification_error("verify_q46: half-power membership failed at f = " + f.get_str());
                }
            }
            if (h < 2) throw verification_error("verify_q46: relative class number 1 at prime f = " + f.get_str());
        } else {
            mechanism = "divisibility";
            Int p = factor(f).front().prime;
            Int hp = relative_class_number(eps, p);
            if (!divides(hp, h)) {
                throw verification_error("verify_q46: h(184, " + p.get_str() + ") does not divide h(184, " + f.get_str() + ")");
            }
            if (h < 2 || hp < 2) {
                throw verification_error("verify_q46: composite conductor " + f.get_str() + " gave relative class number " + h.get_str());
            }
        }
        return {is_prime(f) ? "prime_conductor" : "composite_conductor",
                {{"f", detail::str(f)},
                 {"psi", detail::str(ps)},
                 {"phi", detail::str(ph)},
                 {"h", detail::str(h)},
                 {"mechanism", mechanism}}};
    });
    for (const auto& it : items) {
        if (it.kind == "prime_conductor") ++primes_checked;
        else ++composites_checked;
    }

    CampaignResult res;
    res.name = "verify46";
    res.parameters = {{"f_max", detail::str(f_max)}};
    res.items = std::move(items);
    res.counts = {{"primes_checked", std::to_string(primes_checked)},
                  {"composites_checked", std::to_string(composites_checked)}};
    res.wall_ms = timer.ms();
    return res;
}

/// Squarefree m <= m_max whose fundamental unit has m | y.  Each hit is
/// reported together with prime-conductor evidence up to f = 1000: which
/// conductors (if any) still give relative class number 1, and whether the
/// half-power criterion held wherever it applies.  Only m = 46 carries a
/// hard assertion.
inline CampaignResult scan_m_divides_y(const Int& m_max, unsigned jobs = 0) {
    if (m_max < 2) throw std::domain_error("scan_m_divides_y: m_max must be >= 2");
    detail::Stopwatch timer;
    std::uint64_t mm = to_ulong(m_max);
    auto sqfree = squarefree_table(static_cast<std::uint32_t>(mm));
    std::vector<std::uint64_t> ms;
    for (std::uint64_t m = 2; m <= mm; ++m) {
        if (sqfree[m]) ms.push_back(m);
    }

    auto hit_flags = parallel_map(ms, jobs, [](std::uint64_t mv) -> char {
        Int m(static_cast<unsigned long>(mv));
        QuadUnit eps = fundamental_unit(m);
        return mod(eps.y, m) == 0 ? 1 : 0;
    });

    const Int evidence_fmax(1000);
    auto evidence_primes = primes_up_to(1000);
    std::vector<CampaignItem> items;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!hit_flags[i]) continue;
        Int m(static_cast<unsigned long>(ms[i]));
        QuadUnit eps = fundamental_unit(m);
        std::string trivial, hp_failures;
        for (std::uint32_t p : evidence_primes) {
            auto ev = detail::conductor_evidence(eps, Int(p));
            if (ev.h == 1) trivial += (trivial.empty() ? "" : ",") + std::to_string(p);
            if (ev.half_power_applies && !ev.half_power) {
                hp_failures += (hp_failures.empty() ? "" : ",") + std::to_string(p);
            }
        }
        if (m == 46 && (!trivial.empty() || !hp_failures.empty())) {
            throw verification_error("scan_m_divides_y: m = 46 must have no trivial conductor and full half-power membership");
        }
        items.push_back({"mdy_hit",
                         {{"m", detail::str(m)},
                          {"y_mod_m", "0"},
                          {"norm", detail::sign_str(eps.norm)},
                          {"evidence_f_max", detail::str(evidence_fmax)},
                          {"trivial_conductors", trivial.empty() ? "none" : trivial},
                          {"half_power_failures", hp_failures.empty() ? "none" : hp_failures}}});
    }

    CampaignResult res;
    res.name = "scan-mdy";
    res.parameters = {{"m_max", detail::str(m_max)}};
    res.items = std::move(items);
    res.counts = {{"scanned", std::to_string(ms.size())},
                  {"hits", std::to_string(res.items.size())}};
    res.wall_ms = timer.ms();
    return res;
}

/// Ankeny–Artin–Chowla / Mordell scan: for every odd prime p <= p_max,
/// report whether p divides the y coordinate of the fundamental unit of
/// Q(sqrt(p)), split by p mod 4.  Counterexamples are reported, never
/// asserted absent — both questions are open.
inline CampaignResult scan_aac(const Int& p_max, unsigned jobs = 0) {
    if (p_max < 5) throw std::domain_error("scan_aac: p_max must be >= 5");
    detail::Stopwatch timer;
    auto primes = primes_up_to(static_cast<std::uint32_t>(to_ulong(p_max)));
    std::vector<std::uint64_t> ps;
    for (std::uint32_t p : primes) {
        if (p >= 3) ps.push_back(p);
    }

    auto items = parallel_map(ps, jobs, [](std::uint64_t pv) -> CampaignItem {
        Int p(static_cast<unsigned long>(pv));
        QuadUnit eps = fundamental_unit(p);
        Int y_mod = mod(eps.y, p);
        return {"aac_prime",
                {{"p", detail::str(p)},
                 {"p_mod_4", detail::str(mod(p, 4))},
                 {"y_mod_p", detail::str(y_mod)},
                 {"counterexample", y_mod == 0 ? "1" : "0"}}};
    });

    std::uint64_t n1 = 0, n3 = 0, cex = 0;
    for (const auto& it : items) {
        if (it.fields[1].second == "1") ++n1;
        else ++n3;
        if (it.fields[3].second == "1") ++cex;
    }

    CampaignResult res;
    res.name = "aac";
    res.parameters = {{"p_max", detail::str(p_max)}};
    res.items = std::move(items);
    res.counts = {{"checked_1_mod_4", std::to_string(n1)},
                  {"checked_3_mod_4", std::to_string(n3)},
                  {"counterexamples", std::to_string(cex)}};
    res.wall_ms = timer.ms();
    return res;
}

/// Cohn's tower over Q(sqrt(5)): the relative class numbers at conductors
/// 5^n are all 1, so the form class numbers H(5^(2n+1)) stay 1 as well.
/// The psi/phi route runs for every n <= n_max; the independent form
/// enumeration confirms it while 5^(2n+1) <= 1e6.
inline CampaignResult cohn_tower(unsigned n_max) {
    if (n_max < 1) throw std::domain_error("cohn_tower: n_max must be >= 1");
    detail::Stopwatch timer;
    const QuadUnit eps = fundamental_unit(5);
    if (form_class_number(5) != 1) throw verification_error("cohn_tower: H(5) must be 1");

    const Int form_limit(1000000);
    std::vector<CampaignItem> items;
    Int f(1);
    for (unsigned n = 1; n <= n_max; ++n) {
        f *= 5;
        ClassRecord rec = class_record(eps, f);
        if (rec.h_rel != 1 || rec.H_rel != 1) {
            throw verification_error("cohn_tower: relative class number at f = 5^" + std::to_string(n) + " is not 1");
        }
        Int d = 5 * f * f;
        std::string form_H = "skipped";
        if (d <= form_limit) {
            Int H = form_class_number(d);
            if (H != 1) throw verification_error("cohn_tower: H(" + d.get_str() + ") = " + H.get_str());
            if (relative_form_class_number(5, f) != 1) {
                throw verification_error("cohn_tower: relative form class number at f = 5^" + std::to_string(n) + " is not 1");
            }
            form_H = H.get_str();
        }
        items.push_back({"cohn_level",
                         {{"n", std::to_string(n)},
                          {"f", detail::str(f)},
                          {"psi", detail::str(rec.psi)},
                          {"phi", detail::str(rec.phi)},
                          {"H_rel", detail::str(rec.H_rel)},
                          {"form_H", form_H}}});
    }

    CampaignResult res;
    res.name = "cohn";
    res.parameters = {{"n_max", std::to_string(n_max)}};
    res.items = std::move(items);
    res.counts = {{"levels", std::to_string(n_max)}};
    res.wall_ms = timer.ms();
    return res;
}

/// For every squarefree 1 < m <= m_max with m not dividing y(eps_m), find
/// the witness prime f | m with f not dividing y and verify h_{d0}(f) = 1
/// from scratch.  Hits of the m | y scan are skipped with a reason.
inline CampaignResult sweep_witnesses(const Int& m_max, unsigned jobs = 0) {
    if (m_max < 2) throw std::domain_error("sweep_witnesses: m_max must be >= 2");
    detail::Stopwatch timer;
    std::uint64_t mm = to_ulong(m_max);
    auto sqfree = squarefree_table(static_cast<std::uint32_t>(mm));
    std::vector<std::uint64_t> ms;
    for (std::uint64_t m = 2; m <= mm; ++m) {
        if (sqfree[m]) ms.push_back(m);
    }

    auto items = parallel_map(ms, jobs, [](std::uint64_t mv) -> CampaignItem {
        Int m(static_cast<unsigned long>(mv));
        auto witness = has_trivial_relative_order(m);
        if (!witness) {
            return {"sweep_skip", {{"m", detail::str(m)}, {"reason", "m divides y"}}};
        }
        // re-check the witness from scratch
        const Int& f = *witness;
        QuadUnit eps = fundamental_unit(m);
        if (!is_prime(f) || !divides(f, m) || mod(eps.y, f) == 0 ||
            relative_class_number(eps, f) != 1) {
            throw verification_error("sweep_witnesses: witness re-check failed at m = " + m.get_str());
        }
        return {"sweep_witness", {{"m", detail::str(m)}, {"witness_f", detail::str(f)}, {"h", "1"}}};
    });

    std::uint64_t witnesses = 0, skipped = 0;
    for (const auto& it : items) {
        if (it.kind == "sweep_witness") ++witnesses;
        else ++skipped;
    }

    CampaignResult res;
    res.name = "sweep31";
    res.parameters = {{"m_max", detail::str(m_max)}};
    res.items = std::move(items);
    res.counts = {{"witnesses", std::to_string(witnesses)}, {"skipped", std::to_string(skipped)}};
    res.wall_ms = timer.ms();
    return res;
}

/// Oracle equivalence: for every fundamental d0 and f >= 1 with
/// d0 f^2 <= limit, the relative form class number from reduction-cycle
/// enumeration must equal h_plus_rel from the psi/phi route — two
/// computations with no shared code path.  Also checks the strict/wide
/// factor-of-2 rule and that norm(eps_d0) = +1 never pairs with
/// norm(eps_d0f2) = -1.
inline CampaignResult cross_check_forms(const Int& limit, unsigned jobs = 0) {
    if (limit < 20) throw std::domain_error("cross_check_forms: limit must be >= 20");
    detail::Stopwatch timer;
    std::uint64_t lim = to_ulong(limit);
    auto sqfree = squarefree_table(static_cast<std::uint32_t>(lim));
    std::vector<std::uint64_t> ms;
    for (std::uint64_t m = 2; m <= lim; ++m) {
        if (!sqfree[m]) continue;
        std::uint64_t d0 = (m % 4 == 1) ? m : 4 * m;
        if (d0 <= lim) ms.push_back(m);
    }

    auto groups = parallel_map(ms, jobs, [&](std::uint64_t mv) -> std::vector<CampaignItem> {
        Int m(static_cast<unsigned long>(mv));
        Int d0 = mod(m, 4) == 1 ? m : Int(4 * m);
        QuadUnit eps = fundamental_unit(m);
        Int H0 = form_class_number(d0);
        std::vector<CampaignItem> out;
        for (Int f(1); d0 * f * f <= limit; ++f) {
            ClassRecord rec = class_record(eps, f);
            Int Ht = form_class_number(d0 * f * f);
            if (!divides(H0, Ht)) {
                throw verification_error("cross_check_forms: H(d0) does not divide H(d0 f^2) at d0 = " + d0.get_str());
            }
            Int H_rel_forms = Ht / H0;
            if (H_rel_forms != rec.h_plus_rel) {
                throw verification_error("cross_check_forms: form count " + H_rel_forms.get_str() +
                                         " != strict relative class number " + rec.h_plus_rel.get_str() +
                                         " at d0 = " + d0.get_str() + ", f = " + f.get_str());
            }
            if (rec.norm_eps_d0 == 1 && rec.norm_eps_d0f2 == -1) {
                throw verification_error("cross_check_forms: impossible norm combination at d0 = " + d0.get_str());
            }
            bool doubles = rec.norm_eps_d0 == -1 && rec.norm_eps_d0f2 == 1;
            if (rec.h_plus_rel != (doubles ? Int(2 * rec.h_rel) : rec.h_rel)) {
                throw verification_error("cross_check_forms: strict/wide rule violated at d0 = " + d0.get_str());
            }
            out.push_back({"cross_check",
                           {{"d0", detail::str(d0)},
                            {"f", detail::str(f)},
                            {"H_rel_forms", detail::str(H_rel_forms)},
                            {"h_plus_rel", detail::str(rec.h_plus_rel)},
                            {"h_rel", detail::str(rec.h_rel)},
                            {"norm_d0", detail::sign_str(rec.norm_eps_d0)},
                            {"norm_d0f2", detail::sign_str(rec.norm_eps_d0f2)}}});
        }
        return out;
    });

    CampaignResult res;
    res.name = "crosscheck";
    res.parameters = {{"limit", detail::str(limit)}};
    for (auto& g : groups) {
        for (auto& it : g) res.items.push_back(std::move(it));
    }
    res.counts = {{"pairs_checked", std::to_string(res.items.size())}};
    res.wall_ms = timer.ms();
    return res;
}

}  // namespace relclass
