// Test-only oracles, deliberately independent of the library's
// implementation paths.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relclass/arith.hpp"
#include "relclass/forms.hpp"

namespace oracle {

using relclass::Int;

// Digit-by-digit (base 4) long-division square root; independent of
// mpz_sqrt.
inline Int isqrt_longdiv(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_longdiv: negative input");
    if (n == 0) return 0;
    Int rem = n;
    Int res(0);
    unsigned long top = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
    Int bit(1);
    bit <<= (top - top % 2);
    while (bit != 0) {
        if (rem >= res + bit) {
            rem -= res + bit;
            res = (res >> 1) + bit;
        } else {
            res >>= 1;
        }
        bit >>= 2;
    }
    return res;
}

// Is d a square mod q?  Pure brute force over residues.
inline bool is_square_mod_bruteforce(const Int& d, unsigned long q) {
    Int target = relclass::mod(d, Int(q));
    for (unsigned long r = 0; r < q; ++r) {
        if (relclass::mod(Int(r) * r, Int(q)) == target) return true;
    }
    return false;
}

namespace detail {

template <unsigned N>
inline std::array<bool, N> square_residues() {
    std::array<bool, N> table{};
    for (unsigned r = 0; r < N; ++r) table[static_cast<std::uint64_t>(r) * r % N] = true;
    return table;
}

inline int clz_u128(unsigned __int128 n) {
    std::uint64_t hi = static_cast<std::uint64_t>(n >> 64);
    if (hi) return __builtin_clzll(hi);
    return 64 + __builtin_clzll(static_cast<std::uint64_t>(n));
}

}  // namespace detail

inline bool is_square_u128(unsigned __int128 n, std::uint64_t& root) {
    static const auto q256 = detail::square_residues<256>();
    static const auto q63 = detail::square_residues<63>();
    static const auto q65 = detail::square_residues<65>();
    static const auto q11 = detail::square_residues<11>();
    if (n == 0) {
        root = 0;
        return true;
    }
    if (!q256[static_cast<unsigned>(n & 255)]) return false;
    if (!q63[static_cast<unsigned>(n % 63)]) return false;
    if (!q65[static_cast<unsigned>(n % 65)]) return false;
    if (!q11[static_cast<unsigned>(n % 11)]) return false;
    int bits = 128 - detail::clz_u128(n);
    unsigned __int128 x = static_cast<unsigned __int128>(1) << ((bits + 1) / 2);
    while (true) {
        unsigned __int128 nx = (x + n / x) >> 1;
        if (nx >= x) break;
        x = nx;
    }
    if (x * x != n) return false;
    root = static_cast<std::uint64_t>(x);
    return true;
}

struct BruteUnit {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    int c = 1;
    int norm = 1;
};

// Least solution of x^2 - m y^2 = +-c^2 by scanning y = 1, 2, 3, ...
// The y coordinates of the powers of the fundamental unit increase strictly,
// so the first hit is the fundamental unit; at equal y the norm -1 candidate
// is the smaller unit and is tried first.  Usable for m up to a few hundred.
inline BruteUnit brute_fundamental_unit(std::uint64_t m) {
    int c = (m % 4 == 1) ? 2 : 1;
    std::uint64_t c2 = static_cast<std::uint64_t>(c) * c;
    for (std::uint64_t y = 1;; ++y) {
        unsigned __int128 my2 = static_cast<unsigned __int128>(m) * y * y;
        std::uint64_t x;
        if (my2 >= c2 + 1 && is_square_u128(my2 - c2, x) && x >= 1) {
            return {x, y, c, -1};
        }
        if (is_square_u128(my2 + c2, x)) {
            return {x, y, c, +1};
        }
    }
}

// Wide-box enumeration of reduced properly primitive forms: scans every
// |a|, b <= sqrt(d) + 1 instead of trusting the tight bounds.
inline std::vector<relclass::IndefiniteForm> naive_reduced_scan(const Int& d) {
    Int s = relclass::isqrt(d);
    std::vector<relclass::IndefiniteForm> out;
    for (Int a = -(s + 1); a <= s + 1; ++a) {
        if (a == 0) continue;
        for (Int b(1); b <= s + 1; ++b) {
            Int num = b * b - d;
            if (!relclass::divides(4 * a, num)) continue;
            Int c = num / (4 * a);
            if (c == 0) continue;
            relclass::IndefiniteForm F{a, b, c, d};
            if (relclass::gcd_int(relclass::gcd_int(a, b), c) != 1) continue;
            if (!relclass::is_reduced(F)) continue;
            out.push_back(F);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

}  // namespace oracle
