#pragma once

#include "nlbound/boolfn.hpp"
#include "nlbound/numtheory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlbound {

/// One evaluated lower bound. The bound value is
///   2^(n-1) - sqrt(radicand) / (2 * scale)
/// with radicand an exact (scaled) integer; rational radicands R = P/d are
/// stored as radicand = P*d, scale = d, so a single integer square root gives
/// the exact ceiling. integer_bound is that ceiling (a valid bound since nl2
/// is an integer); display_round is round-to-nearest of the real value, the
/// rounding the paper's "approximately" figures use.
struct BoundEntry {
    std::string name;
    std::string provenance;
    unsigned __int128 radicand = 0;
    long long scale = 1;
    double real_value = 0.0;
    long long integer_bound = 0;
    long long display_round = 0;
    bool applicable = true;
    bool vacuous = false;           // real_value <= 0
    bool soundness_caveat = false;  // printed form known loose at tiny n
    std::string reason;
};

/// 2^(n-1) - 2^(n-3/2), the generic bound for cubic functions without affine
/// derivatives. Carries a soundness caveat for n < 5 where the printed form
/// (which drops a +2^(n-1) under the radical) can exceed the true nl2.
BoundEntry bound_carlet_cubic(int n);

/// Both branches of the radical-histogram bound
///   max(2^(n-2) - (1/4) min_a 2^((n+r_a)/2),
///       2^(n-1) - (1/2) sqrt(2^(2n) - |Q| 2^n + sum_a 2^((n+r_a)/2)))
/// evaluated from the histogram over a in Q_f; returns the larger branch.
BoundEntry bound_mesnager_max(int n, const std::map<int, std::uint64_t>& radical_histogram);

/// Monomial bound with radicand 2^n + (2^n-1) 2^e, e = (n+2i)/2 for even n and
/// (n+2i-1)/2 for odd n; requires n > 2i.
BoundEntry bound_gode_f(int n, int i);

/// Same shape for g_mu with e = (n+4)/2 / (n+3)/2; requires n > 3.
BoundEntry bound_gode_g(int n);

/// The four-case bound from the quadratic-part index range [s, t]
/// (t1 = second-largest index, pass -1 when undefined).
BoundEntry bound_lihugao(int n, int s, int t, int t1);

/// The t-only variant for functions with gcd-structured exponents; requires n >= 2t.
BoundEntry bound_lihugao_g(int n, int t);

/// The root-number bound: radicand 2^(2n) - 2 q (2^(n-1) - 2^(floor((n+v)/2)-1)).
BoundEntry bound_main(int n, std::uint64_t q_size, int v);

/// The four n mod 6 displays for g_mu with gcd(n,r)=1; wt_f7 (the weight of
/// Tr(x^7) over GF(2^n)) is required exactly when n ≡ 3 (mod 6).
BoundEntry bound_gmu_coprime(int n, std::optional<std::uint64_t> wt_f7);

/// The two-branch 2-adic bound for g_mu with gcd(n,r) != 1, with the tighter
/// n = 3r special case (which assumes the relative trace of mu is nonzero).
BoundEntry bound_gmu_noncoprime(int n, int r);

struct BoundReport {
    int n = 0;
    std::string function;
    std::string modulus_hex;
    std::vector<int> delta;
    VResult vres;
    std::uint64_t q_size = 0;
    bool q_exact = true; // false when |Q| = 2^n-1 is assumed rather than swept
    std::vector<BoundEntry> entries;
    std::optional<int> nl2;
};

/// Runs delta_set -> minimize_v -> q_set_size and every applicable bound;
/// verifies the ordering main >= Li-Hu-Gao >= Gode-Gangopadhyay on exact
/// radicands and, for n <= 6, that every applicable non-caveat bound stays
/// <= nl2_exact (std::logic_error on violation).
BoundReport compare_report(const TracePolynomial& f);

std::string u128_to_string(unsigned __int128 v);

} // namespace nlbound
