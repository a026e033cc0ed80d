#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nlbound {

/// Largest r with p^r | A. Throws std::invalid_argument on A = 0 or p not prime.
int p_valuation(long long A, long long p);

/// Product over primes p | B of p^{p_valuation(A, p)}: the largest divisor of
/// |A| all of whose prime factors divide B. Throws on zero inputs.
long long gg(long long A, long long B);

/// |A| / gg(A, B): the greatest divisor of A coprime to B.
long long coprime_part(long long A, long long B);

/// gcd(2^r+1, 2^n-1) in closed form: 1 if gcd(2r,n) = gcd(r,n), else 2^gcd(r,n)+1.
std::uint64_t gcd_2r1_2n1(int r, int n);

/// Sorted-descending distinct signed exponents, all |e| < n.
struct ExponentSet {
    int n = 0;
    std::vector<int> exps;

    /// Normalize raw values into (-n, n) by adding/subtracting multiples of n
    /// (negative inputs keep a nonpositive representative), dedupe, sort
    /// descending. Throws if raw is empty or n < 2.
    static ExponentSet normalized(int n, std::span<const int> raw);
};

/// K = (k, k_0, ..., k_{t-1}); member of U when every i_j + k + k_j*n >= 0.
struct ShiftVector {
    long long k = 0;
    std::vector<long long> shifts;
};

struct VkQuantities {
    long long t_k = 0; // gcd of the shifted exponents
    long long s_k = 0; // t_k with every prime factor shared with n removed
    long long v_k = 0; // max shifted exponent / s_k
};

/// The (T_K, S_K, V_K) triple for K over delta. Throws std::invalid_argument
/// if K is not in U (a negative shifted exponent), if the shift count does not
/// match, or if every shifted exponent is zero. gcd(S_K, n) = 1 is asserted.
VkQuantities vk_quantities(const ExponentSet& delta, const ShiftVector& K);

struct VResult {
    long long v = 0;
    ShiftVector witness;
    long long t_k = 0;
    long long s_k = 0;
};

/// Deterministic search for a K minimizing V_K over the reduced space of
/// Problem-1 type: k in {(n - i_j) mod n}, a over the units mod n, candidates
/// scored by the reconstructed witness's exact V_K, first-found wins ties.
/// The returned quantities always satisfy vk_quantities(witness) == (t,s,v).
VResult minimize_v(const ExponentSet& delta);

} // namespace nlbound
