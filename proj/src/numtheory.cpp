#include "nlbound/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nlbound {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t(((unsigned __int128)a * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs with this base set.
bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (v == p) return true;
        if (v % p == 0) return false;
    }
    std::uint64_t d = v - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, v);
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, v);
            if (x == v - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

long long mod_euclid(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

long long inv_mod(long long a, long long n) {
    long long t0 = 0, t1 = 1, r0 = n, r1 = mod_euclid(a, n);
    while (r1) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1; r0 = r1; r1 = r2;
        long long t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    return mod_euclid(t0, n);
}

} // namespace

int p_valuation(long long A, long long p) {
    if (A == 0) throw std::invalid_argument("p_valuation: A must be nonzero");
    if (p < 2 || !is_prime_u64(std::uint64_t(p)))
        throw std::invalid_argument("p_valuation: p must be prime");
    unsigned long long a = A < 0 ? -(unsigned long long)A : (unsigned long long)A;
    int r = 0;
    while (a % (unsigned long long)p == 0) { a /= (unsigned long long)p; ++r; }
    return r;
}

long long gg(long long A, long long B) {
    if (A == 0 || B == 0) throw std::invalid_argument("gg: arguments must be nonzero");
    unsigned long long a = A < 0 ? -(unsigned long long)A : (unsigned long long)A;
    unsigned long long b = B < 0 ? -(unsigned long long)B : (unsigned long long)B;
    // strip from a everything coprime to b: the quotient left after repeatedly
    // dividing out gcd(., b) is the b-coprime part, so gg = a / that quotient
    unsigned long long u = a;
    for (;;) {
        unsigned long long d = std::gcd(u, b);
        if (d == 1) break;
        u /= d;
    }
    return (long long)(a / u);
}

long long coprime_part(long long A, long long B) {
    long long g = gg(A, B);
    unsigned long long a = A < 0 ? -(unsigned long long)A : (unsigned long long)A;
    return (long long)(a / (unsigned long long)g);
}

std::uint64_t gcd_2r1_2n1(int r, int n) {
    if (r < 1 || n < 1 || r > n) throw std::invalid_argument("gcd_2r1_2n1 requires 1 <= r <= n");
    int g = std::gcd(r, n);
    if (std::gcd(2 * r, n) == g) return 1;
    return (std::uint64_t(1) << g) + 1;
}

ExponentSet ExponentSet::normalized(int n, std::span<const int> raw) {
    if (n < 2) throw std::invalid_argument("ExponentSet: n must be >= 2");
    if (raw.empty()) throw std::invalid_argument("ExponentSet: empty exponent set");
    std::set<int> s;
    for (int e : raw) {
        int r = ((e % n) + n) % n;
        if (e < 0 && r != 0) r -= n;
        s.insert(r);
    }
    ExponentSet out;
    out.n = n;
    out.exps.assign(s.rbegin(), s.rend());
    return out;
}

VkQuantities vk_quantities(const ExponentSet& delta, const ShiftVector& K) {
    const int n = delta.n;
    const size_t t = delta.exps.size();
    if (K.shifts.size() != t)
        throw std::invalid_argument("vk_quantities: shift count does not match exponent count");
    std::vector<long long> shifted(t);
    long long g = 0, mx = 0;
    for (size_t j = 0; j < t; ++j) {
        long long s = delta.exps[j] + K.k + K.shifts[j] * n;
        if (s < 0) throw std::invalid_argument("vk_quantities: K is not in U (negative shifted exponent)");
        shifted[j] = s;
        g = std::gcd(g, s);
        mx = std::max(mx, s);
    }
    if (g == 0) throw std::invalid_argument("vk_quantities: all shifted exponents are zero");
    long long s_k = g / gg(g, n);
    long long v_k = 0;
    for (long long s : shifted) {
        if (s % s_k != 0) throw std::logic_error("vk_quantities: S_K does not divide a shifted exponent");
        v_k = std::max(v_k, s / s_k);
    }
    if (std::gcd(s_k, (long long)n) != 1)
        throw std::logic_error("vk_quantities: gcd(S_K, n) != 1");
    return {g, s_k, v_k};
}

VResult minimize_v(const ExponentSet& delta) {
    const int n = delta.n;
    const auto& d = delta.exps;
    const size_t t = d.size();
    if (t == 0) throw std::invalid_argument("minimize_v: empty exponent set");

    auto reconstruct = [&](long long k, const std::vector<long long>& L, long long a_inv) {
        ShiftVector K;
        K.k = k;
        K.shifts.resize(t);
        for (size_t j = 0; j < t; ++j) {
            long long num = a_inv * L[j] - k - d[j];
            if (num % n != 0)
                throw std::logic_error("minimize_v: witness reconstruction produced a non-integer shift");
            K.shifts[j] = num / n;
        }
        return K;
    };

    // degenerate: every member in one residue class mod n; any scan point has
    // all L_j = 0, so pin every shifted exponent to 1 instead (v = 1, sound:
    // the polynomial collapses to a single Frobenius term)
    {
        bool onec = true;
        for (size_t j = 1; j < t; ++j)
            if (mod_euclid(d[j] - d[0], n) != 0) { onec = false; break; }
        if (onec) {
            ShiftVector K;
            K.k = 1 - d[t - 1];
            K.shifts.resize(t);
            for (size_t j = 0; j < t; ++j)
                K.shifts[j] = -(long long)(d[j] - d[t - 1]) / n;
            auto q = vk_quantities(delta, K);
            return {q.v_k, K, q.t_k, q.s_k};
        }
    }

    // paper initialization K0 = (-i_{t-1}, -floor((i_j - i_{t-1})/n)..., 0),
    // scored through vk_quantities so v always matches the witness
    VResult best;
    {
        ShiftVector K0;
        K0.k = -(long long)d[t - 1];
        K0.shifts.resize(t);
        for (size_t j = 0; j < t; ++j)
            K0.shifts[j] = -(long long)((d[j] - d[t - 1]) / n);
        auto q = vk_quantities(delta, K0);
        best = {q.v_k, K0, q.t_k, q.s_k};
    }

    std::vector<long long> L(t);
    for (size_t idx = 0; idx < t; ++idx) {
        long long k = mod_euclid(n - d[idx], n);
        for (int a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            bool allzero = true;
            for (size_t j = 0; j < t; ++j) {
                L[j] = mod_euclid((long long)a * (k + d[j]), n);
                if (L[j]) allzero = false;
            }
            if (allzero) continue;
            long long a_inv = inv_mod(a, n);
            ShiftVector K = reconstruct(k, L, a_inv);
            auto q = vk_quantities(delta, K);
            if (q.v_k < best.v) best = {q.v_k, K, q.t_k, q.s_k};
        }
    }
    return best;
}

} // namespace nlbound
