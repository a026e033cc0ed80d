#pragma once

#include <cstdint>
#include <vector>

namespace nlbound {

/// An element of GF(2^n) in the polynomial basis {1, x, ..., x^(n-1)}.
/// Bit i of bits() is the coefficient of x^i; bits at positions >= n are zero.
class FieldElement {
public:
    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::uint64_t bits) : bits_(bits) {}

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool is_zero() const { return bits_ == 0; }
    constexpr bool is_one() const { return bits_ == 1; }

    // Addition in characteristic 2 is coefficient-wise XOR.
    friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
        return FieldElement(a.bits_ ^ b.bits_);
    }
    FieldElement& operator+=(FieldElement o) { bits_ ^= o.bits_; return *this; }

    friend constexpr bool operator==(FieldElement a, FieldElement b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(FieldElement a, FieldElement b) { return a.bits_ != b.bits_; }
    friend constexpr bool operator<(FieldElement a, FieldElement b) { return a.bits_ < b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// GF(2^n) for 2 <= n <= 32 with an explicit irreducible modulus.
/// Immutable after construction; all operations are pure and thread-safe.
class FieldCtx {
public:
    /// Field with the default modulus for n (lexicographically smallest
    /// irreducible polynomial of degree n; overridable per-process via the
    /// NLBOUND_MODULUS_TABLE environment variable, see default_modulus()).
    explicit FieldCtx(int n);

    /// Field with an explicit modulus, encoded as an (n+1)-bit vector
    /// (bit i = coefficient of x^i). Throws std::invalid_argument if the
    /// polynomial is reducible or malformed (bit n and bit 0 must be set).
    FieldCtx(int n, std::uint64_t modulus);

    int degree() const { return n_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t field_size() const { return std::uint64_t(1) << n_; }
    std::uint64_t group_order() const { return (std::uint64_t(1) << n_) - 1; }

    /// Element from raw bits; throws if bits >= 2^n.
    FieldElement element(std::uint64_t bits) const;

    FieldElement zero() const { return FieldElement(0); }
    FieldElement one() const { return FieldElement(1); }
    /// The basis element x (bits 0b10).
    FieldElement x() const { return FieldElement(2); }
    /// A fixed generator of the multiplicative group.
    FieldElement generator() const { return FieldElement(gen_); }

    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement sqr(FieldElement a) const { return mul(a, a); }

    /// a^e with exponents reduced mod 2^n-1 for a != 0.
    /// By convention pow(0, 0) = 1; pow(0, e) = 0 for e > 0.
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    /// Multiplicative inverse; throws std::invalid_argument on zero.
    FieldElement inverse(FieldElement a) const;

    /// Absolute trace to GF(2): a + a^2 + ... + a^(2^(n-1)), as a bit.
    int trace(FieldElement a) const;

    /// Relative trace to the subfield GF(2^r); throws unless r divides n.
    FieldElement rel_trace(int r, FieldElement a) const;

    /// True iff a = y^d for some y, i.e. a^((2^n-1)/gcd(d, 2^n-1)) = 1.
    /// Throws std::invalid_argument on a = 0.
    bool is_power_residue(FieldElement a, std::uint64_t d) const;

    /// All y with y^d = a (a != 0), sorted by bits; the result has size 0 or
    /// gcd(d, 2^n-1). Uses baby-step/giant-step discrete logs, so it stays
    /// exact for every n <= 32.
    std::vector<FieldElement> dth_roots(FieldElement a, std::uint64_t d) const;

    /// Default modulus for n from the built-in table (2 <= n <= 32).
    /// If NLBOUND_MODULUS_TABLE names a file of "n 0xHEX" lines, entries
    /// there take precedence (loaded once per process).
    static std::uint64_t default_modulus(int n);

private:
    void init();
    std::uint64_t dlog(FieldElement a) const;

    int n_ = 0;
    std::uint64_t mod_ = 0;
    std::uint64_t gen_ = 0;
    std::uint64_t trace_mask_ = 0; // trace(a) = parity(a & mask), by linearity
    std::vector<std::uint64_t> order_primes_; // distinct prime factors of 2^n-1

    // log/antilog acceleration tables, built for n <= 16
    std::vector<std::uint32_t> log_, alog_;
};

} // namespace nlbound
