#pragma once

#include "nlbound/field.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlbound {

/// One term coeff * x^(2^exp); exp is a signed Frobenius exponent, read mod n.
struct LinTerm {
    FieldElement coeff;
    int exp = 0;
};

/// Linearized polynomial sum_i coeff_i * x^(2^(exp_i mod n)) over GF(2^n).
/// Terms are stored as given (the signed exponent set feeds the V-search);
/// canonical_terms() merges them into distinct residues in [0, n).
class LinearizedPoly {
public:
    explicit LinearizedPoly(const FieldCtx& ctx) : ctx_(&ctx) {}
    LinearizedPoly(const FieldCtx& ctx, std::vector<LinTerm> terms);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::vector<LinTerm>& terms() const { return terms_; }

    /// Distinct exponents in [0, n), XOR-merged coefficients, zeros dropped;
    /// sorted by exponent.
    std::vector<LinTerm> canonical_terms() const;

    /// True iff every canonical coefficient vanishes (the zero map).
    bool is_zero_map() const { return canonical_terms().empty(); }

    /// Distinct signed exponents of the stored nonzero terms, descending.
    std::vector<int> signed_exponents() const;

    FieldElement eval(FieldElement x) const;

    /// Parses "a3*X^2^5 + 01*X^2^-2" (hex coefficient, signed exponent).
    static LinearizedPoly parse(const FieldCtx& ctx, std::string_view text);
    std::string to_string() const;

private:
    const FieldCtx* ctx_;
    std::vector<LinTerm> terms_;
};

struct KernelInfo {
    int dimension = 0;
    bool degenerate = false; // the identically-zero polynomial (kernel = everything)
};

/// F2-dimension of {x : L(x) = 0}, via rank of the n x n bit matrix whose
/// columns are L at the basis vectors. The zero map reports dimension n with
/// the degenerate flag set, never silently.
KernelInfo kernel_dimension(const LinearizedPoly& L);

/// L' = sum_i coeff_i^(2^k) * x^(2^(exp_i + k + shifts_i * n)); root-count
/// preserving. shifts must have one entry per stored term.
LinearizedPoly frobenius_transform(const LinearizedPoly& L, int k, std::span<const int> shifts);

/// Exact number of roots of z^(2^(2r)) + b*z over GF(2^n) (b != 0), decided by
/// the (p^2-1)/(p-1) power-residue classes and the 2-adic comparison of n and
/// r; p = 2^r. Cross-checkable against kernel_dimension.
std::uint64_t root_count_special(const FieldCtx& ctx, int r, FieldElement b);

} // namespace nlbound
