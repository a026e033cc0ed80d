#pragma once

#include "nlbound/field.hpp"
#include "nlbound/linpoly.hpp"
#include "nlbound/numtheory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlbound {

/// One trace term coeff * x^exponent inside Tr(.), exponent in [1, 2^n-1].
struct TraceTerm {
    FieldElement coeff;
    std::uint64_t exponent = 0;
};

/// Boolean function f(x) = Tr(sum_l coeff_l x^(e_l)) + affine_const.
class TracePolynomial {
public:
    /// Merges duplicate exponents (XOR on coefficients) and drops zeros.
    TracePolynomial(const FieldCtx& ctx, std::vector<TraceTerm> terms, bool affine_const = false);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::vector<TraceTerm>& terms() const { return terms_; }
    bool affine_const() const { return affine_const_; }

    int evaluate(FieldElement x) const;

    /// Largest 2-weight among term exponents (0 for the constant function).
    int max_exponent_weight() const;

    /// Parses "01:7,1a:11" (coeff hex : exponent decimal per term).
    static TracePolynomial parse(const FieldCtx& ctx, std::string_view spec);
    std::string to_string() const;

private:
    const FieldCtx* ctx_;
    std::vector<TraceTerm> terms_;
    bool affine_const_;
};

/// Evaluation map of a Boolean function; bit at index enc(x) is f(x).
class TruthTable {
public:
    TruthTable(const FieldCtx& ctx);
    const FieldCtx& ctx() const { return *ctx_; }
    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_; }
    int get(std::uint64_t idx) const { return int((words_[size_t(idx >> 6)] >> (idx & 63)) & 1); }
    void set(std::uint64_t idx, int bit) {
        std::uint64_t mask = std::uint64_t(1) << (idx & 63);
        if (bit) words_[size_t(idx >> 6)] |= mask;
        else words_[size_t(idx >> 6)] &= ~mask;
    }
    std::uint64_t weight() const;
    const std::vector<std::uint64_t>& words() const { return words_; }
    friend bool operator==(const TruthTable& a, const TruthTable& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    const FieldCtx* ctx_;
    int n_;
    std::vector<std::uint64_t> words_;
};

/// Canonical quadratic form Tr(sum_{1<=i<=n/2} c_i x^(2^i+1)); the zero map is
/// allowed (degenerate).
class QuadraticForm {
public:
    explicit QuadraticForm(const FieldCtx& ctx) : ctx_(&ctx) {}
    QuadraticForm(const FieldCtx& ctx, std::map<int, FieldElement> coeffs);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::map<int, FieldElement>& coeffs() const { return coeffs_; }

    int evaluate(FieldElement x) const;

    /// True iff the form is the zero function. For even n the i = n/2
    /// coefficient only matters through c + c^(2^(n/2)); a stored c inside
    /// GF(2^(n/2)) still denotes the zero function.
    bool is_zero_function() const;

private:
    const FieldCtx* ctx_;
    std::map<int, FieldElement> coeffs_;
};

// ---- truth tables, spectra and degrees ----

/// Full 2^n evaluation (n <= 24).
TruthTable truth_table(const TracePolynomial& f);

/// Walsh transform W_f(u) for all u, computed by the fast transform with
/// trace-inner-product index conversion; O(n 2^n), n <= 24.
std::vector<std::int32_t> walsh_spectrum(const TruthTable& tt);

/// Quadratic-time reference transform straight off the definition (test oracle).
std::vector<std::int32_t> walsh_spectrum_naive(const TruthTable& tt);

/// nl(f) = 2^(n-1) - max|W_f|/2.
int nonlinearity(const TruthTable& tt);

/// Degree of the ANF (binary Moebius transform), n <= 24.
int algebraic_degree(const TruthTable& tt);

/// Minimum distance to all functions of degree <= 2, by exhaustive RM(2,n)
/// enumeration; n <= 6.
int nl2_exact(const TruthTable& tt);

// ---- derivatives and quadratic parts ----

/// Symbolic D_a f(x) = f(x) + f(x+a): binomial expansion over F2 of each term.
TracePolynomial derivative(const TracePolynomial& f, FieldElement a);

/// Canonical quadratic part of D_a f; throws std::invalid_argument if any
/// derivative term has degree > 2 (f not cubic).
QuadraticForm quadratic_part(const TracePolynomial& f, FieldElement a);

/// The linearized polynomial sum_i (c_i x^(2^i) + (c_i x)^(2^-i)) whose kernel
/// is the radical of q.
LinearizedPoly polar_linpoly(const QuadraticForm& q);

/// Signed exponent set {i_l, j_l, i_l - j_l} plus negatives over the cubic
/// terms of f, normalized into (-n, n). Throws on non-cubic f.
ExponentSet delta_set(const TracePolynomial& f);

/// All a with non-affine D_a f (exhaustive sweep, n <= 16).
std::vector<FieldElement> q_set(const TracePolynomial& f);
std::uint64_t q_set_size(const TracePolynomial& f);

struct RadicalDistribution {
    std::map<int, std::uint64_t> counts; // radical dimension -> #a
    std::uint64_t degenerate = 0;        // #a in GF(2^n)* with zero quadratic part
};

/// Histogram of r_a = dim radical(quadratic part of D_a f) over a in GF(2^n)*
/// with the zero forms counted separately; n <= 16. threads > 1 splits the
/// a-sweep; the result is identical for any degree of parallelism.
RadicalDistribution radical_distribution(const TracePolynomial& f, int threads = 1);

enum class TriState { yes, no, not_applicable };

struct PsiMembership {
    TriState in_psi_e = TriState::not_applicable;
    TriState in_psi_o = TriState::not_applicable;
};

/// Membership of a in the Psi_e / Psi_o sets for g_mu = Tr(mu x^(2^(2r)+2^r+1)):
/// a^(2^r)/mu must be a (2^r+1)-th power whose roots b all satisfy
/// Tr(b / a^(2^r+1)) = 0. Psi_e applies to even n, Psi_o to odd n; requires
/// gcd(n, r) = 1 (otherwise both components are not_applicable).
PsiMembership psi_membership(const FieldCtx& ctx, int r, FieldElement mu, FieldElement a);

} // namespace nlbound
