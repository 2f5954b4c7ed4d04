#pragma once

#include "gbv/characters.hpp"
#include "gbv/moduli.hpp"
#include "gbv/parallel.hpp"
#include "gbv/sieve.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gbv {

/// Coefficients v_n for M < n <= M + N.
///
/// S(alpha) is read as sum_n v_n e(alpha n); the display it comes from drops
/// the n, but the Farey-point application only makes sense with it.
class TrigSequence {
public:
    TrigSequence(std::int64_t offset, std::vector<cplx> values);

    std::int64_t offset() const noexcept { return offset_; }
    std::size_t length() const noexcept { return values_.size(); }
    const std::vector<cplx>& values() const noexcept { return values_; }
    /// Index n runs over offset+1 .. offset+length.
    cplx at(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n - offset_ - 1)); }
    double norm2() const noexcept { return norm2_; }

private:
    std::int64_t offset_;
    std::vector<cplx> values_;
    double norm2_;
};

struct RatioReport {
    double lhs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double Q = 0.0;
    double size = 0.0; ///< N, or x for the BMVT
    std::string spec;

    static RatioReport make(double lhs, double bound, double Q, double size, std::string spec);
};

cplx exp_sum(const TrigSequence& seq, double alpha);

/// sum_{1 <= a <= m, gcd(a, m) = 1} |S(a/m)|^2 for a single modulus.
double farey_sum(const TrigSequence& seq, std::uint64_t m);

/// Sigma_{Q,N,P} = sum_{q ~ Q} farey_sum(seq, P(q)). Distinct moduli are
/// evaluated once, in parallel; the reduction runs in box order.
double sigma_quantity(const TrigSequence& seq, const GaussPolySpec& spec, double Q,
                      const SieveTables& tables, const Parallel& par = {});

/// Delta(Q,N) = Q^(d+ell) + Q^(ell-sigma) N + Q^(ell+d sigma) N^(1-sigma)
/// with d = spec.degree().
double delta_bound(double Q, double N, const GaussPolySpec& spec);

/// Sums over P(q) that are restricted to odd squarefree moduli report how
/// many box points were used and how many were skipped.
struct CharacterSumResult {
    double value = 0.0;
    std::uint64_t included = 0;
    std::uint64_t skipped = 0;
};

/// Terms of the character-form identity chain for one odd squarefree q.
struct CharacterChain {
    /// sum over primitive chi of |sum_n v_n chi(n)|^2
    double primitive_sum = 0.0;
    /// (1/q) sum over all chi of |sum_a conj(chi)(a) S(a/q)|^2
    double all_character_sum = 0.0;
    /// (phi(q)/q) sum_{a coprime} |S(a/q)|^2
    double farey_side = 0.0;
};

CharacterChain character_chain(const TrigSequence& seq, const CharacterGroupContext& ctx);

/// sum over primitive chi mod ctx.modulus() of |sum_n v_n chi(n)|^2.
double primitive_character_sum(const TrigSequence& seq, const CharacterGroupContext& ctx);

/// sum_{q ~ Q} P/phi(P) sum*_chi |sum_n v_n chi(n)|^2 over odd squarefree P(q).
CharacterSumResult char_form_lhs(const GaussPolySpec& spec, double Q, const TrigSequence& seq,
                                 const SieveTables& tables, const Parallel& par = {});

struct BilinearResult {
    double lhs = 0.0;
    double rhs = 0.0;
    std::uint64_t included = 0;
    std::uint64_t skipped = 0;
};

/// For one character: max over X of |sum_{m <= M, n <= N, mn <= X} a_m b_n chi(mn)|,
/// X running over the distinct products mn.
double bilinear_max(const std::vector<cplx>& a, const std::vector<cplx>& b,
                    const CharacterGroupContext& ctx, const DirichletCharacter& chi);

/// lhs = sum_{q ~ Q} P/phi(P) sum*_chi bilinear_max(a, b, chi);
/// rhs = (Delta(Q,M) Delta(Q,N) |a|^2 |b|^2)^(1/2). a[i] is a_{i+1}.
BilinearResult bilinear_pair(const GaussPolySpec& spec, double Q, const std::vector<cplx>& a,
                             const std::vector<cplx>& b, const SieveTables& tables,
                             const Parallel& par = {});

/// max_{y <= x} |psi(y, chi)| over the jump points (prime powers <= x).
double sup_psi_chi(const std::vector<PrimePower>& prime_powers, const CharacterGroupContext& ctx,
                   const DirichletCharacter& chi);

/// sum_{q ~ Q} P/phi(P) sum*_chi sup_{y <= x} |psi(y, chi)| over odd squarefree P(q).
CharacterSumResult bmvt_lhs(const GaussPolySpec& spec, double Q, double x,
                            const SieveTables& tables, const Parallel& par = {});

enum class DeltaTildeBranch { Upper, Middle, OutOfRange };

struct DeltaTilde {
    DeltaTildeBranch branch = DeltaTildeBranch::OutOfRange;
    /// Empty when x lies below both ranges.
    std::optional<double> value;
    /// x equals Q^(2d + sigma), the point shared by both ranges.
    bool boundary = false;
    /// The other branch's value at the boundary.
    std::optional<double> other_value;
};

/// With d = spec.degree(), for x >= Q^(2d+sigma):
///   Q^(ell-sigma) x + Q^(ell+(d-sigma)/2) x^(5/6) + Q^(ell+(d-1)sigma/2) x^(1-sigma/6);
/// for Q^(d+3-sigma) <= x < Q^(2d+sigma): Q^(ell+5d/6-sigma/3) x^(2/3).
/// The boundary belongs to the first branch.
DeltaTilde delta_tilde(const GaussPolySpec& spec, double Q, double x);

} // namespace gbv
