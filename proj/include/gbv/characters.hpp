#pragma once

#include "gbv/sieve.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gbv {

using cplx = std::complex<double>;

/// e(alpha) = exp(2 pi i alpha).
cplx unit_phase(double alpha);

/// e(num / den) with the numerator reduced first, accurate for large num.
cplx unit_phase(std::int64_t num, std::uint64_t den);

/// A Dirichlet character modulo an odd squarefree q = p_1 ... p_j. On the
/// cyclic group mod p_i it sends the fixed primitive root g_i to
/// e(exponents[i] / (p_i - 1)).
struct DirichletCharacter {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> exponents;

    bool is_principal() const;
    /// For squarefree moduli: nontrivial at every prime factor.
    bool is_primitive() const;
    DirichletCharacter conjugate() const;

    friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;
};

/// Primitive roots and discrete-log tables for each prime factor of q.
class CharacterGroupContext {
public:
    /// Factors q with the sieve. Throws UnsupportedModulusError if q is even
    /// or not squarefree and CapacityError if q exceeds the table.
    CharacterGroupContext(std::uint64_t q, const SieveTables& tables);

    /// Uses a known factorization; `primes` must be distinct odd primes.
    CharacterGroupContext(std::uint64_t q, std::vector<std::uint64_t> primes);

    std::uint64_t modulus() const noexcept { return q_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
    std::uint64_t primitive_root(std::size_t i) const { return roots_.at(i); }

    /// Discrete log of a (coprime to p_i) to the base g_i.
    std::uint32_t dlog(std::size_t i, std::uint64_t a) const;

    /// All phi(q) characters, principal first, exponents in lexicographic order.
    std::vector<DirichletCharacter> characters() const;

    cplx eval(const DirichletCharacter& chi, std::int64_t n) const;

    /// chi(r) for r = 0 .. q-1.
    std::vector<cplx> value_table(const DirichletCharacter& chi) const;

private:
    void build();

    std::uint64_t q_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> roots_;
    std::vector<std::vector<std::uint32_t>> dlogs_;
};

/// Smallest primitive root modulo an odd prime p (trial division of p - 1).
std::uint64_t smallest_primitive_root(std::uint64_t p);

std::vector<DirichletCharacter> characters_mod(std::uint64_t q, const SieveTables& tables);

inline cplx eval_char(const CharacterGroupContext& ctx, const DirichletCharacter& chi,
                      std::int64_t n) {
    return ctx.eval(chi, n);
}

inline bool is_primitive(const DirichletCharacter& chi) { return chi.is_primitive(); }

/// tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), by direct summation.
cplx gauss_sum(const CharacterGroupContext& ctx, const DirichletCharacter& chi);

/// psi(y, chi) = sum_{n <= y} chi(n) Lambda(n), summed in increasing n.
cplx psi_chi(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double y,
             const SieveTables& tables);

/// psi(y, chi) - y for the principal character, psi(y, chi) otherwise.
cplx psi_prime_chi(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double y,
                   const SieveTables& tables);

} // namespace gbv
