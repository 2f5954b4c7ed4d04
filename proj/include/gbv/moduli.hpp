#pragma once

#include "gbv/sieve.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbv {

/// Exact nonnegative rational, always stored in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t num, std::uint64_t den);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Binomial coefficient with a CapacityError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Index pair (u(i), v(i)), 1-based.
struct IndexPair {
    unsigned u;
    unsigned v;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// The product of k binary quadratic forms
///   P(x) = prod_i (x_{u(i)}^2 + x_{v(i)}^2)
/// in ell variables, with the exponent data derived from (k, ell).
class GaussPolySpec {
public:
    /// Throws ValidationError on an index outside 1..ell or on a repeated
    /// unordered pair. u(i) = v(i) is allowed (the factor is 2 x^2).
    GaussPolySpec(unsigned ell, std::vector<IndexPair> pairs);

    /// Parses the compact form "k=3 ell=4 pairs=1:2,2:3,3:4".
    static GaussPolySpec parse(const std::string& text);
    std::string to_string() const;

    unsigned k() const noexcept { return static_cast<unsigned>(pairs_.size()); }
    unsigned ell() const noexcept { return ell_; }
    const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
    unsigned degree() const noexcept { return 2 * k(); }
    /// r = C(2k + ell - 1, ell) - 1.
    std::uint64_t r() const noexcept { return r_; }
    /// sigma = 1 / (4 k r).
    Rational sigma() const noexcept { return sigma_; }

    /// The spec with u(i) and v(i) exchanged in pair `index` (0-based).
    GaussPolySpec with_swapped_pair(unsigned index) const;

private:
    unsigned ell_;
    std::vector<IndexPair> pairs_;
    std::uint64_t r_;
    Rational sigma_;
};

GaussPolySpec validate_spec(unsigned k, unsigned ell, const std::vector<unsigned>& u,
                            const std::vector<unsigned>& v);

/// The k factor values q_{u(i)}^2 + q_{v(i)}^2.
std::vector<std::uint64_t> factor_values(const GaussPolySpec& spec,
                                         std::span<const std::uint64_t> q);

/// Exact P(q); CapacityError on 64-bit overflow.
std::uint64_t eval_poly(const GaussPolySpec& spec, std::span<const std::uint64_t> q);

/// mu^2(P(q)) decided from the factors: P(q) is squarefree iff each factor is
/// squarefree and the factors are pairwise coprime. Needs only the factor
/// values to be inside the sieve.
bool poly_value_squarefree(std::span<const std::uint64_t> factors, const SieveTables& tables);

/// P(q) together with its factorization, assembled from the factorizations of
/// the quadratic factors so that only the factors need to lie in the sieve.
struct PolyModulus {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factorization;
    std::uint64_t phi = 1;
    bool squarefree = true;
    bool odd = true;

    bool odd_squarefree() const noexcept { return odd && squarefree; }
    std::vector<std::uint64_t> primes() const;
};

PolyModulus poly_modulus(const GaussPolySpec& spec, std::span<const std::uint64_t> q,
                         const SieveTables& tables);

/// G_q = mu^2(P(q)) * prod_i Lambda(q_{u(i)}^2 + q_{v(i)}^2).
double weight_G(const GaussPolySpec& spec, std::span<const std::uint64_t> q,
                const SieveTables& tables);

/// Integer tuples with floor(Q) < q_i <= floor(2Q), enumerated row-major
/// (last coordinate fastest).
class DyadicBox {
public:
    DyadicBox(double Q, unsigned ell);

    double Q() const noexcept { return Q_; }
    unsigned ell() const noexcept { return ell_; }
    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }
    std::uint64_t side() const noexcept { return hi_ >= lo_ ? hi_ - lo_ + 1 : 0; }
    bool empty() const noexcept { return side() == 0; }
    std::uint64_t size() const;

    /// Writes the tuple with row-major position `index` into `out`.
    void tuple_at(std::uint64_t index, std::span<std::uint64_t> out) const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        const std::uint64_t n = size();
        std::vector<std::uint64_t> q(ell_);
        for (std::uint64_t i = 0; i < n; ++i) {
            tuple_at(i, q);
            fn(std::span<const std::uint64_t>(q));
        }
    }

private:
    double Q_;
    unsigned ell_;
    std::uint64_t lo_;
    std::uint64_t hi_;
};

/// (m_Q, M_Q): smallest and largest P over the box. Each factor increases in
/// every coordinate, so these are the values at the two extreme corners.
/// Throws DomainError for an empty box.
std::pair<std::uint64_t, std::uint64_t> box_extremes(const GaussPolySpec& spec, double Q);

/// Admissible Q range x^(eps/sigma) <= Q <= x^((1/3 - 2 eps)/(2k - sigma)).
struct QRange {
    double exponent_min;
    double exponent_max;
    double q_min;
    double q_max;
    bool empty() const noexcept { return q_min > q_max; }
};

/// Requires x > 1 and 0 < epsilon < 1/6 (DomainError otherwise). An empty
/// range is reported through QRange::empty(), not thrown.
QRange q_range(const GaussPolySpec& spec, double x, double epsilon);

/// sigma = 1/(2 r k) with r = C(k + ell - 1, ell) - 1 for a polynomial of
/// total degree k. Substituting k = 2 * (number of factors) gives the same
/// value as GaussPolySpec::sigma().
Rational sigma_assumptions(unsigned degree, unsigned ell);

} // namespace gbv
