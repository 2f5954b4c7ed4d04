#pragma once

#include "gbv/characters.hpp"
#include "gbv/sieve.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace gbv {

using ArithmeticFunction = std::function<cplx(std::uint64_t)>;

/// Vaughan's identity with both cut parameters equal to U. For every n with
/// U < n <= x,
///   Lambda(n) = sum_{bd=n, b<=U} mu(b) log d
///             - sum_{bcd=n, b,c<=U} mu(b) Lambda(c)
///             - sum_{mk=n, m>U, k>U} Lambda(m) sum_{d|k, d<=U} mu(d),
/// so after weighting with f the tail sum splits as type_one - type_two -
/// type_three.
struct VaughanDecomposition {
    double x = 0.0;
    double U = 0.0;
    /// sum_{n <= U} f(n) Lambda(n)
    cplx head;
    /// sum_{b <= U} mu(b) sum_{U/b < d <= x/b} f(bd) log d
    cplx type_one;
    /// sum_{m <= U^2} a2(m) sum_{U < mk <= x} f(mk)
    cplx type_two;
    /// sum_{m > U} a3(m) sum_{k > U, mk <= x} b3(k) f(mk)
    cplx type_three;

    /// sum_{l <= U} max_w |sum_{w < k <= x/l} f(kl)|, w over [0, x/l].
    double t1 = 0.0;
    double t2 = 0.0; ///< |type_two|
    double t3 = 0.0; ///< |type_three|

    cplx tail() const { return type_one - type_two - type_three; }
};

/// a2(m) = sum_{bc=m, b,c<=U} mu(b) Lambda(c); |a2(m)| <= log m.
double vaughan_a2(std::uint64_t m, double U, const SieveTables& tables);
/// b2(k) = 1.
double vaughan_b2(std::uint64_t k, double U);
/// a3(m) = Lambda(m) for m > U, else 0.
double vaughan_a3(std::uint64_t m, double U, const SieveTables& tables);
/// b3(k) = sum_{d|k, d<=U} mu(d) for k > U, else 0; |b3(k)| <= d(k).
double vaughan_b3(std::uint64_t k, double U, const SieveTables& tables);

/// Requires 1 <= U, U^2 <= x <= tables.limit() (DomainError / CapacityError).
VaughanDecomposition vaughan_decompose(const ArithmeticFunction& f, double x, double U,
                                       const SieveTables& tables);

/// |tail of the decomposition - sum_{U < n <= x} f(n) Lambda(n)|.
double verify_vaughan(const ArithmeticFunction& f, double x, double U, const SieveTables& tables);

/// |sum_{w < k <= z} chi(k)| / (sqrt(q) log q). DomainError for a principal
/// character, q = 1 or w >= z.
double pv_ratio(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double w,
                double z);

/// Supremum of pv_ratio over all real w < z. The partial sums are periodic
/// with period q, so this is the diameter of the q partial-sum points.
double pv_max_ratio(const CharacterGroupContext& ctx, const DirichletCharacter& chi);

} // namespace gbv
