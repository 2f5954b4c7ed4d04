#pragma once

#include "gbv/moduli.hpp"
#include "gbv/parallel.hpp"
#include "gbv/sieve.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gbv {

/// True iff for every i one of u(i), v(i) is absent from all later pairs.
bool fresh_index_condition(const std::vector<unsigned>& u, const std::vector<unsigned>& v);
bool fresh_index_condition(const GaussPolySpec& spec);

struct DensityReport {
    double Q = 0.0;
    /// with the mu^2(P(q)) factor
    double raw_sum = 0.0;
    /// without it
    double sta_sum = 0.0;
    /// sta_sum (log Q)^k / Q^ell
    double normalized = 0.0;
};

/// sum_{q ~ Q} [mu^2(P(q))] prod_i Lambda(q_{u(i)}^2 + q_{v(i)}^2).
double density_sum(const GaussPolySpec& spec, double Q, bool with_mu_squared,
                   const SieveTables& tables, const Parallel& par = {});

DensityReport density_report(const GaussPolySpec& spec, double Q, const SieveTables& tables,
                             const Parallel& par = {});

/// Split of sta_sum - raw_sum by the reason P(q) fails to be squarefree:
/// some factor is a proper prime power p^j (j >= 2), or all factors are
/// primes but two of them coincide.
struct DensityCorrection {
    double prime_power_part = 0.0;
    std::uint64_t prime_power_points = 0;
    double repeated_prime_part = 0.0;
    std::uint64_t repeated_prime_points = 0;
};

DensityCorrection density_correction(const GaussPolySpec& spec, double Q, const SieveTables& tables);

/// The nontrivial character mod 4.
int chi4(std::uint64_t n);

/// theta(l) = prod_{p | l} (1 - chi4(p)/(p - 1))^(-1).
double theta(std::uint64_t ell_value, const SieveTables& tables);

struct EulerConstant {
    double value = 1.0;
    /// Crude bound on |log(c / value)|: 2 / (B log B) for truncation B.
    double tail_bound = 0.0;
    std::uint64_t truncation = 0;
};

/// c = prod_p (1 - chi4(p) / ((p - 1)(p - chi4(p)))) over p <= truncation_bound.
EulerConstant constant_c(std::uint64_t truncation_bound, const SieveTables& tables);

/// c at truncation 10^6, computed once per process.
const EulerConstant& cached_constant_c();

using LambdaWeights = std::function<double(std::uint64_t)>;

struct FiComparison {
    double lam_sum = 0.0;
    double main_term = 0.0;
    /// Empty when main_term = 0.
    std::optional<double> ratio;
};

/// lam_sum = sum_{l^2 + m^2 <= x, l, m >= 1} lambda_l Lambda(l^2 + m^2);
/// main_term = (4c/pi) sum_{l^2 + m^2 <= x} lambda_l theta(l).
/// Weights must lie in [-1, 1] (DomainError otherwise).
FiComparison fi_compare(double x, const LambdaWeights& lambda, const SieveTables& tables,
                        const EulerConstant& c, const Parallel& par = {});

/// Both sides of the annulus decomposition of the k = 1 box sum:
///   box = annulus - 2 outer - 2 (inner - corner)
/// where annulus runs over 2Q^2 < q1^2 + q2^2 <= 8Q^2 (q1, q2 >= 1),
/// outer adds q1 > 2Q, inner restricts to q1 <= Q and s <= 5Q^2, and corner
/// to q1 > 2Q and s <= 5Q^2.
struct GeometricDecomposition {
    double box_sum = 0.0;
    double annulus = 0.0;
    double outer = 0.0;
    double inner = 0.0;
    double corner = 0.0;

    double rhs() const { return annulus - 2.0 * outer - 2.0 * (inner - corner); }
    double residual() const { return box_sum - rhs(); }
};

GeometricDecomposition geometric_decomposition(double Q, const SieveTables& tables);

inline double geometric_decomposition_check(double Q, const SieveTables& tables) {
    return geometric_decomposition(Q, tables).residual();
}

} // namespace gbv
