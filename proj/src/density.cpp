#include "gbv/density.hpp"

#include "gbv/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace gbv {

bool fresh_index_condition(const std::vector<unsigned>& u, const std::vector<unsigned>& v) {
    if (u.size() != v.size()) throw ValidationError("u and v must have equal length");
    const std::size_t k = u.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::set<unsigned> later;
        for (std::size_t j = i + 1; j < k; ++j) {
            later.insert(u[j]);
            later.insert(v[j]);
        }
        if (later.contains(u[i]) && later.contains(v[i])) return false;
    }
    return true;
}

bool fresh_index_condition(const GaussPolySpec& spec) {
    std::vector<unsigned> u, v;
    for (const auto [a, b] : spec.pairs()) {
        u.push_back(a);
        v.push_back(b);
    }
    return fresh_index_condition(u, v);
}

namespace {

/// Splits the box by its first coordinate; each slice is summed in row-major
/// order and the slices are added in order.
template <class Fn>
double box_reduce(const GaussPolySpec& spec, double Q, const Parallel& par, Fn&& term) {
    const DyadicBox box(Q, spec.ell());
    if (box.empty()) return 0.0;
    const std::uint64_t slice = box.size() / box.side();
    const auto parts = parallel_map<double>(box.side(), par, [&](std::size_t s) {
        std::vector<std::uint64_t> q(spec.ell());
        double sum = 0.0;
        for (std::uint64_t i = 0; i < slice; ++i) {
            box.tuple_at(s * slice + i, q);
            sum += term(std::span<const std::uint64_t>(q));
        }
        return sum;
    });
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
}

double lambda_product(const std::vector<std::uint64_t>& factors, const SieveTables& tables) {
    double product = 1.0;
    for (std::uint64_t f : factors) {
        const double l = tables.lambda(f);
        if (l == 0.0) return 0.0;
        product *= l;
    }
    return product;
}

} // namespace

double density_sum(const GaussPolySpec& spec, double Q, bool with_mu_squared,
                   const SieveTables& tables, const Parallel& par) {
    return box_reduce(spec, Q, par, [&](std::span<const std::uint64_t> q) {
        const auto factors = factor_values(spec, q);
        const double l = lambda_product(factors, tables);
        if (l == 0.0 || !with_mu_squared) return l;
        return poly_value_squarefree(factors, tables) ? l : 0.0;
    });
}

DensityReport density_report(const GaussPolySpec& spec, double Q, const SieveTables& tables,
                             const Parallel& par) {
    DensityReport r;
    r.Q = Q;
    r.raw_sum = density_sum(spec, Q, true, tables, par);
    r.sta_sum = density_sum(spec, Q, false, tables, par);
    r.normalized = r.sta_sum * std::pow(std::log(Q), spec.k()) / std::pow(Q, spec.ell());
    return r;
}

DensityCorrection density_correction(const GaussPolySpec& spec, double Q, const SieveTables& tables) {
    DensityCorrection c;
    DyadicBox(Q, spec.ell()).for_each([&](std::span<const std::uint64_t> q) {
        const auto factors = factor_values(spec, q);
        const double l = lambda_product(factors, tables);
        if (l == 0.0) return;
        bool proper_power = false;
        for (std::uint64_t f : factors) proper_power = proper_power || !tables.is_prime(f);
        if (proper_power) {
            c.prime_power_part += l;
            ++c.prime_power_points;
        } else if (!poly_value_squarefree(factors, tables)) {
            c.repeated_prime_part += l;
            ++c.repeated_prime_points;
        }
    });
    return c;
}

int chi4(std::uint64_t n) {
    switch (n % 4) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
    }
}

double theta(std::uint64_t ell_value, const SieveTables& tables) {
    double product = 1.0;
    for (std::uint64_t p : tables.distinct_prime_factors(ell_value)) {
        product /= 1.0 - static_cast<double>(chi4(p)) / static_cast<double>(p - 1);
    }
    return product;
}

EulerConstant constant_c(std::uint64_t truncation_bound, const SieveTables& tables) {
    if (truncation_bound < 3) throw DomainError("constant_c needs a truncation bound >= 3");
    EulerConstant c;
    c.truncation = truncation_bound;
    // Sum logs in increasing p; the factors are all 1 + O(1/p^2).
    double log_sum = 0.0;
    for (std::uint64_t p : tables.primes_upto(truncation_bound)) {
        const double chi = chi4(p);
        const double pd = static_cast<double>(p);
        log_sum += std::log1p(-chi / ((pd - 1.0) * (pd - chi)));
    }
    c.value = std::exp(log_sum);
    const double b = static_cast<double>(truncation_bound);
    c.tail_bound = 2.0 / (b * std::log(b));
    return c;
}

const EulerConstant& cached_constant_c() {
    static const EulerConstant c = [] {
        constexpr std::uint64_t bound = 1'000'000;
        return constant_c(bound, SieveTables(bound));
    }();
    return c;
}

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

FiComparison fi_compare(double x, const LambdaWeights& lambda, const SieveTables& tables,
                        const EulerConstant& c, const Parallel& par) {
    FiComparison out;
    if (x < 2.0) return out;
    const auto X = static_cast<std::uint64_t>(std::floor(x));
    if (X > tables.limit()) throw CapacityError("x exceeds sieve limit");
    const std::uint64_t lmax = isqrt(X - 1);
    struct Row {
        double lam = 0.0;
        double main = 0.0;
    };
    const auto rows = parallel_map<Row>(lmax, par, [&](std::size_t i) {
        const std::uint64_t l = i + 1;
        const double w = lambda(l);
        if (!(w >= -1.0 && w <= 1.0)) throw DomainError("lambda weights must lie in [-1, 1]");
        Row row;
        if (w == 0.0) return row;
        const std::uint64_t mmax = isqrt(X - l * l);
        double s = 0.0;
        for (std::uint64_t m = 1; m <= mmax; ++m) s += tables.lambda(l * l + m * m);
        row.lam = w * s;
        row.main = w * theta(l, tables) * static_cast<double>(mmax);
        return row;
    });
    for (const Row& r : rows) {
        out.lam_sum += r.lam;
        out.main_term += r.main;
    }
    out.main_term *= 4.0 * c.value / std::numbers::pi;
    if (out.main_term != 0.0) out.ratio = out.lam_sum / out.main_term;
    return out;
}

GeometricDecomposition geometric_decomposition(double Q, const SieveTables& tables) {
    if (!(Q > 0.0)) throw DomainError("geometric decomposition needs Q > 0");
    GeometricDecomposition g;
    const double two = 2.0 * Q * Q;
    const double five = 5.0 * Q * Q;
    const double eight = 8.0 * Q * Q;
    const auto top = static_cast<std::uint64_t>(std::floor(std::sqrt(eight)));
    if (static_cast<std::uint64_t>(std::floor(eight)) > tables.limit()) {
        throw CapacityError("8 Q^2 exceeds sieve limit");
    }
    const auto lo = static_cast<std::uint64_t>(std::floor(Q));
    const auto hi = static_cast<std::uint64_t>(std::floor(2.0 * Q));
    for (std::uint64_t a = 1; a <= top; ++a) {
        for (std::uint64_t b = 1; b <= top; ++b) {
            const std::uint64_t s = a * a + b * b;
            const double sd = static_cast<double>(s);
            if (!(sd > two && sd <= eight)) continue;
            const double l = tables.lambda(s);
            if (l == 0.0) continue;
            const double ad = static_cast<double>(a);
            g.annulus += l;
            if (ad > 2.0 * Q) g.outer += l;
            if (sd <= five && ad <= Q) g.inner += l;
            if (sd <= five && ad > 2.0 * Q) g.corner += l;
            if (a > lo && a <= hi && b > lo && b <= hi) g.box_sum += l;
        }
    }
    return g;
}

} // namespace gbv
