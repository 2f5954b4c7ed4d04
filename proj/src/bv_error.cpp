#include "gbv/bv_error.hpp"

#include "gbv/errors.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace gbv {

ProgressionSweep::ProgressionSweep(std::uint64_t modulus, std::uint64_t phi, bool coprime_only)
    : m_(modulus), phi_(static_cast<double>(phi)), psi_(modulus, 0.0), tracked_(modulus, 1) {
    if (modulus == 0 || phi == 0) throw DomainError("modulus and phi must be positive");
    record_.modulus = modulus;
    record_.coprime_only = coprime_only;
    if (coprime_only) {
        for (std::uint64_t a = 0; a < m_; ++a) tracked_[a] = std::gcd(a, m_) == 1;
    }
}

void ProgressionSweep::consider(std::uint64_t a, double y, double value, bool left_limit) {
    const double mag = std::abs(value);
    if (mag > record_.supE) {
        record_.supE = mag;
        record_.witness_a = a;
        record_.witness_y = y;
        record_.witness_left_limit = left_limit;
    }
}

void ProgressionSweep::advance(const PrimePower& pp) {
    const std::uint64_t a = pp.n % m_;
    const double y = static_cast<double>(pp.n);
    if (tracked_[a]) consider(a, y, psi_[a] - y / phi_, true);
    psi_[a] += pp.log_p;
    if (tracked_[a]) consider(a, y, psi_[a] - y / phi_, false);
}

ModulusErrorRecord ProgressionSweep::finish(double x) {
    for (std::uint64_t a = 0; a < m_; ++a) {
        if (tracked_[a]) consider(a, x, psi_[a] - x / phi_, false);
    }
    return record_;
}

ModulusErrorRecord sweep_modulus(std::uint64_t m, std::uint64_t phi, double x, bool coprime_only,
                                 const std::vector<PrimePower>& prime_powers) {
    ProgressionSweep sweep(m, phi, coprime_only);
    for (const PrimePower& pp : prime_powers) {
        if (static_cast<double>(pp.n) > x) break;
        sweep.advance(pp);
    }
    return sweep.finish(x);
}

ModulusErrorRecord sweep_modulus(std::uint64_t m, double x, bool coprime_only,
                                 const SieveTables& tables) {
    if (m == 0) throw DomainError("modulus must be positive");
    return sweep_modulus(m, tables.totient(m), x, coprime_only, prime_powers_upto(tables, x));
}

double error_at(std::uint64_t m, std::uint64_t phi, std::uint64_t a, double y, bool left_limit,
                const std::vector<PrimePower>& prime_powers) {
    double psi = 0.0;
    for (const PrimePower& pp : prime_powers) {
        const double n = static_cast<double>(pp.n);
        if (n > y || (left_limit && n == y)) break;
        if (pp.n % m == a) psi += pp.log_p;
    }
    return std::abs(psi - y / static_cast<double>(phi));
}

std::vector<ModulusErrorRecord> classical_bv_records(double Q, double x, bool coprime_only,
                                                     const SieveTables& tables,
                                                     const Parallel& par) {
    if (Q > x) throw DomainError("classical BV sum needs Q <= x");
    const std::uint64_t count = Q < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(Q));
    if (count > tables.limit()) throw CapacityError("Q exceeds sieve limit");
    const auto prime_powers = prime_powers_upto(tables, x);
    return parallel_map<ModulusErrorRecord>(count, par, [&](std::size_t i) {
        const std::uint64_t q = i + 1;
        return sweep_modulus(q, tables.totient(q), x, coprime_only, prime_powers);
    });
}

double classical_bv_sum(double Q, double x, const SieveTables& tables, bool coprime_only,
                        const Parallel& par) {
    double sum = 0.0;
    for (const auto& r : classical_bv_records(Q, x, coprime_only, tables, par)) sum += r.supE;
    return sum;
}

WeightedBvResult weighted_gaussian_bv_sum(const GaussPolySpec& spec, double Q, double x,
                                          const SieveTables& tables, const Parallel& par,
                                          bool memoize) {
    const DyadicBox box(Q, spec.ell());
    const auto prime_powers = prime_powers_upto(tables, x);

    struct Point {
        double weight;
        std::size_t modulus_index;
    };
    std::vector<Point> points;
    std::vector<PolyModulus> moduli;
    std::map<std::uint64_t, std::size_t> index;
    WeightedBvResult out;
    box.for_each([&](std::span<const std::uint64_t> q) {
        ++out.box_points;
        const double g = weight_G(spec, q, tables);
        if (g == 0.0) return;
        const std::uint64_t P = eval_poly(spec, q);
        auto it = memoize ? index.find(P) : index.end();
        if (it == index.end()) {
            it = index.insert_or_assign(P, moduli.size()).first;
            moduli.push_back(poly_modulus(spec, q, tables));
        }
        points.push_back({g, it->second});
    });
    out.contributing = points.size();
    out.sweeps = moduli.size();

    const auto records = parallel_map<ModulusErrorRecord>(moduli.size(), par, [&](std::size_t i) {
        return sweep_modulus(moduli[i].value, moduli[i].phi, x, true, prime_powers);
    });
    const double volume = std::pow(Q, static_cast<double>(spec.ell()));
    for (const Point& p : points) {
        const PolyModulus& m = moduli[p.modulus_index];
        out.value += p.weight * static_cast<double>(m.phi) / volume * records[p.modulus_index].supE;
    }
    return out;
}

} // namespace gbv
