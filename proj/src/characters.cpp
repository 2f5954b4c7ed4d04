#include "gbv/characters.hpp"

#include "gbv/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gbv {

cplx unit_phase(double alpha) {
    const double frac = alpha - std::floor(alpha);
    const double t = 2.0 * std::numbers::pi * frac;
    return {std::cos(t), std::sin(t)};
}

cplx unit_phase(std::int64_t num, std::uint64_t den) {
    const auto d = static_cast<std::int64_t>(den);
    std::int64_t r = num % d;
    if (r < 0) r += d;
    return unit_phase(static_cast<double>(r) / static_cast<double>(den));
}

bool DirichletCharacter::is_principal() const {
    for (std::uint64_t e : exponents) {
        if (e != 0) return false;
    }
    return true;
}

bool DirichletCharacter::is_primitive() const {
    for (std::uint64_t e : exponents) {
        if (e == 0) return false;
    }
    return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter c = *this;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t order = primes[i] - 1;
        c.exponents[i] = (order - exponents[i] % order) % order;
    }
    return c;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 result = 1;
    unsigned __int128 base = b % m;
    while (e) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

} // namespace

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t m = p - 1;
    for (std::uint64_t f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            factors.push_back(f);
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) factors.push_back(m);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generator = true;
        for (std::uint64_t f : factors) {
            if (powmod(g, (p - 1) / f, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw DomainError(std::to_string(p) + " has no primitive root; not prime?");
}

CharacterGroupContext::CharacterGroupContext(std::uint64_t q, const SieveTables& tables) : q_(q) {
    if (q == 0) throw UnsupportedModulusError("modulus must be positive");
    if (q % 2 == 0) throw UnsupportedModulusError("even modulus " + std::to_string(q));
    if (q > 1) {
        for (const auto& [p, e] : tables.factorize(q)) {
            if (e > 1) throw UnsupportedModulusError("modulus " + std::to_string(q) + " is not squarefree");
            primes_.push_back(p);
        }
    }
    build();
}

CharacterGroupContext::CharacterGroupContext(std::uint64_t q, std::vector<std::uint64_t> primes)
    : q_(q), primes_(std::move(primes)) {
    std::uint64_t product = 1;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const std::uint64_t p = primes_[i];
        if (p % 2 == 0) throw UnsupportedModulusError("even modulus " + std::to_string(q));
        if (i > 0 && p <= primes_[i - 1]) {
            throw UnsupportedModulusError("prime factors must be distinct and increasing");
        }
        product *= p;
    }
    if (product != q) throw UnsupportedModulusError("prime factors do not multiply to the modulus");
    build();
}

void CharacterGroupContext::build() {
    for (std::uint64_t p : primes_) {
        const std::uint64_t g = smallest_primitive_root(p);
        std::vector<std::uint32_t> table(p, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t e = 0; e + 1 < p; ++e) {
            table[cur] = static_cast<std::uint32_t>(e);
            cur = cur * g % p;
        }
        roots_.push_back(g);
        dlogs_.push_back(std::move(table));
    }
}

std::uint32_t CharacterGroupContext::dlog(std::size_t i, std::uint64_t a) const {
    const std::uint64_t p = primes_.at(i);
    a %= p;
    if (a == 0) throw DomainError("discrete log of a non-unit");
    return dlogs_[i][a];
}

std::vector<DirichletCharacter> CharacterGroupContext::characters() const {
    std::vector<DirichletCharacter> out;
    DirichletCharacter chi;
    chi.modulus = q_;
    chi.primes = primes_;
    chi.exponents.assign(primes_.size(), 0);
    for (;;) {
        out.push_back(chi);
        // Odometer increment over exponents, last prime fastest.
        std::size_t i = primes_.size();
        while (i > 0) {
            --i;
            if (++chi.exponents[i] < primes_[i] - 1) break;
            chi.exponents[i] = 0;
            if (i == 0) return out;
        }
        if (primes_.empty()) return out;
    }
}

cplx CharacterGroupContext::eval(const DirichletCharacter& chi, std::int64_t n) const {
    double phase = 0.0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const auto p = static_cast<std::int64_t>(primes_[i]);
        std::int64_t r = n % p;
        if (r < 0) r += p;
        if (r == 0) return {0.0, 0.0};
        const std::uint64_t order = primes_[i] - 1;
        const std::uint64_t e = (chi.exponents[i] % order) * dlogs_[i][static_cast<std::size_t>(r)] % order;
        phase += static_cast<double>(e) / static_cast<double>(order);
    }
    return unit_phase(phase);
}

std::vector<cplx> CharacterGroupContext::value_table(const DirichletCharacter& chi) const {
    std::vector<cplx> out(q_);
    for (std::uint64_t r = 0; r < q_; ++r) out[r] = eval(chi, static_cast<std::int64_t>(r));
    return out;
}

std::vector<DirichletCharacter> characters_mod(std::uint64_t q, const SieveTables& tables) {
    return CharacterGroupContext(q, tables).characters();
}

cplx gauss_sum(const CharacterGroupContext& ctx, const DirichletCharacter& chi) {
    const std::uint64_t q = ctx.modulus();
    cplx sum{0.0, 0.0};
    for (std::uint64_t a = 1; a <= q; ++a) {
        sum += ctx.eval(chi, static_cast<std::int64_t>(a)) * unit_phase(static_cast<std::int64_t>(a), q);
    }
    return sum;
}

cplx psi_chi(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double y,
             const SieveTables& tables) {
    cplx sum{0.0, 0.0};
    for (const PrimePower& pp : prime_powers_upto(tables, y)) {
        sum += ctx.eval(chi, static_cast<std::int64_t>(pp.n)) * pp.log_p;
    }
    return sum;
}

cplx psi_prime_chi(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double y,
                   const SieveTables& tables) {
    const cplx psi = psi_chi(ctx, chi, y, tables);
    return chi.is_principal() ? psi - y : psi;
}

} // namespace gbv
