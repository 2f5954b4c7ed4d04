#include "gbv/moduli.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace gbv {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        const std::uint64_t g = std::gcd(result, i);
        const std::uint64_t factor = (n - k + i) / (i / g);
        std::uint64_t next = 0;
        if (__builtin_mul_overflow(result / g, factor, &next)) {
            throw CapacityError("binomial coefficient overflows 64 bits");
        }
        result = next;
    }
    return result;
}

namespace {

std::uint64_t exponent_r(std::uint64_t degree, unsigned ell) {
    return binomial(degree + ell - 1, ell) - 1;
}

Rational unit_fraction(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t den = 0;
    if (__builtin_mul_overflow(a, b, &den) || __builtin_mul_overflow(den, c, &den)) {
        throw CapacityError("sigma denominator overflows 64 bits");
    }
    return Rational::make(1, den);
}

} // namespace

GaussPolySpec::GaussPolySpec(unsigned ell, std::vector<IndexPair> pairs)
    : ell_(ell), pairs_(std::move(pairs)) {
    if (ell_ == 0) throw ValidationError("ell must be positive");
    if (pairs_.empty()) throw ValidationError("k must be positive");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto [u, v] = pairs_[i];
        if (u < 1 || u > ell_ || v < 1 || v > ell_) {
            throw ValidationError("pair " + std::to_string(u) + ":" + std::to_string(v) +
                                  " has an index outside 1.." + std::to_string(ell_));
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto [a, b] = pairs_[j];
            if ((a == u && b == v) || (a == v && b == u)) {
                throw ValidationError("duplicate unordered pair " + std::to_string(a) + ":" +
                                      std::to_string(b) + " and " + std::to_string(u) + ":" +
                                      std::to_string(v));
            }
        }
    }
    r_ = exponent_r(degree(), ell_);
    if (r_ == 0) throw ValidationError("r = 0 gives an undefined sigma");
    sigma_ = unit_fraction(4, k(), r_);
}

GaussPolySpec GaussPolySpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    long k = -1;
    long ell = -1;
    std::vector<IndexPair> pairs;
    bool have_pairs = false;
    auto to_uint = [&](const std::string& s, const char* what) -> unsigned long {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw ValidationError(std::string("bad ") + what + " '" + s + "' in spec '" + text + "'");
        }
        return std::stoul(s);
    };
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ValidationError("bad spec token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "k") {
            k = static_cast<long>(to_uint(value, "k"));
        } else if (key == "ell") {
            ell = static_cast<long>(to_uint(value, "ell"));
        } else if (key == "pairs") {
            have_pairs = true;
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) throw ValidationError("bad pair '" + item + "'");
                pairs.push_back({static_cast<unsigned>(to_uint(item.substr(0, colon), "pair index")),
                                 static_cast<unsigned>(to_uint(item.substr(colon + 1), "pair index"))});
            }
        } else {
            throw ValidationError("unknown spec key '" + key + "'");
        }
    }
    if (ell < 0 || !have_pairs) throw ValidationError("spec needs ell= and pairs=: '" + text + "'");
    if (k >= 0 && static_cast<std::size_t>(k) != pairs.size()) {
        throw ValidationError("k=" + std::to_string(k) + " but " + std::to_string(pairs.size()) +
                              " pairs given");
    }
    return GaussPolySpec(static_cast<unsigned>(ell), std::move(pairs));
}

std::string GaussPolySpec::to_string() const {
    std::string s = "k=" + std::to_string(k()) + " ell=" + std::to_string(ell_) + " pairs=";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(pairs_[i].u) + ":" + std::to_string(pairs_[i].v);
    }
    return s;
}

GaussPolySpec GaussPolySpec::with_swapped_pair(unsigned index) const {
    auto pairs = pairs_;
    std::swap(pairs.at(index).u, pairs.at(index).v);
    return GaussPolySpec(ell_, std::move(pairs));
}

GaussPolySpec validate_spec(unsigned k, unsigned ell, const std::vector<unsigned>& u,
                            const std::vector<unsigned>& v) {
    if (u.size() != k || v.size() != k) {
        throw ValidationError("maps u and v must be defined on 1..k");
    }
    std::vector<IndexPair> pairs;
    for (unsigned i = 0; i < k; ++i) pairs.push_back({u[i], v[i]});
    return GaussPolySpec(ell, std::move(pairs));
}

std::vector<std::uint64_t> factor_values(const GaussPolySpec& spec,
                                         std::span<const std::uint64_t> q) {
    if (q.size() != spec.ell()) throw ValidationError("tuple length differs from ell");
    std::vector<std::uint64_t> out;
    out.reserve(spec.k());
    for (const auto [u, v] : spec.pairs()) {
        const std::uint64_t a = q[u - 1];
        const std::uint64_t b = q[v - 1];
        std::uint64_t a2 = 0, b2 = 0, s = 0;
        if (__builtin_mul_overflow(a, a, &a2) || __builtin_mul_overflow(b, b, &b2) ||
            __builtin_add_overflow(a2, b2, &s)) {
            throw CapacityError("quadratic factor overflows 64 bits");
        }
        out.push_back(s);
    }
    return out;
}

std::uint64_t eval_poly(const GaussPolySpec& spec, std::span<const std::uint64_t> q) {
    std::uint64_t product = 1;
    for (std::uint64_t f : factor_values(spec, q)) {
        if (__builtin_mul_overflow(product, f, &product)) {
            throw CapacityError("P(q) overflows 64 bits");
        }
    }
    return product;
}

bool poly_value_squarefree(std::span<const std::uint64_t> factors, const SieveTables& tables) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!tables.is_squarefree(factors[i])) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (std::gcd(factors[i], factors[j]) != 1) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> PolyModulus::primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& [p, e] : factorization) out.push_back(p);
    return out;
}

PolyModulus poly_modulus(const GaussPolySpec& spec, std::span<const std::uint64_t> q,
                         const SieveTables& tables) {
    PolyModulus m;
    m.value = eval_poly(spec, q);
    std::map<std::uint64_t, unsigned> exps;
    for (std::uint64_t f : factor_values(spec, q)) {
        for (const auto& [p, e] : tables.factorize(f)) exps[p] += e;
    }
    for (const auto& [p, e] : exps) {
        m.factorization.emplace_back(p, e);
        if (e > 1) m.squarefree = false;
        if (p == 2) m.odd = false;
        m.phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) m.phi *= p;
    }
    return m;
}

double weight_G(const GaussPolySpec& spec, std::span<const std::uint64_t> q,
                const SieveTables& tables) {
    const auto factors = factor_values(spec, q);
    double product = 1.0;
    for (std::uint64_t f : factors) {
        const double l = tables.lambda(f);
        if (l == 0.0) return 0.0;
        product *= l;
    }
    return poly_value_squarefree(factors, tables) ? product : 0.0;
}

DyadicBox::DyadicBox(double Q, unsigned ell) : Q_(Q), ell_(ell) {
    if (!(Q > 1.0)) throw DomainError("dyadic box needs Q > 1");
    if (ell == 0) throw DomainError("dyadic box needs ell >= 1");
    lo_ = static_cast<std::uint64_t>(std::floor(Q)) + 1;
    hi_ = static_cast<std::uint64_t>(std::floor(2.0 * Q));
}

std::uint64_t DyadicBox::size() const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < ell_; ++i) {
        if (__builtin_mul_overflow(n, side(), &n)) throw CapacityError("box size overflows");
    }
    return n;
}

void DyadicBox::tuple_at(std::uint64_t index, std::span<std::uint64_t> out) const {
    const std::uint64_t s = side();
    for (unsigned i = ell_; i-- > 0;) {
        out[i] = lo_ + index % s;
        index /= s;
    }
}

std::pair<std::uint64_t, std::uint64_t> box_extremes(const GaussPolySpec& spec, double Q) {
    const DyadicBox box(Q, spec.ell());
    if (box.empty()) throw DomainError("no integers in the dyadic box for this Q");
    const std::vector<std::uint64_t> lo(spec.ell(), box.lo());
    const std::vector<std::uint64_t> hi(spec.ell(), box.hi());
    return {eval_poly(spec, lo), eval_poly(spec, hi)};
}

QRange q_range(const GaussPolySpec& spec, double x, double epsilon) {
    if (!(x > 1.0)) throw DomainError("q_range needs x > 1");
    if (!(epsilon > 0.0 && epsilon < 1.0 / 6.0)) throw DomainError("q_range needs 0 < epsilon < 1/6");
    const double sigma = spec.sigma().to_double();
    QRange r{};
    r.exponent_min = epsilon / sigma;
    r.exponent_max = (1.0 / 3.0 - 2.0 * epsilon) / (2.0 * spec.k() - sigma);
    r.q_min = std::pow(x, r.exponent_min);
    r.q_max = std::pow(x, r.exponent_max);
    return r;
}

Rational sigma_assumptions(unsigned degree, unsigned ell) {
    if (degree < 2) throw DomainError("sigma_assumptions needs degree >= 2");
    if (ell == 0) throw DomainError("sigma_assumptions needs ell >= 1");
    const std::uint64_t r = exponent_r(degree, ell);
    return unit_fraction(2, r, degree);
}

} // namespace gbv
