#include "gbv/large_sieve.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace gbv {

TrigSequence::TrigSequence(std::int64_t offset, std::vector<cplx> values)
    : offset_(offset), values_(std::move(values)), norm2_(0.0) {
    for (const cplx& v : values_) norm2_ += std::norm(v);
}

RatioReport RatioReport::make(double lhs, double bound, double Q, double size, std::string spec) {
    if (!(bound > 0.0)) throw DomainError("ratio report needs a positive bound");
    return {lhs, bound, lhs / bound, Q, size, std::move(spec)};
}

cplx exp_sum(const TrigSequence& seq, double alpha) {
    cplx sum{0.0, 0.0};
    const double frac = alpha - std::floor(alpha);
    for (std::size_t i = 0; i < seq.length(); ++i) {
        const auto n = seq.offset() + static_cast<std::int64_t>(i) + 1;
        // Reduce alpha * n mod 1 in two steps to keep the argument small.
        const double t = frac * static_cast<double>(n);
        sum += seq.values()[i] * unit_phase(t - std::floor(t));
    }
    return sum;
}

namespace {

std::uint64_t mod_of(std::int64_t n, std::uint64_t m) {
    const auto d = static_cast<std::int64_t>(m);
    std::int64_t r = n % d;
    return static_cast<std::uint64_t>(r < 0 ? r + d : r);
}

std::vector<cplx> twiddles(std::uint64_t m) {
    std::vector<cplx> tw(m);
    for (std::uint64_t j = 0; j < m; ++j) tw[j] = unit_phase(static_cast<std::int64_t>(j), m);
    return tw;
}

/// S(a/m) for a = 0 .. m-1 (entries with gcd(a, m) > 1 are left at zero
/// unless `all` is set).
std::vector<cplx> farey_values(const TrigSequence& seq, std::uint64_t m, bool all) {
    const auto tw = twiddles(m);
    std::vector<cplx> out(m);
    // Fold v by n mod m when that shortens the inner loop.
    std::vector<std::uint64_t> residues;
    std::vector<cplx> weights;
    if (seq.length() > m) {
        weights.assign(m, cplx{});
        for (std::size_t i = 0; i < seq.length(); ++i) {
            weights[mod_of(seq.offset() + static_cast<std::int64_t>(i) + 1, m)] += seq.values()[i];
        }
        residues.resize(m);
        std::iota(residues.begin(), residues.end(), 0);
    } else {
        weights = seq.values();
        for (std::size_t i = 0; i < seq.length(); ++i) {
            residues.push_back(mod_of(seq.offset() + static_cast<std::int64_t>(i) + 1, m));
        }
    }
    for (std::uint64_t a = 0; a < m; ++a) {
        if (!all && std::gcd(a, m) != 1) continue;
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < residues.size(); ++i) {
            const auto idx = static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(a) * residues[i] % m);
            s += weights[i] * tw[idx];
        }
        out[a] = s;
    }
    return out;
}

/// Box tuples grouped by modulus value. `order` maps each tuple (row-major)
/// to an index into `moduli`.
struct BoxModuli {
    std::vector<PolyModulus> moduli;
    std::vector<std::size_t> order;
};

BoxModuli collect_moduli(const GaussPolySpec& spec, double Q, const SieveTables& tables) {
    const DyadicBox box(Q, spec.ell());
    BoxModuli out;
    std::map<std::uint64_t, std::size_t> index;
    box.for_each([&](std::span<const std::uint64_t> q) {
        const std::uint64_t P = eval_poly(spec, q);
        auto it = index.find(P);
        if (it == index.end()) {
            it = index.emplace(P, out.moduli.size()).first;
            out.moduli.push_back(poly_modulus(spec, q, tables));
        }
        out.order.push_back(it->second);
    });
    return out;
}

/// Sums per-modulus values over the box in row-major order, counting skips.
CharacterSumResult reduce_over_box(const BoxModuli& bm, const std::vector<double>& per_modulus) {
    CharacterSumResult r;
    for (std::size_t idx : bm.order) {
        if (!bm.moduli[idx].odd_squarefree()) {
            ++r.skipped;
            continue;
        }
        ++r.included;
        r.value += per_modulus[idx];
    }
    return r;
}

double mass_factor(const PolyModulus& m) {
    return static_cast<double>(m.value) / static_cast<double>(m.phi);
}

} // namespace

double farey_sum(const TrigSequence& seq, std::uint64_t m) {
    if (m == 0) throw DomainError("farey_sum needs m >= 1");
    const auto values = farey_values(seq, m, false);
    double sum = 0.0;
    for (std::uint64_t a = 0; a < m; ++a) {
        if (std::gcd(a, m) == 1) sum += std::norm(values[a]);
    }
    return sum;
}

double sigma_quantity(const TrigSequence& seq, const GaussPolySpec& spec, double Q,
                      const SieveTables& tables, const Parallel& par) {
    const BoxModuli bm = collect_moduli(spec, Q, tables);
    const auto per = parallel_map<double>(bm.moduli.size(), par, [&](std::size_t i) {
        return farey_sum(seq, bm.moduli[i].value);
    });
    double sum = 0.0;
    for (std::size_t idx : bm.order) sum += per[idx];
    return sum;
}

double delta_bound(double Q, double N, const GaussPolySpec& spec) {
    if (!(Q > 1.0) || !(N >= 1.0)) throw DomainError("delta_bound needs Q > 1 and N >= 1");
    const double d = spec.degree();
    const double ell = spec.ell();
    const double s = spec.sigma().to_double();
    return std::pow(Q, d + ell) + std::pow(Q, ell - s) * N + std::pow(Q, ell + d * s) * std::pow(N, 1.0 - s);
}

CharacterChain character_chain(const TrigSequence& seq, const CharacterGroupContext& ctx) {
    const std::uint64_t q = ctx.modulus();
    const auto S = farey_values(seq, q, true);
    CharacterChain chain;
    double farey = 0.0;
    for (std::uint64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) == 1) farey += std::norm(S[a]);
    }
    std::uint64_t phi = 0;
    for (std::uint64_t a = 0; a < q; ++a) phi += std::gcd(a, q) == 1 ? 1 : 0;
    chain.farey_side = static_cast<double>(phi) / static_cast<double>(q) * farey;
    for (const DirichletCharacter& chi : ctx.characters()) {
        const auto conj_table = ctx.value_table(chi.conjugate());
        cplx twisted{0.0, 0.0};
        for (std::uint64_t a = 0; a < q; ++a) twisted += conj_table[a] * S[a];
        chain.all_character_sum += std::norm(twisted) / static_cast<double>(q);
        if (chi.is_primitive()) {
            const auto table = ctx.value_table(chi);
            cplx direct{0.0, 0.0};
            for (std::size_t i = 0; i < seq.length(); ++i) {
                direct += seq.values()[i] * table[mod_of(seq.offset() + static_cast<std::int64_t>(i) + 1, q)];
            }
            chain.primitive_sum += std::norm(direct);
        }
    }
    return chain;
}

double primitive_character_sum(const TrigSequence& seq, const CharacterGroupContext& ctx) {
    const std::uint64_t q = ctx.modulus();
    std::vector<cplx> folded(q);
    for (std::size_t i = 0; i < seq.length(); ++i) {
        folded[mod_of(seq.offset() + static_cast<std::int64_t>(i) + 1, q)] += seq.values()[i];
    }
    double sum = 0.0;
    for (const DirichletCharacter& chi : ctx.characters()) {
        if (!chi.is_primitive()) continue;
        const auto table = ctx.value_table(chi);
        cplx s{0.0, 0.0};
        for (std::uint64_t r = 0; r < q; ++r) s += folded[r] * table[r];
        sum += std::norm(s);
    }
    return sum;
}

CharacterSumResult char_form_lhs(const GaussPolySpec& spec, double Q, const TrigSequence& seq,
                                 const SieveTables& tables, const Parallel& par) {
    const BoxModuli bm = collect_moduli(spec, Q, tables);
    const auto per = parallel_map<double>(bm.moduli.size(), par, [&](std::size_t i) {
        const PolyModulus& m = bm.moduli[i];
        if (!m.odd_squarefree()) return 0.0;
        const CharacterGroupContext ctx(m.value, m.primes());
        return mass_factor(m) * primitive_character_sum(seq, ctx);
    });
    return reduce_over_box(bm, per);
}

namespace {

struct ProductTerm {
    std::uint64_t product;
    cplx coefficient;
};

/// a_m b_n grouped by mn, ascending.
std::vector<ProductTerm> bilinear_terms(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<ProductTerm> terms;
    terms.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            terms.push_back({(i + 1) * (j + 1), a[i] * b[j]});
        }
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const ProductTerm& x, const ProductTerm& y) { return x.product < y.product; });
    return terms;
}

double bilinear_max_terms(const std::vector<ProductTerm>& terms, const std::vector<cplx>& table) {
    const std::uint64_t q = table.size();
    cplx partial{0.0, 0.0};
    double best = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        partial += terms[i].coefficient * table[terms[i].product % q];
        const bool group_end = i + 1 == terms.size() || terms[i + 1].product != terms[i].product;
        if (group_end) best = std::max(best, std::abs(partial));
    }
    return best;
}

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
}

} // namespace

double bilinear_max(const std::vector<cplx>& a, const std::vector<cplx>& b,
                    const CharacterGroupContext& ctx, const DirichletCharacter& chi) {
    return bilinear_max_terms(bilinear_terms(a, b), ctx.value_table(chi));
}

BilinearResult bilinear_pair(const GaussPolySpec& spec, double Q, const std::vector<cplx>& a,
                             const std::vector<cplx>& b, const SieveTables& tables,
                             const Parallel& par) {
    const BoxModuli bm = collect_moduli(spec, Q, tables);
    const auto terms = bilinear_terms(a, b);
    const auto per = parallel_map<double>(bm.moduli.size(), par, [&](std::size_t i) {
        const PolyModulus& m = bm.moduli[i];
        if (!m.odd_squarefree()) return 0.0;
        const CharacterGroupContext ctx(m.value, m.primes());
        double sum = 0.0;
        for (const DirichletCharacter& chi : ctx.characters()) {
            if (chi.is_primitive()) sum += bilinear_max_terms(terms, ctx.value_table(chi));
        }
        return mass_factor(m) * sum;
    });
    const CharacterSumResult r = reduce_over_box(bm, per);
    BilinearResult out;
    out.lhs = r.value;
    out.included = r.included;
    out.skipped = r.skipped;
    const double na = norm2(a);
    const double nb = norm2(b);
    if (na > 0.0 && nb > 0.0) {
        out.rhs = std::sqrt(delta_bound(Q, static_cast<double>(a.size()), spec) *
                            delta_bound(Q, static_cast<double>(b.size()), spec) * na * nb);
    }
    return out;
}

double sup_psi_chi(const std::vector<PrimePower>& prime_powers, const CharacterGroupContext& ctx,
                   const DirichletCharacter& chi) {
    const auto table = ctx.value_table(chi);
    const std::uint64_t q = ctx.modulus();
    cplx psi{0.0, 0.0};
    double best = 0.0;
    for (const PrimePower& pp : prime_powers) {
        psi += table[pp.n % q] * pp.log_p;
        best = std::max(best, std::abs(psi));
    }
    return best;
}

CharacterSumResult bmvt_lhs(const GaussPolySpec& spec, double Q, double x,
                            const SieveTables& tables, const Parallel& par) {
    const BoxModuli bm = collect_moduli(spec, Q, tables);
    const auto prime_powers = prime_powers_upto(tables, x);
    const auto per = parallel_map<double>(bm.moduli.size(), par, [&](std::size_t i) {
        const PolyModulus& m = bm.moduli[i];
        if (!m.odd_squarefree()) return 0.0;
        const CharacterGroupContext ctx(m.value, m.primes());
        double sum = 0.0;
        for (const DirichletCharacter& chi : ctx.characters()) {
            if (chi.is_primitive()) sum += sup_psi_chi(prime_powers, ctx, chi);
        }
        return mass_factor(m) * sum;
    });
    return reduce_over_box(bm, per);
}

DeltaTilde delta_tilde(const GaussPolySpec& spec, double Q, double x) {
    if (!(Q > 1.0) || !(x > 1.0)) throw DomainError("delta_tilde needs Q, x > 1");
    const double d = spec.degree();
    const double ell = spec.ell();
    const double s = spec.sigma().to_double();
    const double upper = (2.0 * d + s) * std::log(Q);
    const double lower = (d + 3.0 - s) * std::log(Q);
    const double lx = std::log(x);
    auto first = [&] {
        return std::pow(Q, ell - s) * x + std::pow(Q, ell + (d - s) / 2.0) * std::pow(x, 5.0 / 6.0) +
               std::pow(Q, ell + (d - 1.0) * s / 2.0) * std::pow(x, 1.0 - s / 6.0);
    };
    auto second = [&] { return std::pow(Q, ell + 5.0 * d / 6.0 - s / 3.0) * std::pow(x, 2.0 / 3.0); };

    DeltaTilde out;
    const bool on_boundary = std::abs(lx - upper) <= 1e-12 * std::max(1.0, upper);
    if (on_boundary || lx > upper) {
        out.branch = DeltaTildeBranch::Upper;
        out.value = first();
        if (on_boundary) {
            out.boundary = true;
            out.other_value = second();
        }
    } else if (lx >= lower) {
        out.branch = DeltaTildeBranch::Middle;
        out.value = second();
    }
    return out;
}

} // namespace gbv
