#include "gbv/identities.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gbv {

namespace {

std::uint64_t floor_u(double v) { return v < 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(v)); }

void check_vaughan_range(double x, double U, const SieveTables& tables) {
    if (!(U >= 1.0) || !(U * U <= x)) throw DomainError("Vaughan decomposition needs 1 <= U, U^2 <= x");
    if (floor_u(x) > tables.limit()) throw CapacityError("x exceeds sieve limit");
}

} // namespace

double vaughan_a2(std::uint64_t m, double U, const SieveTables& tables) {
    const std::uint64_t u = floor_u(U);
    double sum = 0.0;
    for (std::uint64_t b = 1; b <= u && b <= m; ++b) {
        if (m % b != 0) continue;
        const std::uint64_t c = m / b;
        if (c > u) continue;
        const int mu = tables.mobius(b);
        if (mu != 0) sum += mu * tables.lambda(c);
    }
    return sum;
}

double vaughan_b2(std::uint64_t, double) { return 1.0; }

double vaughan_a3(std::uint64_t m, double U, const SieveTables& tables) {
    return static_cast<double>(m) > U ? tables.lambda(m) : 0.0;
}

double vaughan_b3(std::uint64_t k, double U, const SieveTables& tables) {
    if (!(static_cast<double>(k) > U)) return 0.0;
    const std::uint64_t u = floor_u(U);
    long sum = 0;
    for (std::uint64_t d = 1; d <= u && d <= k; ++d) {
        if (k % d == 0) sum += tables.mobius(d);
    }
    return static_cast<double>(sum);
}

VaughanDecomposition vaughan_decompose(const ArithmeticFunction& f, double x, double U,
                                       const SieveTables& tables) {
    check_vaughan_range(x, U, tables);
    const std::uint64_t X = floor_u(x);
    const std::uint64_t u = floor_u(U);

    std::vector<cplx> fv(X + 1);
    for (std::uint64_t n = 1; n <= X; ++n) fv[n] = f(n);
    std::vector<double> lam(X + 1, 0.0);
    for (std::uint64_t n = 2; n <= X; ++n) lam[n] = tables.lambda(n);
    std::vector<int> mu(u + 1, 0);
    for (std::uint64_t n = 1; n <= u; ++n) mu[n] = tables.mobius(n);

    VaughanDecomposition d;
    d.x = x;
    d.U = U;
    for (std::uint64_t n = 2; n <= u; ++n) d.head += fv[n] * lam[n];

    for (std::uint64_t b = 1; b <= u; ++b) {
        if (mu[b] == 0) continue;
        cplx inner{0.0, 0.0};
        for (std::uint64_t r = u / b + 1; r <= X / b; ++r) {
            inner += fv[b * r] * std::log(static_cast<double>(r));
        }
        d.type_one += static_cast<double>(mu[b]) * inner;
    }

    // a2 supported on m <= u^2 <= X.
    std::vector<double> a2(u * u + 1, 0.0);
    for (std::uint64_t b = 1; b <= u; ++b) {
        if (mu[b] == 0) continue;
        for (std::uint64_t c = 2; c <= u; ++c) {
            if (lam[c] != 0.0) a2[b * c] += mu[b] * lam[c];
        }
    }
    for (std::uint64_t m = 1; m < a2.size(); ++m) {
        if (a2[m] == 0.0) continue;
        cplx inner{0.0, 0.0};
        for (std::uint64_t k = u / m + 1; k <= X / m; ++k) inner += fv[m * k];
        d.type_two += a2[m] * inner;
    }

    std::vector<double> b3(X / (u + 1) + 1, 0.0);
    for (std::uint64_t e = 1; e <= u; ++e) {
        if (mu[e] == 0) continue;
        for (std::uint64_t k = e; k < b3.size(); k += e) b3[k] += mu[e];
    }
    for (std::uint64_t m = u + 1; m <= X; ++m) {
        if (lam[m] == 0.0) continue;
        cplx inner{0.0, 0.0};
        for (std::uint64_t k = u + 1; k <= X / m; ++k) inner += b3[k] * fv[m * k];
        d.type_three += lam[m] * inner;
    }

    for (std::uint64_t l = 1; l <= u; ++l) {
        // max over w of |sum_{w < k <= x/l} f(kl)|: suffix sums from the top.
        cplx suffix{0.0, 0.0};
        double best = 0.0;
        for (std::uint64_t k = X / l; k >= 1; --k) {
            suffix += fv[k * l];
            best = std::max(best, std::abs(suffix));
        }
        d.t1 += best;
    }
    d.t2 = std::abs(d.type_two);
    d.t3 = std::abs(d.type_three);
    return d;
}

double verify_vaughan(const ArithmeticFunction& f, double x, double U, const SieveTables& tables) {
    const VaughanDecomposition d = vaughan_decompose(f, x, U, tables);
    const std::uint64_t X = floor_u(x);
    cplx direct{0.0, 0.0};
    for (std::uint64_t n = floor_u(U) + 1; n <= X; ++n) {
        const double l = tables.lambda(n);
        if (l != 0.0) direct += f(n) * l;
    }
    return std::abs(d.tail() - direct);
}

double pv_ratio(const CharacterGroupContext& ctx, const DirichletCharacter& chi, double w,
                double z) {
    const std::uint64_t q = ctx.modulus();
    if (q <= 1 || chi.is_principal()) throw DomainError("Polya-Vinogradov needs a nonprincipal character");
    if (!(w < z)) throw DomainError("pv_ratio needs w < z");
    const auto lo = static_cast<std::int64_t>(std::floor(w));
    const auto hi = static_cast<std::int64_t>(std::floor(z));
    // A full period sums to zero.
    const auto terms = static_cast<std::uint64_t>(hi - lo) % q;
    cplx sum{0.0, 0.0};
    for (std::uint64_t i = 1; i <= terms; ++i) sum += ctx.eval(chi, lo + static_cast<std::int64_t>(i));
    const double qd = static_cast<double>(q);
    return std::abs(sum) / (std::sqrt(qd) * std::log(qd));
}

double pv_max_ratio(const CharacterGroupContext& ctx, const DirichletCharacter& chi) {
    const std::uint64_t q = ctx.modulus();
    if (q <= 1 || chi.is_principal()) throw DomainError("Polya-Vinogradov needs a nonprincipal character");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(q);
    cplx prefix{0.0, 0.0};
    pts.emplace_back(0.0, 0.0);
    for (std::uint64_t k = 1; k < q; ++k) {
        prefix += ctx.eval(chi, static_cast<std::int64_t>(k));
        pts.emplace_back(prefix.real(), prefix.imag());
    }
    // Andrew's monotone chain; the diameter is attained at hull vertices.
    std::sort(pts.begin(), pts.end());
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h > 1 ? h - 1 : h);
    double diameter = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            diameter = std::max(diameter, std::hypot(hull[i].first - hull[j].first,
                                                     hull[i].second - hull[j].second));
        }
    }
    const double qd = static_cast<double>(q);
    return diameter / (std::sqrt(qd) * std::log(qd));
}

} // namespace gbv
