#pragma once

// Slow, independent reimplementations used as test oracles. Nothing here
// touches the sieve tables or the library's enumeration helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using u64 = std::uint64_t;

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline double lambda(u64 n) {
    const auto f = factor(n);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

inline int mobius(u64 n) {
    int s = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

inline u64 totient(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

inline u64 divisors(u64 n) {
    u64 c = 0;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

inline cplx e(double alpha) {
    return std::exp(cplx(0.0, 2.0 * std::numbers::pi * alpha));
}

/// Integer tuples in (Q, 2Q]^ell by nested odometer.
inline std::vector<std::vector<u64>> box(double Q, unsigned ell) {
    u64 lo = 1;
    while (static_cast<double>(lo) <= Q) ++lo;
    u64 hi = lo;
    while (static_cast<double>(hi + 1) <= 2.0 * Q) ++hi;
    std::vector<std::vector<u64>> out;
    if (static_cast<double>(lo) > 2.0 * Q) return out;
    std::vector<u64> q(ell, lo);
    for (;;) {
        out.push_back(q);
        unsigned i = ell;
        while (i > 0 && q[i - 1] == hi) q[--i] = lo;
        if (i == 0) break;
        ++q[i - 1];
    }
    return out;
}

/// The quadratic factors for 1-based pairs.
inline std::vector<u64> factors(const std::vector<std::pair<unsigned, unsigned>>& pairs,
                                const std::vector<u64>& q) {
    std::vector<u64> out;
    for (auto [u, v] : pairs) out.push_back(q[u - 1] * q[u - 1] + q[v - 1] * q[v - 1]);
    return out;
}

inline u64 product(const std::vector<u64>& f) {
    u64 p = 1;
    for (u64 x : f) p *= x;
    return p;
}

/// sum_{1 <= a <= m, gcd(a,m)=1} |sum_n v_n e(a n / m)|^2, v indexed from n = 1.
inline double farey(const std::vector<cplx>& v, u64 m) {
    double total = 0.0;
    for (u64 a = 1; a <= m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        cplx s = 0.0;
        for (std::size_t n = 0; n < v.size(); ++n)
            s += v[n] * e(static_cast<double>(a) * static_cast<double>(n + 1) / static_cast<double>(m));
        total += std::norm(s);
    }
    return total;
}

/// Dense scan of sup_{y <= x} max_a |psi(y; m, a) - y/phi(m)| evaluated at every
/// integer (value and left limit) and at y = x.
inline double dense_sup_error(u64 m, double x, bool coprime_only) {
    const double phi = static_cast<double>(totient(m));
    std::vector<double> psi(m, 0.0);
    double best = 0.0;
    auto scan = [&](double y) {
        for (u64 a = 0; a < m; ++a) {
            if (coprime_only && std::gcd(a, m) != 1) continue;
            best = std::max(best, std::abs(psi[a] - y / phi));
        }
    };
    const auto top = static_cast<u64>(std::floor(x));
    for (u64 n = 1; n <= top; ++n) {
        scan(static_cast<double>(n));
        psi[n % m] += lambda(n);
        scan(static_cast<double>(n));
    }
    scan(x);
    return best;
}

} // namespace oracle
