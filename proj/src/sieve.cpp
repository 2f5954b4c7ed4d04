#include "gbv/sieve.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace gbv {

SieveTables::SieveTables(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
    if (limit < 2 || limit > cap) {
        throw CapacityError("sieve limit " + std::to_string(limit) +
                            " outside [2, " + std::to_string(cap) + "]");
    }
    spf_.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    // Linear sieve: every composite is struck exactly once by its spf.
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

SieveTables SieveTables::from_raw(std::uint64_t limit, std::vector<std::uint32_t> spf) {
    if (spf.size() != limit + 1) {
        throw CapacityError("spf table size does not match limit");
    }
    SieveTables t;
    t.limit_ = limit;
    t.spf_ = std::move(spf);
    return t;
}

void SieveTables::check(std::uint64_t n) const {
    if (n == 0) throw DomainError("arithmetic functions are defined for n >= 1");
    if (n > limit_) {
        throw CapacityError("n = " + std::to_string(n) + " exceeds sieve limit " +
                            std::to_string(limit_));
    }
}

std::uint32_t SieveTables::spf(std::uint64_t n) const {
    check(n);
    return spf_[n];
}

bool SieveTables::is_prime(std::uint64_t n) const {
    check(n);
    return n >= 2 && spf_[n] == n;
}

std::uint64_t SieveTables::prime_power_base(std::uint64_t n) const {
    check(n);
    if (n < 2) return 0;
    const std::uint64_t p = spf_[n];
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? p : 0;
}

double SieveTables::lambda(std::uint64_t n) const {
    const std::uint64_t p = prime_power_base(n);
    return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

int SieveTables::mobius(std::uint64_t n) const {
    check(n);
    int sign = 1;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t SieveTables::totient(std::uint64_t n) const {
    check(n);
    std::uint64_t result = n;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        result -= result / p;
        while (n % p == 0) n /= p;
    }
    return result;
}

bool SieveTables::is_squarefree(std::uint64_t n) const { return mobius(n) != 0; }

std::uint64_t SieveTables::divisor_count(std::uint64_t n) const {
    std::uint64_t d = 1;
    for (const auto& [p, e] : factorize(n)) d *= e + 1;
    return d;
}

std::vector<std::pair<std::uint64_t, unsigned>> SieveTables::factorize(std::uint64_t n) const {
    check(n);
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::uint64_t> SieveTables::distinct_prime_factors(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> SieveTables::primes_upto(std::uint64_t bound) const {
    if (bound > limit_) throw CapacityError("prime bound exceeds sieve limit");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= bound; ++n) {
        if (spf_[n] == n) out.push_back(n);
    }
    return out;
}

std::vector<PrimePower> prime_powers_upto(const SieveTables& tables, double x) {
    std::vector<PrimePower> out;
    if (x < 2.0) return out;
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    if (bound > tables.limit()) {
        throw CapacityError("x = " + std::to_string(bound) + " exceeds sieve limit " +
                            std::to_string(tables.limit()));
    }
    for (std::uint64_t p : tables.primes_upto(bound)) {
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t q = p; q <= bound; q *= p) {
            out.push_back({q, p, lp});
            if (q > bound / p) break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return out;
}

namespace {

void put_le(std::ofstream& out, std::uint64_t value, int bytes) {
    std::array<char, 8> buf{};
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out.write(buf.data(), bytes);
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

void save_sieve_cache(const SieveTables& tables, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(kSieveCacheMagic, sizeof kSieveCacheMagic);
    put_le(out, tables.limit(), 8);
    const auto spf = tables.spf_table();
    std::vector<char> body;
    body.reserve((spf.size() - 2) * 4);
    for (std::size_t n = 2; n < spf.size(); ++n) {
        const std::uint32_t v = spf[n];
        for (int i = 0; i < 4; ++i) body.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

SieveTables load_sieve_cache(const std::filesystem::path& path, std::uint64_t expected_limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::array<unsigned char, 16> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() != static_cast<std::streamsize>(header.size()) ||
        std::memcmp(header.data(), kSieveCacheMagic, sizeof kSieveCacheMagic) != 0) {
        throw CapacityError("bad sieve cache magic in " + path.string());
    }
    const std::uint64_t limit = get_le(header.data() + 8, 8);
    if (expected_limit != 0 && limit != expected_limit) {
        throw CapacityError("sieve cache limit " + std::to_string(limit) +
                            " does not match expected " + std::to_string(expected_limit));
    }
    if (limit < 2 || limit > SieveTables::kDefaultCap) {
        throw CapacityError("sieve cache limit out of range");
    }
    const std::size_t count = limit - 1;
    std::vector<unsigned char> body(count * 4);
    in.read(reinterpret_cast<char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (in.gcount() != static_cast<std::streamsize>(body.size()) || in.peek() != EOF) {
        throw CapacityError("sieve cache body has the wrong length");
    }
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::size_t i = 0; i < count; ++i) {
        spf[i + 2] = static_cast<std::uint32_t>(get_le(body.data() + 4 * i, 4));
    }
    return SieveTables::from_raw(limit, std::move(spf));
}

void verify_sieve_cache(const std::filesystem::path& path, std::uint64_t expected_limit) {
    const SieveTables loaded = load_sieve_cache(path, expected_limit);
    if (!(loaded == SieveTables(loaded.limit()))) {
        throw CapacityError("sieve cache contents differ from a fresh sieve");
    }
}

} // namespace gbv
