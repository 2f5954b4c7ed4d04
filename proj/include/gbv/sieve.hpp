#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace gbv {

/// Smallest-prime-factor table over 2..limit with the arithmetic functions
/// derived from it. Immutable after construction, so one instance can be
/// shared by any number of worker threads.
class SieveTables {
public:
    static constexpr std::uint64_t kDefaultCap = 100'000'000;

    /// Throws CapacityError unless 2 <= limit <= cap.
    explicit SieveTables(std::uint64_t limit, std::uint64_t cap = kDefaultCap);

    /// Adopts an spf vector read from a cache file. `spf.size()` must be
    /// limit + 1; no validation is done here beyond the size.
    static SieveTables from_raw(std::uint64_t limit, std::vector<std::uint32_t> spf);

    std::uint64_t limit() const noexcept { return limit_; }

    /// spf[0] and spf[1] are stored as 0.
    std::span<const std::uint32_t> spf_table() const noexcept { return spf_; }
    std::uint32_t spf(std::uint64_t n) const;

    bool is_prime(std::uint64_t n) const;

    /// p if n = p^j with j >= 1, else 0.
    std::uint64_t prime_power_base(std::uint64_t n) const;

    /// von Mangoldt function.
    double lambda(std::uint64_t n) const;
    int mobius(std::uint64_t n) const;
    std::uint64_t totient(std::uint64_t n) const;
    bool is_squarefree(std::uint64_t n) const;
    std::uint64_t divisor_count(std::uint64_t n) const;

    /// (prime, exponent) pairs in increasing prime order.
    std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) const;
    std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) const;

    /// All primes <= bound (bound <= limit), ascending.
    std::vector<std::uint64_t> primes_upto(std::uint64_t bound) const;

    friend bool operator==(const SieveTables&, const SieveTables&) = default;

private:
    SieveTables() = default;
    void check(std::uint64_t n) const;

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
};

inline SieveTables build_sieve(std::uint64_t limit,
                               std::uint64_t cap = SieveTables::kDefaultCap) {
    return SieveTables(limit, cap);
}

/// A prime power n = p^j together with Lambda(n) = log p.
struct PrimePower {
    std::uint64_t n;
    std::uint64_t p;
    double log_p;
};

/// Prime powers n <= x in increasing order; the jump points of every psi sum.
std::vector<PrimePower> prime_powers_upto(const SieveTables& tables, double x);

// On-disk spf cache: "GBVSPF01", u64 LE limit, then u32 LE spf[n] for
// n = 2..limit.
inline constexpr char kSieveCacheMagic[8] = {'G', 'B', 'V', 'S', 'P', 'F', '0', '1'};

void save_sieve_cache(const SieveTables& tables, const std::filesystem::path& path);

/// Throws IoError if the file cannot be opened, CapacityError on a bad magic,
/// a truncated body or (when expected_limit != 0) a limit mismatch.
SieveTables load_sieve_cache(const std::filesystem::path& path,
                             std::uint64_t expected_limit = 0);

/// Loads the cache and checks every entry against a fresh sieve.
void verify_sieve_cache(const std::filesystem::path& path, std::uint64_t expected_limit);

} // namespace gbv
