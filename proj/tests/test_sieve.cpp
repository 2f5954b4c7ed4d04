#include "gbv/errors.hpp"
#include "gbv/sieve.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace gbv;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("spf table small limits") {
    const SieveTables t(10);
    const std::vector<std::uint32_t> expected = {0, 0, 2, 3, 2, 5, 2, 7, 2, 3, 2};
    CHECK(std::vector<std::uint32_t>(t.spf_table().begin(), t.spf_table().end()) == expected);
    CHECK(SieveTables(2).spf(2) == 2);
    const SieveTables t30(30);
    CHECK(t30.spf(30) == 2);
    CHECK(t30.spf(25) == 5);
}

TEST_CASE("limit validation") {
    CHECK_THROWS_AS(SieveTables(1), CapacityError);
    CHECK_THROWS_AS(SieveTables(1000, 999), CapacityError);
    CHECK_THROWS_AS(SieveTables(SieveTables::kDefaultCap + 1), CapacityError);
    const SieveTables t(100);
    CHECK_THROWS_AS(t.lambda(101), CapacityError);
    CHECK_THROWS_AS(t.mobius(0), DomainError);
}

TEST_CASE("arithmetic function examples") {
    const SieveTables t(100);
    CHECK(t.lambda(1) == 0.0);
    CHECK(t.lambda(8) == doctest::Approx(std::log(2.0)));
    CHECK(t.lambda(12) == 0.0);
    CHECK(t.mobius(1) == 1);
    CHECK(t.mobius(4) == 0);
    CHECK(t.mobius(30) == -1);
    CHECK(t.totient(1) == 1);
    CHECK(t.totient(10) == 4);
    CHECK(t.totient(13) == 12);
    CHECK(t.is_prime(2));
    CHECK_FALSE(t.is_prime(25));
    CHECK(t.is_prime(97));
    CHECK_FALSE(t.is_prime(1));
}

TEST_CASE("agreement with trial division up to 10^4") {
    const SieveTables t(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        REQUIRE(t.lambda(n) == doctest::Approx(oracle::lambda(n)).epsilon(1e-15));
        REQUIRE(t.mobius(n) == oracle::mobius(n));
        REQUIRE(t.is_prime(n) == oracle::is_prime(n));
        REQUIRE(t.factorize(n) == oracle::factor(n));
    }
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        REQUIRE(t.totient(n) == oracle::totient(n));
        REQUIRE(t.divisor_count(n) == oracle::divisors(n));
    }
}

TEST_CASE("divisor-sum identities up to 10^4") {
    const SieveTables t(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        long mu_sum = 0;
        double lambda_sum = 0.0;
        std::uint64_t phi_sum = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            const std::uint64_t e = n / d;
            mu_sum += t.mobius(d);
            lambda_sum += t.lambda(d);
            phi_sum += t.totient(d);
            if (e != d) {
                mu_sum += t.mobius(e);
                lambda_sum += t.lambda(e);
                phi_sum += t.totient(e);
            }
        }
        REQUIRE(mu_sum == (n == 1 ? 1 : 0));
        REQUIRE(std::abs(lambda_sum - std::log(static_cast<double>(n))) < 1e-9);
        REQUIRE(phi_sum == n);
    }
}

TEST_CASE("prime powers are sorted jump points") {
    const SieveTables t(200);
    const auto pp = prime_powers_upto(t, 30.5);
    std::vector<std::uint64_t> ns;
    for (const auto& p : pp) {
        ns.push_back(p.n);
        CHECK(p.log_p == doctest::Approx(t.lambda(p.n)));
    }
    CHECK(ns == std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29});
    CHECK(prime_powers_upto(t, 1.9).empty());
}

TEST_CASE("primes_upto") {
    const SieveTables t(50);
    CHECK(t.primes_upto(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(t.distinct_prime_factors(50) == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("cache round trip and corruption") {
    const auto path = temp_file("gbv_test_cache.bin");
    const SieveTables t(5000);
    save_sieve_cache(t, path);
    CHECK(load_sieve_cache(path) == t);
    CHECK(load_sieve_cache(path, 5000) == t);
    CHECK_NOTHROW(verify_sieve_cache(path, 5000));
    CHECK_THROWS_AS(load_sieve_cache(path, 4000), CapacityError);

    // Second save is byte-identical.
    const auto path2 = temp_file("gbv_test_cache2.bin");
    save_sieve_cache(SieveTables(5000), path2);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
    CHECK(sa.size() == 8 + 8 + 4 * (5000 - 1));
    CHECK(sa.substr(0, 8) == "GBVSPF01");

    std::filesystem::resize_file(path2, sa.size() - 4);
    CHECK_THROWS_AS(load_sieve_cache(path2), CapacityError);

    {
        std::ofstream bad(path2, std::ios::binary | std::ios::trunc);
        std::string corrupt = sa;
        corrupt[3] = 'X';
        bad << corrupt;
    }
    CHECK_THROWS_AS(load_sieve_cache(path2), CapacityError);

    {
        std::ofstream bad(path2, std::ios::binary | std::ios::trunc);
        std::string corrupt = sa;
        corrupt[20] ^= 1; // flips an spf entry
        bad << corrupt;
    }
    CHECK_THROWS_AS(verify_sieve_cache(path2, 5000), CapacityError);

    CHECK_THROWS_AS(load_sieve_cache(temp_file("gbv_missing_cache.bin")), IoError);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}
