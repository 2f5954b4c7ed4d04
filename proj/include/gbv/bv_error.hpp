#pragma once

#include "gbv/moduli.hpp"
#include "gbv/parallel.hpp"
#include "gbv/sieve.hpp"

#include <cstdint>
#include <vector>

namespace gbv {

/// sup_{y <= x} max_a |E(y; m, a)| with E(y; m, a) = psi(y; m, a) - y/phi(m),
/// and the point where it is attained.
struct ModulusErrorRecord {
    std::uint64_t modulus = 1;
    double supE = 0.0;
    std::uint64_t witness_a = 0;
    double witness_y = 0.0;
    /// The sup is the left limit E(witness_y^-; m, a) just before a jump.
    bool witness_left_limit = false;
    bool coprime_only = false;
};

/// Single pass over the prime powers n <= x that tracks psi(y; m, a) for every
/// residue. Between two jumps of a residue, E falls linearly with slope
/// -1/phi(m), so its extremes sit at the values just after each jump, the
/// left limits just before each jump, and y = x. Memory O(m).
class ProgressionSweep {
public:
    ProgressionSweep(std::uint64_t modulus, std::uint64_t phi, bool coprime_only);

    /// Prime powers must arrive in increasing order.
    void advance(const PrimePower& pp);
    /// Checks y = x for every tracked residue and returns the record.
    ModulusErrorRecord finish(double x);

    /// psi(y; m, a) at the last processed jump.
    const std::vector<double>& psi() const noexcept { return psi_; }

private:
    void consider(std::uint64_t a, double y, double value, bool left_limit);

    std::uint64_t m_;
    double phi_;
    std::vector<double> psi_;
    std::vector<char> tracked_;
    ModulusErrorRecord record_;
};

ModulusErrorRecord sweep_modulus(std::uint64_t m, std::uint64_t phi, double x, bool coprime_only,
                                 const std::vector<PrimePower>& prime_powers);

/// Convenience form; phi(m) and the prime powers come from the sieve.
ModulusErrorRecord sweep_modulus(std::uint64_t m, double x, bool coprime_only,
                                 const SieveTables& tables);

/// |E(y; m, a)| recomputed directly from the prime powers, for witnesses.
double error_at(std::uint64_t m, std::uint64_t phi, std::uint64_t a, double y, bool left_limit,
                const std::vector<PrimePower>& prime_powers);

/// One record per q = 1 .. floor(Q).
std::vector<ModulusErrorRecord> classical_bv_records(double Q, double x, bool coprime_only,
                                                     const SieveTables& tables,
                                                     const Parallel& par = {});

/// sum_{q <= Q} sup_{y <= x} max_a |E(y; q, a)|. The max runs over all
/// residues unless coprime_only is set.
double classical_bv_sum(double Q, double x, const SieveTables& tables, bool coprime_only = false,
                        const Parallel& par = {});

struct WeightedBvResult {
    double value = 0.0;
    /// Box points with G_q > 0.
    std::uint64_t contributing = 0;
    std::uint64_t box_points = 0;
    /// Distinct moduli actually swept.
    std::uint64_t sweeps = 0;
};

/// sum_{q ~ Q} G_q phi(P(q)) / Q^ell * sup_y max_{gcd(a,P)=1} |E(y; P(q), a)|.
/// Points with G_q = 0 are skipped without sweeping; with `memoize` each
/// distinct modulus is swept once.
WeightedBvResult weighted_gaussian_bv_sum(const GaussPolySpec& spec, double Q, double x,
                                          const SieveTables& tables, const Parallel& par = {},
                                          bool memoize = true);

} // namespace gbv
