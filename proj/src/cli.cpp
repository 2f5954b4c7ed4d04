#include "gbv/cli.hpp"

#include "gbv/bv_error.hpp"
#include "gbv/characters.hpp"
#include "gbv/density.hpp"
#include "gbv/errors.hpp"
#include "gbv/identities.hpp"
#include "gbv/large_sieve.hpp"
#include "gbv/moduli.hpp"
#include "gbv/report.hpp"
#include "gbv/rng.hpp"
#include "gbv/sieve.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

namespace gbv::cli {

namespace {

struct SweepConfig {
    std::string subcommand;
    std::string spec_text = "k=1 ell=2 pairs=1:2";
    std::string q_text;
    std::string x_text;
    std::string n_text = "100";
    std::string m_text = "8";
    double epsilon = 0.02;
    std::uint64_t seed = kDefaultSeed;
    std::string out_path;
    std::string format = "csv";
    std::string cache_path;
    unsigned workers = 0;
    bool coprime_only = false;
    unsigned trials = 1;
    std::string lambda = "one";
    bool records = false;
    std::string cache_action;
    std::uint64_t cache_limit = 1'000'000;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> grid_or(const std::string& text, std::vector<double> fallback) {
    return text.empty() ? fallback : parse_grid(text);
}

std::vector<double> required_grid(const std::string& text, const char* flag) {
    if (text.empty()) throw ValidationError(std::string("missing ") + flag);
    return parse_grid(text);
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

std::filesystem::path default_cache_path(std::uint64_t limit) {
    const char* dir = std::getenv("GBV_CACHE_DIR");
    const std::filesystem::path base = dir && *dir ? dir : ".gbv-cache";
    return base / ("spf-" + std::to_string(limit) + ".bin");
}

/// Loads the sieve from --cache (or GBV_CACHE_DIR) when one is configured,
/// building and saving it on a miss; otherwise builds it in memory.
SieveTables obtain_sieve(const SweepConfig& cfg, double needed_value) {
    const auto needed = static_cast<std::uint64_t>(std::max(100.0, std::ceil(needed_value)));
    if (needed > SieveTables::kDefaultCap) {
        throw CapacityError("experiment needs a sieve to " + std::to_string(needed) +
                            ", above the cap " + std::to_string(SieveTables::kDefaultCap));
    }
    std::optional<std::filesystem::path> path;
    if (!cfg.cache_path.empty()) {
        path = cfg.cache_path;
    } else if (const char* dir = std::getenv("GBV_CACHE_DIR"); dir && *dir) {
        path = default_cache_path(needed);
    }
    if (!path) return SieveTables(needed);
    if (std::filesystem::exists(*path)) {
        SieveTables t = load_sieve_cache(*path);
        if (t.limit() < needed) {
            throw CapacityError("cached sieve covers " + std::to_string(t.limit()) + " but " +
                                std::to_string(needed) + " is needed");
        }
        return t;
    }
    SieveTables t(needed);
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    save_sieve_cache(t, *path);
    return t;
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Cell optional_cell(const std::optional<double>& v) {
    if (v) return *v;
    return std::string("undefined");
}

ExperimentReport run_ls_ratio(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto qs = required_grid(cfg.q_text, "--Q");
    const auto ns = parse_grid(cfg.n_text);
    const SieveTables tables = obtain_sieve(cfg, 8.0 * max_of(qs) * max_of(qs) + 1);
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "Q", "N", "seed", "trials", "thm2.2_delta", "thm2.2_sigma_max",
                          "max_ratio", "mean_ratio"});
    for (double Q : qs) {
        for (double Nd : ns) {
            Stopwatch sw;
            const auto N = static_cast<std::size_t>(Nd);
            double max_ratio = 0.0, sum_ratio = 0.0, max_sigma = 0.0;
            const double delta = delta_bound(Q, Nd, spec);
            for (unsigned t = 0; t < cfg.trials; ++t) {
                SeededRng rng(cfg.seed + t);
                const TrigSequence seq(0, rng.unit_disk_sequence(N));
                const double sigma = sigma_quantity(seq, spec, Q, tables, par);
                const double ratio = sigma / (delta * seq.norm2());
                sum_ratio += ratio;
                if (ratio > max_ratio) {
                    max_ratio = ratio;
                    max_sigma = sigma;
                }
            }
            rep.add_row({spec.to_string(), Q, Nd, as_int(cfg.seed), std::int64_t{cfg.trials}, delta,
                         max_sigma, max_ratio, sum_ratio / cfg.trials},
                        sw.seconds());
        }
    }
    return rep;
}

ExperimentReport run_char_ls(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto qs = required_grid(cfg.q_text, "--Q");
    const auto ns = parse_grid(cfg.n_text);
    const SieveTables tables = obtain_sieve(cfg, 8.0 * max_of(qs) * max_of(qs) + 1);
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "Q", "N", "seed", "lemma3.1_lhs", "thm2.2_delta", "norm2", "ratio",
                          "included", "skipped"});
    for (double Q : qs) {
        for (double Nd : ns) {
            Stopwatch sw;
            SeededRng rng(cfg.seed);
            const TrigSequence seq(0, rng.unit_disk_sequence(static_cast<std::size_t>(Nd)));
            const auto r = char_form_lhs(spec, Q, seq, tables, par);
            const double delta = delta_bound(Q, Nd, spec);
            rep.add_row({spec.to_string(), Q, Nd, as_int(cfg.seed), r.value, delta, seq.norm2(),
                         r.value / (delta * seq.norm2()), as_int(r.included), as_int(r.skipped)},
                        sw.seconds());
        }
    }
    return rep;
}

ExperimentReport run_bilinear(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto qs = required_grid(cfg.q_text, "--Q");
    const auto ms = parse_grid(cfg.m_text);
    const auto ns = parse_grid(cfg.n_text);
    const SieveTables tables = obtain_sieve(cfg, 8.0 * max_of(qs) * max_of(qs) + 1);
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "Q", "M", "N", "seed", "lemma3.2_lhs", "lemma3.2_rhs", "ratio",
                          "included", "skipped"});
    for (double Q : qs) {
        for (double M : ms) {
            for (double N : ns) {
                Stopwatch sw;
                SeededRng rng_a(cfg.seed);
                SeededRng rng_b(cfg.seed + 1);
                const auto a = rng_a.unit_disk_sequence(static_cast<std::size_t>(M));
                const auto b = rng_b.unit_disk_sequence(static_cast<std::size_t>(N));
                const auto r = bilinear_pair(spec, Q, a, b, tables, par);
                rep.add_row({spec.to_string(), Q, M, N, as_int(cfg.seed), r.lhs, r.rhs,
                             r.rhs > 0 ? Cell{r.lhs / r.rhs} : Cell{std::string("undefined")},
                             as_int(r.included), as_int(r.skipped)},
                            sw.seconds());
            }
        }
    }
    return rep;
}

std::string branch_name(DeltaTildeBranch b) {
    switch (b) {
    case DeltaTildeBranch::Upper: return "upper";
    case DeltaTildeBranch::Middle: return "middle";
    case DeltaTildeBranch::OutOfRange: break;
    }
    return "out_of_range";
}

ExperimentReport run_bmvt(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto qs = required_grid(cfg.q_text, "--Q");
    const auto xs = required_grid(cfg.x_text, "--x");
    const SieveTables tables =
        obtain_sieve(cfg, std::max(max_of(xs), 8.0 * max_of(qs) * max_of(qs) + 1));
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "Q", "x", "thm4.1_lhs", "thm4.1_delta_tilde", "branch", "boundary",
                          "ratio", "lemma5.1_E", "included", "skipped"});
    for (double Q : qs) {
        for (double x : xs) {
            Stopwatch sw;
            const auto r = bmvt_lhs(spec, Q, x, tables, par);
            const DeltaTilde dt = delta_tilde(spec, Q, x);
            const std::optional<double> ratio =
                dt.value ? std::optional<double>(r.value / *dt.value) : std::nullopt;
            rep.add_row({spec.to_string(), Q, x, r.value, optional_cell(dt.value), branch_name(dt.branch),
                         dt.boundary, optional_cell(ratio),
                         r.value / std::pow(Q, static_cast<double>(spec.ell())), as_int(r.included),
                         as_int(r.skipped)},
                        sw.seconds());
        }
    }
    return rep;
}

double classical_q(double x) { return std::floor(std::sqrt(x) / std::pow(std::log(x), 4.0)); }

ExperimentReport run_bv_classical(const SweepConfig& cfg) {
    const auto xs = required_grid(cfg.x_text, "--x");
    const SieveTables tables = obtain_sieve(cfg, max_of(xs));
    const Parallel par{cfg.workers};
    if (cfg.records) {
        ExperimentReport rep({"Q", "x", "m", "supE", "witness_a", "witness_y", "left_limit"});
        for (double x : xs) {
            for (double Q : grid_or(cfg.q_text, {classical_q(x)})) {
                Stopwatch sw;
                for (const auto& r : classical_bv_records(Q, x, cfg.coprime_only, tables, par)) {
                    rep.add_row({Q, x, as_int(r.modulus), r.supE, as_int(r.witness_a), r.witness_y,
                                 r.witness_left_limit},
                                sw.seconds());
                }
            }
        }
        return rep;
    }
    ExperimentReport rep({"Q", "x", "coprime_only", "thm1.1_lhs", "normalized_lhs_logx2_over_x",
                          "thm1.1_rhs_term", "ratio"});
    for (double x : xs) {
        for (double Q : grid_or(cfg.q_text, {classical_q(x)})) {
            Stopwatch sw;
            const double lhs = classical_bv_sum(Q, x, tables, cfg.coprime_only, par);
            const double lx = std::log(x);
            const double rhs = Q >= 1.0 ? Q * std::sqrt(x) * std::pow(std::log(Q * x), 3.0) : 0.0;
            rep.add_row({Q, x, cfg.coprime_only, lhs, lhs * lx * lx / x, rhs,
                         rhs > 0 ? Cell{lhs / rhs} : Cell{std::string("undefined")}},
                        sw.seconds());
        }
    }
    return rep;
}

ExperimentReport run_bv_gaussian(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto xs = required_grid(cfg.x_text, "--x");
    double q_max = 0.0;
    std::vector<std::vector<double>> q_lists;
    for (double x : xs) {
        const QRange range = q_range(spec, x, cfg.epsilon);
        q_lists.push_back(grid_or(cfg.q_text, {(range.q_min + range.q_max) / 2.0}));
        q_max = std::max(q_max, max_of(q_lists.back()));
    }
    const SieveTables tables = obtain_sieve(cfg, std::max(max_of(xs), 8.0 * q_max * q_max + 1));
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "x", "epsilon", "Q", "q_min", "q_max", "range_empty", "thm1.2_lhs",
                          "lhs_over_x", "contributing", "box_points", "sweeps"});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const QRange range = q_range(spec, x, cfg.epsilon);
        for (double Q : q_lists[i]) {
            Stopwatch sw;
            const auto r = weighted_gaussian_bv_sum(spec, Q, x, tables, par);
            rep.add_row({spec.to_string(), x, cfg.epsilon, Q, range.q_min, range.q_max, range.empty(),
                         r.value, r.value / x, as_int(r.contributing), as_int(r.box_points),
                         as_int(r.sweeps)},
                        sw.seconds());
        }
    }
    return rep;
}

ExperimentReport run_density(const SweepConfig& cfg) {
    const GaussPolySpec spec = GaussPolySpec::parse(cfg.spec_text);
    const auto qs = required_grid(cfg.q_text, "--Q");
    const SieveTables tables = obtain_sieve(cfg, 8.0 * max_of(qs) * max_of(qs) + 1);
    const Parallel par{cfg.workers};
    ExperimentReport rep({"spec", "Q", "thm1.4_condition", "conj1.3_raw_sum", "eq6.1_sta_sum",
                          "normalized"});
    for (double Q : qs) {
        Stopwatch sw;
        const DensityReport d = density_report(spec, Q, tables, par);
        rep.add_row({spec.to_string(), Q, fresh_index_condition(spec), d.raw_sum, d.sta_sum, d.normalized},
                    sw.seconds());
    }
    return rep;
}

LambdaWeights parse_lambda(const std::string& text) {
    if (text == "one") return [](std::uint64_t) { return 1.0; };
    if (text.rfind("interval:", 0) == 0) {
        std::istringstream in(text.substr(9));
        std::string a, b;
        if (std::getline(in, a, ':') && std::getline(in, b)) {
            try {
                const double lo = std::stod(a);
                const double hi = std::stod(b);
                return [lo, hi](std::uint64_t l) {
                    const double d = static_cast<double>(l);
                    return d > lo && d <= hi ? 1.0 : 0.0;
                };
            } catch (const std::exception&) {
            }
        }
    }
    throw ValidationError("bad --lambda '" + text + "' (expected one or interval:a:b)");
}

ExperimentReport run_fi_compare(const SweepConfig& cfg) {
    const auto xs = required_grid(cfg.x_text, "--x");
    const LambdaWeights lambda = parse_lambda(cfg.lambda);
    const SieveTables tables = obtain_sieve(cfg, max_of(xs));
    const EulerConstant& c = cached_constant_c();
    const Parallel par{cfg.workers};
    ExperimentReport rep({"x", "lambda", "c", "c_tail_bound", "thm6.1_lam_sum", "thm6.1_main_term",
                          "ratio", "abs_ratio_minus_1"});
    for (double x : xs) {
        Stopwatch sw;
        const FiComparison f = fi_compare(x, lambda, tables, c, par);
        const std::optional<double> dev =
            f.ratio ? std::optional<double>(std::abs(*f.ratio - 1.0)) : std::nullopt;
        rep.add_row({x, cfg.lambda, c.value, c.tail_bound, f.lam_sum, f.main_term, optional_cell(f.ratio),
                     optional_cell(dev)},
                    sw.seconds());
    }
    return rep;
}

ExperimentReport run_identities(const SweepConfig& cfg) {
    const auto xs = grid_or(cfg.x_text, {10000});
    const auto qs = grid_or(cfg.q_text, {4, 7, 10});
    const SieveTables tables = obtain_sieve(cfg, std::max(max_of(xs), 8.0 * max_of(qs) * max_of(qs) + 1));
    ExperimentReport rep({"check", "parameter", "value", "tolerance", "pass"});
    auto add = [&](const std::string& name, const std::string& param, double value, double tol,
                   const Stopwatch& sw) { rep.add_row({name, param, value, tol, value <= tol}, sw.seconds()); };

    const CharacterGroupContext mod5(5, tables);
    const DirichletCharacter quad5 = mod5.characters()[2];
    SeededRng rng(cfg.seed);
    for (double x : xs) {
        const double U = std::max(1.0, std::floor(std::sqrt(std::sqrt(x))));
        const double beta = rng.uniform();
        const std::vector<std::pair<std::string, ArithmeticFunction>> fs = {
            {"one", [](std::uint64_t) { return cplx{1.0, 0.0}; }},
            {"chi5_quadratic", [&](std::uint64_t n) { return mod5.eval(quad5, static_cast<std::int64_t>(n)); }},
            {"e(beta n)", [beta](std::uint64_t n) { return unit_phase(beta * static_cast<double>(n)); }},
        };
        for (const auto& [name, f] : fs) {
            Stopwatch sw;
            const double residual = verify_vaughan(f, x, U, tables);
            double direct = 0.0;
            for (std::uint64_t n = static_cast<std::uint64_t>(U) + 1; n <= static_cast<std::uint64_t>(x); ++n) {
                direct += std::abs(f(n)) * tables.lambda(n);
            }
            add("vaughan_residual", "f=" + name + " x=" + format_number(x) + " U=" + format_number(U),
                residual, 1e-7 * (1.0 + direct), sw);
        }
    }
    for (double Q : qs) {
        Stopwatch sw;
        add("geometric_decomposition_residual", "Q=" + format_number(Q),
            std::abs(geometric_decomposition_check(Q, tables)), 1e-9, sw);
    }
    for (std::uint64_t q : {5u, 13u, 15u, 65u, 85u}) {
        Stopwatch sw;
        const CharacterGroupContext ctx(q, tables);
        double formula_err = 0.0, modulus_err = 0.0, pv_max = 0.0;
        for (const DirichletCharacter& chi : ctx.characters()) {
            if (!chi.is_principal()) pv_max = std::max(pv_max, pv_max_ratio(ctx, chi));
            if (!chi.is_primitive()) continue;
            const DirichletCharacter bar = chi.conjugate();
            const cplx tau_bar = gauss_sum(ctx, bar);
            modulus_err = std::max(modulus_err,
                                   std::abs(std::abs(gauss_sum(ctx, chi)) - std::sqrt(double(q))) / std::sqrt(double(q)));
            for (std::uint64_t n = 1; n <= q; ++n) {
                cplx rhs{0.0, 0.0};
                for (std::uint64_t h = 0; h < q; ++h) {
                    rhs += ctx.eval(bar, static_cast<std::int64_t>(h)) *
                           unit_phase(static_cast<std::int64_t>(h * n), q);
                }
                formula_err = std::max(formula_err, std::abs(ctx.eval(chi, static_cast<std::int64_t>(n)) * tau_bar - rhs));
            }
        }
        add("character_formula_max_error", "q=" + std::to_string(q), formula_err, 1e-8, sw);
        add("gauss_sum_modulus_rel_error", "q=" + std::to_string(q), modulus_err, 1e-9, sw);
        add("polya_vinogradov_max_ratio", "q=" + std::to_string(q), pv_max, 1.0, sw);
    }
    return rep;
}

int run_cache(const SweepConfig& cfg, std::ostream& out) {
    const std::filesystem::path path =
        cfg.cache_path.empty() ? default_cache_path(cfg.cache_limit) : std::filesystem::path(cfg.cache_path);
    if (cfg.cache_action == "build") {
        const SieveTables t(cfg.cache_limit);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        save_sieve_cache(t, path);
        out << "built " << path.string() << " limit=" << cfg.cache_limit << "\n";
    } else {
        verify_sieve_cache(path, cfg.cache_limit);
        out << "verified " << path.string() << " limit=" << cfg.cache_limit << "\n";
    }
    return kOk;
}

void add_common(CLI::App* sub, SweepConfig& cfg) {
    sub->add_option("--spec", cfg.spec_text, "polynomial spec, e.g. \"k=1 ell=2 pairs=1:2\"");
    sub->add_option("--Q", cfg.q_text, "Q grid: comma list or a:b:steps (geometric)");
    sub->add_option("--x", cfg.x_text, "x grid: comma list or a:b:steps (geometric)");
    sub->add_option("--epsilon", cfg.epsilon, "epsilon in the admissible Q range");
    sub->add_option("--seed", cfg.seed, "PRNG seed for test sequences");
    sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--cache", cfg.cache_path, "spf cache file");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware concurrency)");
    sub->add_flag("--coprime-only", cfg.coprime_only, "restrict max over residues to gcd(a, q) = 1");
}

} // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("bad grid value '" + s + "' in '" + text + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::istringstream in(text);
        std::string a, b, steps;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, steps) ||
            steps.find(':') != std::string::npos) {
            throw ValidationError("geometric grid must be a:b:steps, got '" + text + "'");
        }
        const double lo = number(a);
        const double hi = number(b);
        const double n = number(steps);
        if (!(lo > 0.0) || !(hi > 0.0) || n < 1 || n != std::floor(n)) {
            throw ValidationError("geometric grid needs positive endpoints and integer steps >= 1");
        }
        const auto count = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(count == 1 ? lo
                                     : lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1)));
        }
        if (count > 1) out.back() = hi;
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(number(item));
    if (out.empty()) throw ValidationError("empty grid");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments for Bombieri-Vinogradov sums with Gaussian-prime moduli", "gbv"};
    app.require_subcommand(1);
    SweepConfig cfg;

    struct Entry {
        const char* name;
        const char* help;
        std::function<ExperimentReport(const SweepConfig&)> fn;
    };
    const std::vector<Entry> entries = {
        {"ls-ratio", "polynomial large sieve Sigma against Delta(Q,N)", run_ls_ratio},
        {"char-ls", "large sieve with primitive characters", run_char_ls},
        {"bilinear", "bilinear form against its bound", run_bilinear},
        {"bmvt", "polynomial basic mean value quantity against Delta~(Q,x)", run_bmvt},
        {"bv-classical", "classical Bombieri-Vinogradov sum", run_bv_classical},
        {"bv-gaussian", "weighted sum over Gaussian-prime moduli", run_bv_gaussian},
        {"density", "number-of-moduli density sums", run_density},
        {"fi-compare", "Fouvry-Iwaniec sum against its main term", run_fi_compare},
        {"identities", "exact identity residuals", run_identities},
    };
    std::vector<CLI::App*> subs;
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, cfg);
        subs.push_back(sub);
    }
    subs[0]->add_option("--N", cfg.n_text, "sequence length grid");
    subs[0]->add_option("--trials", cfg.trials, "seeded sequences per grid point")->check(CLI::PositiveNumber);
    subs[1]->add_option("--N", cfg.n_text, "sequence length grid");
    subs[2]->add_option("--M", cfg.m_text, "length grid of a");
    subs[2]->add_option("--N", cfg.n_text, "length grid of b");
    subs[4]->add_flag("--records", cfg.records, "emit one row per modulus");
    subs[7]->add_option("--lambda", cfg.lambda, "weights: one or interval:a:b");

    CLI::App* cache = app.add_subcommand("cache", "build or verify the spf cache file");
    cache->add_option("action", cfg.cache_action, "build or verify")
        ->required()
        ->check(CLI::IsMember({"build", "verify"}));
    cache->add_option("--limit", cfg.cache_limit, "sieve limit");
    cache->add_option("--cache", cfg.cache_path, "cache file (default: $GBV_CACHE_DIR/spf-<limit>.bin)");

    std::vector<std::string> argv_storage = {"gbv"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (cache->parsed()) return run_cache(cfg, out);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            const ExperimentReport rep = entries[i].fn(cfg);
            std::ofstream file;
            std::ostream* sink = &out;
            if (!cfg.out_path.empty()) {
                file.open(cfg.out_path, std::ios::trunc);
                if (!file) throw IoError("cannot open " + cfg.out_path + " for writing");
                sink = &file;
            }
            if (cfg.format == "json") {
                rep.write_json(*sink);
            } else {
                rep.write_csv(*sink);
            }
            if (!*sink) throw IoError("write failed");
            return kOk;
        }
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}

} // namespace gbv::cli
