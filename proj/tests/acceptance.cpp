// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "cli.hpp"

#include "numlaw/cutoff.hpp"
#include "numlaw/fitting.hpp"
#include "numlaw/ingest.hpp"
#include "numlaw/laws.hpp"
#include "numlaw/metrics.hpp"
#include "numlaw/pipeline.hpp"
#include "numlaw/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace numlaw;
namespace fs = std::filesystem;

namespace {

struct verdict
{
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition && ok)
        {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<void(verdict&)>& body)
{
    verdict v;
    const auto start = std::chrono::steady_clock::now();
    try
    {
        body(v);
    }
    catch (const std::exception& e)
    {
        v.ok = false;
        v.detail = std::string("threw: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && ms >= limit_ms)
    {
        v.ok = false;
        v.detail = "runtime limit exceeded";
    }
    if (!v.ok)
        ++failures;
    std::printf("%s %2d %s (%.3f ms, limit %.0f ms)%s%s\n", v.ok ? "PASS" : "FAIL", id, name, ms, limit_ms,
                v.detail.empty() ? "" : ": ", v.detail.c_str());
}

std::vector<double> random_pmf(std::mt19937_64& gen, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p)
        total += x = u(gen) + 1e-3;
    for (auto& x : p)
        x /= total;
    return p;
}

double js_direct(const std::vector<double>& p, const std::vector<double>& q)
{
    // 1/2 sum p log2(2p/(p+q)) + 1/2 sum q log2(2q/(p+q))
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (p[i] > 0.0)
            s += 0.5 * p[i] * std::log2(2.0 * p[i] / (p[i] + q[i]));
        if (q[i] > 0.0)
            s += 0.5 * q[i] * std::log2(2.0 * q[i] / (p[i] + q[i]));
    }
    return s;
}

observed_series raw_curve(const gamma_model& m, int first, int last)
{
    observed_series s;
    for (int k = first; k <= last; ++k)
    {
        s.support.push_back(k);
        s.frequency.push_back(gamma_density(k, m));
    }
    return s;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main()
{
    criterion(1, "Benford constants", 1.0, [](verdict& v) {
        const int percent_tenths[] = {301, 176, 125, 97, 79, 67, 58, 51, 46};
        for (int d = 1; d <= 9; ++d)
        {
            const double p = benford_pmf(d);
            v.require(std::abs(p - std::log10(1.0 + 1.0 / d)) < 1e-12, "digit " + std::to_string(d) + " off log10(1+1/d)");
            v.require(std::lround(p * 1000.0) == percent_tenths[d - 1], "digit " + std::to_string(d) + " percentage");
        }
    });

    criterion(2, "metric identities on 1000 random pmf pairs", 1000.0, [](verdict& v) {
        std::mt19937_64 gen(20240601);
        std::uniform_int_distribution<std::size_t> size(2, 40);
        std::uniform_real_distribution<double> scale(0.01, 100.0);
        for (int trial = 0; trial < 1000; ++trial)
        {
            const auto n = size(gen);
            const auto p = random_pmf(gen, n);
            const auto q = random_pmf(gen, n);
            v.require(kl_divergence(p, q) >= 0.0, "KL negative");
            v.require(kl_divergence(p, p) == 0.0, "KL(p,p) != 0");
            const double js = js_divergence(p, q);
            v.require(js == js_divergence(q, p), "JS asymmetric");
            v.require(js >= 0.0 && js <= 1.0, "JS outside [0,1]");
            v.require(js_divergence(p, p) == 0.0, "JS(p,p) != 0");
            v.require(std::abs(js - js_direct(p, q)) < 1e-12, "JS direct vs mixture form");
            const double c = scale(gen);
            auto pc = p;
            auto qc = q;
            for (std::size_t i = 0; i < n; ++i)
            {
                pc[i] *= c;
                qc[i] *= c;
            }
            v.require(std::abs(mape(pc, qc) - mape(p, q)) < 1e-12, "MAPE scale invariance");
            v.require(r_squared(p, p) == 1.0, "R2(p,p) != 1");
        }
    });

    criterion(3, "Zipf exact recovery", 10.0, [](verdict& v) {
        observed_series s;
        for (int r = 1; r <= 500; ++r)
        {
            s.support.push_back(r);
            s.frequency.push_back(0.054 / std::pow(r, 0.75));
        }
        const auto f = fit_zipf(s);
        const auto& m = std::get<zipf_model>(f.model);
        v.require(std::abs(m.alpha - 0.75) < 1e-9, "alpha");
        v.require(std::abs(m.scale - 0.054) < 1e-9, "C");
        v.require(std::abs(f.scores.r_squared - 1.0) < 1e-9, "R2");
    });

    criterion(4, "Zipf sampled recovery on 20 corpora", 5000.0, [](verdict& v) {
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const auto c = sample_zipf_values(100000, 0.75, 200, {seed});
            const double alpha = std::get<zipf_model>(fit_zipf(make_rank_frequency(c.values)).model).alpha;
            v.require(std::abs(alpha - 0.75) <= 0.05, "seed " + std::to_string(seed) + " alpha " + std::to_string(alpha));
        }
    });

    criterion(5, "Gamma exact recovery and nested dominance", 2000.0, [](verdict& v) {
        const gamma_model digit_law{0.38, 0.32, 1.027};
        const gamma_model length_law{0.002, std::exp(-5.0), 1.0 - 0.049};
        for (const auto& [law, last] : {std::pair{digit_law, 9}, std::pair{length_law, 17}})
        {
            const auto data = raw_curve(law, 1, last);
            const auto f = fit_gamma_discrete(data);
            for (std::size_t i = 0; i < data.size(); ++i)
                v.require(std::abs(f.fitted[i] - data.frequency[i]) / data.frequency[i] <= 1e-4,
                          "pointwise error at support " + std::to_string(i + 1));
            v.require(f.scores.r_squared >= 1.0 - 1e-9, "R2");
        }
        const auto data = raw_curve(length_law, 1, 17);
        v.require(fit_gamma_discrete(data).residual_sum <= fit_gamma_beta_zero(data).residual_sum, "nested dominance");
    });

    criterion(6, "full Gamma beats the beta=0 and Zipf fits on steeper length data", 2000.0, [](verdict& v) {
        const auto data = raw_curve({0.002, 0.1, 1.0 - 0.049}, 1, 17);
        const double full = fit_gamma_discrete(data).scores.r_squared;
        const double nested = fit_gamma_beta_zero(data).scores.r_squared;
        const double zipf = fit_zipf(data).scores.r_squared;
        v.require(full > nested, "full R2 " + std::to_string(full) + " <= beta=0 R2 " + std::to_string(nested));
        v.require(full > zipf, "full R2 " + std::to_string(full) + " <= Zipf R2 " + std::to_string(zipf));
    });

    criterion(7, "cutoff iterations converge on 20 corpora per system", 5000.0, [](verdict& v) {
        const double beta = std::exp(-5.0);
        const double tau = 0.951;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const auto lengths = sample_gamma_lengths(10000, beta, tau, 17, {seed});
            const auto shares = make_length_histogram(materialize_lengths(lengths, {seed + 1000})).observed().frequency;
            double lower = 1.0;
            double initial = 0.0;
            double count = 0.0;
            for (const double s : shares)
                if (s > 0.0)
                {
                    lower = std::min(lower, s);
                    initial = std::max(initial, s);
                    count += 1.0;
                }
            const auto e = estimate_cutoff_gamma(count, lower, tau, beta, initial);
            const auto again = estimate_cutoff_gamma(count, lower, tau, beta, initial);
            const auto tag = "gamma seed " + std::to_string(seed);
            v.require(e.converged && e.iterations <= 10000, tag + " not converged");
            v.require(e.upper >= e.lower, tag + " upper < lower");
            v.require(e.trace == again.trace, tag + " trace not deterministic");
            const auto n = e.trace.size();
            v.require(n >= 2 && std::abs(e.trace[n - 1] - e.trace[n - 2]) / e.trace[n - 1] < 1e-9, tag + " last step");
        }
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const auto fit = fit_zipf(make_rank_frequency(sample_zipf_values(100000, 0.75, 200, {seed}).values));
            const double alpha = std::get<zipf_model>(fit.model).alpha;
            const auto& f = fit.observed;
            const double count = static_cast<double>(f.size());
            const auto e = estimate_cutoff_zipf(count, f.back(), alpha, f.front());
            const auto again = estimate_cutoff_zipf(count, f.back(), alpha, f.front());
            const auto tag = "zipf seed " + std::to_string(seed);
            v.require(e.converged && e.iterations <= 10000, tag + " not converged");
            v.require(e.upper >= e.lower, tag + " upper < lower");
            v.require(e.trace == again.trace, tag + " trace not deterministic");
            const auto n = e.trace.size();
            v.require(n >= 2 && std::abs(e.trace[n - 1] - e.trace[n - 2]) / e.trace[n - 1] < 1e-9, tag + " last step");
            const double residual = std::abs(zipf_cutoff_step(count, f.back(), alpha, e.upper) - e.upper) / e.upper;
            v.require(residual < 1e-9, tag + " fixed-point residual " + std::to_string(residual));
        }
    });

    criterion(8, "declining-conformity trend detection", 10.0, [](verdict& v) {
        const auto declining = trend_over_years({{2017, 0.942}, {2018, 0.908}, {2019, 0.888}, {2020, 0.878}, {2021, 0.799}}, "r_squared");
        v.require(declining.flagged, "declining sequence not flagged");
        const auto flat = trend_over_years({{2017, 0.9}, {2018, 0.9}, {2019, 0.9}, {2020, 0.9}, {2021, 0.9}}, "r_squared");
        v.require(!flat.flagged, "constant sequence flagged");
    });

    criterion(9, "analyze reproduces the golden report byte for byte", 3000.0, [](verdict& v) {
        const fs::path source(NUMLAW_SOURCE_DIR);
        const auto previous = fs::current_path();
        fs::current_path(source);
        const fs::path out = fs::temp_directory_path() / "numlaw_acceptance";
        std::string first;
        for (int run = 0; run < 2; ++run)
        {
            fs::remove_all(out);
            std::ostringstream sink;
            const int code = cli::run({"analyze", "--input", "data/sample_corpus.txt", "--out-dir", out.string()}, sink, sink);
            v.require(code == 0, "analyze exit code " + std::to_string(code));
            const auto report = slurp(out / "report.json");
            if (run == 0)
                first = report;
            else
                v.require(report == first, "two runs differ");
        }
        v.require(first == slurp(source / "tests/golden/sample_report.json"), "report differs from the golden file");
        fs::remove_all(out);
        fs::current_path(previous);
    });

    criterion(10, "fixture document extracts the hand-tokenized corpus", 10.0, [](verdict& v) {
        const fs::path fixtures = fs::path(NUMLAW_SOURCE_DIR) / "tests/fixtures";
        const auto got = extract_numbers(slurp(fixtures / "statement.txt"));
        std::vector<value_t> expected;
        std::istringstream in(slurp(fixtures / "statement.expected"));
        for (value_t x; in >> x;)
            expected.push_back(x);
        v.require(!expected.empty() && got == expected, "extracted corpus differs");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
