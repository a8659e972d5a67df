#include "cli.hpp"

#include "numlaw/cutoff.hpp"
#include "numlaw/error.hpp"
#include "numlaw/ingest.hpp"
#include "numlaw/json.hpp"
#include "numlaw/pipeline.hpp"
#include "numlaw/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace numlaw::cli {

namespace {

namespace fs = std::filesystem;

struct usage_error : error
{
    using error::error;
};

struct input_error : error
{
    using error::error;
};

std::string sig5(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", x);
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw input_error("failed reading input file '" + path + "'");
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw error("failed writing '" + path.string() + "'");
}

std::vector<value_t> load_values(const std::string& path, const std::string& csv_column, const extraction_rules& rules)
{
    const auto text = read_file(path);
    try
    {
        return csv_column.empty() ? extract_numbers(text, rules) : extract_csv_column(text, csv_column, rules);
    }
    catch (const error& e)
    {
        throw ingest_error(path + ": " + e.what());
    }
}

struct year_entry
{
    std::optional<std::string> label;
    std::optional<int> year;
};

/// Year map JSON: {"<input path or file stem>": 2019 | {"label": "...", "year": 2019}}.
std::map<std::string, year_entry> load_year_map(const std::string& path)
{
    std::map<std::string, year_entry> map;
    if (path.empty())
        return map;
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(read_file(path));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw usage_error("year map '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw usage_error("year map must be a JSON object");
    for (const auto& [key, value] : j.items())
    {
        year_entry entry;
        if (value.is_number_integer())
            entry.year = value.get<int>();
        else if (value.is_object())
        {
            if (value.contains("label"))
            {
                if (!value["label"].is_string())
                    throw usage_error("year map label for '" + key + "' must be a string");
                entry.label = value["label"].get<std::string>();
            }
            if (value.contains("year"))
            {
                if (!value["year"].is_number_integer())
                    throw usage_error("year map year for '" + key + "' must be an integer");
                entry.year = value["year"].get<int>();
            }
        }
        else
            throw usage_error("year map entry for '" + key + "' must be an integer or an object");
        map[key] = entry;
    }
    return map;
}

std::vector<dimension> parse_analyses(const std::string& list)
{
    std::vector<dimension> dims;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        dimension d;
        try
        {
            d = parse_dimension(item);
        }
        catch (const config_error& e)
        {
            throw usage_error(e.what());
        }
        if (std::find(dims.begin(), dims.end(), d) == dims.end())
            dims.push_back(d);
    }
    if (dims.empty())
        throw usage_error("--analyses needs at least one of digit,frequency,length");
    return dims;
}

std::string file_safe(std::string name)
{
    for (auto& c : name)
    {
        const auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '-' || c == '_' || c == '.'))
            c = '_';
    }
    return name;
}

void print_fit(std::ostream& out, const fit_result& fit)
{
    out << "    " << to_string(fit.kind) << ": R2 " << sig5(fit.scores.r_squared) << " ("
        << to_string(fit.verdict.r_squared) << "), KL " << sig5(fit.scores.kl) << " (" << to_string(fit.verdict.kl)
        << "), JS " << sig5(fit.scores.js) << " (" << to_string(fit.verdict.js) << "), MAPE "
        << sig5(fit.scores.mape) << " (" << to_string(fit.verdict.mape) << ")";
    if (const auto* z = std::get_if<zipf_model>(&fit.model))
        out << "; alpha " << sig5(z->alpha) << ", C " << sig5(z->scale);
    else if (const auto* g = std::get_if<gamma_model>(&fit.model))
        out << "; lambda " << sig5(g->lambda) << ", beta " << sig5(g->beta) << ", tau " << sig5(g->tau);
    out << "\n";
}

void print_summary(std::ostream& out, const analysis_report& report)
{
    for (const auto& c : report.corpora)
    {
        out << c.key << ": " << c.stats.observation_count << " numbers, min " << c.stats.min << ", max "
            << c.stats.max << ", mean " << sig5(c.stats.mean) << ", median " << sig5(c.stats.median) << "\n";
        for (const auto& s : c.sections)
        {
            out << "  " << to_string(s.dim);
            if (s.best_fit)
                out << " (best R2: " << to_string(*s.best_fit) << ")";
            out << "\n";
            for (const auto& f : s.fits)
                print_fit(out, f);
            for (const auto& n : s.notes)
                out << "    note: " << n << "\n";
            if (s.cutoff)
                out << "    cutoff: upper " << sig5(s.cutoff->upper) << ", lower " << sig5(s.cutoff->lower)
                    << (s.cutoff->converged ? "" : " (not converged)") << "\n";
        }
        for (const auto& e : c.errors)
            out << "  error: " << e << "\n";
        if (c.boundaries)
            for (const auto& b : c.boundaries->entries)
                out << "  boundary " << to_string(b.quantity) << ": observed " << sig5(b.observed_share)
                    << ", estimated " << sig5(b.estimated_boundary) << (b.within_boundary ? "" : " (exceeded)")
                    << "\n";
    }
    for (const auto& p : report.pooled)
    {
        out << "pooled " << to_string(p.dim) << "\n";
        if (p.fit)
            print_fit(out, *p.fit);
        else
            out << "    error: " << p.error << "\n";
    }
    for (const auto& t : report.trends)
        out << "trend " << t.subject << " " << t.metric << ": slope " << sig5(t.slope) << "/year"
            << (t.flagged ? " (declining)" : "") << "\n";
}

struct common_input
{
    std::vector<std::string> inputs;
    std::string csv_column;
};

int cmd_stats(const common_input& in, std::ostream& out)
{
    const extraction_rules rules;
    const auto values = load_values(in.inputs.front(), in.csv_column, rules);
    ordered_json j;
    j["input"] = in.inputs.front();
    j["stats"] = to_json(compute_stats(values));
    out << j.dump(2) << "\n";
    return exit_ok;
}

struct analyze_args
{
    common_input in;
    std::string analyses = "digit,frequency,length";
    bool cutoff = false;
    std::string out_dir = ".";
    std::string format = "json";
    std::string year_map;
};

analysis_report report_for(const analyze_args& a)
{
    report_config config;
    config.analyses = parse_analyses(a.analyses);
    config.options.cutoff = a.cutoff;
    config.inputs = a.in.inputs;
    const auto years = load_year_map(a.year_map);

    std::vector<number_corpus> corpora;
    std::set<std::string> keys;
    for (const auto& path : a.in.inputs)
    {
        number_corpus c;
        c.label = fs::path(path).stem().string();
        auto it = years.find(path);
        if (it == years.end())
            it = years.find(c.label);
        if (it != years.end())
        {
            if (it->second.label)
                c.label = *it->second.label;
            c.year = it->second.year;
        }
        c.values = load_values(path, a.in.csv_column, config.rules);
        if (!keys.insert(c.key()).second)
            throw usage_error("two inputs share the corpus key '" + c.key() + "'; disambiguate with --year-map");
        corpora.push_back(std::move(c));
    }
    return build_report(corpora, config);
}

int cmd_analyze(const analyze_args& a, std::ostream& out)
{
    const auto report = report_for(a);

    const fs::path dir(a.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw error("cannot create output directory '" + a.out_dir + "': " + ec.message());

    const bool want_json = a.format == "json" || a.format == "both";
    const bool want_csv = a.format == "csv" || a.format == "both";
    if (want_json)
        write_file(dir / "report.json", to_json(report).dump(2) + "\n");
    if (want_csv)
    {
        for (const auto& c : report.corpora)
            for (const auto& s : c.sections)
                for (const auto& f : s.fits)
                    write_file(dir / file_safe(c.key + "." + std::string(to_string(s.dim)) + "." +
                                               std::string(to_string(f.kind)) + ".csv"),
                               plot_csv(f));
        for (const auto& p : report.pooled)
            if (p.fit)
                write_file(dir / file_safe("pooled." + std::string(to_string(p.dim)) + "." +
                                           std::string(to_string(p.fit->kind)) + ".csv"),
                           plot_csv(*p.fit));
    }
    print_summary(out, report);
    return exit_ok;
}

struct synth_args
{
    std::string model;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::optional<double> alpha;
    std::optional<std::size_t> support;
    std::optional<double> beta;
    std::optional<double> tau;
    std::optional<int> max_length;
    std::string output;
};

int cmd_synth(const synth_args& a, std::ostream& out)
{
    ordered_json params = ordered_json::object();
    std::vector<value_t> values;
    const rng_seed seed{a.seed};
    if (a.model == "benford")
    {
        if (a.alpha || a.support || a.beta || a.tau || a.max_length)
            throw usage_error("the benford model takes no parameters");
        for (const int d : sample_benford_digits(a.n, seed))
            values.push_back(static_cast<value_t>(d));
    }
    else if (a.model == "zipf")
    {
        if (a.beta || a.tau || a.max_length)
            throw usage_error("the zipf model takes only --alpha and --support");
        if (!a.alpha || !a.support)
            throw usage_error("the zipf model needs --alpha and --support");
        if (!(*a.alpha >= 0.0))
            throw usage_error("--alpha must be non-negative");
        values = sample_zipf_values(a.n, *a.alpha, *a.support, seed).values;
        params["alpha"] = *a.alpha;
        params["support"] = *a.support;
    }
    else if (a.model == "gamma")
    {
        if (a.alpha || a.support)
            throw usage_error("the gamma model takes only --beta, --tau and --max-length");
        if (!a.beta || !a.tau)
            throw usage_error("the gamma model needs --beta and --tau");
        const int max_length = a.max_length.value_or(17);
        if (*a.beta < 0.0 || max_length < 1 || max_length > 19)
            throw usage_error("the gamma model needs --beta >= 0 and --max-length in 1..19");
        random_stream rng(seed);
        const rng_seed length_seed{rng.next()};
        const rng_seed digit_seed{rng.next()};
        values = materialize_lengths(sample_gamma_lengths(a.n, *a.beta, *a.tau, max_length, length_seed), digit_seed);
        params["beta"] = *a.beta;
        params["tau"] = *a.tau;
        params["max_length"] = max_length;
    }
    else
        throw usage_error("unknown model '" + a.model + "'");

    std::string body;
    body.reserve(values.size() * 8);
    for (const auto v : values)
        body += std::to_string(v) + "\n";
    write_file(a.output, body);

    ordered_json sidecar;
    sidecar["model"] = a.model;
    sidecar["params"] = params;
    sidecar["n"] = a.n;
    sidecar["seed"] = a.seed;
    sidecar["generator"] = "mt19937_64 seeded through splitmix64";
    write_file(a.output + ".json", sidecar.dump(2) + "\n");
    out << "wrote " << values.size() << " values to " << a.output << "\n";
    return exit_ok;
}

struct cutoff_args
{
    common_input in;
    std::string system;
    std::optional<double> count;
    std::optional<double> lower;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> initial;
    bool undamped = false;
};

int cmd_cutoff(const cutoff_args& a, std::ostream& out)
{
    if (!a.in.inputs.empty())
    {
        // estimate from corpora: fit every dimension and report the boundary summary
        if (!a.system.empty() || a.count || a.lower || a.alpha || a.beta || a.initial)
            throw usage_error("--input cannot be combined with explicit cutoff parameters");
        analyze_args aa;
        aa.in = a.in;
        aa.cutoff = true;
        auto report = report_for(aa);
        ordered_json j = ordered_json::array();
        for (const auto& c : report.corpora)
        {
            ordered_json cutoffs = ordered_json::object();
            for (const auto& s : c.sections)
                cutoffs[std::string(to_string(s.dim))] = s.cutoff ? to_json(*s.cutoff) : ordered_json(nullptr);
            j.push_back({{"key", c.key},
                         {"cutoffs", cutoffs},
                         {"boundaries", c.boundaries ? to_json(*c.boundaries) : ordered_json(nullptr)}});
        }
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    if (!a.count || !a.lower || !a.alpha || !a.initial)
        throw usage_error("cutoff needs --n, --o-min, --alpha and --o-init (or --input)");
    cutoff_options options;
    options.damped = !a.undamped;
    cutoff_estimate estimate;
    try
    {
        if (a.system == "gamma")
        {
            if (!a.beta)
                throw usage_error("the gamma system needs --beta");
            estimate = estimate_cutoff_gamma(*a.count, *a.lower, *a.alpha, *a.beta, *a.initial, options);
        }
        else if (a.system == "zipf")
        {
            if (a.beta)
                throw usage_error("the zipf system takes no --beta");
            estimate = estimate_cutoff_zipf(*a.count, *a.lower, *a.alpha, *a.initial, options);
        }
        else
            throw usage_error("--system must be gamma or zipf");
    }
    catch (const domain_error& e)
    {
        throw usage_error(e.what());
    }
    ordered_json j;
    j["system"] = a.system;
    j["estimate"] = to_json(estimate);
    out << j.dump(2) << "\n";
    return exit_ok;
}

void add_inputs(CLI::App* cmd, common_input& in, bool single)
{
    auto* opt = cmd->add_option("--input,-i", in.inputs, single ? "Input document" : "Input document (repeatable)");
    if (single)
        opt->required()->expected(1);
    cmd->add_option("--csv-column", in.csv_column, "Read integers from this CSV column (header name or 0-based index)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Number-law analysis of integer corpora", "numlaw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "numlaw 0.1.0");

    common_input stats_in;
    auto* stats = app.add_subcommand("stats", "Print corpus statistics as JSON");
    add_inputs(stats, stats_in, true);

    analyze_args aa;
    auto* analyze = app.add_subcommand("analyze", "Fit the number laws and write a report");
    add_inputs(analyze, aa.in, false);
    analyze->get_option("--input")->required();
    analyze->add_option("--analyses", aa.analyses, "Comma list of digit,frequency,length")->capture_default_str();
    analyze->add_flag("--cutoff", aa.cutoff, "Estimate usage cutoffs from the fitted parameters");
    analyze->add_option("--out-dir,-o", aa.out_dir, "Output directory")->capture_default_str();
    analyze->add_option("--format", aa.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
    analyze->add_option("--year-map", aa.year_map, "JSON file mapping inputs to years or {label, year}");

    synth_args sa;
    auto* synth = app.add_subcommand("synth", "Sample a synthetic corpus");
    synth->add_option("--model", sa.model, "benford, zipf or gamma")->required();
    synth->add_option("--n", sa.n, "Number of draws")->required();
    synth->add_option("--seed", sa.seed, "Generator seed")->capture_default_str();
    synth->add_option("--alpha", sa.alpha, "Zipf exponent");
    synth->add_option("--support", sa.support, "Zipf support size V (values 1..V)");
    synth->add_option("--beta", sa.beta, "Gamma decay rate");
    synth->add_option("--tau", sa.tau, "Gamma shape");
    synth->add_option("--max-length", sa.max_length, "Gamma maximum decimal length (default 17)");
    synth->add_option("--output", sa.output, "Corpus file; a .json sidecar is written next to it")->required();

    cutoff_args ca;
    auto* cutoff = app.add_subcommand("cutoff", "Estimate an upper usage cutoff");
    add_inputs(cutoff, ca.in, false);
    cutoff->add_option("--system", ca.system, "gamma or zipf");
    cutoff->add_option("--n", ca.count, "Number of objects");
    cutoff->add_option("--o-min", ca.lower, "Smallest object size");
    cutoff->add_option("--alpha", ca.alpha, "Exponent");
    cutoff->add_option("--beta", ca.beta, "Gamma decay rate");
    cutoff->add_option("--o-init", ca.initial, "Starting upper size");
    cutoff->add_flag("--undamped", ca.undamped, "Plain fixed-point iteration without relaxation");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (stats->parsed())
            return cmd_stats(stats_in, out);
        if (analyze->parsed())
            return cmd_analyze(aa, out);
        if (synth->parsed())
            return cmd_synth(sa, out);
        return cmd_cutoff(ca, out);
    }
    catch (const usage_error& e)
    {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const input_error& e)
    {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const ingest_error& e)
    {
        err << "ingest error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const empty_corpus_error& e)
    {
        err << "ingest error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const config_error& e)
    {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const domain_error& e)
    {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace numlaw::cli
