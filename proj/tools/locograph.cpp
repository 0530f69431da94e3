// locograph: census, exact counting, exact uniform sampling, verification,
// and saddle-point bounds for graphs whose radius-r balls look like the
// d-dimensional lattice (quotients of Z^d by finite-index sublattices).
//
// Subcommands: census, count, sample, verify, asymptotics, experiment.
// Exit codes: 0 success, 2 usage/parameter error, 3 empty support,
// 4 internal-consistency failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locograph/asymptotics.hpp"
#include "locograph/census.hpp"
#include "locograph/counting.hpp"
#include "locograph/errors.hpp"
#include "locograph/graph.hpp"
#include "locograph/io.hpp"
#include "locograph/sampler.hpp"

using json = nlohmann::json;
using namespace loco;

namespace {

struct RunConfig {
    std::string subcommand;
    int d = 2;
    int64_t r = 2;
    int64_t n = 0;
    int64_t n_max = 0;
    int64_t max_index = 0;
    int64_t samples = 1;
    int64_t radius = -1;  // local-limit radius; default r+1
    int threads = 1;
    uint64_t seed = 0;
    std::string out_dir = ".";
    std::string out_prefix = "sample";
    std::string input;
    std::string cache_dir;
    std::string points;
    bool resume = false;
    bool allow_large_d = false;
};

json config_json(const RunConfig& c) {
    json j{{"subcommand", c.subcommand}, {"d", c.d},         {"r", c.r},
           {"seed", c.seed},             {"threads", c.threads}};
    if (c.n > 0) j["n"] = c.n;
    if (c.n_max > 0) j["n_max"] = c.n_max;
    if (c.max_index > 0) j["max_index"] = c.max_index;
    if (c.samples != 1) j["samples"] = c.samples;
    if (c.radius >= 0) j["radius"] = c.radius;
    if (!c.input.empty()) j["input"] = c.input;
    if (!c.points.empty()) j["points"] = c.points;
    if (c.resume) j["resume"] = true;
    return j;
}

std::string csv_header(const RunConfig& c) {
    return std::string("# ") + kArtifactVersion + " config=" + config_json(c).dump();
}

void validate_common(const RunConfig& c) {
    if (c.d < 1) throw usage_error("d must be >= 1");
    if (c.d > 4 && !c.allow_large_d)
        throw usage_error("d > 4 enumerates a large signed-permutation group; "
                          "pass --allow-large-d to override");
    if (c.d > 6) throw usage_error("d > 6 is not supported");
    if (c.r < 1) throw usage_error("r must be >= 1");
    if (c.d >= 2 && c.r < r_star(c.d))
        throw usage_error("pure-translation census not asymptotically exact below r*(d) = " +
                          std::to_string(r_star(c.d)) + " for d = " + std::to_string(c.d));
    if (c.threads < 1) throw usage_error("threads must be >= 1");
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path);
    if (!os) throw usage_error("cannot write " + path.string());
    return os;
}

std::string fmt_log(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

int cmd_census(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.max_index < 1) throw usage_error("--max-index must be >= 1");
    if (cfg.resume && cfg.cache_dir.empty())
        throw usage_error("--resume needs --cache-dir or LOCOGRAPH_CACHE");
    CensusTable t = cached_census(cfg.cache_dir, cfg.d, cfg.r, cfg.max_index, cfg.threads);
    auto jl = open_out(cfg.out_dir, "census.jsonl");
    jl << json{{"artifact", "census"}, {"version", kArtifactVersion}, {"config", config_json(cfg)}}
              .dump()
       << "\n";
    for (int64_t n = 1; n <= t.max_index; ++n) jl << census_record_to_json(t, n).dump() << "\n";
    auto gc = open_out(cfg.out_dir, "gamma.csv");
    gc << csv_header(cfg) << "\n";
    gc << "n,gamma\n";
    for (int64_t n = 1; n <= t.max_index; ++n) gc << n << "," << t.gamma[n] << "\n";
    std::cout << "census d=" << cfg.d << " r=" << cfg.r << " max_index=" << cfg.max_index
              << ": " << t.total_classes() << " classes, first nonzero weight "
              << t.first_nonzero_weight() << "\n";
    return 0;
}

int cmd_count(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.n_max < 1) throw usage_error("--n-max must be >= 1");
    if (cfg.resume && cfg.cache_dir.empty())
        throw usage_error("--resume needs --cache-dir or LOCOGRAPH_CACHE");
    CensusTable t = cached_census(cfg.cache_dir, cfg.d, cfg.r, cfg.n_max, cfg.threads);
    BigCountTable by_recurrence = euler_transform_recurrence(t.gamma, cfg.n_max);
    BigCountTable by_types = euler_transform_per_type(t.gamma, cfg.n_max);
    if (by_recurrence.b != by_types.b)
        throw internal_error("euler transform routes disagree");
    auto os = open_out(cfg.out_dir, "counts.csv");
    os << csv_header(cfg) << "\n";
    os << "n,b,log_b\n";
    for (int64_t n = 0; n <= cfg.n_max; ++n) {
        const mpz_class& b = by_recurrence.b[n];
        os << n << "," << b.get_str() << ","
           << (b > 0 ? fmt_log(log_mpz(b)) : std::string("-inf")) << "\n";
    }
    std::cout << "counts d=" << cfg.d << " r=" << cfg.r << " to n=" << cfg.n_max
              << ": b(n_max) has " << by_recurrence.b[cfg.n_max].get_str().size()
              << " digits\n";
    return 0;
}

int cmd_sample(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.n < 1) throw usage_error("--n must be >= 1");
    const int64_t radius = cfg.radius >= 0 ? cfg.radius : cfg.r + 1;
    CensusTable census = cached_census(cfg.cache_dir, cfg.d, cfg.r, cfg.n, cfg.threads);
    BigCountTable counts = euler_transform_recurrence(census.gamma, cfg.n);
    if (counts.b[cfg.n] == 0) throw empty_support_error("empty support");
    SampleSpec spec;
    spec.d = cfg.d;
    spec.r = cfg.r;
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    spec.census = &census;
    spec.counts = &counts;
    spec.verify_sums = cfg.n <= 4096;
    if (cfg.samples <= 1) {
        auto [g, rep] = sample_graph(spec, radius);
        auto eo = open_out(cfg.out_dir, cfg.out_prefix + ".edges");
        write_edge_list(eo, g, cfg.d);
        auto ro = open_out(cfg.out_dir, cfg.out_prefix + ".json");
        json rj = report_to_json(rep);
        rj["version"] = kArtifactVersion;
        rj["config"] = config_json(cfg);
        ro << rj.dump(2) << "\n";
        // provenance sidecar: orbit record + vertex range per component
        auto po = open_out(cfg.out_dir, cfg.out_prefix + ".prov.jsonl");
        po << json{{"artifact", "provenance"},
                   {"version", kArtifactVersion},
                   {"config", config_json(cfg)}}
                  .dump()
           << "\n";
        for (int32_t c = 0; c < g.component_count(); ++c) {
            const auto& prov = g.provenance(c);
            if (!prov) continue;
            json rec = orbit_to_json(prov->orbit, prov->d);
            rec["component"] = c;
            const auto& members = g.component_vertices(c);
            const auto [lo, hi] = std::minmax_element(members.begin(), members.end());
            rec["vertex_range"] = json::array({*lo, *hi});
            rec["orbit_pos"] = prov->orbit_pos;
            po << rec.dump() << "\n";
        }
        std::cout << "sampled " << cfg.n << " vertices, " << rep.component_orders.size()
                  << " components, largest " << rep.largest_component << "\n";
    } else {
        auto so = open_out(cfg.out_dir, cfg.out_prefix + ".jsonl");
        so << json{{"artifact", "samples"},
                   {"version", kArtifactVersion},
                   {"config", config_json(cfg)}}
                  .dump()
           << "\n";
        auto agg = batch_experiment(spec, cfg.samples, radius, cfg.threads,
                                    [&](int64_t i, const SampleReport& rep) {
                                        json rj = report_to_json(rep);
                                        rj["sample"] = i;
                                        so << rj.dump() << "\n";
                                    });
        so << json{{"aggregate",
                    {{"samples", agg.samples},
                     {"largest_component_p50", agg.largest_component_quantile(0.50)},
                     {"largest_component_p99", agg.largest_component_quantile(0.99)},
                     {"mean_local_limit_fraction", agg.mean_local_limit_fraction},
                     {"mean_aut_log_lower_bound", agg.mean_aut_log_lower_bound},
                     {"mean_component_count", agg.mean_component_count}}}}
                  .dump()
           << "\n";
        std::cout << "sampled " << cfg.samples << " graphs at n=" << cfg.n << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, bool d_given) {
    if (cfg.input.empty()) throw usage_error("--input edge-list file required");
    std::ifstream is(cfg.input);
    if (!is) throw usage_error("cannot read " + cfg.input);
    EdgeListFile f = read_edge_list(is);
    const int d = d_given ? cfg.d : f.d;
    RunConfig c = cfg;
    c.d = d;
    validate_common(c);
    auto failing = r_locally_failing_vertices(f.graph, d, cfg.r, 10);
    json out{{"version", kArtifactVersion},
             {"config", config_json(c)},
             {"vertices", f.graph.vertex_count()},
             {"ok", failing.empty()},
             {"failing_vertices", failing}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_asymptotics(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.n_max < 1) throw usage_error("--n-max must be >= 1");
    std::vector<int64_t> points;
    if (!cfg.points.empty()) {
        std::istringstream ps(cfg.points);
        std::string tok;
        while (std::getline(ps, tok, ',')) points.push_back(std::stoll(tok));
    } else {
        for (int64_t n = 25; n <= cfg.n_max; n *= 2) points.push_back(n);
        if (points.empty() || points.back() != cfg.n_max) points.push_back(cfg.n_max);
    }
    for (int64_t p : points)
        if (p < 1 || p > cfg.n_max) throw usage_error("point outside 1..n_max");
    CensusTable census = cached_census(cfg.cache_dir, cfg.d, cfg.r, cfg.n_max, cfg.threads);
    BigCountTable counts = euler_transform_recurrence(census.gamma, cfg.n_max);
    std::vector<mpz_class> cumulative(counts.b.size());
    mpz_class acc = 0;
    for (size_t k = 0; k < counts.b.size(); ++k) {
        acc += counts.b[k];
        cumulative[k] = acc;
    }
    SaddleModel model = SaddleModel::from_census(census);
    const double u = static_cast<double>(cfg.d);
    const double expo = u / (u + 1.0);
    auto os = open_out(cfg.out_dir, "asymptotics.csv");
    os << csv_header(cfg) << "\n";
    os << "n,log_b_exact,saddle_upper,leading_term,log_b_over_n_pow,upper_over_exact\n";
    for (int64_t n : points) {
        auto res = saddle_estimate(model, n);
        const double lead = cfg.d >= 2
                                ? k_constant(cfg.d) * std::pow(static_cast<double>(n), expo)
                                : leading_term(1.0, 1.0, static_cast<double>(n));
        const bool has_b = counts.b[n] > 0;
        const double log_b = has_b ? log_mpz(counts.b[n]) : 0.0;
        const double log_B = cumulative[n] > 0 ? log_mpz(cumulative[n]) : 0.0;
        os << n << "," << (has_b ? fmt_log(log_b) : std::string("-inf")) << ","
           << fmt_log(res.log_b_upper) << "," << fmt_log(lead) << ","
           << (has_b ? fmt_log(log_b / std::pow(static_cast<double>(n), expo))
                     : std::string(""))
           << "," << (log_B > 0 ? fmt_log(res.log_b_upper / log_B) : std::string("")) << "\n";
        if (cumulative[n] > 0 && res.log_b_upper < log_mpz(cumulative[n]))
            throw internal_error("saddle bound fell below the exact count at n=" +
                                 std::to_string(n));
    }
    std::cout << "asymptotics written for " << points.size() << " points\n";
    return 0;
}

int cmd_experiment(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.n < 1) throw usage_error("--n must be >= 1");
    if (cfg.samples < 0) throw usage_error("--samples must be >= 0");
    const int64_t radius = cfg.radius >= 0 ? cfg.radius : cfg.r + 1;
    CensusTable census = cached_census(cfg.cache_dir, cfg.d, cfg.r, cfg.n, cfg.threads);
    BigCountTable counts = euler_transform_recurrence(census.gamma, cfg.n);
    SampleSpec spec;
    spec.d = cfg.d;
    spec.r = cfg.r;
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    spec.census = &census;
    spec.counts = &counts;
    spec.verify_sums = cfg.n <= 4096;
    if (cfg.samples > 0 && counts.b[cfg.n] == 0) throw empty_support_error("empty support");
    auto so = open_out(cfg.out_dir, "experiment.jsonl");
    so << json{{"artifact", "experiment"},
               {"version", kArtifactVersion},
               {"config", config_json(cfg)}}
              .dump()
       << "\n";
    auto agg = batch_experiment(spec, cfg.samples, radius, cfg.threads,
                                [&](int64_t i, const SampleReport& rep) {
                                    so << json{{"sample", i},
                                               {"largest_component", rep.largest_component},
                                               {"components", rep.component_orders.size()},
                                               {"local_limit_fraction", rep.local_limit_fraction},
                                               {"aut_log_lower_bound", rep.aut_log_lower_bound}}
                                              .dump()
                                       << "\n";
                                });
    json aj{{"artifact", "experiment-aggregate"},
            {"version", kArtifactVersion},
            {"config", config_json(cfg)},
            {"samples", agg.samples},
            {"largest_component_p50", agg.largest_component_quantile(0.50)},
            {"largest_component_p90", agg.largest_component_quantile(0.90)},
            {"largest_component_p99", agg.largest_component_quantile(0.99)},
            {"mean_local_limit_fraction", agg.mean_local_limit_fraction},
            {"mean_aut_log_lower_bound", agg.mean_aut_log_lower_bound},
            {"mean_component_count", agg.mean_component_count}};
    auto ao = open_out(cfg.out_dir, "aggregate.json");
    ao << aj.dump(2) << "\n";
    std::cout << aj.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("LOCOGRAPH_CACHE")) cfg.cache_dir = env;

    CLI::App app{"census, exact counting and exact uniform sampling of "
                 "locally-lattice graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "lattice dimension");
        sub->add_option("--r", cfg.r, "local radius r");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--out-dir", cfg.out_dir, "output directory");
        sub->add_option("--cache-dir", cfg.cache_dir,
                        "census shard cache (default: $LOCOGRAPH_CACHE)");
        sub->add_flag("--allow-large-d", cfg.allow_large_d, "lift the d <= 4 cap");
    };

    auto* census = app.add_subcommand("census", "enumerate orbit classes per index");
    add_common(census);
    census->add_option("--max-index", cfg.max_index, "largest index")->required();
    census->add_flag("--resume", cfg.resume, "reuse complete shards from the cache");

    auto* count = app.add_subcommand("count", "exact model counts b(0..n)");
    add_common(count);
    count->add_option("--n-max", cfg.n_max, "largest n")->required();
    count->add_flag("--resume", cfg.resume, "reuse complete shards from the cache");

    auto* sample = app.add_subcommand("sample", "draw uniform graphs");
    add_common(sample);
    sample->add_option("--n", cfg.n, "vertex count")->required();
    sample->add_option("--seed", cfg.seed, "PRNG seed");
    sample->add_option("--samples", cfg.samples, "batch size (JSONL mode when > 1)");
    sample->add_option("--radius", cfg.radius, "local-limit radius (default r+1)");
    sample->add_option("--out", cfg.out_prefix, "output file prefix");

    auto* verify = app.add_subcommand("verify", "check an edge-list file");
    verify->add_option("--input", cfg.input, "edge-list file")->required();
    auto* verify_d = verify->add_option("--d", cfg.d, "dimension (default: file header)");
    verify->add_option("--r", cfg.r, "radius to check");
    verify->add_flag("--allow-large-d", cfg.allow_large_d, "lift the d <= 4 cap");

    auto* asym = app.add_subcommand("asymptotics", "exact counts vs saddle bound");
    add_common(asym);
    asym->add_option("--n-max", cfg.n_max, "table horizon")->required();
    asym->add_option("--points", cfg.points, "comma-separated evaluation points");

    auto* exper = app.add_subcommand("experiment", "batch sampling statistics");
    add_common(exper);
    exper->add_option("--n", cfg.n, "vertex count")->required();
    exper->add_option("--seed", cfg.seed, "PRNG seed");
    exper->add_option("--samples", cfg.samples, "number of samples")->required();
    exper->add_option("--radius", cfg.radius, "local-limit radius (default r+1)");

    try {
        app.parse(argc, argv);
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (census->parsed()) return cmd_census(cfg);
        if (count->parsed()) return cmd_count(cfg);
        if (sample->parsed()) return cmd_sample(cfg);
        if (verify->parsed()) return cmd_verify(cfg, verify_d->count() > 0);
        if (asym->parsed()) return cmd_asymptotics(cfg);
        if (exper->parsed()) return cmd_experiment(cfg);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const empty_support_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
