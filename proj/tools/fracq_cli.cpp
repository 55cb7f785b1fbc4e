// fracq: run simulated sessions and cohorts, Welch comparisons, and the
// interactive session server.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include "fracq/fracq.hpp"
#include "fracq/http_routes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct ConfigFlags {
    double alpha = 0.9;
    double gamma = 0.5;
    int t_f = 10;
    double c_m = 15.0;
    int t_s = 3;

    void add_to(CLI::App* app) {
        app->add_option("--alpha", alpha, "learning rate")->capture_default_str();
        app->add_option("--gamma", gamma, "discount factor")->capture_default_str();
        app->add_option("--t-f", t_f, "consecutive penalties before forgetting")->capture_default_str();
        app->add_option("--c-m", c_m, "maximum recency suppression")->capture_default_str();
        app->add_option("--t-s", t_s, "suppression duration in steps")->capture_default_str();
    }

    fracq::LearnerConfig build() const {
        fracq::LearnerConfig c;
        c.alpha = alpha;
        c.gamma = gamma;
        c.t_f = t_f;
        c.c_m = c_m;
        c.t_s = t_s;
        return c;
    }
};

fracq::ActionCatalog catalog_from_flag(const std::string& path) {
    return path.empty() ? fracq::ActionCatalog::builtin() : fracq::load_catalog(path);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::vector<double> parse_csv_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw fracq::ValidationError("not a number: '" + item + "'");
        }
    }
    return out;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw fracq::ValidationError(path.string() + ": " + e.what());
    }
}

void print_welch(const fracq::stats::WelchResult& w) {
    std::cout << json(w).dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FRAC-Q-learning and traditional Q-learning experiment tool"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one simulated session");
    std::string run_algorithm = "frac";
    long long run_steps = fracq::kDefaultSessionSteps;
    std::uint64_t run_seed = 0;
    std::string run_profile = "bored-fast";
    std::string run_out = "out";
    std::string run_catalog;
    ConfigFlags run_cfg;
    run->add_option("--algorithm", run_algorithm, "frac | q | random")->capture_default_str();
    run->add_option("--steps", run_steps, "interaction steps")->capture_default_str();
    run->add_option("--seed", run_seed, "session seed")->capture_default_str();
    run->add_option("--profile", run_profile, "preset name or profile JSON file")->capture_default_str();
    run->add_option("--out", run_out, "output directory")->capture_default_str();
    run->add_option("--catalog", run_catalog, "action catalog JSON (default: built-in)");
    run_cfg.add_to(run);

    // cohort
    auto* cohort = app.add_subcommand("cohort", "run paired-seed sessions for several algorithms");
    std::vector<std::string> cohort_algorithms{"frac", "q", "random"};
    std::size_t cohort_n = 20;
    std::uint64_t cohort_base_seed = 0;
    std::string cohort_profile = "bored-fast";
    std::string cohort_out = "out";
    std::string cohort_catalog;
    long long cohort_steps = fracq::kDefaultSessionSteps;
    unsigned cohort_threads = 0;
    ConfigFlags cohort_cfg;
    cohort->add_option("--algorithms", cohort_algorithms, "comma-separated list")
        ->delimiter(',')
        ->capture_default_str();
    cohort->add_option("--n-seeds", cohort_n, "sessions per algorithm")->capture_default_str();
    cohort->add_option("--base-seed", cohort_base_seed, "base seed")->capture_default_str();
    cohort->add_option("--profile", cohort_profile, "preset name or profile JSON file")->capture_default_str();
    cohort->add_option("--out", cohort_out, "output directory")->capture_default_str();
    cohort->add_option("--steps", cohort_steps, "steps per session")->capture_default_str();
    cohort->add_option("--threads", cohort_threads, "worker threads (0 = all cores)")->capture_default_str();
    cohort->add_option("--catalog", cohort_catalog, "action catalog JSON (default: built-in)");
    cohort_cfg.add_to(cohort);

    // welch
    auto* welch = app.add_subcommand("welch", "Welch's t-test on summaries or raw samples");
    std::string welch_summary;
    std::string welch_samples;
    auto* opt_summary =
        welch->add_option("--summary", welch_summary, "a_mean,a_sd,a_n,b_mean,b_sd,b_n");
    auto* opt_samples =
        welch->add_option("--samples", welch_samples, "JSON file {\"a\": [...], \"b\": [...]}");
    opt_summary->excludes(opt_samples);
    opt_samples->excludes(opt_summary);
    welch->require_option(1);

    // serve
    auto* serve = app.add_subcommand("serve", "serve interactive sessions over HTTP/JSON");
    std::string serve_host = std::getenv("FRACQ_HOST") ? std::getenv("FRACQ_HOST") : "127.0.0.1";
    int serve_port = std::getenv("FRACQ_PORT") ? std::atoi(std::getenv("FRACQ_PORT")) : 8080;
    std::string serve_cors = "*";
    long long serve_idle_minutes = 30;
    std::string serve_catalog;
    serve->add_option("--host", serve_host, "listen address (env FRACQ_HOST)")->capture_default_str();
    serve->add_option("--port", serve_port, "listen port (env FRACQ_PORT)")->capture_default_str();
    serve->add_option("--cors-origin", serve_cors, "allowed UI origin")->capture_default_str();
    serve->add_option("--idle-timeout-min", serve_idle_minutes, "session idle timeout")->capture_default_str();
    serve->add_option("--catalog", serve_catalog, "action catalog JSON (default: built-in)");

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "print the built-in action catalog as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            fracq::SessionConfig cfg;
            cfg.algorithm = fracq::parse_algorithm(run_algorithm);
            cfg.steps = run_steps;
            cfg.learner_config = run_cfg.build();
            cfg.user_profile = fracq::resolve_profile(run_profile);
            cfg.session_seed = run_seed;
            const auto log = fracq::run_session(cfg, catalog_from_flag(run_catalog));
            const fs::path out(run_out);
            ensure_dir(out);
            fracq::write_json(json(log), out / "session_log.json");
            fracq::export_heatmap(log, out / "heatmap.csv");
            fracq::write_nspeak_timeline(log, out / "timeline.csv");
            const auto m = fracq::session_metrics(log);
            std::cout << "algorithm=" << fracq::algorithm_name(cfg.algorithm) << " steps=" << cfg.steps
                      << " mean_state=" << m.mean_state << " cumulative_reward=" << m.cumulative_reward
                      << " total_n_speak=" << m.total_n_speak << "\nwrote " << out.string() << '\n';
        } else if (*cohort) {
            std::vector<fracq::Algorithm> algos;
            for (const auto& name : cohort_algorithms) algos.push_back(fracq::parse_algorithm(name));
            fracq::CohortOptions opts;
            opts.steps = cohort_steps;
            opts.learner_config = cohort_cfg.build();
            opts.threads = cohort_threads;
            const auto summary = fracq::run_cohort(algos, fracq::resolve_profile(cohort_profile), cohort_n,
                                                   cohort_base_seed, opts, catalog_from_flag(cohort_catalog));
            const fs::path out(cohort_out);
            ensure_dir(out);
            fracq::write_json(json(summary), out / "cohort_summary.json");
            for (const auto& c : summary.comparisons)
                std::cout << fracq::algorithm_name(c.a) << " vs " << fracq::algorithm_name(c.b) << " [" << c.metric
                          << "] mean " << c.summary_a.mean << " vs " << c.summary_b.mean
                          << "  t=" << c.welch.t_statistic << " df=" << c.welch.degrees_of_freedom
                          << " p=" << c.welch.p_value_two_tailed << '\n';
            std::cout << "wrote " << (out / "cohort_summary.json").string() << '\n';
        } else if (*welch) {
            if (!welch_summary.empty()) {
                const auto v = parse_csv_numbers(welch_summary);
                if (v.size() != 6) throw fracq::ValidationError("--summary needs 6 comma-separated numbers");
                for (std::size_t i : {2u, 5u})
                    if (v[i] < 0 || v[i] != static_cast<double>(static_cast<long long>(v[i])))
                        throw fracq::ValidationError("group sizes must be non-negative integers");
                print_welch(fracq::stats::welch_test(v[0], v[1], static_cast<std::size_t>(v[2]), v[3], v[4],
                                                     static_cast<std::size_t>(v[5])));
            } else {
                const json j = read_json_file(welch_samples);
                if (!j.is_object() || !j.contains("a") || !j.contains("b"))
                    throw fracq::ValidationError("samples file must be {\"a\": [...], \"b\": [...]}");
                std::vector<double> a, b;
                try {
                    a = j["a"].get<std::vector<double>>();
                    b = j["b"].get<std::vector<double>>();
                } catch (const json::exception&) {
                    throw fracq::ValidationError("samples 'a' and 'b' must be arrays of numbers");
                }
                print_welch(fracq::stats::welch_test(a, b));
            }
        } else if (*serve) {
            fracq::SessionService::Options opts;
            opts.idle_timeout = std::chrono::minutes(serve_idle_minutes);
            fracq::SessionService service(opts, catalog_from_flag(serve_catalog));
            httplib::Server server;
            fracq::mount_routes(server, service, {serve_cors});
            std::cout << "listening on http://" << serve_host << ':' << serve_port << std::endl;
            if (!server.listen(serve_host, serve_port)) {
                std::cerr << "error: cannot listen on " << serve_host << ':' << serve_port << '\n';
                return kExitIo;
            }
        } else if (*catalog_cmd) {
            std::cout << json(fracq::ActionCatalog::builtin()).dump(2) << '\n';
        }
    } catch (const fracq::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
