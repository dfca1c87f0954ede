#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "modvertex/parallel.hpp"
#include "modvertex/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"modvertex: exact verification suites for modular affine vertex algebras at desk scale"};

    std::string suite;
    modvertex::SuiteConfig cfg;
    cfg.threads = modvertex::default_thread_count();
    std::string out_path;

    app.add_option("--suite", suite, "suite to run, one of: " + [] {
           std::string s;
           for (auto& n : modvertex::suite_names()) s += (s.empty() ? "" : ", ") + n;
           return s;
       }())
        ->required();
    app.add_option("--p", cfg.primes, "primes to run (comma separated)")->delimiter(',');
    app.add_option("--kappa", cfg.kappas, "levels: integers, 'critical' or 'formal' (comma separated)")
        ->delimiter(',');
    app.add_option("--depth", cfg.depth, "delta-depth bound for probe enumeration (hard cap 8)");
    app.add_option("--mode-bound", cfg.mode_bound, "bound on tested mode indices");
    app.add_option("--lambda", cfg.lambda, "highest weight lambda(h_i) (comma separated, default -rho)")
        ->delimiter(',');
    app.add_option("--out", out_path, "write the JSON report here (deterministic for a fixed config)");
    app.add_option("--seed", cfg.seed, "seed for optional extra random probes (0 = none)");
    app.add_option("--threads", cfg.threads, "worker threads (default: MODVERTEX_THREADS or hardware)");
    app.add_flag("--force", cfg.force, "allow expensive configurations (e.g. pcenter-images at p >= 5)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto res = modvertex::run_suite(suite, cfg);
        std::cout << res.text_summary();
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) {
                std::cerr << "cannot write " << out_path << "\n";
                return 2;
            }
            f << res.to_json().dump(2) << "\n";
        }
        return res.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
