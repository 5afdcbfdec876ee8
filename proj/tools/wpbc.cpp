#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wpbc/experiment.hpp"

namespace {

int fail_with(const char* type, const std::string& message, int code,
              double achieved_error = -1.0) {
    nlohmann::json err{{"error", {{"type", type}, {"message", message}}}};
    if (achieved_error >= 0.0) err["error"]["achieved_error"] = achieved_error;
    std::cerr << err.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage and capacity toolkit for wirelessly powered backscatter networks"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir;
    std::uint64_t seed = 0, trials = 0;
    unsigned workers = 0;
    bool seed_set = false, trials_set = false, workers_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "override the RNG seed")->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--trials", trials, "override the Monte Carlo trial count")
            ->each([&](const std::string&) { trials_set = true; });
        cmd->add_option("--workers", workers, "override the worker-thread count (0 = auto)")
            ->each([&](const std::string&) { workers_set = true; });
    };

    CLI::App* run = app.add_subcommand("run", "execute the experiment described by a spec file");
    run->add_option("spec", spec_path, "path to the key = value spec file")->required();
    add_common(run);

    CLI::App* figures = app.add_subcommand("reproduce-figures", "emit the four parameter-study CSVs");
    figures->add_option("out_dir", out_dir, "output directory")->required();
    add_common(figures);

    CLI11_PARSE(app, argc, argv);

    wpbc::Overrides ov;
    if (seed_set) ov.seed = seed;
    if (trials_set) ov.trials = trials;
    if (workers_set) ov.workers = workers;

    try {
        if (run->parsed()) {
            wpbc::ExperimentSpec spec = wpbc::parse_spec_file(spec_path);
            wpbc::apply_overrides(spec, ov);
            const auto out = wpbc::run_experiment(spec);
            std::cout << "wrote " << out.csv_path << " (" << out.rows << " rows) and "
                      << out.manifest_path << '\n';
        } else {
            const auto outputs = wpbc::reproduce_figures(out_dir, ov);
            for (const auto& out : outputs)
                std::cout << "wrote " << out.csv_path << " (" << out.rows << " rows)\n";
        }
    } catch (const wpbc::ConfigError& e) {
        return fail_with("config", e.what(), 2);
    } catch (const wpbc::QuadratureError& e) {
        return fail_with("quadrature", e.what(), 3, e.achieved_error);
    } catch (const std::invalid_argument& e) {
        return fail_with("config", e.what(), 2);
    } catch (const std::exception& e) {
        return fail_with("runtime", e.what(), 4);
    }
    return 0;
}
