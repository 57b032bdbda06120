#include "hyperdyn/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

// flag overrides applied on top of the parsed config
struct Overrides {
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> n_max;
    std::optional<double> cover_eps;
    std::optional<double> net_eps;
    std::optional<double> tol;
    std::optional<double> delta;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"set-valued dynamics engine: orbits, property checkers, experiment reproduction"};

    std::string config_path;
    Overrides over;
    app.add_option("--config", config_path, "path to the run config JSON")->required();
    app.add_option("--out", over.out_dir, "output directory for reports");
    app.add_option("--seed", over.seed, "random seed recorded in reports");
    app.add_option("--n-max", over.n_max, "iteration horizon override");
    app.add_option("--cover-eps", over.cover_eps, "ball cover radius override");
    app.add_option("--net-eps", over.net_eps, "sample net spacing override");
    app.add_option("--tol", over.tol, "metric tolerance override");
    app.add_option("--delta", over.delta, "sensitivity threshold override");

    CLI11_PARSE(app, argc, argv);

    hyperdyn::RunConfig config;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return hyperdyn::kExitConfigError;
        }
        hyperdyn::json parsed = hyperdyn::json::parse(in);
        config = hyperdyn::run_config_from_json(parsed);

        if (!over.out_dir.empty()) config.out_dir = over.out_dir;
        if (over.seed) config.rng_seed = *over.seed;
        if (over.n_max) config.bounds.n_max = *over.n_max;
        if (over.cover_eps) config.bounds.cover_eps = *over.cover_eps;
        if (over.net_eps) config.bounds.net_eps = *over.net_eps;
        if (over.tol) config.bounds.tol = *over.tol;
        if (over.delta) {
            config.has_delta = true;
            config.delta = *over.delta;
        }
        hyperdyn::validate_bounds(config.bounds);
    } catch (const hyperdyn::json::exception& e) {
        std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
        return hyperdyn::kExitConfigError;
    } catch (const hyperdyn::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hyperdyn::kExitConfigError;
    }

    return hyperdyn::run_cli_config(config, std::cout, std::cerr);
}
