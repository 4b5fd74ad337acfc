// brstool: construct and verify bounded remainder sets for rotations on
// adelic tori, from an exact JSON configuration.

#include <CLI11.hpp>

#include <iostream>

#include "adelic/runner.hpp"
#include "adelic/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bounded remainder sets for adelic torus rotations"};
    app.set_version_flag("--version", adelic::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    adelic::RunOverrides ov;
    long n_max = -1, stride = -1, precision = -1;
    long seed = -1;
    int threads = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "path to the JSON run configuration")->required();
        sub->add_option("--output-dir", ov.output_dir, "directory for CSV/JSON artifacts");
        sub->add_option("--n-max", n_max, "orbit length / table size");
        sub->add_option("--stride", stride, "sampling stride for CSV rows");
        sub->add_option("--precision-bits", precision, "interval precision for numeric output");
        sub->add_option("--seed", seed, "seed for randomized suites");
        sub->add_option("--threads", threads, "parallel degree (results are independent of it)");
        return sub;
    };

    add_common(app.add_subcommand("construct", "build the BRS and serialize it"));
    add_common(app.add_subcommand("verify", "exact lemma-chain and integrality checks"));
    auto* orbit = add_common(app.add_subcommand("orbit", "Birkhoff discrepancy series CSV"));
    bool svg = false;
    orbit->add_flag("--svg", svg, "also emit a static SVG chart of S_N");
    add_common(app.add_subcommand("volumes", "enumerate the allowable volume set"));
    add_common(app.add_subcommand("weyl", "Weyl sum table over an N grid"));
    add_common(app.add_subcommand("ergodic", "ergodicity verdict and certificate"));

    CLI11_PARSE(app, argc, argv);

    if (n_max >= 0) ov.n_max = n_max;
    if (stride >= 1) ov.stride = stride;
    if (precision >= 1) ov.precision_bits = precision;
    if (seed >= 0) ov.seed = static_cast<unsigned long>(seed);
    if (threads >= 1) ov.threads = threads;
    ov.emit_svg = svg;

    std::string cmd = app.get_subcommands().front()->get_name();
    return adelic::run_command(cmd, config_path, ov, std::cout, std::cerr);
}
