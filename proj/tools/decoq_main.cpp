// decoq — decoherence time scales for bipartite quantum systems.
//
// decoq td|simulate|validate|fig1|sweep --config <path> [--out <path>] [--workers N]
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "decoq/errors.hpp"
#include "decoq/run.hpp"

namespace {

decoq::ExperimentConfig load(const std::string& config_path, const std::string& out_override) {
    decoq::ExperimentConfig cfg = decoq::load_config(config_path);
    if (!out_override.empty()) cfg.output.path = out_override;
    return cfg;
}

int dispatch(const std::string& cmd, const std::string& config_path,
             const std::string& out_override, int workers) {
    if (cmd == "fig1") return decoq::cmd_fig1(out_override, std::cout);
    decoq::ExperimentConfig cfg = load(config_path, out_override);
    if (cmd == "td") return decoq::cmd_td(cfg, std::cout);
    if (cmd == "simulate") return decoq::cmd_simulate(cfg, std::cout);
    if (cmd == "validate") return decoq::cmd_validate(cfg, std::cout);
    if (cmd == "sweep") return decoq::cmd_sweep(cfg, std::cout, workers);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoq: decoherence-onset time scales for bipartite quantum systems"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int workers = 0; // 0 = logical cores

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", config_path, "JSON experiment configuration");
        if (config_required) c->required();
        sub->add_option("--out", out_path,
                        "output path (overrides config); for fig1, the output directory");
    };

    add_common(app.add_subcommand("td", "closed-form decoherence time scale"), true);
    add_common(app.add_subcommand("simulate", "exact entropy series to CSV/JSON"), true);
    add_common(app.add_subcommand("validate",
                                  "cross-check s2(0): direct trace, operator correlation, "
                                  "finite differences"),
               true);
    add_common(app.add_subcommand("fig1", "the three reference dephasing curves"), false);
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with closed-form columns");
    add_common(sweep, true);
    sweep->add_option("--workers", workers, "parallel rows (default: logical cores)");

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        return dispatch(cmd, config_path, out_path, workers);
    } catch (const decoq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return decoq::kExitConfig;
    } catch (const decoq::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return decoq::kExitCapacity;
    } catch (const decoq::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return decoq::kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
