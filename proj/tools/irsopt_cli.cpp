// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irsopt/acceptance.hpp"
#include "irsopt/config_io.hpp"
#include "irsopt/harness.hpp"

namespace {

std::string resolve_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("IRSOPT_CONFIG")) return env;
    return "reference_default";
}

void add_common(CLI::App* cmd, std::string& config_path, irsopt::HarnessOptions& opt,
                std::string& alphabet) {
    cmd->add_option("--config", config_path, "config file path, or 'reference_default'");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--trials", opt.trials, "channel realizations per setting");
    cmd->add_option("--alphabet", alphabet, "phase alphabet: cp or dp:L");
    cmd->add_option("--out", opt.out_path, "output CSV path (default stdout)");
    cmd->add_option("--workers", opt.workers, "worker threads across trials");
    cmd->add_flag("--json", opt.json_mirror, "also write <out>.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-aided MISO sum-rate experiments"};
    app.require_subcommand(1);

    irsopt::HarnessOptions opt;
    std::string config_path;
    std::string alphabet;
    std::vector<double> p_list;
    std::vector<int> n_list;

    auto* conv = app.add_subcommand("convergence", "per-iteration solver traces");
    add_common(conv, config_path, opt, alphabet);

    auto* swp = app.add_subcommand("sweep-power", "mean sum rate vs transmit power");
    add_common(swp, config_path, opt, alphabet);
    swp->add_option("--p-list", p_list, "P_max grid in dBm");

    auto* swn = app.add_subcommand("sweep-elements", "mean sum rate vs IRS element count");
    add_common(swn, config_path, opt, alphabet);
    swn->add_option("--n-list", n_list, "IRS element counts");

    auto* verify = app.add_subcommand("verify", "run the full property/oracle suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return irsopt::run_acceptance(std::cout) == 0 ? 0 : 1;

        opt.config = irsopt::load_config(resolve_config_path(config_path));
        if (!alphabet.empty()) {
            opt.config.alphabet = irsopt::parse_alphabet(alphabet);
            opt.alphabet_override = opt.config.alphabet;
        }
        if (!p_list.empty()) opt.p_list_dbm = p_list;
        if (!n_list.empty()) opt.n_list = n_list;

        if (conv->parsed()) return irsopt::run_convergence(opt);
        if (swp->parsed()) return irsopt::run_sweep_power(opt);
        if (swn->parsed()) return irsopt::run_sweep_elements(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
