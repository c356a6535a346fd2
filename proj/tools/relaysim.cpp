#include "CLI11.hpp"
#include "relaysim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Downlink scheduling simulator for a relay-enhanced OFDMA cell"};
    app.require_subcommand(1);

    relaysim::RunFlags run_flags;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Simulate the scenario and write per_slot.csv + summary.json");
    run_cmd->add_option("--config", run_flags.config_path,
                        "Scenario file; built-in defaults when omitted");
    run_cmd->add_option("--policy", run_flags.policy, "variance | maxsnr | both");
    run_cmd->add_option("--slots", run_flags.num_slots, "Slots per run");
    run_cmd->add_option("--seeds", run_flags.seed_spec, "Seed list, e.g. 1..20 or 3,7,9");
    run_cmd->add_option("--out", run_flags.out_dir, "Output directory (default .)");
    run_cmd->add_flag("--verify", run_flags.verify, "Check allocation constraints every slot");

    relaysim::SweepFlags sweep_flags;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Sweep relay or user count and write sweep.csv");
    sweep_cmd->add_option("--config", sweep_flags.base.config_path,
                          "Scenario file; built-in defaults when omitted");
    sweep_cmd->add_option("--policy", sweep_flags.base.policy, "variance | maxsnr | both");
    sweep_cmd->add_option("--slots", sweep_flags.base.num_slots, "Slots per run");
    sweep_cmd->add_option("--seeds", sweep_flags.base.seed_spec, "Seed list");
    sweep_cmd->add_option("--out", sweep_flags.base.out_dir, "Output directory (default .)");
    sweep_cmd->add_flag("--verify", sweep_flags.base.verify,
                        "Check allocation constraints every slot");
    sweep_cmd->add_option("--axis", sweep_flags.axis, "relays | users")->required();
    sweep_cmd->add_option("--values", sweep_flags.values, "Axis values, comma separated")
        ->required()
        ->delimiter(',');

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Recompute the built-in two-user worked example and verify it");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) return relaysim::cmd_run(run_flags);
    if (sweep_cmd->parsed()) return relaysim::cmd_sweep(sweep_flags);
    (void)oracle_cmd;
    return relaysim::cmd_oracle();
}
