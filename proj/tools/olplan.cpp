#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "olplan/core/errors.hpp"
#include "olplan/harness/config.hpp"
#include "olplan/harness/experiment.hpp"
#include "olplan/harness/report.hpp"
#include "olplan/planners/planner_result.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Flags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string format;
    std::string trace;
    std::string sample_log;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "config file (key = value lines)")->required();
    cmd->add_option("--out", f.out, "output file; stdout when omitted");
    cmd->add_option("--seed", f.seed, "master seed, overrides the config");
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

olplan::harness::ExperimentConfig load(const Flags& f) {
    auto cfg = olplan::harness::load_config(f.config);
    if (f.seed) cfg.seed = *f.seed;
    if (f.format == "csv") cfg.format = olplan::harness::OutputFormat::csv;
    if (f.format == "json") cfg.format = olplan::harness::OutputFormat::json;
    if (!f.out.empty()) cfg.output_path = f.out;
    cfg.validate();
    return cfg;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw olplan::InvalidConfig("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit(const olplan::harness::ExperimentConfig& cfg, const std::vector<olplan::harness::RunRecord>& rows) {
    Output out(cfg.output_path);
    if (cfg.format == olplan::harness::OutputFormat::json) {
        olplan::harness::write_json(out.stream(), rows);
    } else {
        olplan::harness::write_csv(out.stream(), rows);
    }
}

int run_traced(const olplan::harness::ExperimentConfig& cfg, const Flags& f) {
    std::unique_ptr<std::ofstream> log_file;
    std::unique_ptr<olplan::SampleLog> log;
    if (!f.sample_log.empty()) {
        log_file = std::make_unique<std::ofstream>(f.sample_log);
        log = std::make_unique<olplan::SampleLog>(*log_file);
    }
    auto model = olplan::harness::make_env(cfg, cfg.b);
    olplan::Simulator sim(*model, olplan::derive_seed(cfg.seed, 1, 0));
    olplan::planners::RunOptions opts{!f.trace.empty(), log.get()};
    auto res = olplan::harness::plan(cfg.planner, sim, cfg.budget, cfg.gamma, cfg, cfg.btilde, opts);
    if (!f.trace.empty()) {
        std::ofstream trace(f.trace);
        olplan::planners::write_trace(trace, res.trace);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budgeted open-loop planning experiments"};
    app.require_subcommand(1);
    Flags flags;
    auto* run = app.add_subcommand("run", "one planning call from the initial state");
    add_common(run, flags);
    run->add_option("--trace", flags.trace, "write planner decisions as JSON lines");
    run->add_option("--sample-log", flags.sample_log, "write every reward sample as JSON lines");
    auto* roll = app.add_subcommand("rollout", "receding-horizon control for rollout.steps steps");
    add_common(roll, flags);
    auto* sweep = app.add_subcommand("sweep", "grid of runs or rollouts, one row per cell and seed");
    add_common(sweep, flags);
    auto* diag = app.add_subcommand("diagnose", "count profiles, kappa, sandwich check and coverage");
    add_common(diag, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        const auto cfg = load(flags);
        if (run->parsed()) {
            if (!flags.trace.empty() || !flags.sample_log.empty()) run_traced(cfg, flags);
            emit(cfg, {olplan::harness::run_once(cfg)});
        } else if (roll->parsed()) {
            emit(cfg, {olplan::harness::rollout(cfg)});
        } else if (sweep->parsed()) {
            emit(cfg, olplan::harness::sweep(cfg, flags.jobs));
        } else if (diag->parsed()) {
            Output out(cfg.output_path);
            out.stream() << olplan::harness::diagnose(cfg, flags.jobs).dump(1) << '\n';
        }
    } catch (const olplan::InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return 0;
}
