#include "kronbeam/cli.hpp"

#include "kronbeam/error.hpp"
#include "kronbeam/experiments.hpp"
#include "kronbeam/io.hpp"
#include "kronbeam/sensing.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace kronbeam::cli {

namespace {

bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    file << contents;
    file.flush();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

}  // namespace

int cmd_matrix(const MatrixOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const DeVoreParams tx{opts.p1, opts.r1};
        const DeVoreParams rx{opts.p2, opts.r2};
        const KroneckerSensing sensing = KroneckerSensing::build(tx, rx);
        const CoherenceReport report = coherence_report(sensing.s_b, tx, rx);

        if (!opts.out_path.empty() && !write_file(opts.out_path, matrix_to_json(sensing).dump() + "\n", err)) {
            return kUsage;
        }
        if (!opts.schedule_path.empty()) {
            const MeasurementSchedule sched = deterministic_schedule(sensing.u_b, sensing.v_b);
            if (!write_file(opts.schedule_path, schedule_to_json(sched).dump() + "\n", err)) {
                return kUsage;
            }
        }
        out << "dims: " << sensing.s_b.n_rows() << " x " << sensing.s_b.n_cols() << '\n'
            << "mu: " << format_double(report.mu) << '\n'
            << "welch_bound: " << format_double(report.welch_lower_bound) << '\n'
            << "rip_order: " << report.rip_order_guarantee << '\n'
            << "rip_constant_bound: " << format_double(report.rip_constant_bound) << '\n';
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const DeVoreParams params{opts.p, opts.r};
        const SparseBinaryMatrix m = devore_matrix(params);
        const double delta = rip_constant_bruteforce(m, opts.rip_order);
        const double bound = static_cast<double>((opts.rip_order - 1) * opts.r) / static_cast<double>(opts.p);
        const bool pass = delta <= bound + 1e-12;
        out << "delta_" << opts.rip_order << ": " << format_double(delta) << '\n'
            << "bound: " << format_double(bound) << '\n'
            << "result: " << (pass ? "pass" : "fail") << '\n';
        return pass ? kOk : kCheckFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.trials < 1) {
            throw Error(ErrorKind::InvalidConfig, "trials must be >= 1");
        }
        if (opts.out_csv.empty()) {
            throw Error(ErrorKind::InvalidConfig, "an output path is required");
        }
        ExperimentParams params;
        params.tx = {opts.p1, opts.r1};
        params.rx = {opts.p2, opts.r2};
        params.n_paths = opts.paths;
        params.grid = parse_grid_mode(opts.grid_mode);
        if (opts.column_scaling == "uniform") {
            params.column_scaling = ColumnScaling::uniform;
        } else if (opts.column_scaling != "per-column") {
            throw Error(ErrorKind::InvalidConfig, "column scaling must be 'per-column' or 'uniform'");
        }
        params.validate();
        const Scheme scheme = parse_scheme(opts.scheme);
        const std::vector<double> snrs = snr_range(opts.snr_start, opts.snr_stop, opts.snr_step);

        const SweepTable table = sweep(scheme, params, snrs, opts.trials, opts.seed, opts.threads);
        std::ostringstream csv;
        write_sweep_csv(table, csv);
        if (!write_file(opts.out_csv, csv.str(), err)) {
            return kUsage;
        }
        out << "wrote " << table.rows.size() << " rows to " << opts.out_csv << '\n';
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kronecker DeVore sensing matrices for mmWave beam alignment"};
    app.require_subcommand(1);

    MatrixOptions matrix;
    auto* matrix_cmd = app.add_subcommand("matrix", "Build U_b (x) V_b, export it as JSON and report its coherence");
    matrix_cmd->add_option("--p1", matrix.p1, "Transmit field order")->required();
    matrix_cmd->add_option("--r1", matrix.r1, "Transmit polynomial degree")->required();
    matrix_cmd->add_option("--p2", matrix.p2, "Receive field order")->required();
    matrix_cmd->add_option("--r2", matrix.r2, "Receive polynomial degree")->required();
    matrix_cmd->add_option("--out", matrix.out_path, "Matrix JSON path")->required();
    matrix_cmd->add_option("--emit-schedule", matrix.schedule_path, "Also write the measurement schedule JSON here");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Brute-force the RIP constant of a DeVore matrix");
    verify_cmd->add_option("--p", verify.p, "Field order")->required();
    verify_cmd->add_option("--r", verify.r, "Polynomial degree")->required();
    verify_cmd->add_option("--rip-order", verify.rip_order, "Sparsity order L")->required();

    SweepOptions sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo PCA / SNR_AB sweep, written as CSV");
    sweep_cmd->add_option("--scheme", sw.scheme, "mbmkp or rdperm")->required()->check(CLI::IsMember({"mbmkp", "rdperm"}));
    sweep_cmd->add_option("--p1", sw.p1)->required();
    sweep_cmd->add_option("--r1", sw.r1)->required();
    sweep_cmd->add_option("--p2", sw.p2)->required();
    sweep_cmd->add_option("--r2", sw.r2)->required();
    sweep_cmd->add_option("--paths", sw.paths, "Number of paths L")->capture_default_str();
    sweep_cmd->add_option("--snr-start", sw.snr_start, "First SNR in dB")->capture_default_str();
    sweep_cmd->add_option("--snr-stop", sw.snr_stop, "Last SNR in dB")->capture_default_str();
    sweep_cmd->add_option("--snr-step", sw.snr_step, "SNR step in dB")->capture_default_str();
    sweep_cmd->add_option("--trials", sw.trials, "Trials per SNR point")->capture_default_str();
    sweep_cmd->add_option("--grid-mode", sw.grid_mode, "on or off")->capture_default_str()->check(CLI::IsMember({"on", "off"}));
    sweep_cmd->add_option("--seed", sw.seed, "Base seed")->capture_default_str();
    sweep_cmd->add_option("--out", sw.out_csv, "CSV output path")->required();
    sweep_cmd->add_option("--column-scaling", sw.column_scaling, "per-column or uniform")
        ->capture_default_str()
        ->check(CLI::IsMember({"per-column", "uniform"}));
    sweep_cmd->add_option("--threads", sw.threads, "Worker threads, 0 = all cores")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    if (matrix_cmd->parsed()) {
        return cmd_matrix(matrix, out, err);
    }
    if (verify_cmd->parsed()) {
        return cmd_verify(verify, out, err);
    }
    return cmd_sweep(sw, out, err);
}

}  // namespace kronbeam::cli
