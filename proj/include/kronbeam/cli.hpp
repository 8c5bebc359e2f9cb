#ifndef KRONBEAM_CLI_HPP
#define KRONBEAM_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kronbeam::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct MatrixOptions {
    std::uint32_t p1 = 3, r1 = 2, p2 = 3, r2 = 2;
    std::string out_path;
    std::string schedule_path;  ///< empty: no schedule export
};

struct VerifyOptions {
    std::uint32_t p = 3, r = 1;
    std::size_t rip_order = 2;
};

struct SweepOptions {
    std::string scheme = "mbmkp";
    std::uint32_t p1 = 3, r1 = 2, p2 = 3, r2 = 2;
    std::size_t paths = 1;
    double snr_start = -20.0;
    double snr_stop = 0.0;
    double snr_step = 2.5;
    std::size_t trials = 2000;
    std::string grid_mode = "on";
    std::uint64_t seed = 1;
    std::string out_csv;
    std::string column_scaling = "per-column";
    unsigned threads = 0;
};

int cmd_matrix(const MatrixOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

/// Parses `matrix | verify | sweep` and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kronbeam::cli

#endif
