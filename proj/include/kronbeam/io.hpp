#ifndef KRONBEAM_IO_HPP
#define KRONBEAM_IO_HPP

#include "kronbeam/codebooks.hpp"
#include "kronbeam/experiments.hpp"
#include "kronbeam/sensing.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace kronbeam {

inline constexpr std::string_view kSweepCsvHeader = "snr_db,pca,pca_ci95,mean_snr_ab_db,trials,scheme,n_tx,n_rx,k,seed";

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

/// {"n_rows", "n_cols", "row_support", "p1", "r1", "p2", "r2", "row_scale", "col_scale"}
nlohmann::ordered_json matrix_to_json(const KroneckerSensing& sensing);

/// {"k", "z1", "z2", "tx", "rx"}
nlohmann::ordered_json schedule_to_json(const MeasurementSchedule& sched);

void write_sweep_csv(const SweepTable& table, std::ostream& out);

/// Throws `Error(Io)` on a malformed file.
SweepTable read_sweep_csv(std::istream& in);

}  // namespace kronbeam

#endif
