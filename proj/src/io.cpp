#include "kronbeam/io.hpp"

#include "kronbeam/error.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace kronbeam {

namespace {

template <typename T>
T parse_integer(std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::Io, "bad integer field '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw Error(ErrorKind::Io, "cannot format double");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::Io, "bad numeric field '" + std::string(text) + "'");
    }
    return value;
}

nlohmann::ordered_json matrix_to_json(const KroneckerSensing& sensing) {
    nlohmann::ordered_json j;
    j["n_rows"] = sensing.s_b.n_rows();
    j["n_cols"] = sensing.s_b.n_cols();
    j["row_support"] = sensing.s_b.row_support();
    j["p1"] = sensing.tx.p;
    j["r1"] = sensing.tx.r;
    j["p2"] = sensing.rx.p;
    j["r2"] = sensing.rx.r;
    j["row_scale"] = sensing.views.row_scale;
    j["col_scale"] = sensing.views.col_scale;
    return j;
}

nlohmann::ordered_json schedule_to_json(const MeasurementSchedule& sched) {
    nlohmann::ordered_json j;
    j["k"] = sched.k();
    j["z1"] = sched.scaling.z1;
    j["z2"] = sched.scaling.z2;
    auto tx = nlohmann::ordered_json::array();
    auto rx = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < sched.k(); ++t) {
        tx.push_back(sched.tx[t].ones);
        rx.push_back(sched.rx[t].ones);
    }
    j["tx"] = std::move(tx);
    j["rx"] = std::move(rx);
    return j;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const auto& row : table.rows) {
        out << format_double(row.snr_db) << ',' << format_double(row.pca) << ',' << format_double(row.pca_ci95_halfwidth)
            << ',' << format_double(row.mean_snr_ab_db) << ',' << row.trials << ',' << to_string(row.scheme) << ','
            << row.n_tx << ',' << row.n_rx << ',' << row.k << ',' << row.seed << '\n';
    }
}

SweepTable read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) {
        throw Error(ErrorKind::Io, "missing or unexpected sweep CSV header");
    }
    SweepTable table;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 10) {
            throw Error(ErrorKind::Io, "expected 10 fields, got " + std::to_string(fields.size()));
        }
        SweepRow row;
        row.snr_db = parse_double(fields[0]);
        row.pca = parse_double(fields[1]);
        row.pca_ci95_halfwidth = parse_double(fields[2]);
        row.mean_snr_ab_db = parse_double(fields[3]);
        row.trials = parse_integer<std::size_t>(fields[4]);
        try {
            row.scheme = parse_scheme(fields[5]);
        } catch (const Error& e) {
            throw Error(ErrorKind::Io, e.what());
        }
        row.n_tx = parse_integer<std::size_t>(fields[6]);
        row.n_rx = parse_integer<std::size_t>(fields[7]);
        row.k = parse_integer<std::size_t>(fields[8]);
        row.seed = parse_integer<std::uint64_t>(fields[9]);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace kronbeam
