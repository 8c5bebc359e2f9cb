#include "kronbeam/codebooks.hpp"

#include "kronbeam/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace kronbeam {

namespace {

std::size_t constant_weight(const std::vector<std::size_t>& weights, const char* what) {
    if (weights.empty()) {
        throw Error(ErrorKind::InvalidWeight, std::string(what) + ": empty factor");
    }
    for (auto w : weights) {
        if (w != weights.front()) {
            throw Error(ErrorKind::InvalidWeight, std::string(what) + " weights are not constant");
        }
    }
    return weights.front();
}

SelectionVector random_subset(std::size_t n, std::size_t z, std::vector<std::uint32_t>& scratch, Rng& rng) {
    std::iota(scratch.begin(), scratch.end(), 0U);
    for (std::size_t i = 0; i < z; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(scratch[i], scratch[pick(rng)]);
    }
    SelectionVector sel{n, std::vector<std::uint32_t>(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(z))};
    std::sort(sel.ones.begin(), sel.ones.end());
    return sel;
}

}  // namespace

void SelectionVector::validate() const {
    if (ones.empty()) {
        throw Error(ErrorKind::InvalidWeight, "selection has no ones");
    }
    for (std::size_t i = 0; i < ones.size(); ++i) {
        if (ones[i] >= length || (i > 0 && ones[i] <= ones[i - 1])) {
            throw Error(ErrorKind::InvalidWeight, "selection indices must be sorted, distinct and < length");
        }
    }
}

SparseBinaryMatrix MeasurementSchedule::stacked() const {
    if (rx.size() != tx.size()) {
        throw Error(ErrorKind::DimensionMismatch, "tx and rx schedules differ in length");
    }
    std::vector<std::size_t> offsets{0};
    offsets.reserve(tx.size() + 1);
    std::vector<SparseBinaryMatrix::Index> indices;
    for (std::size_t t = 0; t < tx.size(); ++t) {
        for (auto a : tx[t].ones) {
            for (auto b : rx[t].ones) {
                indices.push_back(static_cast<SparseBinaryMatrix::Index>(a * n_rx + b));
            }
        }
        offsets.push_back(indices.size());
    }
    return SparseBinaryMatrix(tx.size(), n_tx * n_rx, std::move(offsets), std::move(indices));
}

MeasurementSchedule deterministic_schedule(const SparseBinaryMatrix& u_b, const SparseBinaryMatrix& v_b) {
    MeasurementSchedule sched;
    sched.n_tx = u_b.n_cols();
    sched.n_rx = v_b.n_cols();
    sched.scaling.z1 = constant_weight(u_b.row_weights(), "transmit row");
    sched.scaling.z2 = constant_weight(v_b.row_weights(), "receive row");
    sched.scaling.p1 = constant_weight(u_b.column_weights(), "transmit column");
    sched.scaling.p2 = constant_weight(v_b.column_weights(), "receive column");

    const std::size_t k = u_b.n_rows() * v_b.n_rows();
    sched.tx.reserve(k);
    sched.rx.reserve(k);
    for (std::size_t i = 0; i < u_b.n_rows(); ++i) {
        const auto tx_row = u_b.row(i);
        const SelectionVector tx_sel{u_b.n_cols(), {tx_row.begin(), tx_row.end()}};
        for (std::size_t j = 0; j < v_b.n_rows(); ++j) {
            const auto rx_row = v_b.row(j);
            sched.tx.push_back(tx_sel);
            sched.rx.push_back(SelectionVector{v_b.n_cols(), {rx_row.begin(), rx_row.end()}});
        }
    }
    return sched;
}

MeasurementSchedule rdperm_schedule(std::size_t n_tx, std::size_t n_rx, std::size_t z1, std::size_t z2, std::size_t k,
                                    Rng& rng) {
    if (z1 < 1 || z1 > n_tx || z2 < 1 || z2 > n_rx) {
        throw Error(ErrorKind::InvalidWeight, "need 1 <= z1 <= n_tx and 1 <= z2 <= n_rx (z1=" + std::to_string(z1) +
                                                  ", z2=" + std::to_string(z2) + ")");
    }
    if (k < 1) {
        throw Error(ErrorKind::InvalidConfig, "need at least one measurement");
    }
    MeasurementSchedule sched;
    sched.n_tx = n_tx;
    sched.n_rx = n_rx;
    sched.scaling = SensingScaling{z1, z2, 0, 0};
    sched.tx.reserve(k);
    sched.rx.reserve(k);
    std::vector<std::uint32_t> tx_scratch(n_tx);
    std::vector<std::uint32_t> rx_scratch(n_rx);
    for (std::size_t t = 0; t < k; ++t) {
        sched.tx.push_back(random_subset(n_tx, z1, tx_scratch, rng));
        sched.rx.push_back(random_subset(n_rx, z2, rx_scratch, rng));
    }
    return sched;
}

CVector synthesize_beamformer(const CMatrix& f, const SelectionVector& sel) {
    if (sel.length != static_cast<std::size_t>(f.cols())) {
        throw Error(ErrorKind::DimensionMismatch, "selection length " + std::to_string(sel.length) +
                                                      " != DFT size " + std::to_string(f.cols()));
    }
    sel.validate();
    CVector w = CVector::Zero(f.rows());
    for (auto c : sel.ones) {
        w += f.col(static_cast<Eigen::Index>(c));
    }
    return w / std::sqrt(static_cast<double>(sel.weight()));
}

}  // namespace kronbeam
