#include "kronbeam/sensing.hpp"

#include "kronbeam/error.hpp"
#include "kronbeam/gf.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace kronbeam {

namespace {

__extension__ using Wide = unsigned __int128;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (out > cap / base) {
            return cap + 1;
        }
        out *= base;
    }
    return out;
}

std::uint64_t intersection_size(std::span<const SparseBinaryMatrix::Index> a,
                                std::span<const SparseBinaryMatrix::Index> b) {
    std::uint64_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

// a.shared^2 / (a.wa * a.wb) > b.shared^2 / (b.wa * b.wb), exactly
bool ratio_greater(const CoherencePair& a, const CoherencePair& b) {
    const Wide lhs = Wide{a.shared} * a.shared * b.weight_a * b.weight_b;
    const Wide rhs = Wide{b.shared} * b.shared * a.weight_a * a.weight_b;
    return lhs > rhs;
}

}  // namespace

void DeVoreParams::validate() const {
    if (p < 2 || r < 1 || r >= p) {
        throw Error(ErrorKind::InvalidParams,
                    "DeVore parameters need 1 <= r < p (got p=" + std::to_string(p) + ", r=" + std::to_string(r) + ")");
    }
}

std::uint64_t DeVoreParams::n_rows() const { return std::uint64_t{p} * p; }

std::uint64_t DeVoreParams::n_cols() const { return checked_pow(p, std::uint64_t{r} + 1, UINT64_MAX - 1); }

std::uint64_t DeVoreParams::row_weight() const { return checked_pow(p, r, UINT64_MAX - 1); }

SparseBinaryMatrix devore_matrix(const DeVoreParams& params, std::uint64_t max_cols) {
    params.validate();
    const std::uint64_t n_cols = checked_pow(params.p, std::uint64_t{params.r} + 1, max_cols);
    if (n_cols > max_cols) {
        throw Error(ErrorKind::SizeOverflow, "DeVore(" + std::to_string(params.p) + "," + std::to_string(params.r) +
                                                 ") exceeds the column cap of " + std::to_string(max_cols));
    }
    const gf::Field field(params.p);
    const std::uint32_t p = params.p;
    const auto xs = field.elements();

    std::vector<std::vector<SparseBinaryMatrix::Index>> rows(std::size_t{p} * p);
    for (auto& r : rows) {
        r.reserve(static_cast<std::size_t>(n_cols / p));
    }
    for (std::uint64_t j = 0; j < n_cols; ++j) {
        const gf::FieldPoly poly = field.poly_from_index(j, params.r + 1);
        for (const gf::FieldElement x : xs) {
            const gf::FieldElement y = field.eval(poly, x);
            rows[std::size_t{x.code} * p + y.code].push_back(static_cast<SparseBinaryMatrix::Index>(j));
        }
    }
    return SparseBinaryMatrix(std::size_t{p} * p, static_cast<std::size_t>(n_cols), rows);
}

SparseBinaryMatrix kron_rows(const SparseBinaryMatrix& u, const SparseBinaryMatrix& v, std::uint64_t max_cells) {
    const std::uint64_t n_rows = std::uint64_t{u.n_rows()} * v.n_rows();
    const std::uint64_t n_cols = std::uint64_t{u.n_cols()} * v.n_cols();
    if ((u.n_rows() != 0 && n_rows / u.n_rows() != v.n_rows()) || (u.n_cols() != 0 && n_cols / u.n_cols() != v.n_cols()) ||
        (n_cols != 0 && n_rows > max_cells / n_cols) || n_cols > UINT32_MAX) {
        throw Error(ErrorKind::SizeOverflow, "Kronecker product of " + std::to_string(u.n_rows()) + "x" +
                                                 std::to_string(u.n_cols()) + " and " + std::to_string(v.n_rows()) +
                                                 "x" + std::to_string(v.n_cols()) + " exceeds the size cap");
    }
    std::vector<std::size_t> offsets;
    offsets.reserve(static_cast<std::size_t>(n_rows) + 1);
    offsets.push_back(0);
    std::vector<SparseBinaryMatrix::Index> indices;
    indices.reserve(u.nnz() * v.nnz());
    const auto v_cols = static_cast<SparseBinaryMatrix::Index>(v.n_cols());
    for (std::size_t i = 0; i < u.n_rows(); ++i) {
        for (std::size_t j = 0; j < v.n_rows(); ++j) {
            for (auto a : u.row(i)) {
                for (auto b : v.row(j)) {
                    indices.push_back(a * v_cols + b);
                }
            }
            offsets.push_back(indices.size());
        }
    }
    return SparseBinaryMatrix(static_cast<std::size_t>(n_rows), static_cast<std::size_t>(n_cols), std::move(offsets),
                              std::move(indices));
}

double CoherencePair::value() const {
    if (shared == 0) {
        return 0.0;
    }
    if (weight_a == weight_b) {
        return static_cast<double>(shared) / static_cast<double>(weight_a);
    }
    return static_cast<double>(shared) / std::sqrt(static_cast<double>(weight_a) * static_cast<double>(weight_b));
}

CoherencePair max_coherence_pair(const SparseBinaryMatrix& m) {
    const SparseBinaryMatrix columns = m.transpose();
    const std::size_t n = m.n_cols();
    for (std::size_t j = 0; j < n; ++j) {
        if (columns.row_weight(j) == 0) {
            throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j) + " is all zero");
        }
    }

    CoherencePair best;
    if (n >= 2) {
        best.col_a = 0;
        best.col_b = 1;
        best.weight_a = columns.row_weight(0);
        best.weight_b = columns.row_weight(1);
    }
    std::vector<std::uint64_t> shared(n, 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < n; ++i) {
        touched.clear();
        for (auto row : columns.row(i)) {
            for (auto j : m.row(row)) {
                if (j <= i) {
                    continue;
                }
                if (shared[j]++ == 0) {
                    touched.push_back(j);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto j : touched) {
            CoherencePair candidate{i, j, shared[j], columns.row_weight(i), columns.row_weight(j)};
            if (ratio_greater(candidate, best)) {
                best = candidate;
            }
            shared[j] = 0;
        }
    }
    return best;
}

double coherence(const SparseBinaryMatrix& m) { return max_coherence_pair(m).value(); }

double welch_bound(std::uint64_t m, std::uint64_t n) {
    if (m < 1 || n <= m) {
        throw Error(ErrorKind::InvalidDims, "Welch bound needs n > m >= 1 (got m=" + std::to_string(m) +
                                                ", n=" + std::to_string(n) + ")");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return std::sqrt((nd - md) / (md * (nd - 1.0)));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    Wide out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
        if (out > UINT64_MAX) {
            return UINT64_MAX;
        }
    }
    return static_cast<std::uint64_t>(out);
}

double rip_constant_bruteforce(const SparseBinaryMatrix& m, std::size_t order, std::uint64_t subset_cap) {
    const std::size_t n = m.n_cols();
    if (order < 1 || order > n) {
        throw Error(ErrorKind::InvalidParams, "RIP order " + std::to_string(order) + " outside [1, " +
                                                  std::to_string(n) + "]");
    }
    const std::uint64_t subsets = binomial(n, order);
    if (subsets > subset_cap) {
        throw Error(ErrorKind::TooLarge, "C(" + std::to_string(n) + "," + std::to_string(order) + ") subsets exceed cap " +
                                             std::to_string(subset_cap));
    }
    const SparseBinaryMatrix columns = m.transpose();
    for (std::size_t j = 0; j < n; ++j) {
        if (columns.row_weight(j) == 0) {
            throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j) + " is all zero");
        }
    }
    if (order == 1) {
        return 0.0;
    }

    auto gram_entry = [&](std::size_t a, std::size_t b) {
        CoherencePair pair{a, b, intersection_size(columns.row(a), columns.row(b)), columns.row_weight(a),
                           columns.row_weight(b)};
        return pair.value();
    };

    double delta = 0.0;
    std::vector<std::size_t> subset(order);
    for (std::size_t i = 0; i < order; ++i) {
        subset[i] = i;
    }
    const auto l = static_cast<Eigen::Index>(order);
    Eigen::MatrixXd gram(l, l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    while (true) {
        if (order == 2) {
            // eigenvalues of [[1, g], [g, 1]] are 1 -/+ g
            delta = std::max(delta, gram_entry(subset[0], subset[1]));
        } else {
            for (Eigen::Index a = 0; a < l; ++a) {
                gram(a, a) = 1.0;
                for (Eigen::Index b = a + 1; b < l; ++b) {
                    gram(a, b) = gram(b, a) = gram_entry(subset[a], subset[b]);
                }
            }
            solver.compute(gram, Eigen::EigenvaluesOnly);
            const auto& ev = solver.eigenvalues();
            delta = std::max({delta, 1.0 - ev.minCoeff(), ev.maxCoeff() - 1.0});
        }

        // next combination in lexicographic order
        std::size_t pos = order;
        while (pos > 0 && subset[pos - 1] == n - order + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        ++subset[pos - 1];
        for (std::size_t i = pos; i < order; ++i) {
            subset[i] = subset[i - 1] + 1;
        }
    }
    return delta;
}

SensingScaling SensingScaling::from_devore(const DeVoreParams& tx, const DeVoreParams& rx) {
    tx.validate();
    rx.validate();
    return SensingScaling{tx.row_weight(), rx.row_weight(), tx.p, rx.p};
}

NormalizedViews normalize_views(const SparseBinaryMatrix& s_b, const SensingScaling& scaling) {
    const std::uint64_t row_weight = scaling.z1 * scaling.z2;
    const std::uint64_t col_weight = scaling.p1 * scaling.p2;
    if (row_weight == 0 || col_weight == 0) {
        throw Error(ErrorKind::InvalidParams, "scaling weights must be positive");
    }
    for (auto w : s_b.row_weights()) {
        if (w != row_weight) {
            throw Error(ErrorKind::InvalidParams, "row weight " + std::to_string(w) + " != z1*z2 = " +
                                                      std::to_string(row_weight));
        }
    }
    for (auto w : s_b.column_weights()) {
        if (w != col_weight) {
            throw Error(ErrorKind::InvalidParams, "column weight " + std::to_string(w) + " != p1*p2 = " +
                                                      std::to_string(col_weight));
        }
    }
    NormalizedViews views;
    views.row_scale = 1.0 / std::sqrt(static_cast<double>(row_weight));
    views.col_scale = 1.0 / std::sqrt(static_cast<double>(col_weight));
    views.solution_scale = std::sqrt(static_cast<double>(col_weight) / static_cast<double>(row_weight));
    return views;
}

CoherenceReport coherence_report(const SparseBinaryMatrix& s_b, const DeVoreParams& tx, const DeVoreParams& rx) {
    tx.validate();
    rx.validate();
    CoherenceReport report;
    report.mu = coherence(s_b);
    report.welch_lower_bound = s_b.n_cols() > s_b.n_rows() ? welch_bound(s_b.n_rows(), s_b.n_cols()) : 0.0;

    // worst factor by r/p, compared exactly
    const bool tx_worse = std::uint64_t{tx.r} * rx.p >= std::uint64_t{rx.r} * tx.p;
    const DeVoreParams& worst = tx_worse ? tx : rx;
    // largest L with (L - 1) r / p < 1, i.e. ceil(p / r)
    report.rip_order_guarantee = (worst.p + worst.r - 1) / worst.r;
    report.rip_constant_bound =
        static_cast<double>((report.rip_order_guarantee - 1) * worst.r) / static_cast<double>(worst.p);
    return report;
}

KroneckerSensing KroneckerSensing::build(const DeVoreParams& tx, const DeVoreParams& rx) {
    KroneckerSensing out;
    out.tx = tx;
    out.rx = rx;
    out.u_b = devore_matrix(tx);
    out.v_b = devore_matrix(rx);
    out.s_b = kron_rows(out.u_b, out.v_b);
    out.scaling = SensingScaling::from_devore(tx, rx);
    out.views = normalize_views(out.s_b, out.scaling);
    return out;
}

}  // namespace kronbeam
