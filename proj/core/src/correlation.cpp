#include "vemesh/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vemesh {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("spearman: need at least 3 samples");
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedCorrelationError("spearman: constant input vector");
    return sxy / std::sqrt(sxx * syy);
}

double performance_index_value(const SolveReport& r, const std::string& index) {
    if (index == "P1") return r.rel_h1_energy;
    if (index == "P2") return r.rel_linf_dofs;
    if (index == "P3") return r.rel_l2;
    if (index == "P4") return r.cond1_stiffness;
    if (index == "P5") return r.cond1_preconditioned;
    if (index == "P6") return r.err_const;
    if (index == "P7") return r.aubin_nitsche;
    if (index == "P8") return r.precond_effectiveness;
    throw std::invalid_argument("unknown performance index '" + index + "'");
}

std::vector<std::string> performance_index_names() {
    return {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"};
}

CorrelationMatrix correlation_study(const std::vector<StudyRun>& runs) {
    if (runs.size() < 10)
        throw std::invalid_argument("correlation_study: need at least 10 runs");
    CorrelationMatrix matrix;
    const std::vector<std::string> indexes = performance_index_names();
    std::vector<double> x(runs.size()), y(runs.size());
    for (MetricId metric : kAllMetrics) {
        for (Aggregation agg : kAllAggregations) {
            for (std::size_t r = 0; r < runs.size(); ++r) {
                const auto& ms = runs[r].metrics;
                const auto it = std::find_if(ms.begin(), ms.end(), [&](const MeshMetric& m) {
                    return m.metric == metric && m.aggregation == agg;
                });
                if (it == ms.end())
                    throw std::invalid_argument("correlation_study: missing mesh metric");
                x[r] = it->value;
            }
            for (const std::string& index : indexes) {
                for (std::size_t r = 0; r < runs.size(); ++r)
                    y[r] = performance_index_value(runs[r].report, index);
                CorrelationCell cell{metric, agg, index, 0.0, true};
                try {
                    cell.value = spearman(x, y);
                } catch (const UndefinedCorrelationError&) {
                    cell.defined = false;
                }
                matrix.cells.push_back(cell);
            }
        }
    }
    if (std::none_of(matrix.cells.begin(), matrix.cells.end(),
                     [](const CorrelationCell& c) { return c.defined; }))
        throw UndefinedCorrelationError(
            "correlation_study: all columns are constant (identical runs?)");
    return matrix;
}

std::vector<const CorrelationCell*> CorrelationMatrix::high() const {
    std::vector<const CorrelationCell*> out;
    for (const auto& c : cells)
        if (c.defined && std::abs(c.value) > 0.9) out.push_back(&c);
    return out;
}

std::vector<const CorrelationCell*> CorrelationMatrix::low() const {
    std::vector<const CorrelationCell*> out;
    for (const auto& c : cells)
        if (c.defined && std::abs(c.value) < 0.03) out.push_back(&c);
    return out;
}

}  // namespace vemesh
