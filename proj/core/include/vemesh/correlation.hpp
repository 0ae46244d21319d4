#pragma once

#include <string>
#include <vector>

#include "vemesh/metrics.hpp"
#include "vemesh/performance.hpp"

namespace vemesh {

struct UndefinedCorrelationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Average (fractional) ranks; ties get the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation: Pearson correlation of the average ranks.
/// Throws UndefinedCorrelationError when either vector is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// One observation of the study: the aggregated mesh metrics of a mesh
/// together with the solver performance on it.
struct StudyRun {
    std::vector<MeshMetric> metrics;
    SolveReport report;
};

struct CorrelationCell {
    MetricId metric;
    Aggregation aggregation;
    std::string index;  // performance index name, e.g. "P6"
    double value;
    bool defined;
};

struct CorrelationMatrix {
    std::vector<CorrelationCell> cells;
    std::vector<const CorrelationCell*> high() const;  // |rho| > 0.9
    std::vector<const CorrelationCell*> low() const;   // |rho| < 0.03
};

/// Full (metric x aggregation) x performance-index Spearman matrix over
/// a set of runs (all runs must share k and test case).
CorrelationMatrix correlation_study(const std::vector<StudyRun>& runs);

double performance_index_value(const SolveReport& report, const std::string& index);
std::vector<std::string> performance_index_names();

}  // namespace vemesh
