#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wp4 {

struct BenchRow {
    std::size_t n = 0;
    std::string method;  // "wp4" or "dense"
    double median_ms = 0.0;
    std::size_t nodes_peak = 0;  // peak spline nodes (wp4) or grid cells (dense)
};

struct BenchOptions {
    std::vector<std::size_t> sizes;     // signal lengths N
    std::size_t dense_max_n = 8192;     // dense N x N runs only up to this size
    int searches_per_size = 3;
    unsigned seed = 1234;
};

/// One coefficient search per repetition on a synthetic multi-tone signal;
/// wall-clock medians per size for the spline-sequence search and the dense
/// N x N grid search.
std::vector<BenchRow> run_bench(const BenchOptions& opt);

/// CSV with the fixed header "N,method,median_ms,nodes_peak".
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Least-squares slope of log(median_ms) against log(N) for one method.
double bench_loglog_slope(const std::vector<BenchRow>& rows, const std::string& method);

}  // namespace wp4
