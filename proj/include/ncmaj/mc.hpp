#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

#include "ncmaj/rng.hpp"

namespace ncmaj {

// Sample mean with standard error and the seed that reproduces it.
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
    long long samples = 0;
    std::uint64_t master_seed = 0;
    std::string label;
};

// One-pass mean/variance accumulator with deterministic pairwise merge.
struct Welford {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double d = o.mean - mean;
        const double nn = static_cast<double>(n + o.n);
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n)) / nn;
        mean += d * static_cast<double>(o.n) / nn;
        n += o.n;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_of_mean() const {
        return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Sample i draws from its own stream (base_stream + i), so values are a pure
// function of (seed, base, samples): independent of the worker count, and
// runs sharing a base see identical per-sample base draws (common random
// numbers across parameter sweeps). Chunks only partition work for threading.
long long mc_chunk_size(long long samples);
long long mc_stream_span(long long samples);  // streams consumed by one run

// Runs fn once per sample on worker threads; chunk accumulators are merged in
// chunk order.
MCEstimate run_mc(const std::string& label, long long samples, RngStream base,
                  const std::function<double(Rng&)>& fn, int workers = 0);

// Matrix-valued mean with entrywise standard errors, same chunking scheme.
struct MatrixMeanResult {
    Eigen::MatrixXcd mean;
    Eigen::MatrixXd entry_stderr;
    long long samples = 0;
};

MatrixMeanResult run_mc_matrix(long long samples, RngStream base, int rows, int cols,
                               const std::function<Eigen::MatrixXcd(Rng&)>& fn,
                               int workers = 0);

int default_workers();

}  // namespace ncmaj
