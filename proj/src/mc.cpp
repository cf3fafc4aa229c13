#include "ncmaj/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace ncmaj {

long long mc_chunk_size(long long samples) {
    const long long target = (samples + 63) / 64;
    return std::clamp<long long>(target, 1, 1024);
}

long long mc_stream_span(long long samples) {
    return samples;
}

int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

MCEstimate run_mc(const std::string& label, long long samples, RngStream base,
                  const std::function<double(Rng&)>& fn, int workers) {
    if (workers <= 0) workers = default_workers();
    const long long kChunk = mc_chunk_size(samples);
    const long long chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Welford> acc(static_cast<std::size_t>(chunks));

    std::atomic<long long> next{0};
    auto work = [&]() {
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= chunks) break;
            const long long lo = c * kChunk;
            const long long hi = std::min(samples, lo + kChunk);
            Welford w;
            for (long long i = lo; i < hi; ++i) {
                Rng rng(RngStream{base.master_seed,
                                  base.stream_index + static_cast<std::uint64_t>(i)});
                w.push(fn(rng));
            }
            acc[static_cast<std::size_t>(c)] = w;
        }
    };

    if (workers == 1 || chunks == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int nthreads = static_cast<int>(std::min<long long>(workers, chunks));
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    Welford total;
    for (const auto& w : acc) total.merge(w);

    MCEstimate est;
    est.mean = total.mean;
    est.stderr_ = total.stderr_of_mean();
    est.samples = total.n;
    est.master_seed = base.master_seed;
    est.label = label;
    return est;
}

MatrixMeanResult run_mc_matrix(long long samples, RngStream base, int rows, int cols,
                               const std::function<Eigen::MatrixXcd(Rng&)>& fn, int workers) {
    if (workers <= 0) workers = default_workers();
    const long long kChunk = mc_chunk_size(samples);
    const long long chunks = (samples + kChunk - 1) / kChunk;

    struct Acc {
        long long n = 0;
        Eigen::MatrixXcd mean;
        Eigen::MatrixXd m2;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(chunks));

    std::atomic<long long> next{0};
    auto work = [&]() {
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= chunks) break;
            const long long lo = c * kChunk;
            const long long hi = std::min(samples, lo + kChunk);
            Acc a;
            a.mean = Eigen::MatrixXcd::Zero(rows, cols);
            a.m2 = Eigen::MatrixXd::Zero(rows, cols);
            for (long long i = lo; i < hi; ++i) {
                Rng rng(RngStream{base.master_seed,
                                  base.stream_index + static_cast<std::uint64_t>(i)});
                const Eigen::MatrixXcd x = fn(rng);
                ++a.n;
                const Eigen::MatrixXcd d = x - a.mean;
                a.mean += d / static_cast<double>(a.n);
                a.m2 += (d.conjugate().cwiseProduct(x - a.mean)).real();
            }
            acc[static_cast<std::size_t>(c)] = std::move(a);
        }
    };

    if (workers == 1 || chunks == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int nthreads = static_cast<int>(std::min<long long>(workers, chunks));
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    Acc total;
    total.mean = Eigen::MatrixXcd::Zero(rows, cols);
    total.m2 = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& a : acc) {
        if (a.n == 0) continue;
        if (total.n == 0) {
            total = a;
            continue;
        }
        const Eigen::MatrixXcd d = a.mean - total.mean;
        const double nn = static_cast<double>(total.n + a.n);
        total.m2 += a.m2 + d.cwiseAbs2() * (static_cast<double>(total.n) * static_cast<double>(a.n) / nn);
        total.mean += d * (static_cast<double>(a.n) / nn);
        total.n += a.n;
    }

    MatrixMeanResult res;
    res.mean = total.mean;
    res.samples = total.n;
    if (total.n > 1) {
        const double denom = static_cast<double>(total.n - 1) * static_cast<double>(total.n);
        res.entry_stderr = (total.m2 / denom).cwiseSqrt();
    } else {
        res.entry_stderr = Eigen::MatrixXd::Zero(rows, cols);
    }
    return res;
}

}  // namespace ncmaj
