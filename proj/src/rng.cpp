#include "ncmaj/rng.hpp"

#include <cmath>

namespace ncmaj {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(RngStream stream) {
    std::uint64_t s = splitmix64(stream.master_seed);
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL * (stream.stream_index + 1)));
    engine_.seed(splitmix64(s));
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u));
    const double a = 2.0 * M_PI * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Rng::cgaussian() {
    // |g|^2 ~ Exp(1), phase uniform
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-std::log1p(-u));
    const double a = 2.0 * M_PI * v;
    return {r * std::cos(a), r * std::sin(a)};
}

int Rng::sign() {
    return (next_u64() >> 63) ? -1 : 1;
}

}  // namespace ncmaj
