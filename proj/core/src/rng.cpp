#include "csdsim/rng.hpp"

#include "csdsim/errors.hpp"

#include <cmath>

namespace csdsim {

double RandomStream::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

bool RandomStream::bernoulli(double p) {
    return uniform() < p;
}

double RandomStream::exponential(double rate) {
    if (rate <= 0.0)
        throw DomainError("exponential: rate must be > 0");
    return -std::log(1.0 - uniform()) / rate;
}

double RandomStream::triangular(double min, double mode, double max) {
    if (!(min <= mode && mode <= max) || min == max)
        throw DomainError("triangular: require min <= mode <= max and min < max");
    double u = uniform();
    double fc = (mode - min) / (max - min);
    if (u < fc)
        return min + std::sqrt(u * (max - min) * (mode - min));
    return max - std::sqrt((1.0 - u) * (max - min) * (max - mode));
}

double RandomStream::normal() {
    // Marsaglia polar method; rejection loop is deterministic per stream.
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

double RandomStream::gamma(double shape) {
    if (shape <= 0.0)
        throw DomainError("gamma: shape must be > 0");
    if (shape < 1.0) {
        double u = uniform();
        while (u == 0.0)
            u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

double RandomStream::beta(double alpha, double beta) {
    double a = gamma(alpha);
    double b = gamma(beta);
    if (a + b == 0.0)
        return 0.0;
    return a / (a + b);
}

double RandomStream::beta_scaled(double min, double max, double alpha, double b) {
    return min + (max - min) * beta(alpha, b);
}

double RandomStream::pert(double min, double mode, double max) {
    if (!(min <= mode && mode <= max) || min == max)
        throw DomainError("pert: require min <= mode <= max and min < max");
    double alpha = 1.0 + 4.0 * (mode - min) / (max - min);
    double b = 1.0 + 4.0 * (max - mode) / (max - min);
    return beta_scaled(min, max, alpha, b);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    if (n == 0)
        throw DomainError("below: n must be > 0");
    // Rejection sampling avoids modulo bias; deterministic per stream.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % n;
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_name(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStreams RngStreams::from_seed(std::uint64_t master_seed) {
    auto derive = [master_seed](std::string_view name) {
        return RandomStream(mix_seed(master_seed ^ hash_name(name)));
    };
    RngStreams s;
    s.task_arrivals = derive("task_arrivals");
    s.worker_arrivals = derive("worker_arrivals");
    s.durations = derive("durations");
    s.decisions = derive("decisions");
    s.scores = derive("scores");
    s.similarity = derive("similarity");
    s.experience = derive("experience");
    s.reliability = derive("reliability");
    return s;
}

RngStreams RngStreams::for_replication(std::uint64_t master_seed, std::uint64_t index) {
    return from_seed(mix_seed(master_seed + 0x632be59bd9b4e019ULL * (index + 1)));
}

} // namespace csdsim
