#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace csdsim {

/// One deterministic random stream. All samplers are implemented on top of
/// raw 64-bit output of mt19937_64 so that sequences are bit-stable across
/// platforms and standard libraries.
class RandomStream {
public:
    RandomStream() : gen_(0) {}
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    bool bernoulli(double p);
    /// Exponential inter-arrival time for a process with the given rate (>0).
    double exponential(double rate);
    /// Triangular distribution via inverse CDF; requires min <= mode <= max.
    double triangular(double min, double mode, double max);
    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double gamma(double shape);
    /// Beta(alpha, beta) in [0, 1].
    double beta(double alpha, double beta);
    /// Beta rescaled to [min, max].
    double beta_scaled(double min, double max, double alpha, double beta);
    /// PERT distribution: Beta shaped by (min, mode, max), mean (min+4*mode+max)/6.
    double pert(double min, double mode, double max);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    std::uint64_t raw() { return gen_(); }

private:
    double normal();
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Named substreams derived from one master seed. Draws on one stream never
/// perturb another, so reordering unrelated events leaves unrelated draws
/// unchanged.
struct RngStreams {
    RandomStream task_arrivals;
    RandomStream worker_arrivals;
    RandomStream durations;
    RandomStream decisions;
    RandomStream scores;
    RandomStream similarity;
    RandomStream experience;
    RandomStream reliability;

    static RngStreams from_seed(std::uint64_t master_seed);
    /// Streams for replication `index` of a replication study.
    static RngStreams for_replication(std::uint64_t master_seed, std::uint64_t index);
};

/// splitmix64 step; used to derive substream seeds and replication seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Stable 64-bit hash of a name (FNV-1a), for keyed substream derivation.
std::uint64_t hash_name(std::string_view name);

} // namespace csdsim
