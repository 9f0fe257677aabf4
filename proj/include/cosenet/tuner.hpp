#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "cosenet/matrix.hpp"
#include "cosenet/regressor.hpp"
#include "cosenet/scaling.hpp"

namespace cosenet {

enum class TuningAlgorithm { Genetic, Swarm };

const char* to_string(TuningAlgorithm algo);

struct TuningCandidate {
    double a = 1.0;
    double b = 0.0;
    double omega = 0.0;
    double threshold = 0.5;
    std::size_t throughput = 8;
    double fitness = 1.0;
    TuningAlgorithm algorithm = TuningAlgorithm::Genetic;

    ScalingParams scaling() const { return {a, b, omega}; }
    bool feasible() const noexcept;
};

/// Clamp every gene to [0,1]; if a + b > 1 scale both by 1/(a + b).
void repair(TuningCandidate& c);

using ModelBank = std::map<std::size_t, RidgeModel>;

struct LabeledMatrix {
    CorrelationMatrix matrix;
    SegmentationVector truth;
};

/// Mean WindowDiff of the pipeline output against ground truth.
double evaluate_candidate(const TuningCandidate& c, const ModelBank& bank,
                          const std::vector<LabeledMatrix>& validation);

/// Memoizes evaluate_candidate on genes quantized to a 1e-6 grid. Also
/// records every candidate it was asked to score.
class FitnessCache {
public:
    FitnessCache(const ModelBank& bank, const std::vector<LabeledMatrix>& validation)
        : bank_(&bank), validation_(&validation) {}

    double operator()(const TuningCandidate& c);

    std::size_t evaluations() const noexcept { return evaluations_; }
    std::size_t lookups() const noexcept { return lookups_; }

    /// Invoked with each candidate before scoring.
    std::function<void(const TuningCandidate&)> observer;

private:
    using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::size_t>;

    const ModelBank* bank_;
    const std::vector<LabeledMatrix>* validation_;
    std::map<Key, double> cache_;
    std::size_t evaluations_ = 0;
    std::size_t lookups_ = 0;
};

struct GaConfig {
    std::size_t epochs = 20;
    std::size_t population = 200;
    std::size_t offspring_per_epoch = 100;
    double crossover_rate = 0.5;
    double mutation_variance = 0.1;
    std::uint64_t seed = 0;

    void check() const;
};

struct PsoConfig {
    std::size_t particles = 30;
    double inertia = 0.5;
    double cognition = 1.0;
    double social = 1.0;
    std::size_t iterations = 20;
    std::uint64_t seed = 0;

    void check() const;
};

struct OptimizerResult {
    /// Ascending by fitness.
    std::vector<TuningCandidate> ranked;
    /// Best fitness after initialization, then after each epoch/iteration.
    std::vector<double> best_history;
};

OptimizerResult ga_optimize(const GaConfig& cfg, std::size_t throughput, FitnessCache& fitness);
OptimizerResult pso_optimize(const PsoConfig& cfg, std::size_t throughput, FitnessCache& fitness);

/// Total order used for ranking: fitness, then throughput, then genes.
bool candidate_less(const TuningCandidate& x, const TuningCandidate& y);

struct Selection {
    /// Pooled top-5 per method and throughput, re-scored and sorted.
    std::vector<TuningCandidate> pooled;
    TuningCandidate best;
};

/// Re-scores the top five of every result list and returns the minimum.
/// Throws NoCandidates when every list is empty.
Selection select_best(const std::vector<OptimizerResult>& ga_results,
                      const std::vector<OptimizerResult>& pso_results, FitnessCache& fitness);

}  // namespace cosenet
