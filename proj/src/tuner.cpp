#include "cosenet/tuner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <tuple>

#include "cosenet/error.hpp"
#include "cosenet/metrics.hpp"
#include "cosenet/pipeline.hpp"
#include "cosenet/synthgen.hpp"

namespace cosenet {

const char* to_string(TuningAlgorithm algo) {
    return algo == TuningAlgorithm::Genetic ? "Genetic" : "PSO";
}

bool TuningCandidate::feasible() const noexcept {
    const auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    const bool known_t = throughput == 8 || throughput == 16 || throughput == 32;
    return unit(a) && unit(b) && unit(omega) && unit(threshold) && a + b <= 1.0 && known_t;
}

void repair(TuningCandidate& c) {
    c.a = std::clamp(c.a, 0.0, 1.0);
    c.b = std::clamp(c.b, 0.0, 1.0);
    c.omega = std::clamp(c.omega, 0.0, 1.0);
    c.threshold = std::clamp(c.threshold, 0.0, 1.0);
    const double sum = c.a + c.b;
    if (sum > 1.0) {
        c.a /= sum;
        c.b /= sum;
        // Division can still leave the sum one ulp above 1.
        if (c.a + c.b > 1.0) c.b = 1.0 - c.a;
    }
}

double evaluate_candidate(const TuningCandidate& c, const ModelBank& bank,
                          const std::vector<LabeledMatrix>& validation) {
    const auto it = bank.find(c.throughput);
    if (it == bank.end()) {
        throw Error(ErrorCode::MissingModel,
                    "no model for throughput " + std::to_string(c.throughput));
    }
    if (validation.empty()) {
        throw Error(ErrorCode::InvalidArgument, "validation set is empty");
    }
    const PipelineConfig cfg{c.scaling(), MergeConfig{c.threshold}, &it->second};
    double sum = 0.0;
    for (const auto& sample : validation) {
        if (sample.matrix.size() < 2) continue;
        const auto result = segment(sample.matrix, cfg);
        sum += window_diff(sample.truth, result.segmentation);
    }
    return sum / static_cast<double>(validation.size());
}

double FitnessCache::operator()(const TuningCandidate& c) {
    if (observer) observer(c);
    ++lookups_;
    const auto q = [](double x) { return std::llround(x * 1e6); };
    const Key key{q(c.a), q(c.b), q(c.omega), q(c.threshold), c.throughput};
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double fitness = evaluate_candidate(c, *bank_, *validation_);
    ++evaluations_;
    cache_.emplace(key, fitness);
    return fitness;
}

void GaConfig::check() const {
    if (population == 0 || offspring_per_epoch > population) {
        throw Error(ErrorCode::InvalidArgument, "GA population must be >= offspring count and > 0");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) || !(mutation_variance >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "GA rates out of range");
    }
}

void PsoConfig::check() const {
    if (particles == 0) throw Error(ErrorCode::InvalidArgument, "PSO needs at least one particle");
    if (!(inertia >= 0.0 && cognition >= 0.0 && social >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "PSO coefficients must be non-negative");
    }
}

bool candidate_less(const TuningCandidate& x, const TuningCandidate& y) {
    return std::tie(x.fitness, x.throughput, x.a, x.b, x.omega, x.threshold, x.algorithm) <
           std::tie(y.fitness, y.throughput, y.a, y.b, y.omega, y.threshold, y.algorithm);
}

namespace {

constexpr std::size_t kGenes = 4;

double& gene(TuningCandidate& c, std::size_t i) {
    switch (i) {
        case 0: return c.a;
        case 1: return c.b;
        case 2: return c.omega;
        default: return c.threshold;
    }
}

double gene(const TuningCandidate& c, std::size_t i) {
    return gene(const_cast<TuningCandidate&>(c), i);
}

Rng seeded(std::uint64_t seed, std::size_t throughput, TuningAlgorithm algo) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(throughput), static_cast<std::uint32_t>(algo)};
    return Rng(seq);
}

TuningCandidate random_candidate(std::size_t throughput, TuningAlgorithm algo, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TuningCandidate c;
    c.throughput = throughput;
    c.algorithm = algo;
    for (std::size_t g = 0; g < kGenes; ++g) gene(c, g) = unit(rng);
    repair(c);
    return c;
}

void rank(std::vector<TuningCandidate>& pop) {
    std::sort(pop.begin(), pop.end(), candidate_less);
}

}  // namespace

OptimizerResult ga_optimize(const GaConfig& cfg, std::size_t throughput, FitnessCache& fitness) {
    cfg.check();
    Rng rng = seeded(cfg.seed, throughput, TuningAlgorithm::Genetic);

    std::vector<TuningCandidate> pop;
    pop.reserve(cfg.population + cfg.offspring_per_epoch);
    for (std::size_t i = 0; i < cfg.population; ++i) {
        pop.push_back(random_candidate(throughput, TuningAlgorithm::Genetic, rng));
        pop.back().fitness = fitness(pop.back());
    }
    rank(pop);

    OptimizerResult result;
    result.best_history.push_back(pop.front().fitness);

    // Linear rank weights: the best individual is P times likelier than the worst.
    std::vector<double> weights(cfg.population);
    for (std::size_t r = 0; r < cfg.population; ++r) {
        weights[r] = static_cast<double>(cfg.population - r);
    }
    std::discrete_distribution<std::size_t> select(weights.begin(), weights.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> mutation(0.0, std::sqrt(cfg.mutation_variance));

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<TuningCandidate> offspring;
        offspring.reserve(cfg.offspring_per_epoch);
        for (std::size_t k = 0; k < cfg.offspring_per_epoch; ++k) {
            const TuningCandidate& p1 = pop[select(rng)];
            const TuningCandidate& p2 = pop[select(rng)];
            TuningCandidate child = p1;
            for (std::size_t g = 0; g < kGenes; ++g) {
                const bool from_first = unit(rng) < cfg.crossover_rate;
                gene(child, g) = from_first ? gene(p1, g) : gene(p2, g);
                if (cfg.mutation_variance > 0.0) gene(child, g) += mutation(rng);
            }
            repair(child);
            child.fitness = fitness(child);
            offspring.push_back(child);
        }
        pop.insert(pop.end(), offspring.begin(), offspring.end());
        rank(pop);
        pop.resize(cfg.population);
        result.best_history.push_back(pop.front().fitness);
    }
    result.ranked = std::move(pop);
    return result;
}

OptimizerResult pso_optimize(const PsoConfig& cfg, std::size_t throughput, FitnessCache& fitness) {
    cfg.check();
    Rng rng = seeded(cfg.seed, throughput, TuningAlgorithm::Swarm);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<TuningCandidate> position;
    position.reserve(cfg.particles);
    for (std::size_t i = 0; i < cfg.particles; ++i) {
        position.push_back(random_candidate(throughput, TuningAlgorithm::Swarm, rng));
        position.back().fitness = fitness(position.back());
    }
    std::vector<std::array<double, kGenes>> velocity(cfg.particles, std::array<double, kGenes>{});
    std::vector<TuningCandidate> personal_best = position;
    TuningCandidate global_best =
        *std::min_element(personal_best.begin(), personal_best.end(), candidate_less);

    OptimizerResult result;
    result.best_history.push_back(global_best.fitness);

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        for (std::size_t i = 0; i < cfg.particles; ++i) {
            TuningCandidate& x = position[i];
            for (std::size_t g = 0; g < kGenes; ++g) {
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                double& v = velocity[i][g];
                v = cfg.inertia * v +
                    cfg.cognition * r1 * (gene(personal_best[i], g) - gene(x, g)) +
                    cfg.social * r2 * (gene(global_best, g) - gene(x, g));
                gene(x, g) += v;
            }
            repair(x);
            x.fitness = fitness(x);
            if (x.fitness < personal_best[i].fitness) personal_best[i] = x;
        }
        for (const auto& pb : personal_best) {
            if (candidate_less(pb, global_best)) global_best = pb;
        }
        result.best_history.push_back(global_best.fitness);
    }
    rank(personal_best);
    result.ranked = std::move(personal_best);
    return result;
}

Selection select_best(const std::vector<OptimizerResult>& ga_results,
                      const std::vector<OptimizerResult>& pso_results, FitnessCache& fitness) {
    constexpr std::size_t kTopPerRun = 5;
    Selection sel;
    for (const auto* group : {&ga_results, &pso_results}) {
        for (const auto& run : *group) {
            const std::size_t take = std::min(kTopPerRun, run.ranked.size());
            for (std::size_t i = 0; i < take; ++i) {
                TuningCandidate c = run.ranked[i];
                c.fitness = fitness(c);
                sel.pooled.push_back(c);
            }
        }
    }
    if (sel.pooled.empty()) {
        throw Error(ErrorCode::NoCandidates, "no tuning candidates to select from");
    }
    rank(sel.pooled);
    sel.best = sel.pooled.front();
    return sel;
}

}  // namespace cosenet
