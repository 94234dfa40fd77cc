#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metabbo/testsuite/evaluator.hpp"
#include "metabbo/util/mat.hpp"
#include "metabbo/util/rng.hpp"

namespace metabbo {

enum class DeStrategy { rand1, best1, current_to_best1 };

std::string de_strategy_name(DeStrategy s);

enum class BackboneKind { de, pso };

std::string backbone_name(BackboneKind kind);
// Throws ConfigError for anything but "de" / "pso".
BackboneKind backbone_from_name(const std::string& name);

struct BackboneSpec {
    BackboneKind kind = BackboneKind::de;
    int pop_size = 50;
};

// One meta-level decision: the per-generation configuration handed to the
// low-level optimizer. Tagged by backbone kind.
struct OptimizerAction {
    BackboneKind kind = BackboneKind::de;
    DeStrategy strategy = DeStrategy::rand1;
    double F = 0.5;
    double CR = 0.9;
    double w = 0.7298;
    double c1 = 1.49618;
    double c2 = 1.49618;

    static OptimizerAction de(DeStrategy s, double F, double CR) {
        OptimizerAction a;
        a.kind = BackboneKind::de;
        a.strategy = s;
        a.F = F;
        a.CR = CR;
        return a;
    }
    static OptimizerAction pso(double w, double c1, double c2) {
        OptimizerAction a;
        a.kind = BackboneKind::pso;
        a.w = w;
        a.c1 = c1;
        a.c2 = c2;
        return a;
    }
};

// Coefficients clamped into their admissible ranges; out-of-range meta
// actions are repaired here rather than rejected.
OptimizerAction clamp_action(OptimizerAction a);

// Shared population state: row i is individual i; cost is the observable
// (possibly noisy) value selection works with, raw the noiseless value.
struct Population {
    Mat x;
    std::vector<double> cost;
    std::vector<double> raw;

    int size() const { return x.rows; }
    int dim() const { return x.cols; }
    // Lowest cost, lowest index on ties.
    int best_index() const {
        int b = 0;
        for (int i = 1; i < size(); ++i)
            if (cost[static_cast<std::size_t>(i)] < cost[static_cast<std::size_t>(b)]) b = i;
        return b;
    }
};

// Uniform initialization inside the problem's init bounds; consumes pop_size
// evaluations.
Population init_population(const Problem& p, int pop_size, Evaluator& ev, Rng& rng);

// Reflect v into [lo, hi] (falls back to clamping after repeated reflection
// for far-out points).
double reflect_into(double v, double lo, double hi);

} // namespace metabbo
