#pragma once

#include <span>
#include <vector>

#include "metabbo/util/rng.hpp"

namespace metabbo {

enum class HeadKind { categorical, continuous };

// One output head of the policy. Categorical heads emit a softmax over n
// choices; continuous heads emit the sigmoid-squashed mean of a Gaussian
// with fixed sigma in squash space, rescaled to [lo, hi].
struct HeadSpec {
    HeadKind kind = HeadKind::continuous;
    int n = 0;          // categorical arity
    double lo = 0.0;    // continuous range
    double hi = 1.0;

    static HeadSpec categorical(int n) { return {HeadKind::categorical, n, 0.0, 0.0}; }
    static HeadSpec continuous(double lo, double hi) { return {HeadKind::continuous, 0, lo, hi}; }
};

// Single-hidden-layer tanh MLP with per-head stochastic outputs and an
// analytic score-function gradient. Parameters live in one flat vector
// (W1 row-major, b1, W2 row-major, b2) so optimizers and checkpoints can
// treat the network as a plain array.
class PolicyNet {
public:
    PolicyNet(int input_dim, int hidden, std::vector<HeadSpec> heads, Rng& init_rng);

    int input_dim() const { return input_dim_; }
    int hidden_dim() const { return hidden_; }
    int output_dim() const { return output_; }
    const std::vector<HeadSpec>& heads() const { return heads_; }
    double sigma() const { return sigma_; }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    struct Forward {
        std::vector<double> h;                            // hidden activations
        std::vector<double> o;                            // raw head outputs
        std::vector<std::vector<double>> head_params;     // probs / squashed means
    };
    Forward forward(std::span<const double> input) const;

    // One value per head: categorical -> chosen index; continuous -> the
    // Gaussian draw in squash space (deliberately unclamped; the consumer
    // clamps, the log-density is taken at the raw draw).
    std::vector<double> sample(const Forward& fwd, Rng& rng) const;
    // Exploitation: argmax index / squashed mean.
    std::vector<double> mean_values(const Forward& fwd) const;
    // Continuous head value rescaled from squash space to [lo, hi].
    static double scale_value(const HeadSpec& head, double value01);

    double log_prob(const Forward& fwd, std::span<const double> values) const;
    // d log pi(values | input) / d params, flat, same layout as params().
    std::vector<double> grad_log_prob(std::span<const double> input,
                                      std::span<const double> values) const;

private:
    int head_offset(std::size_t head_index) const;

    int input_dim_;
    int hidden_;
    int output_;
    std::vector<HeadSpec> heads_;
    double sigma_ = 0.1;
    std::vector<double> params_;
};

} // namespace metabbo
