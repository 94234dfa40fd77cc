#include "metabbo/agents/policy_net.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

constexpr double kProbFloor = 1e-300;

} // namespace

PolicyNet::PolicyNet(int input_dim, int hidden, std::vector<HeadSpec> heads, Rng& init_rng)
    : input_dim_(input_dim), hidden_(hidden), heads_(std::move(heads)) {
    if (input_dim_ < 1 || hidden_ < 1 || heads_.empty()) {
        throw ConfigError("policy network needs positive layer sizes and at least one head");
    }
    output_ = 0;
    for (const HeadSpec& h : heads_) {
        if (h.kind == HeadKind::categorical) {
            if (h.n < 2) throw ConfigError("categorical head needs at least two choices");
            output_ += h.n;
        } else {
            if (!(h.hi > h.lo)) throw ConfigError("continuous head needs lo < hi");
            output_ += 1;
        }
    }
    params_.resize(static_cast<std::size_t>(hidden_ * input_dim_ + hidden_ +
                                            output_ * hidden_ + output_));
    // Scaled uniform init; biases start at zero.
    const double s1 = 1.0 / std::sqrt(static_cast<double>(input_dim_));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
    std::size_t k = 0;
    for (int i = 0; i < hidden_ * input_dim_; ++i) params_[k++] = init_rng.uniform(-s1, s1);
    for (int i = 0; i < hidden_; ++i) params_[k++] = 0.0;
    for (int i = 0; i < output_ * hidden_; ++i) params_[k++] = init_rng.uniform(-s2, s2);
    for (int i = 0; i < output_; ++i) params_[k++] = 0.0;
}

int PolicyNet::head_offset(std::size_t head_index) const {
    int off = 0;
    for (std::size_t i = 0; i < head_index; ++i) {
        off += heads_[i].kind == HeadKind::categorical ? heads_[i].n : 1;
    }
    return off;
}

PolicyNet::Forward PolicyNet::forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_dim_) {
        throw ConfigError("policy input has wrong dimension");
    }
    Forward fwd;
    fwd.h.resize(static_cast<std::size_t>(hidden_));
    fwd.o.resize(static_cast<std::size_t>(output_));
    const double* w1 = params_.data();
    const double* b1 = w1 + hidden_ * input_dim_;
    const double* w2 = b1 + hidden_;
    const double* b2 = w2 + output_ * hidden_;
    for (int j = 0; j < hidden_; ++j) {
        double acc = b1[j];
        for (int i = 0; i < input_dim_; ++i) acc += w1[j * input_dim_ + i] * input[static_cast<std::size_t>(i)];
        fwd.h[static_cast<std::size_t>(j)] = std::tanh(acc);
    }
    for (int r = 0; r < output_; ++r) {
        double acc = b2[r];
        for (int j = 0; j < hidden_; ++j) acc += w2[r * hidden_ + j] * fwd.h[static_cast<std::size_t>(j)];
        fwd.o[static_cast<std::size_t>(r)] = acc;
    }
    fwd.head_params.resize(heads_.size());
    for (std::size_t hi = 0; hi < heads_.size(); ++hi) {
        const HeadSpec& head = heads_[hi];
        const int off = head_offset(hi);
        if (head.kind == HeadKind::categorical) {
            std::vector<double>& p = fwd.head_params[hi];
            p.resize(static_cast<std::size_t>(head.n));
            double mx = fwd.o[static_cast<std::size_t>(off)];
            for (int i = 1; i < head.n; ++i) mx = std::max(mx, fwd.o[static_cast<std::size_t>(off + i)]);
            double z = 0.0;
            for (int i = 0; i < head.n; ++i) {
                p[static_cast<std::size_t>(i)] = std::exp(fwd.o[static_cast<std::size_t>(off + i)] - mx);
                z += p[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < head.n; ++i) p[static_cast<std::size_t>(i)] /= z;
        } else {
            fwd.head_params[hi] = {sigmoid(fwd.o[static_cast<std::size_t>(off)])};
        }
    }
    return fwd;
}

std::vector<double> PolicyNet::sample(const Forward& fwd, Rng& rng) const {
    std::vector<double> values(heads_.size());
    for (std::size_t hi = 0; hi < heads_.size(); ++hi) {
        const HeadSpec& head = heads_[hi];
        if (head.kind == HeadKind::categorical) {
            const std::vector<double>& p = fwd.head_params[hi];
            const double u = rng.uniform01();
            double acc = 0.0;
            int chosen = head.n - 1;
            for (int i = 0; i < head.n; ++i) {
                acc += p[static_cast<std::size_t>(i)];
                if (u < acc) {
                    chosen = i;
                    break;
                }
            }
            values[hi] = static_cast<double>(chosen);
        } else {
            values[hi] = fwd.head_params[hi][0] + sigma_ * rng.normal();
        }
    }
    return values;
}

std::vector<double> PolicyNet::mean_values(const Forward& fwd) const {
    std::vector<double> values(heads_.size());
    for (std::size_t hi = 0; hi < heads_.size(); ++hi) {
        if (heads_[hi].kind == HeadKind::categorical) {
            const std::vector<double>& p = fwd.head_params[hi];
            values[hi] = static_cast<double>(
                std::max_element(p.begin(), p.end()) - p.begin());
        } else {
            values[hi] = fwd.head_params[hi][0];
        }
    }
    return values;
}

double PolicyNet::scale_value(const HeadSpec& head, double value01) {
    return head.lo + (head.hi - head.lo) * value01;
}

double PolicyNet::log_prob(const Forward& fwd, std::span<const double> values) const {
    double lp = 0.0;
    for (std::size_t hi = 0; hi < heads_.size(); ++hi) {
        const HeadSpec& head = heads_[hi];
        if (head.kind == HeadKind::categorical) {
            const int k = static_cast<int>(values[hi]);
            lp += std::log(std::max(fwd.head_params[hi][static_cast<std::size_t>(k)], kProbFloor));
        } else {
            const double z = (values[hi] - fwd.head_params[hi][0]) / sigma_;
            lp += -0.5 * z * z - std::log(sigma_) - 0.5 * std::log(2.0 * M_PI);
        }
    }
    return lp;
}

std::vector<double> PolicyNet::grad_log_prob(std::span<const double> input,
                                             std::span<const double> values) const {
    const Forward fwd = forward(input);
    // d log pi / d o for every raw output.
    std::vector<double> go(static_cast<std::size_t>(output_), 0.0);
    for (std::size_t hi = 0; hi < heads_.size(); ++hi) {
        const HeadSpec& head = heads_[hi];
        const int off = head_offset(hi);
        if (head.kind == HeadKind::categorical) {
            const int k = static_cast<int>(values[hi]);
            for (int i = 0; i < head.n; ++i) {
                go[static_cast<std::size_t>(off + i)] =
                    (i == k ? 1.0 : 0.0) - fwd.head_params[hi][static_cast<std::size_t>(i)];
            }
        } else {
            const double m = fwd.head_params[hi][0];
            // d/dm of the Gaussian log-density, chained through the sigmoid.
            go[static_cast<std::size_t>(off)] = (values[hi] - m) / (sigma_ * sigma_) * m * (1.0 - m);
        }
    }

    std::vector<double> grad(params_.size(), 0.0);
    double* gw1 = grad.data();
    double* gb1 = gw1 + hidden_ * input_dim_;
    double* gw2 = gb1 + hidden_;
    double* gb2 = gw2 + output_ * hidden_;
    const double* w2 = params_.data() + hidden_ * input_dim_ + hidden_;

    for (int r = 0; r < output_; ++r) {
        gb2[r] = go[static_cast<std::size_t>(r)];
        for (int j = 0; j < hidden_; ++j) {
            gw2[r * hidden_ + j] = go[static_cast<std::size_t>(r)] * fwd.h[static_cast<std::size_t>(j)];
        }
    }
    for (int j = 0; j < hidden_; ++j) {
        double gh = 0.0;
        for (int r = 0; r < output_; ++r) gh += w2[r * hidden_ + j] * go[static_cast<std::size_t>(r)];
        const double hj = fwd.h[static_cast<std::size_t>(j)];
        const double gpre = gh * (1.0 - hj * hj);
        gb1[j] = gpre;
        for (int i = 0; i < input_dim_; ++i) {
            gw1[j * input_dim_ + i] = gpre * input[static_cast<std::size_t>(i)];
        }
    }
    return grad;
}

} // namespace metabbo
