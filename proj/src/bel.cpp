#include "ozs/bel.hpp"

#include "ozs/errors.hpp"
#include "ozs/kernels.hpp"
#include "ozs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ozs {

void BelConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("bel: alpha must be > 0");
    if (!(beta > 0.0)) throw ConfigError("bel: beta must be > 0");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("bel: gamma must be in [0,1)");
    if (input_dim < 1) throw ConfigError("bel: input_dim must be >= 1");
}

BelModel bel_init(const BelConfig& config) {
    config.validate();
    BelModel m;
    m.config = config;
    m.v.assign(config.input_dim + 1, 0.0);
    m.w.assign(config.input_dim, 0.0);
    return m;
}

namespace {

void check_input(const BelModel& model, std::span<const double> p) {
    if (p.size() != model.config.input_dim)
        throw ContractError("bel: input length " + std::to_string(p.size()) +
                            " != input_dim " + std::to_string(model.config.input_dim));
    for (double x : p)
        if (!std::isfinite(x)) throw RejectedInputError("bel: non-finite input");
}

} // namespace

BelForward bel_forward(const BelModel& model, std::span<const double> p) {
    check_input(model, p);
    const std::size_t m = model.config.input_dim;
    double pmax = kern::max_value(p);
    BelForward out;
    out.ea = kern::dot(std::span(model.v).first(m), p) + model.v[m] * pmax;
    out.eo = kern::dot(model.w, p);
    out.e = out.ea - out.eo;
    return out;
}

void bel_train_step(BelModel& model, std::span<const double> p, double t) {
    check_input(model, p);
    if (!std::isfinite(t)) throw RejectedInputError("bel: non-finite target");

    const auto fwd = bel_forward(model, p); // pre-update activations
    const std::size_t m = model.config.input_dim;
    const double alpha = model.config.alpha;
    const double beta = model.config.beta;
    const double gamma = model.config.gamma;
    const double amygdala_err = std::max(t - fwd.ea, 0.0);
    const double orbito_err = fwd.e - t;
    const double pmax = kern::max_value(p);

    for (std::size_t j = 0; j < m; ++j) {
        model.v[j] = (1.0 - gamma) * model.v[j] + alpha * amygdala_err * p[j];
        model.w[j] += beta * orbito_err * p[j];
    }
    model.v[m] = (1.0 - gamma) * model.v[m] + alpha * amygdala_err * pmax;
}

BelModel bel_fit(const PatternSet& patterns, const BelConfig& config) {
    config.validate();
    if (!patterns.has_splits()) throw ConfigError("bel_fit: patterns lack split labels");
    auto train = patterns.indices_of(Split::train);
    if (train.empty()) throw ConfigError("bel_fit: empty training split");
    for (std::size_t i : train)
        if (patterns.inputs[i].size() != config.input_dim)
            throw ContractError("bel_fit: pattern length != input_dim");

    auto val = patterns.indices_of(Split::validation);
    std::vector<double> val_targets;
    val_targets.reserve(val.size());
    for (std::size_t i : val) val_targets.push_back(patterns.targets[i]);

    BelModel model = bel_init(config);
    BelModel best = model;
    double best_cor = -2.0; // below any valid correlation

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order = train;
    std::vector<double> val_preds(val.size());

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order)
            bel_train_step(model, patterns.inputs[i], patterns.targets[i]);
        model.trained_epochs = epoch + 1;

        if (!val.empty()) {
            for (std::size_t k = 0; k < val.size(); ++k)
                val_preds[k] = bel_forward(model, patterns.inputs[val[k]]).e;
            auto cor = pearson_opt(val_preds, val_targets);
            if (cor && *cor > best_cor) {
                best_cor = *cor;
                best = model;
            }
        }
    }
    // No usable validation signal: keep the final model.
    return best_cor > -2.0 ? best : model;
}

} // namespace ozs
