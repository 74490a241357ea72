#include "ozs/mlp.hpp"

#include "ozs/errors.hpp"
#include "ozs/kernels.hpp"
#include "ozs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ozs {

void MlpConfig::validate() const {
    if (input_dim < 1) throw ConfigError("mlp: input_dim must be >= 1");
    if (hidden < 1) throw ConfigError("mlp: hidden must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("mlp: learning_rate must be > 0");
}

MlpModel mlp_init(const MlpConfig& config) {
    config.validate();
    MlpModel m;
    m.config = config;
    const double bound = 1.0 / std::sqrt(double(config.input_dim));
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> u(-bound, bound);
    m.w1.resize(config.hidden * config.input_dim);
    m.b1.resize(config.hidden);
    m.w2.resize(config.hidden);
    for (auto& v : m.w1) v = u(rng);
    for (auto& v : m.b1) v = u(rng);
    for (auto& v : m.w2) v = u(rng);
    m.b2 = u(rng);
    return m;
}

namespace {

void check_input(const MlpModel& model, std::span<const double> x) {
    if (x.size() != model.config.input_dim)
        throw ContractError("mlp: input length != input_dim");
    for (double v : x)
        if (!std::isfinite(v)) throw RejectedInputError("mlp: non-finite input");
}

void hidden_activations(const MlpModel& model, std::span<const double> x,
                        std::vector<double>& h) {
    const std::size_t m = model.config.input_dim;
    h.resize(model.config.hidden);
    for (std::size_t j = 0; j < model.config.hidden; ++j) {
        double net = model.b1[j] +
                     kern::dot(std::span(model.w1).subspan(j * m, m), x);
        h[j] = std::tanh(net);
    }
}

} // namespace

double mlp_forward(const MlpModel& model, std::span<const double> x) {
    check_input(model, x);
    std::vector<double> h;
    hidden_activations(model, x, h);
    return model.b2 + kern::dot(model.w2, h);
}

std::size_t mlp_param_count(const MlpConfig& config) {
    return config.hidden * config.input_dim + config.hidden + config.hidden + 1;
}

std::vector<double> mlp_get_params(const MlpModel& model) {
    std::vector<double> p;
    p.reserve(mlp_param_count(model.config));
    p.insert(p.end(), model.w1.begin(), model.w1.end());
    p.insert(p.end(), model.b1.begin(), model.b1.end());
    p.insert(p.end(), model.w2.begin(), model.w2.end());
    p.push_back(model.b2);
    return p;
}

void mlp_set_params(MlpModel& model, std::span<const double> params) {
    if (params.size() != mlp_param_count(model.config))
        throw ContractError("mlp: parameter vector has wrong length");
    std::size_t k = 0;
    for (auto& v : model.w1) v = params[k++];
    for (auto& v : model.b1) v = params[k++];
    for (auto& v : model.w2) v = params[k++];
    model.b2 = params[k];
}

std::vector<double> mlp_gradient(const MlpModel& model, std::span<const double> x, double t) {
    check_input(model, x);
    if (!std::isfinite(t)) throw RejectedInputError("mlp: non-finite target");
    const std::size_t m = model.config.input_dim;
    const std::size_t h_n = model.config.hidden;

    std::vector<double> h;
    hidden_activations(model, x, h);
    double yhat = model.b2 + kern::dot(model.w2, h);
    double e = yhat - t;

    std::vector<double> grad(mlp_param_count(model.config));
    double* gw1 = grad.data();
    double* gb1 = gw1 + h_n * m;
    double* gw2 = gb1 + h_n;
    double& gb2 = grad.back();

    for (std::size_t j = 0; j < h_n; ++j) {
        double delta = e * model.w2[j] * (1.0 - h[j] * h[j]);
        for (std::size_t i = 0; i < m; ++i) gw1[j * m + i] = delta * x[i];
        gb1[j] = delta;
        gw2[j] = e * h[j];
    }
    gb2 = e;
    return grad;
}

MlpModel mlp_fit(const PatternSet& patterns, const MlpConfig& config) {
    config.validate();
    if (!patterns.has_splits()) throw ConfigError("mlp_fit: patterns lack split labels");
    auto train = patterns.indices_of(Split::train);
    if (train.empty()) throw ConfigError("mlp_fit: empty training split");
    if (patterns.input_dim != config.input_dim)
        throw ContractError("mlp_fit: pattern length != input_dim");

    auto val = patterns.indices_of(Split::validation);
    std::vector<double> val_targets;
    for (std::size_t i : val) val_targets.push_back(patterns.targets[i]);

    MlpModel model = mlp_init(config);
    MlpModel best = model;
    double best_cor = -2.0;

    std::mt19937_64 rng(config.seed ^ 0xa5a5a5a5a5a5a5a5ull); // distinct from init stream
    std::vector<std::size_t> order = train;
    std::vector<double> params = mlp_get_params(model);
    std::vector<double> val_preds(val.size());

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            auto grad = mlp_gradient(model, patterns.inputs[i], patterns.targets[i]);
            for (std::size_t k = 0; k < params.size(); ++k)
                params[k] -= config.learning_rate * grad[k];
            mlp_set_params(model, params);
        }
        for (double v : params)
            if (!std::isfinite(v))
                throw DivergedTrainingError("mlp: non-finite weights at epoch " +
                                            std::to_string(epoch));
        model.trained_epochs = epoch + 1;

        if (!val.empty()) {
            for (std::size_t k = 0; k < val.size(); ++k)
                val_preds[k] = mlp_forward(model, patterns.inputs[val[k]]);
            auto cor = pearson_opt(val_preds, val_targets);
            if (cor && *cor > best_cor) {
                best_cor = *cor;
                best = model;
            }
        }
    }
    return best_cor > -2.0 ? best : model;
}

} // namespace ozs
