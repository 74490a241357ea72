#include "ozs/anfis.hpp"

#include "ozs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ozs {

void AnfisConfig::validate() const {
    if (input_dim < 1) throw ConfigError("anfis: input_dim must be >= 1");
    if (mfs_per_input < 1) throw ConfigError("anfis: mfs_per_input must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("anfis: learning_rate must be > 0");
    double rules = std::pow(double(mfs_per_input), double(input_dim));
    if (rules > double(rule_cap))
        throw ConfigError("anfis: rule count " + std::to_string(std::uint64_t(rules)) +
                          " exceeds cap " + std::to_string(rule_cap));
}

std::size_t AnfisConfig::rule_count() const {
    std::size_t r = 1;
    for (std::size_t i = 0; i < input_dim; ++i) r *= mfs_per_input;
    return r;
}

std::size_t AnfisModel::mf_index(std::size_t rule, std::size_t input) const {
    std::size_t m = config.mfs_per_input;
    for (std::size_t i = 0; i < input; ++i) rule /= m;
    return rule % m;
}

AnfisModel anfis_init_grid(const PatternSet& patterns, const AnfisConfig& config) {
    config.validate();
    if (!patterns.has_splits()) throw ConfigError("anfis: patterns lack split labels");
    auto train = patterns.indices_of(Split::train);
    if (train.empty()) throw ConfigError("anfis: empty training split");
    if (patterns.input_dim != config.input_dim)
        throw ContractError("anfis: pattern length != input_dim");

    AnfisModel model;
    model.config = config;
    model.premise.resize(config.input_dim);
    const std::size_t mfs = config.mfs_per_input;

    for (std::size_t col = 0; col < config.input_dim; ++col) {
        double lo = patterns.inputs[train[0]][col], hi = lo;
        for (std::size_t i : train) {
            lo = std::min(lo, patterns.inputs[i][col]);
            hi = std::max(hi, patterns.inputs[i][col]);
        }
        auto& row = model.premise[col];
        row.resize(mfs);
        if (mfs == 1) {
            row[0].center = 0.5 * (lo + hi);
            row[0].width = hi > lo ? (hi - lo) / std::sqrt(2.0) : 1.0;
        } else {
            double spacing = (hi - lo) / double(mfs - 1);
            for (std::size_t k = 0; k < mfs; ++k) {
                row[k].center = lo + spacing * double(k);
                row[k].width = spacing > 0.0 ? spacing / std::sqrt(2.0) : 1.0;
            }
        }
    }
    model.consequent.assign(config.rule_count(),
                            std::vector<double>(config.input_dim + 1, 0.0));
    return model;
}

namespace {

void check_input(const AnfisModel& model, std::span<const double> x) {
    if (x.size() != model.config.input_dim)
        throw ContractError("anfis: input length != input_dim");
    for (double v : x)
        if (!std::isfinite(v)) throw RejectedInputError("anfis: non-finite input");
}

} // namespace

AnfisForward anfis_forward_detail(const AnfisModel& model, std::span<const double> x) {
    check_input(model, x);
    const std::size_t dim = model.config.input_dim;
    const std::size_t rules = model.config.rule_count();
    const std::size_t mfs = model.config.mfs_per_input;

    // layer 1 memberships, shared across rules
    std::vector<double> mu(dim * mfs);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < mfs; ++k) {
            const Gaussian& g = model.premise[i][k];
            double d = (x[i] - g.center) / g.width;
            mu[i * mfs + k] = std::exp(-0.5 * d * d);
        }

    AnfisForward out;
    out.firing.resize(rules);
    out.normalized.resize(rules);
    out.rule_output.resize(rules);

    double total = 0.0;
    for (std::size_t r = 0; r < rules; ++r) {
        double w = 1.0;
        std::size_t digits = r;
        for (std::size_t i = 0; i < dim; ++i) {
            w *= mu[i * mfs + digits % mfs];
            digits /= mfs;
        }
        out.firing[r] = w;
        total += w;
    }
    if (total == 0.0)
        throw DegenerateActivationError("anfis: all rule firing strengths are zero");
    if (total < kAnfisSumFloor) {
        total = kAnfisSumFloor;
        out.underflowed = true;
    }

    double y = 0.0;
    for (std::size_t r = 0; r < rules; ++r) {
        out.normalized[r] = out.firing[r] / total;
        const auto& a = model.consequent[r];
        double z = a[dim];
        for (std::size_t i = 0; i < dim; ++i) z += a[i] * x[i];
        out.rule_output[r] = z;
        y += out.normalized[r] * z;
    }
    out.output = y;
    return out;
}

double anfis_forward(const AnfisModel& model, std::span<const double> x) {
    return anfis_forward_detail(model, x).output;
}

std::size_t anfis_param_count(const AnfisModel& model) {
    return model.config.input_dim * model.config.mfs_per_input * 2 +
           model.config.rule_count() * (model.config.input_dim + 1);
}

std::vector<double> anfis_get_params(const AnfisModel& model) {
    std::vector<double> p;
    p.reserve(anfis_param_count(model));
    for (const auto& row : model.premise)
        for (const auto& g : row) {
            p.push_back(g.center);
            p.push_back(g.width);
        }
    for (const auto& a : model.consequent)
        p.insert(p.end(), a.begin(), a.end());
    return p;
}

void anfis_set_params(AnfisModel& model, std::span<const double> params) {
    if (params.size() != anfis_param_count(model))
        throw ContractError("anfis: parameter vector has wrong length");
    std::size_t k = 0;
    for (auto& row : model.premise)
        for (auto& g : row) {
            g.center = params[k++];
            g.width = std::max(params[k++], kAnfisMinWidth);
        }
    for (auto& a : model.consequent)
        for (auto& c : a) c = params[k++];
}

double anfis_loss(const AnfisModel& model,
                  std::span<const std::vector<double>> inputs,
                  std::span<const double> targets) {
    if (inputs.size() != targets.size()) throw ContractError("anfis_loss: length mismatch");
    double acc = 0.0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        double e = anfis_forward(model, inputs[s]) - targets[s];
        acc += e * e;
    }
    return acc / double(inputs.size());
}

std::vector<double> anfis_loss_gradient(const AnfisModel& model,
                                        std::span<const std::vector<double>> inputs,
                                        std::span<const double> targets) {
    if (inputs.size() != targets.size())
        throw ContractError("anfis_loss_gradient: length mismatch");
    const std::size_t dim = model.config.input_dim;
    const std::size_t mfs = model.config.mfs_per_input;
    const std::size_t rules = model.config.rule_count();
    const std::size_t premise_params = dim * mfs * 2;

    std::vector<double> grad(anfis_param_count(model), 0.0);
    const double scale = 2.0 / double(inputs.size());

    for (std::size_t s = 0; s < inputs.size(); ++s) {
        std::span<const double> x(inputs[s]);
        auto fwd = anfis_forward_detail(model, x);
        double total = 0.0;
        for (double w : fwd.firing) total += w;
        total = std::max(total, kAnfisSumFloor);
        const double de = scale * (fwd.output - targets[s]);

        for (std::size_t r = 0; r < rules; ++r) {
            // consequent gradient: dy/da = normalized * [x, 1]
            std::size_t base = premise_params + r * (dim + 1);
            for (std::size_t i = 0; i < dim; ++i)
                grad[base + i] += de * fwd.normalized[r] * x[i];
            grad[base + dim] += de * fwd.normalized[r];

            // premise gradient through the firing strength
            double dy_dw = (fwd.rule_output[r] - fwd.output) / total;
            double common = de * dy_dw * fwd.firing[r];
            if (common == 0.0) continue;
            std::size_t digits = r;
            for (std::size_t i = 0; i < dim; ++i) {
                std::size_t k = digits % mfs;
                digits /= mfs;
                const Gaussian& g = model.premise[i][k];
                double diff = x[i] - g.center;
                std::size_t pbase = (i * mfs + k) * 2;
                grad[pbase] += common * diff / (g.width * g.width);
                grad[pbase + 1] += common * diff * diff / (g.width * g.width * g.width);
            }
        }
    }
    return grad;
}

AnfisModel anfis_fit(const PatternSet& patterns, const AnfisConfig& config,
                     std::vector<double>* mse_trace) {
    AnfisModel model = anfis_init_grid(patterns, config);

    auto train_idx = patterns.indices_of(Split::train);
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    inputs.reserve(train_idx.size());
    targets.reserve(train_idx.size());
    for (std::size_t i : train_idx) {
        inputs.push_back(patterns.inputs[i]);
        targets.push_back(patterns.targets[i]);
    }

    const std::size_t dim = config.input_dim;
    const std::size_t premise_params = dim * config.mfs_per_input * 2;
    std::vector<double> params = anfis_get_params(model);

    if (mse_trace) {
        mse_trace->clear();
        mse_trace->push_back(anfis_loss(model, inputs, targets));
    }

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<double> grad = anfis_loss_gradient(model, inputs, targets);
        for (double g : grad)
            if (!std::isfinite(g))
                throw DivergedTrainingError("anfis: non-finite gradient at epoch " +
                                            std::to_string(epoch));
        if (config.zero_order) {
            // constant consequents only: freeze the input coefficients
            for (std::size_t r = 0; r < config.rule_count(); ++r)
                for (std::size_t i = 0; i < dim; ++i)
                    grad[premise_params + r * (dim + 1) + i] = 0.0;
        }
        for (std::size_t k = 0; k < params.size(); ++k)
            params[k] -= config.learning_rate * grad[k];
        anfis_set_params(model, params); // clamps widths
        params = anfis_get_params(model);
        model.trained_epochs = epoch + 1;
        if (mse_trace) mse_trace->push_back(anfis_loss(model, inputs, targets));
    }

    for (const auto& x : inputs)
        if (anfis_forward_detail(model, x).underflowed) ++model.underflow_count;
    return model;
}

} // namespace ozs
