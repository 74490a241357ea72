#include "ozs/model_io.hpp"

#include "ozs/errors.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ozs {

using nlohmann::json;

std::string TrainedModel::kind() const {
    if (std::holds_alternative<BelModel>(model)) return "bel";
    if (std::holds_alternative<AnfisModel>(model)) return "anfis";
    return "mlp";
}

std::size_t TrainedModel::input_dim() const {
    return std::visit([](const auto& m) { return m.config.input_dim; }, model);
}

double TrainedModel::predict_norm(std::span<const double> x) const {
    if (const auto* b = std::get_if<BelModel>(&model)) return bel_forward(*b, x).e;
    if (const auto* a = std::get_if<AnfisModel>(&model)) return anfis_forward(*a, x);
    return mlp_forward(std::get<MlpModel>(model), x);
}

namespace {

std::vector<double> normalize_window(const Normalization& norm,
                                     std::span<const double> raw) {
    if (!norm.applied) return {raw.begin(), raw.end()};
    if (raw.size() != norm.inputs.size())
        throw ContractError("model: window length != normalization channels");
    std::vector<double> x(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        x[i] = norm.inputs[i].forward(raw[i]);
    return x;
}

} // namespace

double TrainedModel::predict_raw(std::span<const double> raw_window) const {
    auto x = normalize_window(norm, raw_window);
    double y = predict_norm(x);
    return norm.applied ? norm.target.inverse(y) : y;
}

void TrainedModel::adapt_raw(std::span<const double> raw_window, double raw_truth) {
    auto* b = std::get_if<BelModel>(&model);
    if (!b) throw ConfigError("online adaptation is only supported for BEL models");
    auto x = normalize_window(norm, raw_window);
    double t = norm.applied ? norm.target.forward(raw_truth) : raw_truth;
    bel_train_step(*b, x, t);
}

namespace {

json channel_json(const ChannelNorm& c) {
    return {{"min", c.min}, {"max", c.max}, {"degenerate", c.degenerate}};
}

ChannelNorm channel_from(const json& j) {
    ChannelNorm c;
    c.min = j.at("min").get<double>();
    c.max = j.at("max").get<double>();
    c.degenerate = j.at("degenerate").get<bool>();
    return c;
}

json norm_json(const Normalization& n) {
    json j;
    j["applied"] = n.applied;
    j["inputs"] = json::array();
    for (const auto& c : n.inputs) j["inputs"].push_back(channel_json(c));
    j["target"] = channel_json(n.target);
    return j;
}

Normalization norm_from(const json& j) {
    Normalization n;
    n.applied = j.at("applied").get<bool>();
    for (const auto& c : j.at("inputs")) n.inputs.push_back(channel_from(c));
    n.target = channel_from(j.at("target"));
    return n;
}

json bel_json(const BelModel& m) {
    json j;
    j["kind"] = "bel";
    j["v"] = m.v;
    j["w"] = m.w;
    j["config"] = {{"alpha", m.config.alpha},   {"beta", m.config.beta},
                   {"gamma", m.config.gamma},   {"epochs", m.config.epochs},
                   {"seed", m.config.seed},     {"input_dim", m.config.input_dim}};
    j["trained_epochs"] = m.trained_epochs;
    return j;
}

BelModel bel_from(const json& j) {
    BelModel m;
    const auto& c = j.at("config");
    m.config.alpha = c.at("alpha").get<double>();
    m.config.beta = c.at("beta").get<double>();
    m.config.gamma = c.at("gamma").get<double>();
    m.config.epochs = c.at("epochs").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.input_dim = c.at("input_dim").get<std::size_t>();
    m.v = j.at("v").get<std::vector<double>>();
    m.w = j.at("w").get<std::vector<double>>();
    m.trained_epochs = j.value("trained_epochs", std::size_t{0});
    if (m.v.size() != m.config.input_dim + 1 || m.w.size() != m.config.input_dim)
        throw ParseError("bel model JSON: weight lengths inconsistent with input_dim");
    return m;
}

json anfis_json(const AnfisModel& m) {
    json j;
    j["kind"] = "anfis";
    j["premise"] = json::array();
    for (const auto& row : m.premise) {
        json r = json::array();
        for (const auto& g : row) r.push_back({{"center", g.center}, {"width", g.width}});
        j["premise"].push_back(r);
    }
    j["consequent"] = m.consequent;
    j["config"] = {{"input_dim", m.config.input_dim},
                   {"mfs_per_input", m.config.mfs_per_input},
                   {"learning_rate", m.config.learning_rate},
                   {"epochs", m.config.epochs},
                   {"seed", m.config.seed},
                   {"zero_order", m.config.zero_order},
                   {"rule_cap", m.config.rule_cap}};
    j["trained_epochs"] = m.trained_epochs;
    return j;
}

AnfisModel anfis_from(const json& j) {
    AnfisModel m;
    const auto& c = j.at("config");
    m.config.input_dim = c.at("input_dim").get<std::size_t>();
    m.config.mfs_per_input = c.at("mfs_per_input").get<std::size_t>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.epochs = c.at("epochs").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.zero_order = c.value("zero_order", false);
    m.config.rule_cap = c.value("rule_cap", std::size_t{4096});
    for (const auto& row : j.at("premise")) {
        std::vector<Gaussian> r;
        for (const auto& g : row)
            r.push_back({g.at("center").get<double>(), g.at("width").get<double>()});
        m.premise.push_back(std::move(r));
    }
    m.consequent = j.at("consequent").get<std::vector<std::vector<double>>>();
    m.trained_epochs = j.value("trained_epochs", std::size_t{0});
    if (m.premise.size() != m.config.input_dim ||
        m.consequent.size() != m.config.rule_count())
        throw ParseError("anfis model JSON: parameter shapes inconsistent with config");
    return m;
}

json mlp_json(const MlpModel& m) {
    json j;
    j["kind"] = "mlp";
    j["W1"] = m.w1;
    j["b1"] = m.b1;
    j["W2"] = m.w2;
    j["b2"] = m.b2;
    j["config"] = {{"input_dim", m.config.input_dim},
                   {"hidden", m.config.hidden},
                   {"learning_rate", m.config.learning_rate},
                   {"epochs", m.config.epochs},
                   {"seed", m.config.seed}};
    j["trained_epochs"] = m.trained_epochs;
    return j;
}

MlpModel mlp_from(const json& j) {
    MlpModel m;
    const auto& c = j.at("config");
    m.config.input_dim = c.at("input_dim").get<std::size_t>();
    m.config.hidden = c.at("hidden").get<std::size_t>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.epochs = c.at("epochs").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.w1 = j.at("W1").get<std::vector<double>>();
    m.b1 = j.at("b1").get<std::vector<double>>();
    m.w2 = j.at("W2").get<std::vector<double>>();
    m.b2 = j.at("b2").get<double>();
    m.trained_epochs = j.value("trained_epochs", std::size_t{0});
    if (m.w1.size() != m.config.hidden * m.config.input_dim ||
        m.b1.size() != m.config.hidden || m.w2.size() != m.config.hidden)
        throw ParseError("mlp model JSON: weight shapes inconsistent with config");
    return m;
}

} // namespace

std::string TrainedModel::to_json_string() const {
    json j = std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BelModel>) return bel_json(m);
            else if constexpr (std::is_same_v<T, AnfisModel>) return anfis_json(m);
            else return mlp_json(m);
        },
        model);
    j["mode"] = to_string(mode);
    j["lag"] = lag;
    j["normalization"] = norm_json(norm);
    return j.dump(2) + "\n";
}

TrainedModel TrainedModel::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
    try {
        TrainedModel t;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "bel") t.model = bel_from(j);
        else if (kind == "anfis") t.model = anfis_from(j);
        else if (kind == "mlp") t.model = mlp_from(j);
        else throw ParseError("unknown model kind '" + kind + "'");
        t.mode = pattern_mode_from_string(j.at("mode").get<std::string>());
        t.lag = j.at("lag").get<std::size_t>();
        t.norm = norm_from(j.at("normalization"));
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
}

void TrainedModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << to_json_string();
    if (!out) throw IoError("write failed: " + path.string());
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str());
}

} // namespace ozs
