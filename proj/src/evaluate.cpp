#include "ozs/evaluate.hpp"

#include "ozs/errors.hpp"
#include "ozs/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include <json.hpp>

namespace ozs {

using nlohmann::json;

ModelEval evaluate_model(const TrainedModel& model, const PatternSet& patterns,
                         const std::string& name) {
    if (model.input_dim() != patterns.input_dim)
        throw ContractError("evaluate: model input_dim != pattern length");
    if (!patterns.has_splits()) throw ConfigError("evaluate: patterns lack split labels");

    ModelEval eval;
    eval.name = name;
    for (const char* s : {"train", "validation", "test"}) eval.splits[s] = {};

    for (std::size_t i = 0; i < patterns.size(); ++i) {
        double pred = model.predict_norm(patterns.inputs[i]);
        double actual = patterns.targets[i];
        if (patterns.norm.applied) {
            pred = patterns.norm.target.inverse(pred);
            actual = patterns.norm.target.inverse(actual);
        }
        SplitEval& se = eval.splits[to_string(patterns.splits[i])];
        se.predicted.push_back(pred);
        se.actual.push_back(actual);
        se.dates.push_back(patterns.target_dates[i]);
        ++se.count;
    }

    for (auto& [label, se] : eval.splits) {
        if (se.count == 0) continue;
        se.rmse = rmse(se.predicted, se.actual);
        se.mae = mae(se.predicted, se.actual);
        se.cor = pearson_opt(se.predicted, se.actual);
        if (!se.cor)
            se.cor_error = "undefined correlation on " + label +
                           " split (constant values or too few samples)";
    }
    return eval;
}

CompareResult compare(const PatternSet& patterns, const CompareConfigs& configs) {
    configs.bel.validate();
    configs.anfis.validate();
    configs.mlp.validate();

    auto train_one = [&patterns](const std::string& name,
                                 auto fit) -> std::pair<ModelEval, std::optional<TrainedModel>> {
        ModelEval eval;
        eval.name = name;
        try {
            TrainedModel trained = fit();
            eval = evaluate_model(trained, patterns, name);
            return {std::move(eval), std::move(trained)};
        } catch (const Error& e) {
            eval.error = e.what();
            return {std::move(eval), std::nullopt};
        }
    };

    auto wrap = [&patterns](auto model) {
        TrainedModel t;
        t.model = std::move(model);
        t.mode = patterns.mode;
        t.lag = patterns.lag;
        t.norm = patterns.norm;
        return t;
    };

    // The three trainings are independent; run them concurrently.
    auto fut_bel = std::async(std::launch::async, train_one, "bel",
                              [&] { return wrap(bel_fit(patterns, configs.bel)); });
    auto fut_anfis = std::async(std::launch::async, train_one, "anfis",
                                [&] { return wrap(anfis_fit(patterns, configs.anfis)); });
    auto fut_mlp = std::async(std::launch::async, train_one, "mlp",
                              [&] { return wrap(mlp_fit(patterns, configs.mlp)); });

    CompareResult result;
    for (auto* fut : {&fut_bel, &fut_anfis, &fut_mlp}) {
        auto [eval, trained] = fut->get();
        if (trained) result.models.emplace(eval.name, std::move(*trained));
        result.report.models.push_back(std::move(eval));
    }

    // Rank by test correlation; models without a defined one are unranked.
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& m : result.report.models) {
        auto it = m.splits.find("test");
        if (m.error.empty() && it != m.splits.end() && it->second.cor)
            ranked.emplace_back(*it->second.cor, m.name);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    for (const auto& [cor, name] : ranked) result.report.ranking.push_back(name);
    return result;
}

namespace {

json split_json(const SplitEval& se) {
    json j;
    j["count"] = se.count;
    if (se.cor) j["cor"] = *se.cor;
    else j["cor"] = nullptr;
    j["cor_error"] = se.cor_error;
    j["rmse"] = se.rmse;
    j["mae"] = se.mae;
    j["predicted"] = se.predicted;
    j["actual"] = se.actual;
    json dates = json::array();
    for (Date d : se.dates) dates.push_back(format_date(d));
    j["dates"] = dates;
    return j;
}

SplitEval split_from(const json& j) {
    SplitEval se;
    se.count = j.at("count").get<std::size_t>();
    if (!j.at("cor").is_null()) se.cor = j.at("cor").get<double>();
    se.cor_error = j.at("cor_error").get<std::string>();
    se.rmse = j.at("rmse").get<double>();
    se.mae = j.at("mae").get<double>();
    se.predicted = j.at("predicted").get<std::vector<double>>();
    se.actual = j.at("actual").get<std::vector<double>>();
    for (const auto& d : j.at("dates")) se.dates.push_back(parse_date(d.get<std::string>()));
    return se;
}

} // namespace

std::string report_to_json(const EvalReport& report) {
    json j;
    j["fingerprint"] = report.fingerprint;
    j["ranking"] = report.ranking;
    j["models"] = json::array();
    for (const auto& m : report.models) {
        json jm;
        jm["name"] = m.name;
        jm["error"] = m.error;
        jm["splits"] = json::object();
        for (const auto& [label, se] : m.splits) jm["splits"][label] = split_json(se);
        j["models"].push_back(jm);
    }
    return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
    try {
        EvalReport r;
        r.fingerprint = j.at("fingerprint").get<std::string>();
        r.ranking = j.at("ranking").get<std::vector<std::string>>();
        for (const auto& jm : j.at("models")) {
            ModelEval m;
            m.name = jm.at("name").get<std::string>();
            m.error = jm.at("error").get<std::string>();
            for (auto it = jm.at("splits").begin(); it != jm.at("splits").end(); ++it)
                m.splits[it.key()] = split_from(it.value());
            r.models.push_back(std::move(m));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
}

std::string config_fingerprint(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ozs
