// oz-sentinel CLI: synthetic data generation, model training, prediction,
// model comparison and threshold alarms over daily ozone series.

#include "ozs/alarm.hpp"
#include "ozs/errors.hpp"
#include "ozs/evaluate.hpp"
#include "ozs/figures.hpp"
#include "ozs/log.hpp"
#include "ozs/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PipelineArgs {
    std::string data_path;
    std::size_t lag = 4;
    std::string mode = "lagged_o3";
    std::uint64_t seed = 0;
};

void add_pipeline_flags(CLI::App* cmd, PipelineArgs& a) {
    cmd->add_option("--data", a.data_path, "input CSV (date,o3[,uv,tsr])")->required();
    cmd->add_option("--lag", a.lag, "window length for lagged_o3 mode")
        ->default_val(std::size_t{4});
    cmd->add_option("--mode", a.mode, "pattern mode: lagged_o3 | sensors")
        ->default_val("lagged_o3");
    cmd->add_option("--seed", a.seed, "split / training seed (reproducibility)")
        ->required();
}

struct Prepared {
    ozs::Series series;
    ozs::PatternSet patterns;
};

Prepared prepare(const PipelineArgs& a) {
    Prepared p{ozs::load_csv(a.data_path), {}};
    auto mode = ozs::pattern_mode_from_string(a.mode);
    p.patterns = ozs::make_patterns(p.series, a.lag, mode);
    p.patterns = ozs::assign_splits(std::move(p.patterns), ozs::kDefaultFractions, a.seed);
    p.patterns = ozs::normalize(std::move(p.patterns));
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ozs::IoError("cannot write " + path.string());
    out << text;
    if (!out) throw ozs::IoError("write failed: " + path.string());
}

ozs::TrainedModel wrap_model(std::variant<ozs::BelModel, ozs::AnfisModel, ozs::MlpModel> m,
                             const ozs::PatternSet& patterns) {
    ozs::TrainedModel t;
    t.model = std::move(m);
    t.mode = patterns.mode;
    t.lag = patterns.lag;
    t.norm = patterns.norm;
    return t;
}

// Raw-unit predictor adapter used by predict/alarm.
struct ModelPredictor {
    ozs::TrainedModel& model;
    double predict(const std::vector<double>& window) const {
        return model.predict_raw(window);
    }
    void adapt(const std::vector<double>& window, double truth) {
        model.adapt_raw(window, truth);
    }
};

int cmd_synth(const std::string& kind, std::size_t length, std::uint64_t seed,
              double noise, const std::string& out_path) {
    auto series = ozs::synth_series(ozs::synth_kind_from_string(kind), length, seed, noise);
    ozs::save_csv(series, out_path);
    ozs::log_info("wrote " + std::to_string(series.size()) + " rows to " + out_path);
    return 0;
}

struct TrainHyper {
    double alpha = ozs::BelConfig{}.alpha;
    double beta = ozs::BelConfig{}.beta;
    double gamma = ozs::BelConfig{}.gamma;
    std::size_t mfs = ozs::AnfisConfig{}.mfs_per_input;
    std::size_t hidden = ozs::MlpConfig{}.hidden;
    double lr = 0.0;         // 0 = per-model default
    std::size_t epochs = 0;  // 0 = per-model default
};

json hyper_json(const std::string& model, const PipelineArgs& a, const TrainHyper& h) {
    json j;
    j["model"] = model;
    j["lag"] = a.lag;
    j["mode"] = a.mode;
    j["seed"] = a.seed;
    j["alpha"] = h.alpha;
    j["beta"] = h.beta;
    j["gamma"] = h.gamma;
    j["mfs_per_input"] = h.mfs;
    j["hidden"] = h.hidden;
    j["learning_rate"] = h.lr;
    j["epochs"] = h.epochs;
    return j;
}

int cmd_train(const std::string& model_name, const PipelineArgs& a, const TrainHyper& h,
              const std::string& out_dir) {
    auto prepared = prepare(a);
    const auto& patterns = prepared.patterns;
    fs::create_directories(out_dir);

    ozs::TrainedModel trained = [&] {
        if (model_name == "bel") {
            ozs::BelConfig c;
            c.alpha = h.alpha;
            c.beta = h.beta;
            c.gamma = h.gamma;
            c.input_dim = patterns.input_dim;
            c.seed = a.seed;
            if (h.epochs) c.epochs = h.epochs;
            return wrap_model(ozs::bel_fit(patterns, c), patterns);
        }
        if (model_name == "anfis") {
            ozs::AnfisConfig c;
            c.input_dim = patterns.input_dim;
            c.mfs_per_input = h.mfs;
            c.seed = a.seed;
            if (h.lr > 0) c.learning_rate = h.lr;
            if (h.epochs) c.epochs = h.epochs;
            return wrap_model(ozs::anfis_fit(patterns, c), patterns);
        }
        if (model_name == "mlp") {
            ozs::MlpConfig c;
            c.input_dim = patterns.input_dim;
            c.hidden = h.hidden;
            c.seed = a.seed;
            if (h.lr > 0) c.learning_rate = h.lr;
            if (h.epochs) c.epochs = h.epochs;
            return wrap_model(ozs::mlp_fit(patterns, c), patterns);
        }
        throw ozs::ConfigError("unknown model '" + model_name + "'");
    }();

    trained.save(fs::path(out_dir) / "model.json");

    ozs::EvalReport report;
    report.fingerprint = ozs::config_fingerprint(hyper_json(model_name, a, h).dump());
    report.models.push_back(ozs::evaluate_model(trained, patterns, model_name));
    const auto& test = report.models[0].splits.at("test");
    if (report.models[0].error.empty() && test.cor) report.ranking.push_back(model_name);
    write_text(fs::path(out_dir) / "report.json", ozs::report_to_json(report));
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    auto model = ozs::TrainedModel::load(model_path);
    auto series = ozs::load_csv(data_path);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ozs::IoError("cannot write " + out_path);
        out = &file;
    }

    const std::size_t window_len = model.mode == ozs::PatternMode::lagged_o3 ? model.lag : 1;
    if (model.mode == ozs::PatternMode::sensors && !series.has_sensors())
        throw ozs::MissingChannelError("model needs uv/tsr channels missing from data");
    if (series.size() < window_len)
        throw ozs::InsufficientDataError("series shorter than one model window");

    *out << "date,predicted_o3\n";
    std::vector<double> window;
    char buf[64];
    for (std::size_t t = window_len - 1; t < series.size(); ++t) {
        window.clear();
        if (model.mode == ozs::PatternMode::lagged_o3)
            window.assign(series.o3.begin() + long(t + 1 - model.lag),
                          series.o3.begin() + long(t + 1));
        else
            window = {series.uv[t], series.tsr[t], series.o3[t]};
        std::snprintf(buf, sizeof buf, "%.17g", model.predict_raw(window));
        *out << ozs::format_date(series.dates[t] + std::chrono::days{1}) << "," << buf << "\n";
    }
    return 0;
}

int cmd_compare(const PipelineArgs& a, const TrainHyper& h, const std::string& out_dir,
                bool force) {
    fs::path dir(out_dir);
    if (fs::exists(dir / "report.json") && !force)
        throw ozs::ConfigError(out_dir + " already holds a report; pass --force to overwrite");
    auto prepared = prepare(a);
    fs::create_directories(dir);

    ozs::CompareConfigs configs;
    configs.bel.alpha = h.alpha;
    configs.bel.beta = h.beta;
    configs.bel.gamma = h.gamma;
    configs.bel.input_dim = prepared.patterns.input_dim;
    configs.bel.seed = a.seed;
    configs.anfis.input_dim = prepared.patterns.input_dim;
    configs.anfis.mfs_per_input = h.mfs;
    configs.anfis.seed = a.seed;
    configs.mlp.input_dim = prepared.patterns.input_dim;
    configs.mlp.hidden = h.hidden;
    configs.mlp.seed = a.seed;
    if (h.lr > 0) {
        configs.anfis.learning_rate = h.lr;
        configs.mlp.learning_rate = h.lr;
    }
    if (h.epochs) {
        configs.bel.epochs = h.epochs;
        configs.anfis.epochs = h.epochs;
        configs.mlp.epochs = h.epochs;
    }

    auto result = ozs::compare(prepared.patterns, configs);
    result.report.fingerprint = ozs::config_fingerprint(hyper_json("all", a, h).dump());
    write_text(dir / "report.json", ozs::report_to_json(result.report));
    ozs::write_figures(prepared.series, result.report, dir);

    for (const auto& m : result.report.models) {
        const auto& test = m.splits.count("test") ? m.splits.at("test") : ozs::SplitEval{};
        if (!m.error.empty())
            std::cout << m.name << ": training failed: " << m.error << "\n";
        else if (test.cor)
            std::cout << m.name << ": test COR " << *test.cor << ", RMSE " << test.rmse << "\n";
        else
            std::cout << m.name << ": " << test.cor_error << "\n";
    }
    std::cout << "ranking:";
    for (const auto& n : result.report.ranking) std::cout << " " << n;
    std::cout << "\n";
    return 0;
}

int cmd_alarm(const std::string& model_path, const std::string& policy_path,
              const std::string& data_path, bool adapt, bool dry_run,
              const std::string& out_path) {
    auto model = ozs::TrainedModel::load(model_path);
    auto policy = ozs::AlarmPolicy::load(policy_path);
    auto series = ozs::load_csv(data_path);
    if (adapt && model.kind() != "bel")
        throw ozs::ConfigError("--adapt is only supported for BEL models");
    if (dry_run) return 0;

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ozs::IoError("cannot write " + out_path);
        out = &file;
    }

    ModelPredictor predictor{model};
    ozs::replay_stream(ozs::SeriesRef{series}, predictor, policy, model.mode, model.lag,
                       adapt, [&](const ozs::ReplayStep& step) {
                           json line;
                           line["date"] = ozs::format_date(step.date);
                           line["prediction"] = step.prediction;
                           if (step.event) {
                               line["severity"] = step.event->severity;
                               line["message"] = step.event->message;
                           }
                           *out << line.dump() << "\n";
                       });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oz-sentinel: ozone level forecasting and alarms"};
    app.require_subcommand(1);

    // synth
    std::string synth_kind = "seasonal_ar", synth_out;
    std::size_t synth_length = 0;
    std::uint64_t synth_seed = 0;
    double synth_noise = 0.05;
    auto* synth = app.add_subcommand("synth", "generate a synthetic daily series");
    synth->add_option("--kind", synth_kind, "seasonal_ar | mackey_glass")
        ->default_val("seasonal_ar");
    synth->add_option("--length", synth_length, "number of days")->required();
    synth->add_option("--seed", synth_seed, "generator seed")->required();
    synth->add_option("--noise", synth_noise, "noise level")->default_val(0.05);
    synth->add_option("-o,--output", synth_out, "output CSV path")->required();

    // train
    PipelineArgs train_args;
    TrainHyper train_h;
    std::string train_model, train_out;
    auto* train = app.add_subcommand("train", "train one model and evaluate it");
    train->add_option("--model", train_model, "bel | anfis | mlp")->required();
    add_pipeline_flags(train, train_args);
    train->add_option("--alpha", train_h.alpha, "BEL amygdala rate");
    train->add_option("--beta", train_h.beta, "BEL orbitofrontal rate");
    train->add_option("--gamma", train_h.gamma, "BEL amygdala decay");
    train->add_option("--mfs", train_h.mfs, "ANFIS membership functions per input");
    train->add_option("--hidden", train_h.hidden, "MLP hidden units");
    train->add_option("--lr", train_h.lr, "learning rate (anfis/mlp)");
    train->add_option("--epochs", train_h.epochs, "training epochs");
    train->add_option("-o,--output", train_out, "output directory")->required();

    // predict
    std::string pred_model, pred_data, pred_out;
    auto* predict = app.add_subcommand("predict", "next-day predictions for a series");
    predict->add_option("--model", pred_model, "trained model JSON")->required();
    predict->add_option("--data", pred_data, "input CSV")->required();
    predict->add_option("-o,--output", pred_out, "output CSV (default stdout)");

    // compare
    PipelineArgs cmp_args;
    TrainHyper cmp_h;
    std::string cmp_out;
    bool cmp_force = false;
    auto* cmp = app.add_subcommand("compare", "train and rank all three models");
    add_pipeline_flags(cmp, cmp_args);
    cmp->add_option("--alpha", cmp_h.alpha, "BEL amygdala rate");
    cmp->add_option("--beta", cmp_h.beta, "BEL orbitofrontal rate");
    cmp->add_option("--gamma", cmp_h.gamma, "BEL amygdala decay");
    cmp->add_option("--mfs", cmp_h.mfs, "ANFIS membership functions per input");
    cmp->add_option("--hidden", cmp_h.hidden, "MLP hidden units");
    cmp->add_option("--lr", cmp_h.lr, "learning rate (anfis/mlp)");
    cmp->add_option("--epochs", cmp_h.epochs, "training epochs");
    cmp->add_option("-o,--output", cmp_out, "output directory")->required();
    cmp->add_flag("--force", cmp_force, "overwrite an existing report");

    // alarm
    std::string alarm_model, alarm_policy, alarm_data, alarm_out;
    bool alarm_adapt = false, alarm_dry = false;
    auto* alarm = app.add_subcommand("alarm", "replay a series through the alarm pipeline");
    alarm->add_option("--model", alarm_model, "trained model JSON")->required();
    alarm->add_option("--policy", alarm_policy, "alarm policy JSON")->required();
    alarm->add_option("--data", alarm_data, "input CSV")->required();
    alarm->add_flag("--adapt", alarm_adapt, "online BEL adaptation as truths arrive");
    alarm->add_flag("--dry-run", alarm_dry, "validate inputs and exit");
    alarm->add_option("-o,--output", alarm_out, "event stream file (default stdout)");

    try {
        app.parse(argc, argv);
        if (*synth) return cmd_synth(synth_kind, synth_length, synth_seed, synth_noise, synth_out);
        if (*train) return cmd_train(train_model, train_args, train_h, train_out);
        if (*predict) return cmd_predict(pred_model, pred_data, pred_out);
        if (*cmp) return cmd_compare(cmp_args, cmp_h, cmp_out, cmp_force);
        if (*alarm) return cmd_alarm(alarm_model, alarm_policy, alarm_data, alarm_adapt,
                                     alarm_dry, alarm_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const ozs::Error& e) {
        ozs::log_error(e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        ozs::log_error(e.what());
        return 1;
    }
}
