#include "ozs/alarm.hpp"

#include "ozs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ozs {

void AlarmPolicy::validate() const {
    if (bands.empty()) throw ConfigError("alarm policy: at least one band required");
    std::set<std::string> labels;
    for (const auto& b : bands) {
        if (b.severity.empty()) throw ConfigError("alarm policy: empty severity label");
        if (!labels.insert(b.severity).second)
            throw ConfigError("alarm policy: duplicate severity '" + b.severity + "'");
        if (!std::isfinite(b.bound)) throw ConfigError("alarm policy: non-finite bound");
    }
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < bands.size(); ++i) {
        inc = inc && bands[i].bound > bands[i - 1].bound;
        dec = dec && bands[i].bound < bands[i - 1].bound;
    }
    if (!inc && !dec) throw ConfigError("alarm policy: bounds must be strictly monotone");
}

std::optional<std::size_t> AlarmPolicy::severity_rank(const std::string& label) const {
    // rank 0 = most severe = bound furthest in the dangerous direction
    std::vector<const AlarmBand*> sorted;
    for (const auto& b : bands) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(), [this](const AlarmBand* a, const AlarmBand* b) {
        return direction == Direction::low_is_dangerous ? a->bound < b->bound
                                                        : a->bound > b->bound;
    });
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i]->severity == label) return i;
    return std::nullopt;
}

AlarmPolicy AlarmPolicy::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad policy JSON: ") + e.what());
    }
    try {
        AlarmPolicy p;
        std::string dir = j.at("direction").get<std::string>();
        if (dir == "low_is_dangerous") p.direction = Direction::low_is_dangerous;
        else if (dir == "high_is_dangerous") p.direction = Direction::high_is_dangerous;
        else throw ParseError("policy: unknown direction '" + dir + "'");
        for (const auto& jb : j.at("bands")) {
            AlarmBand b;
            b.bound = jb.at("bound").get<double>();
            b.severity = jb.at("severity").get<std::string>();
            b.message_template = jb.value("message", std::string{});
            p.bands.push_back(std::move(b));
        }
        p.validate();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad policy JSON: ") + e.what());
    }
}

AlarmPolicy AlarmPolicy::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str());
}

const AlarmBand* classify(double prediction, const AlarmPolicy& policy) {
    if (!std::isfinite(prediction))
        throw RejectedInputError("classify: non-finite prediction");
    const AlarmBand* hit = nullptr;
    if (policy.direction == Direction::low_is_dangerous) {
        // smallest bound >= prediction; boundary belongs to the lower
        // (more severe) band
        for (const auto& b : policy.bands)
            if (prediction <= b.bound && (!hit || b.bound < hit->bound)) hit = &b;
    } else {
        for (const auto& b : policy.bands)
            if (prediction >= b.bound && (!hit || b.bound > hit->bound)) hit = &b;
    }
    return hit;
}

namespace {

void replace_all_in(std::string& s, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = s.find(key, pos)) != std::string::npos) {
        s.replace(pos, key.size(), value);
        pos += value.size();
    }
}

} // namespace

std::string render_message(const AlarmBand& band, Date date, double prediction) {
    std::string msg = band.message_template.empty()
                          ? std::string("{severity}: predicted O3 {value} crosses {bound} on {date}")
                          : band.message_template;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", prediction);
    replace_all_in(msg, "{value}", buf);
    std::snprintf(buf, sizeof buf, "%.6g", band.bound);
    replace_all_in(msg, "{bound}", buf);
    replace_all_in(msg, "{severity}", band.severity);
    replace_all_in(msg, "{date}", format_date(date));
    return msg;
}

std::string event_to_json_line(const AlarmEvent& e) {
    nlohmann::json j;
    j["date"] = format_date(e.date);
    j["predicted_o3"] = e.predicted_o3;
    j["severity"] = e.severity;
    j["message"] = e.message;
    return j.dump();
}

} // namespace ozs
