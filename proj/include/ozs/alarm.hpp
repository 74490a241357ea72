#pragma once

#include "ozs/errors.hpp"
#include "ozs/log.hpp"
#include "ozs/patterns.hpp"
#include "ozs/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ozs {

enum class Direction { low_is_dangerous, high_is_dangerous };

struct AlarmBand {
    double bound = 0.0;
    std::string severity;
    std::string message_template; // {value}, {bound}, {severity}, {date}
};

/// Threshold policy. For low_is_dangerous a prediction triggers the band
/// with the smallest bound >= prediction; bounds further from safety are
/// more severe. Boundary values trigger (inclusive on the dangerous side).
struct AlarmPolicy {
    Direction direction = Direction::low_is_dangerous;
    std::vector<AlarmBand> bands;

    void validate() const;
    /// 0 = most severe; used by the monotonicity property.
    std::optional<std::size_t> severity_rank(const std::string& label) const;

    static AlarmPolicy from_json_string(const std::string& text);
    static AlarmPolicy load(const std::filesystem::path& path);
};

struct AlarmEvent {
    Date date{};
    double predicted_o3 = 0.0;
    std::string severity;
    std::string message;
};

/// Band lookup; nullptr when no band triggers.
const AlarmBand* classify(double prediction, const AlarmPolicy& policy);

std::string render_message(const AlarmBand& band, Date date, double prediction);
std::string event_to_json_line(const AlarmEvent& e);

struct ReplayStep {
    Date date{};
    double prediction = 0.0;
    std::optional<AlarmEvent> event;
};

/// Read-only adapter over Series satisfying the replay view interface.
struct SeriesRef {
    const Series& s;
    std::size_t size() const { return s.size(); }
    Date date(std::size_t i) const { return s.dates[i]; }
    double o3(std::size_t i) const { return s.o3[i]; }
    double uv(std::size_t i) const { return s.uv[i]; }
    double tsr(std::size_t i) const { return s.tsr[i]; }
    bool has_sensors() const { return s.has_sensors(); }
};

/// Walks the series forward one day at a time. On each eligible day t a
/// window of data with timestamps <= t is built, the predictor is asked for
/// the next day's o3 and the policy is applied. If the view exposes
/// begin_step(t), it is invoked before any access for that day (used by the
/// causality-tracking test double). When `adapt` is set and the predictor
/// exposes adapt(window, truth), it is called once the true value arrives.
template <class SeriesView, class Predictor, class Emit>
void replay_stream(const SeriesView& view, Predictor&& predictor,
                   const AlarmPolicy& policy, PatternMode mode, std::size_t lag,
                   bool adapt, Emit&& emit) {
    policy.validate();
    const std::size_t n = view.size();
    const std::size_t window_len = (mode == PatternMode::lagged_o3) ? lag : 1;
    if (mode == PatternMode::sensors && !view.has_sensors())
        throw MissingChannelError("replay: sensors mode requires uv and tsr channels");
    if (n < window_len)
        throw InsufficientDataError("replay: series shorter than one window");

    std::vector<double> window;
    for (std::size_t t = 0; t + 1 < window_len; ++t) {
        if constexpr (requires { view.begin_step(t); }) view.begin_step(t);
        log_info("replay: skipping " + format_date(view.date(t)) +
                 " (insufficient history)");
    }

    for (std::size_t t = window_len - 1; t < n; ++t) {
        if constexpr (requires { view.begin_step(t); }) view.begin_step(t);
        window.clear();
        if (mode == PatternMode::lagged_o3) {
            for (std::size_t i = t + 1 - lag; i <= t; ++i) window.push_back(view.o3(i));
        } else {
            window.push_back(view.uv(t));
            window.push_back(view.tsr(t));
            window.push_back(view.o3(t));
        }

        ReplayStep step;
        step.date = view.date(t) + std::chrono::days{1};
        step.prediction = predictor.predict(window);

        if (const AlarmBand* band = classify(step.prediction, policy)) {
            step.event = AlarmEvent{step.date, step.prediction, band->severity,
                                    render_message(*band, step.date, step.prediction)};
        }
        emit(step);

        if (adapt && t + 1 < n) {
            if constexpr (requires { predictor.adapt(window, view.o3(t + 1)); }) {
                if constexpr (requires { view.begin_step(t + 1); }) view.begin_step(t + 1);
                predictor.adapt(window, view.o3(t + 1));
            }
        }
    }
}

template <class SeriesView, class Predictor>
std::vector<ReplayStep> replay(const SeriesView& view, Predictor&& predictor,
                               const AlarmPolicy& policy, PatternMode mode,
                               std::size_t lag, bool adapt = false) {
    std::vector<ReplayStep> steps;
    replay_stream(view, predictor, policy, mode, lag, adapt,
                  [&steps](const ReplayStep& s) { steps.push_back(s); });
    return steps;
}

} // namespace ozs
