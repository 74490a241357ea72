#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ozs {

using Date = std::chrono::sys_days;

Date parse_date(const std::string& text); // "YYYY-MM-DD"
std::string format_date(Date d);

/// A daily sensor sequence: ozone plus optional UV / total-solar-radiation
/// channels. Dates are consecutive calendar days; gaps are rejected on
/// ingestion rather than filled.
struct Series {
    std::vector<Date> dates;
    std::vector<double> o3;
    std::vector<double> uv;   // empty when the channel is absent
    std::vector<double> tsr;  // empty when the channel is absent

    std::size_t size() const { return o3.size(); }
    bool has_sensors() const { return !uv.empty() && !tsr.empty(); }

    void validate() const; // length/ordering/gap/finiteness invariants
};

// CSV: header `date,o3[,uv,tsr]`, dates YYYY-MM-DD, UTF-8, comma separated.
Series load_csv(const std::filesystem::path& path);
void save_csv(const Series& s, const std::filesystem::path& path);

enum class SynthKind { seasonal_ar, mackey_glass };

SynthKind synth_kind_from_string(const std::string& name);

constexpr std::size_t kMinSynthLength = 100;

/// Deterministic synthetic daily series starting at `start` (default
/// 2000-01-01). seasonal_ar: base + 365-day sine + AR(1) driven by seeded
/// Gaussian noise, with correlated seasonal uv/tsr channels. mackey_glass:
/// the delay-17 benchmark series mapped onto the o3 channel.
Series synth_series(SynthKind kind, std::size_t length, std::uint64_t seed,
                    double noise_level,
                    Date start = Date{std::chrono::year{2000} / 1 / 1});

} // namespace ozs
