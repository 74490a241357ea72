#include "ozs/series.hpp"

#include "ozs/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace ozs {

Date parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
        throw ParseError("bad date '" + text + "' (expected YYYY-MM-DD)");
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw ParseError("invalid calendar date '" + text + "'");
    return Date{ymd};
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

void Series::validate() const {
    const std::size_t n = o3.size();
    if (dates.size() != n || (!uv.empty() && uv.size() != n) ||
        (!tsr.empty() && tsr.size() != n))
        throw ContractError("series channels have mismatched lengths");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(o3[i]) || (!uv.empty() && !std::isfinite(uv[i])) ||
            (!tsr.empty() && !std::isfinite(tsr[i])))
            throw RejectedInputError("non-finite value at " + format_date(dates[i]));
        if (i > 0) {
            if (dates[i] <= dates[i - 1])
                throw OrderingError("dates not strictly increasing at " +
                                    format_date(dates[i]));
            if (dates[i] != dates[i - 1] + std::chrono::days{1})
                throw GapError("missing day " +
                               format_date(dates[i - 1] + std::chrono::days{1}));
        }
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& cell, const std::string& column, std::size_t line_no) {
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !std::isfinite(v))
        throw ParseError("line " + std::to_string(line_no) + ": bad value '" + cell +
                         "' in column " + column);
    return v;
}

} // namespace

Series load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date" || header[1] != "o3")
        throw ParseError(path.string() + ": header must start with 'date,o3'");
    int uv_col = -1, tsr_col = -1;
    for (std::size_t c = 2; c < header.size(); ++c) {
        if (header[c] == "uv" && uv_col < 0) uv_col = int(c);
        else if (header[c] == "tsr" && tsr_col < 0) tsr_col = int(c);
        else throw ParseError(path.string() + ": unknown column '" + header[c] + "'");
    }

    Series s;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " columns, got " +
                             std::to_string(cells.size()));
        Date d;
        try {
            d = parse_date(cells[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!s.dates.empty()) {
            if (d <= s.dates.back())
                throw OrderingError("line " + std::to_string(line_no) +
                                    ": date " + cells[0] + " not after " +
                                    format_date(s.dates.back()));
            if (d != s.dates.back() + std::chrono::days{1})
                throw GapError("line " + std::to_string(line_no) + ": missing day " +
                               format_date(s.dates.back() + std::chrono::days{1}));
        }
        s.dates.push_back(d);
        s.o3.push_back(parse_number(cells[1], "o3", line_no));
        if (uv_col >= 0) s.uv.push_back(parse_number(cells[std::size_t(uv_col)], "uv", line_no));
        if (tsr_col >= 0) s.tsr.push_back(parse_number(cells[std::size_t(tsr_col)], "tsr", line_no));
    }
    if (s.size() == 0) throw InsufficientDataError(path.string() + ": no data rows");
    s.validate();
    return s;
}

void save_csv(const Series& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "date,o3";
    if (s.has_sensors()) out << ",uv,tsr";
    out << "\n";
    char buf[128];
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_date(s.dates[i]);
        std::snprintf(buf, sizeof buf, ",%.17g", s.o3[i]);
        out << buf;
        if (s.has_sensors()) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g", s.uv[i], s.tsr[i]);
            out << buf;
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

SynthKind synth_kind_from_string(const std::string& name) {
    if (name == "seasonal_ar") return SynthKind::seasonal_ar;
    if (name == "mackey_glass") return SynthKind::mackey_glass;
    throw ConfigError("unknown synth kind '" + name + "'");
}

namespace {

Series synth_seasonal_ar(std::size_t n, std::uint64_t seed, double noise_level, Date start) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double two_pi = 6.283185307179586476925;
    const double period = 365.25;
    const double noise_sd = 100.0 * noise_level;

    Series s;
    s.dates.reserve(n);
    s.o3.reserve(n);
    s.uv.reserve(n);
    s.tsr.reserve(n);
    double ar = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double phase = two_pi * double(t) / period;
        // Draw all three innovations every day so channel streams stay
        // aligned for any noise_level.
        double e1 = gauss(rng), e2 = gauss(rng), e3 = gauss(rng);
        ar = 0.7 * ar + noise_sd * e1;
        s.dates.push_back(start + std::chrono::days{long(t)});
        s.o3.push_back(300.0 + 40.0 * std::sin(phase) + ar);
        s.uv.push_back(10.0 + 3.0 * std::sin(phase + 0.2) + 0.02 * noise_sd * e2);
        s.tsr.push_back(200.0 + 80.0 * std::sin(phase + 0.1) + 0.5 * noise_sd * e3);
    }
    return s;
}

Series synth_mackey_glass(std::size_t n, std::uint64_t seed, double noise_level, Date start) {
    // dx/dt = 0.2 x(t-17) / (1 + x(t-17)^10) - 0.1 x(t), RK4 with dt = 0.1,
    // sampled once per unit time. Seed only perturbs the initial condition.
    const double dt = 0.1;
    const int steps_per_sample = 10;
    const int delay_steps = int(17.0 / dt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    const double x0 = 1.2 + u(rng);

    auto deriv = [](double x, double xd) {
        return 0.2 * xd / (1.0 + std::pow(xd, 10)) - 0.1 * x;
    };

    std::vector<double> hist(std::size_t(delay_steps) + 1, x0);
    double x = x0;
    std::size_t head = 0; // hist[head] is x(t - 17)

    const std::size_t burn_in = 100; // settle onto the attractor
    std::mt19937_64 noise_rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Series s;
    s.dates.reserve(n);
    s.o3.reserve(n);
    for (std::size_t sample = 0; sample < burn_in + n; ++sample) {
        for (int k = 0; k < steps_per_sample; ++k) {
            double xd = hist[head];
            double k1 = deriv(x, xd);
            double k2 = deriv(x + 0.5 * dt * k1, xd);
            double k3 = deriv(x + 0.5 * dt * k2, xd);
            double k4 = deriv(x + dt * k3, xd);
            x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            hist[head] = x;
            head = (head + 1) % hist.size();
        }
        if (sample >= burn_in) {
            std::size_t t = sample - burn_in;
            s.dates.push_back(start + std::chrono::days{long(t)});
            s.o3.push_back(100.0 + 100.0 * x + 10.0 * noise_level * gauss(noise_rng));
        }
    }
    return s;
}

} // namespace

Series synth_series(SynthKind kind, std::size_t length, std::uint64_t seed,
                    double noise_level, Date start) {
    if (length < kMinSynthLength)
        throw InsufficientDataError("synthetic series length must be >= " +
                                    std::to_string(kMinSynthLength));
    if (noise_level < 0.0) throw ConfigError("noise_level must be >= 0");
    Series s = (kind == SynthKind::seasonal_ar)
                   ? synth_seasonal_ar(length, seed, noise_level, start)
                   : synth_mackey_glass(length, seed, noise_level, start);
    s.validate();
    return s;
}

} // namespace ozs
