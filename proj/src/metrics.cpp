#include "ozs/metrics.hpp"

#include "ozs/errors.hpp"
#include "ozs/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ozs {

std::optional<double> pearson_opt(std::span<const double> predicted,
                                  std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw ContractError("pearson: length mismatch");
    const double n = double(predicted.size());
    if (predicted.size() < 2) return std::nullopt;

    auto m = kern::comoments(predicted, actual);
    double var_x = m.sxx - m.sx * m.sx / n;
    double var_y = m.syy - m.sy * m.sy / n;
    double cov = m.sxy - m.sx * m.sy / n;
    if (var_x <= 0.0 || var_y <= 0.0) return std::nullopt;
    double r = cov / std::sqrt(var_x * var_y);
    return std::clamp(r, -1.0, 1.0);
}

double pearson(std::span<const double> predicted, std::span<const double> actual) {
    auto r = pearson_opt(predicted, actual);
    if (!r)
        throw UndefinedCorrelationError(
            "correlation undefined: constant input or fewer than 2 samples");
    return *r;
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) throw ContractError("rmse: length mismatch");
    if (predicted.empty()) throw ContractError("rmse: empty input");
    return std::sqrt(kern::sum_sq_diff(predicted, actual) / double(predicted.size()));
}

double mae(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) throw ContractError("mae: length mismatch");
    if (predicted.empty()) throw ContractError("mae: empty input");
    return kern::sum_abs_diff(predicted, actual) / double(predicted.size());
}

} // namespace ozs
