#pragma once

#include <optional>
#include <span>

namespace ozs {

/// Pearson product-moment correlation. Throws UndefinedCorrelationError when
/// either argument is constant (or shorter than 2).
double pearson(std::span<const double> predicted, std::span<const double> actual);

/// Non-throwing variant used where an undefined correlation is reported
/// rather than raised.
std::optional<double> pearson_opt(std::span<const double> predicted,
                                  std::span<const double> actual);

double rmse(std::span<const double> predicted, std::span<const double> actual);
double mae(std::span<const double> predicted, std::span<const double> actual);

} // namespace ozs
