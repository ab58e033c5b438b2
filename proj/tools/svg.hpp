#pragma once

#include "regaudit/distributions.hpp"
#include "regaudit/importance.hpp"

#include <string>

namespace regaudit::cli {

/// Horizontal bands from share_lower to share_upper, notched at share_point.
std::string importance_svg(const std::string& title, const ImportanceReport& report);

/// Density polyline.
std::string density_svg(const std::string& title, const DensityCurve& curve);

} // namespace regaudit::cli
