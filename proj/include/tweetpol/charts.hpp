#pragma once

#include <string>

#include "tweetpol/election.hpp"

namespace tweetpol::charts {

/// Standalone SVG document for a pie or bar chart. Output depends only on the
/// spec, so repeated runs produce identical bytes.
std::string render_svg(const election::ChartSpec& chart);

/// "category,value" lines with a header; undefined values are written as
/// "undefined".
std::string render_sidecar(const election::ChartSpec& chart);

}  // namespace tweetpol::charts
