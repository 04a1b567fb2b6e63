#pragma once

#include <string>
#include <vector>

#include "oversmooth/dynamics.hpp"
#include "oversmooth/oracles.hpp"
#include "oversmooth/spectral.hpp"

namespace oversmooth {

/// Shortest round-trip decimal representation ('.' decimal point, no locale,
/// up to 17 significant digits). Used for every CSV and JSON number so
/// identical runs produce byte-identical artifacts.
std::string format_double(double v);

std::string spectrum_csv(const Spectrum& s);
std::string histogram_csv(const Histogram& h);
/// Columns: layer,d_M,bound,log_rel_d,log_rel_bound (natural log; empty
/// fields when d(X^(0)) = 0).
std::string trajectory_csv(const Trajectory& t);
std::string field_csv(const std::vector<FieldSample>& samples);
std::string markov_csv(const MarkovTrace& t);

std::string report_json(const VerificationReport& r);
std::string reports_json(const std::vector<VerificationReport>& rs);

/// Minimal SVG line chart of log-relative distance vs bound.
std::string trajectory_svg(const Trajectory& t);

void write_file(const std::string& path, const std::string& content);

}  // namespace oversmooth
