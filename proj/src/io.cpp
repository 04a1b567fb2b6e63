#include "oversmooth/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace oversmooth {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "index,eigenvalue\n";
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    os << i << ',' << format_double(s.eigenvalues(i)) << '\n';
  return os.str();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream os;
  os << "bin_left,bin_right,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    os << format_double(h.bin_left[b]) << ',' << format_double(h.bin_right[b])
       << ',' << h.counts[b] << '\n';
  return os.str();
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  os << "layer,d_M,bound,log_rel_d,log_rel_bound\n";
  const double d0 = t.distances.empty() ? 0.0 : t.distances.front();
  for (std::size_t l = 0; l < t.distances.size(); ++l) {
    os << l << ',' << format_double(t.distances[l]) << ','
       << format_double(t.bounds[l]) << ',';
    if (d0 > 0.0) {
      os << format_double(std::log(t.distances[l] / d0)) << ','
         << format_double(std::log(t.bounds[l] / d0));
    } else {
      os << ',';
    }
    os << '\n';
  }
  return os.str();
}

std::string field_csv(const std::vector<FieldSample>& samples) {
  std::ostringstream os;
  os << "x1,x2,v1,v2,speed,d_before,d_after\n";
  for (const auto& s : samples)
    os << format_double(s.x1) << ',' << format_double(s.x2) << ','
       << format_double(s.v1) << ',' << format_double(s.v2) << ','
       << format_double(s.speed) << ',' << format_double(s.d_before) << ','
       << format_double(s.d_after) << '\n';
  return os.str();
}

std::string markov_csv(const MarkovTrace& t) {
  std::ostringstream os;
  os << "step,d_M,bound,tv_uniform\n";
  for (std::size_t l = 0; l < t.distances.size(); ++l)
    os << l << ',' << format_double(t.distances[l]) << ','
       << format_double(t.bounds[l]) << ',' << format_double(t.tv_uniform[l])
       << '\n';
  return os.str();
}

namespace {

ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["allowed_violations"] = r.allowed_violations;
  j["passed"] = r.passed();
  if (std::isfinite(r.worst_slack))
    j["worst_slack"] = r.worst_slack;
  else
    j["worst_slack"] = nullptr;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  if (r.payload) j["payload"] = ordered_json::parse(*r.payload);
  return j;
}

}  // namespace

std::string report_json(const VerificationReport& r) {
  return report_to_json(r).dump(2) + "\n";
}

std::string reports_json(const std::vector<VerificationReport>& rs) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rs) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string trajectory_svg(const Trajectory& t) {
  const int width = 480, height = 320, margin = 40;
  const double d0 = t.distances.empty() ? 0.0 : t.distances.front();
  std::vector<double> ys_d, ys_b;
  double ymin = 0.0, ymax = 0.0;
  for (std::size_t l = 0; l < t.distances.size(); ++l) {
    const double yd =
        d0 > 0.0 && t.distances[l] > 0.0 ? std::log(t.distances[l] / d0) : NAN;
    const double yb =
        d0 > 0.0 && t.bounds[l] > 0.0 ? std::log(t.bounds[l] / d0) : NAN;
    ys_d.push_back(yd);
    ys_b.push_back(yb);
    for (double y : {yd, yb})
      if (std::isfinite(y)) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
  }
  if (ymax == ymin) ymax = ymin + 1.0;
  const double layers = std::max<std::size_t>(t.distances.size(), 2) - 1.0;

  auto px = [&](std::size_t l) {
    return margin + (width - 2 * margin) * (l / layers);
  };
  auto py = [&](double y) {
    return height - margin - (height - 2 * margin) * ((y - ymin) / (ymax - ymin));
  };
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t l = 0; l < ys.size(); ++l)
      if (std::isfinite(ys[l]))
        os << format_double(px(l)) << ',' << format_double(py(ys[l])) << ' ';
    os << "\"/>\n";
    return os.str();
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << polyline(ys_d, "#1f77b4") << polyline(ys_b, "#d62728")
     << "<text x=\"" << margin << "\" y=\"20\" font-size=\"12\">"
     << "log relative distance (blue) vs bound (red)</text>\n"
     << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace oversmooth
