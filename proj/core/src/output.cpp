// Copyright 2026 The viscodelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "viscodelay/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace viscodelay {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

void write_energy_header(std::ostream& out, std::string_view config_json) {
  out << "# config: " << config_json << '\n' << kEnergyCsvHeader << '\n';
}

void write_energy_row(std::ostream& out, double t, const EnergyBreakdown& e) {
  out << format_number(t) << ',' << format_number(e.total) << ',' << format_number(e.kinetic)
      << ',' << format_number(e.elastic) << ',' << format_number(e.memory) << ','
      << format_number(e.delay) << '\n';
}

void write_energy_csv(std::ostream& out, const Trace& trace, std::string_view config_json) {
  write_energy_header(out, config_json);
  for (std::size_t i = 0; i < trace.size(); ++i) write_energy_row(out, trace.times[i], trace.energy[i]);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     std::string_view config_json) {
  out << "# config: " << config_json << '\n' << kSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_number(row.k) << ',' << format_number(row.sigma_emp) << ','
        << format_number(row.r_squared) << ',' << row.classification << ','
        << (row.certified ? "true" : "false") << ','
        << (row.theorem_bound_ok ? (*row.theorem_bound_ok ? "true" : "false") : "na") << '\n';
  }
}

namespace {

std::string escape_comment(std::string_view text) {
  std::string out;
  for (char c : text) {
    out += c;
    if (c == '-' && out.size() >= 2 && out[out.size() - 2] == '-') out.back() = '_';
  }
  return out;
}

std::string fixed(double v, int digits = 1) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

std::string energy_svg(std::span<const double> times, std::span<const double> totals,
                       std::optional<double> envelope_rate, std::string_view config_json) {
  constexpr double width = 720, height = 440;
  constexpr double left = 80, right = 30, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const double t_max = times.empty() ? 1.0 : std::max(times.back(), 1e-12);
  const double f0 = totals.empty() ? 0.0 : totals.front();

  // Decade range over the positive samples; at most 30 decades shown.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double f : totals)
    if (f > 0.0) {
      lo = std::min(lo, std::log10(f));
      hi = std::max(hi, std::log10(f));
    }
  if (envelope_rate && f0 > 0.0) hi = std::max(hi, std::log10(f0 * std::numbers::e));
  if (!std::isfinite(lo)) {
    lo = -1.0;
    hi = 1.0;
  }
  double y_top = std::ceil(hi);
  double y_bottom = std::floor(std::max(lo, y_top - 30.0));
  if (y_top - y_bottom < 1.0) y_bottom = y_top - 1.0;

  auto px = [&](double t) { return left + plot_w * t / t_max; };
  auto py = [&](double log_f) {
    const double c = std::clamp(log_f, y_bottom, y_top);
    return top + plot_h * (y_top - c) / (y_top - y_bottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<!-- config: " << escape_comment(config_json) << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int decades = static_cast<int>(y_top - y_bottom);
  const int step = std::max(1, decades / 10);
  for (int d = static_cast<int>(y_bottom); d <= static_cast<int>(y_top); d += step) {
    const double y = py(d);
    svg << "<line x1=\"" << left << "\" y1=\"" << fixed(y) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << fixed(y) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">1e"
        << d << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double t = t_max * i / 5.0;
    const double x = px(t);
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(x)
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(x) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\">" << format_number(std::round(t * 1000) / 1000) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">t</text>\n";
  svg << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">F(t)</text>\n";

  // Thin long traces to about 2000 vertices.
  const std::size_t stride = std::max<std::size_t>(1, times.size() / 2000);
  auto polyline = [&](auto value_at, const char* colour, const char* dash) {
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << dash
        << " points=\"";
    for (std::size_t i = 0; i < times.size(); i += stride) {
      const double f = value_at(i);
      if (!(f > 0.0)) continue;
      svg << fixed(px(times[i]), 2) << ',' << fixed(py(std::log10(f)), 2) << ' ';
    }
    if (!times.empty() && (times.size() - 1) % stride != 0) {
      const double f = value_at(times.size() - 1);
      if (f > 0.0) svg << fixed(px(times.back()), 2) << ',' << fixed(py(std::log10(f)), 2);
    }
    svg << "\"/>\n";
  };
  polyline([&](std::size_t i) { return totals[i]; }, "#1f4e9c", "");
  svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 << "\" fill=\"#1f4e9c\">F(t)</text>\n";
  if (envelope_rate && f0 > 0.0) {
    const double sigma = *envelope_rate;
    polyline([&](std::size_t i) { return f0 * std::exp(1.0 - sigma * times[i]); }, "#b03a2e",
             " stroke-dasharray=\"6 4\"");
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 32
        << "\" fill=\"#b03a2e\">F(0) exp(1 - sigma t), sigma = " << format_number(sigma) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace viscodelay
