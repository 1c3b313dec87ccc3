#include "revshare/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace revshare::output {
namespace {

void FlattenInto(const Json& j, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& out) {
  auto key = [&](const std::string& k) { return prefix.empty() ? k : prefix + "." + k; };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) FlattenInto(*it, key(it.key()), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) FlattenInto(j[i], key(std::to_string(i + 1)), out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

Grid ToGrid(const std::vector<Json>& rows) {
  Grid g;
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (const auto& row : rows) {
    flat.push_back(flatten(row));
    for (const auto& kv : flat.back()) {
      if (std::find(g.header.begin(), g.header.end(), kv.first) == g.header.end()) {
        g.header.push_back(kv.first);
      }
    }
  }
  for (const auto& f : flat) {
    std::vector<std::string> line(g.header.size());
    for (const auto& [k, v] : f) {
      line[std::find(g.header.begin(), g.header.end(), k) - g.header.begin()] = v;
    }
    g.cells.push_back(std::move(line));
  }
  return g;
}

std::string CsvCell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

Json outcome_body(const EquilibriumOutcome& out) {
  Json j;
  Json shares = Json::array();
  for (double b : out.contract.shares) shares.push_back(number(b));
  j["contract"] = {{"shares", shares},
                   {"joint_share", out.contract.joint_share ? number(*out.contract.joint_share)
                                                            : Json(nullptr)},
                   {"total_share", number(out.contract.total_share())}};
  Json per = Json::array();
  for (double a : out.efforts.efforts) per.push_back(number(a));
  j["efforts"] = {{"per_isp", per}, {"total", number(out.total_effort)}};
  j["demand"] = number(out.demand);
  Json isp = Json::array();
  for (double u : out.isp_utilities) isp.push_back(number(u));
  j["utilities"] = {{"cp", number(out.cp_utility)}, {"isp", isp}};
  Json res;
  res["foc"] = number(out.foc_residual);
  for (const auto& [k, v] : out.diagnostics) res[k] = number(v);
  j["residuals"] = res;
  j["degenerate"] = out.degenerate;
  return j;
}

Json report_json(const compare::ComparisonReport& rep) {
  Json j;
  j["report"] = rep.name;
  Json params;
  for (const auto& [k, v] : rep.params) params[k] = number(v);
  j["params"] = params;
  Json scen;
  for (const auto& s : rep.scenarios) {
    Json m;
    for (const auto& [k, v] : s.values) m[k] = number(v);
    m["degenerate"] = s.degenerate;
    scen[s.label] = m;
  }
  j["scenarios"] = scen;
  Json ord = Json::array();
  for (const auto& o : rep.orderings) {
    ord.push_back({{"claim", o.lhs + " " + o.metric + " " + compare::to_string(o.relation) +
                                 " " + o.rhs},
                   {"gap", number(o.gap)},
                   {"holds", o.holds}});
  }
  j["orderings"] = ord;
  j["all_hold"] = rep.all_hold();
  return j;
}

Json shapley_json(const bargaining::ShapleyReport& rep) {
  return {{"branch", rep.branch == Branch::kIsp1 ? "isp1" : "isp2"},
          {"coalition_values", {{"v1", number(rep.v1)}, {"v2", number(rep.v2)},
                                {"v12", number(rep.v12)}}},
          {"brute", {{"phi1", number(rep.brute_phi1)}, {"phi2", number(rep.brute_phi2)}}},
          {"closed", {{"phi1", number(rep.phi1)}, {"phi2", number(rep.phi2)}}},
          {"discrepancy", number(rep.discrepancy)},
          {"matches_brute", rep.matches_brute}};
}

Json checks_json(const std::vector<verify::CheckResult>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"detail", c.detail},
                   {"seconds", number(c.seconds)}});
  }
  return arr;
}

std::vector<std::pair<std::string, std::string>> flatten(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  FlattenInto(j, "", out);
  return out;
}

std::string to_csv(const std::vector<Json>& rows) {
  const auto g = ToGrid(rows);
  std::ostringstream os;
  for (std::size_t i = 0; i < g.header.size(); ++i) os << (i ? "," : "") << CsvCell(g.header[i]);
  os << '\n';
  for (const auto& line : g.cells) {
    for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << CsvCell(line[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_table(const std::vector<Json>& rows) {
  const auto g = ToGrid(rows);
  std::vector<std::size_t> width(g.header.size());
  for (std::size_t i = 0; i < g.header.size(); ++i) {
    width[i] = g.header[i].size();
    for (const auto& line : g.cells) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(g.header);
  for (const auto& line : g.cells) emit(line);
  return os.str();
}

std::string to_key_value(const Json& j) {
  const auto flat = flatten(j);
  std::size_t w = 0;
  for (const auto& kv : flat) w = std::max(w, kv.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : flat) os << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::vector<double>& x, const std::vector<Series>& series) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (double v : x) x0 = std::min(x0, v), x1 = std::max(x1, v);
  for (const auto& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!std::isfinite(y0)) y0 = 0, y1 = 1;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - (v - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << XmlEscape(title) << "</text>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
     << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
     << kTop + ph << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4, yv = y0 + (y1 - y0) * t / 4;
    os << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 15 << "\" text-anchor=\"middle\">"
       << format_number(xv) << "</text>\n";
    os << "<text x=\"" << kLeft - 5 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
       << format_number(yv) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
     << XmlEscape(x_label) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
      if (!std::isfinite(series[s].y[i])) continue;
      os << (first ? "" : " ") << px(x[i]) << ',' << py(series[s].y[i]);
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 14.0 * s + 5;
    os << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\">"
       << XmlEscape(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace revshare::output
