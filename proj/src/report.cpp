#include "wrinkle/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

constexpr const char* kSweepHeader =
    "h,delta,N,n_nodes,M,k_max,min_F0,min_Fh,E_h_ansatz,epsilon,epsilon_fh,B_max,"
    "sigma_defect,sup_slope,onset,status,runtime_s";

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("csv.number", "cannot parse number '" + std::string(s) + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

nlohmann::json fit_json(std::span<const double> x, std::span<const double> y) {
  try {
    const SlopeFit f = fit_slope(x, y, 0.0);
    return {{"slope", f.slope},   {"stderr", f.stderr_slope}, {"intercept", f.intercept},
            {"points", f.points}, {"decades", f.decades}};
  } catch (const ValidationError& e) {
    return {{"error", e.code()}, {"points", x.size()}};
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const SweepRecord& r : records) {
    const double nums[] = {r.h,        r.delta,        r.min_F0,    r.min_Fh,
                           r.E_h_ansatz, r.epsilon,    r.epsilon_fh, r.B_max,
                           r.sigma_defect, r.sup_slope, r.onset};
    out += format_double(nums[0]) + "," + format_double(nums[1]) + "," + std::to_string(r.N) +
           "," + std::to_string(r.n_nodes) + "," + std::to_string(r.M) + "," +
           std::to_string(r.k_max);
    for (std::size_t i = 2; i < std::size(nums); ++i) out += "," + format_double(nums[i]);
    out += "," + r.status + "," + format_double(r.runtime_s) + "\n";
  }
  return out;
}

std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader)
    throw ValidationError("csv.header", "unexpected sweep.csv header");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 17) throw ValidationError("csv.row", "sweep.csv row has wrong field count");
    SweepRecord r;
    r.h = parse_double(f[0]);
    r.delta = parse_double(f[1]);
    r.N = static_cast<int>(parse_double(f[2]));
    r.n_nodes = static_cast<std::size_t>(parse_double(f[3]));
    r.M = static_cast<std::size_t>(parse_double(f[4]));
    r.k_max = static_cast<int>(parse_double(f[5]));
    r.min_F0 = parse_double(f[6]);
    r.min_Fh = parse_double(f[7]);
    r.E_h_ansatz = parse_double(f[8]);
    r.epsilon = parse_double(f[9]);
    r.epsilon_fh = parse_double(f[10]);
    r.B_max = parse_double(f[11]);
    r.sigma_defect = parse_double(f[12]);
    r.sup_slope = parse_double(f[13]);
    r.onset = parse_double(f[14]);
    r.status = std::string(f[15]);
    r.runtime_s = parse_double(f[16]);
    out.push_back(r);
  }
  return out;
}

std::string summary_json(const SheetParams& p, std::span<const SweepRecord> records,
                         std::span<const Lemma1Case> lemma1) {
  nlohmann::json j;
  j["params"] = {{"alpha_s", p.alpha_s}, {"r0", p.r0}, {"R", p.R}};
  j["reference"] = "min-F0";

  std::vector<double> h, eps, h_sup, sup;
  nlohmann::json failed = nlohmann::json::array();
  double b_over_h = 0.0;
  bool all_positive = true;
  for (const SweepRecord& r : records) {
    if (!r.ok()) {
      failed.push_back({{"h", r.h}, {"status", r.status}});
      continue;
    }
    all_positive = all_positive && r.epsilon > 0.0;
    if (r.epsilon > 0.0) {
      h.push_back(r.h);
      eps.push_back(r.epsilon);
    }
    if (r.sup_slope > 0.0) {
      h_sup.push_back(r.h);
      sup.push_back(r.sup_slope);
    }
    b_over_h = std::max(b_over_h, r.B_max / r.h);
  }
  j["records"] = records.size();
  j["failed"] = failed;
  j["epsilon_positive_everywhere"] = all_positive;
  j["epsilon_fit"] = fit_json(h, eps);
  // sup |d_theta w_osc| ~ h^{-exponent}: report the negated slope
  nlohmann::json sup_fit = fit_json(h_sup, sup);
  if (sup_fit.contains("slope")) sup_fit["exponent"] = -sup_fit["slope"].get<double>();
  j["slope_growth_fit"] = sup_fit;

  const BoundFits b = fit_bounds(records);
  j["bounds"] = {{"points", b.points},
                 {"c0_fitted", b.c0},
                 {"c1_fitted", b.c1},
                 {"epsilon_over_h_min", b.ratio_min},
                 {"epsilon_over_h_max", b.ratio_max}};
  j["B_max_over_h"] = b_over_h;

  if (!lemma1.empty()) {
    std::size_t holds = 0;
    for (const auto& c : lemma1) holds += c.holds ? 1 : 0;
    j["lemma1"] = {{"cases", lemma1.size()}, {"holds", holds}};
  }
  return j.dump(2) + "\n";
}

std::string epsilon_svg(std::span<const SweepRecord> records) {
  std::vector<std::pair<double, double>> pts;
  for (const SweepRecord& r : records)
    if (r.ok() && r.epsilon > 0.0) pts.emplace_back(r.h, r.epsilon);

  constexpr double W = 640, H = 480, L = 80, Rm = 20, T = 20, Bm = 60;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
    << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  if (pts.empty()) {
    s << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
      << "\" text-anchor=\"middle\">no positive excess energy to plot</text>\n</svg>\n";
    return s.str();
  }

  const BoundFits b = fit_bounds(records);
  auto envelope = [&](double h) { return kappa(1.0 / h, b.c1) * h; };
  double hx0 = pts.front().first, hx1 = hx0, y0 = pts.front().second, y1 = y0;
  for (auto [h, e] : pts) {
    hx0 = std::min(hx0, h);
    hx1 = std::max(hx1, h);
    y0 = std::min(y0, e);
    y1 = std::max({y1, e, envelope(h)});
  }
  const double lx0 = std::log10(hx0) - 0.1, lx1 = std::log10(hx1) + 0.1;
  const double ly0 = std::log10(y0) - 0.2, ly1 = std::log10(y1) + 0.2;
  auto X = [&](double h) { return L + (std::log10(h) - lx0) / (lx1 - lx0) * (W - L - Rm); };
  auto Y = [&](double y) { return H - Bm - (std::log10(y) - ly0) / (ly1 - ly0) * (H - T - Bm); };

  s << "<g stroke=\"black\" fill=\"none\">\n"
    << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - Rm << "\" height=\""
    << H - T - Bm << "\"/>\n</g>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<text x=\"" << (L + W - Rm) / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\">h</text>\n"
    << "<text x=\"20\" y=\"" << (T + H - Bm) / 2 << "\" transform=\"rotate(-90 20 "
    << (T + H - Bm) / 2 << ")\" text-anchor=\"middle\">excess energy</text>\n";
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e)
    s << "<text x=\"" << X(std::pow(10.0, e)) << "\" y=\"" << H - Bm + 18
      << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e)
    s << "<text x=\"" << L - 6 << "\" y=\"" << Y(std::pow(10.0, e)) + 4
      << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  s << "</g>\n";

  constexpr int kSteps = 50;
  auto curve = [&](auto f, const char* style) {
    s << "<polyline fill=\"none\" " << style << " points=\"";
    for (int i = 0; i <= kSteps; ++i) {
      const double h = std::pow(10.0, std::log10(hx0) + (std::log10(hx1) - std::log10(hx0)) * i / kSteps);
      s << X(h) << "," << Y(f(h)) << (i < kSteps ? " " : "");
    }
    s << "\"/>\n";
  };
  if (pts.size() >= 2) {
    std::vector<double> hs, es;
    for (auto [h, e] : pts) {
      hs.push_back(h);
      es.push_back(e);
    }
    double slope = 0, intercept = 0;
    if (pts.size() >= 4) {
      const SlopeFit f = fit_slope(hs, es, 0.0);
      slope = f.slope;
      intercept = f.intercept;
    } else {
      slope = std::log(es.back() / es.front()) / std::log(hs.back() / hs.front());
      intercept = std::log(es.front()) - slope * std::log(hs.front());
    }
    curve([&](double h) { return std::exp(intercept + slope * std::log(h)); },
          "stroke=\"steelblue\" stroke-width=\"1.5\"");
  }
  curve(envelope, "stroke=\"gray\" stroke-dasharray=\"6,4\"");
  s << "<g fill=\"firebrick\">\n";
  for (auto [h, e] : pts)
    s << "<circle cx=\"" << X(h) << "\" cy=\"" << Y(e) << "\" r=\"4\"/>\n";
  s << "</g>\n"
    << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<text x=\"" << L + 10 << "\" y=\"" << T + 16
    << "\" fill=\"steelblue\">least-squares fit</text>\n"
    << "<text x=\"" << L + 10 << "\" y=\"" << T + 32
    << "\" fill=\"gray\">kappa(1/h) h envelope, c1 fitted</text>\n"
    << "</g>\n</svg>\n";
  return s.str();
}

std::string energy_json(const Decomposition& dec, Reference reference, double reference_value) {
  const EnergyBreakdown& b = dec.full;
  nlohmann::json j;
  j["full"] = {{"membrane_radial", b.membrane_radial},
               {"membrane_hoop", b.membrane_hoop},
               {"shear", b.shear},
               {"bending_azimuthal", b.bending_azimuthal},
               {"bending_radial", b.bending_radial},
               {"bending_twist", b.bending_twist},
               {"substrate", b.substrate},
               {"total", b.total}};
  j["decomposition"] = {{"effective_radial", dec.effective_radial},
                        {"circle", dec.circle},
                        {"substrate_mean", dec.substrate_mean},
                        {"bending_mean", dec.bending_mean},
                        {"remainder",
                         {{"T1", b.remainder[0]},
                          {"T2", b.remainder[1]},
                          {"T3", b.remainder[2]},
                          {"T4", b.remainder[3]},
                          {"T5", b.remainder[4]}}},
                        {"total", dec.total},
                        {"relative_error", dec.relative_error}};
  j["reference"] = {{"kind", std::string(to_string(reference))}, {"value", reference_value}};
  j["excess"] = b.total - reference_value;
  return j.dump(2) + "\n";
}

std::string lemma1_csv(std::span<const Lemma1Case> cases) {
  std::string out = "rho0,rho1,delta,lhs,rhs,holds\n";
  for (const auto& c : cases)
    out += format_double(c.rho0) + "," + format_double(c.rho1) + "," +
           format_double(c.delta_param) + "," + format_double(c.lhs) + "," +
           format_double(c.rhs) + "," + (c.holds ? "1" : "0") + "\n";
  return out;
}

std::string columns_csv(std::span<const std::string> header,
                        std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size())
    throw ValidationError("csv.columns", "header and column counts differ");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns)
    if (col.size() != rows) throw ValidationError("csv.columns", "columns differ in length");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out += (c ? "," : "") + format_double(columns[c][i]);
    out += "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ValidationError("io.write", "cannot write " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("io.read", "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace wrinkle
