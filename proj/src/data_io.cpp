#include "medialcorr/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace medialcorr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string strip(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
  const std::string cell = strip(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw IoError("row " + std::to_string(row) + ", column '" + column + "': cannot parse '" +
                  raw + "' as a finite number");
  }
  return value;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_3dp(double v) {
  double r = std::round(v * 1000.0) / 1000.0;
  if (r == 0.0) r = 0.0;  // never print -0.000
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", r);
  return buf;
}

std::vector<std::string> effective_labels(const CoefficientsReport& report) {
  if (static_cast<int>(report.labels.size()) == report.d) return report.labels;
  std::vector<std::string> labels(report.d);
  for (int i = 0; i < report.d; ++i) labels[i] = "u" + std::to_string(i + 1);
  return labels;
}

}  // namespace

DataMatrix load_csv(const std::string& path, const CsvSpec& spec) {
  require(spec.delimiter == ',' || spec.delimiter == ';', "delimiter must be ',' or ';'");
  require(spec.columns.size() >= 2, "select at least 2 columns");

  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw IoError("'" + path + "' is empty");

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (spec.has_header) {
    for (auto& h : split(lines[0], spec.delimiter)) header.push_back(strip(h));
    first_data = 1;
  } else {
    const std::size_t width = split(lines[0], spec.delimiter).size();
    for (std::size_t i = 0; i < width; ++i) header.push_back("c" + std::to_string(i));
  }

  std::vector<int> picked;
  std::vector<std::string> labels;
  std::set<int> seen;
  for (const auto& sel : spec.columns) {
    int idx = -1;
    if (std::holds_alternative<int>(sel)) {
      idx = std::get<int>(sel);
      require(idx >= 0 && idx < static_cast<int>(header.size()),
              "column index " + std::to_string(idx) + " out of range");
    } else {
      const std::string& name = std::get<std::string>(sel);
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw IoError("unknown column name '" + name + "'");
      idx = static_cast<int>(it - header.begin());
    }
    require(seen.insert(idx).second, "column '" + header[idx] + "' selected twice");
    picked.push_back(idx);
    labels.push_back(header[idx]);
  }

  const std::size_t rows = lines.size() - first_data;
  if (rows < 2) throw IoError("'" + path + "' has fewer than 2 data rows");

  DataMatrix data;
  data.labels = labels;
  data.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto fields = split(lines[first_data + r], spec.delimiter);
    if (fields.size() != header.size()) {
      throw IoError("row " + std::to_string(r + 1) + " has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < picked.size(); ++c) {
      data.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_cell(fields[picked[c]], r + 1, labels[c]);
    }
  }
  return data;
}

void write_matrix_csv(const Eigen::MatrixXd& values, const std::vector<std::string>& labels,
                      const std::string& path) {
  require(labels.empty() || static_cast<Eigen::Index>(labels.size()) == values.cols(),
          "label count does not match the column count");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  if (!labels.empty()) out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      out << (c ? "," : "") << format_full(values(r, c));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_batch_csv(const SampleBatch& batch, const std::string& path) {
  std::vector<std::string> labels(batch.d());
  for (int i = 0; i < batch.d(); ++i) labels[i] = "u" + std::to_string(i + 1);
  write_matrix_csv(batch.u, labels, path);
}

nlohmann::ordered_json report_to_json(const CoefficientsReport& report,
                                      const BootstrapResult* ci) {
  nlohmann::ordered_json j;
  j["d"] = report.d;
  j["beta"] = report.beta;
  j["components"] = std::vector<double>(report.components.data(),
                                        report.components.data() + report.components.size());
  j["beta_star"] = report.beta_star;
  j["beta_nelsen"] = report.beta_nelsen;
  j["beta_pairwise_avg"] = report.beta_pairwise_avg;
  j["source"] = report.source == ReportSource::exact ? "exact" : "empirical";
  if (report.source == ReportSource::empirical) j["n"] = report.n;
  if (!report.labels.empty()) j["labels"] = report.labels;
  if (ci != nullptr) {
    nlohmann::ordered_json jc;
    jc["level"] = ci->level;
    jc["replicates"] = ci->replicates;
    jc["beta"] = {ci->beta.lo, ci->beta.hi};
    auto comps = nlohmann::ordered_json::array();
    for (const auto& iv : ci->components) comps.push_back({iv.lo, iv.hi});
    jc["components"] = std::move(comps);
    j["ci"] = std::move(jc);
  }
  return j;
}

CoefficientsReport report_from_json(const nlohmann::json& j) {
  CoefficientsReport report;
  report.d = j.at("d").get<int>();
  report.beta = j.at("beta").get<double>();
  const auto comps = j.at("components").get<std::vector<double>>();
  report.components = Eigen::Map<const Eigen::VectorXd>(comps.data(),
                                                        static_cast<Eigen::Index>(comps.size()));
  report.beta_star = j.at("beta_star").get<double>();
  report.beta_nelsen = j.at("beta_nelsen").get<double>();
  report.beta_pairwise_avg = j.at("beta_pairwise_avg").get<double>();
  const auto source = j.at("source").get<std::string>();
  require(source == "exact" || source == "empirical", "unknown report source '" + source + "'");
  report.source = source == "exact" ? ReportSource::exact : ReportSource::empirical;
  if (j.contains("n")) report.n = j.at("n").get<std::int64_t>();
  if (j.contains("labels")) report.labels = j.at("labels").get<std::vector<std::string>>();
  return report;
}

std::string format_report_table(const CoefficientsReport& report) {
  const auto labels = effective_labels(report);
  std::vector<std::string> rests(report.d);
  for (int i = 0; i < report.d; ++i) {
    std::string rest = "{";
    bool first = true;
    for (int k = 0; k < report.d; ++k) {
      if (k == i) continue;
      rest += (first ? "" : ", ") + labels[k];
      first = false;
    }
    rests[i] = rest + "}";
  }
  std::size_t w1 = std::string("variable").size(), w2 = std::string("complement").size();
  for (int i = 0; i < report.d; ++i) {
    w1 = std::max(w1, labels[i].size());
    w2 = std::max(w2, rests[i].size());
  }

  std::ostringstream out;
  const auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  out << pad("variable", w1) << "  " << pad("complement", w2) << "  " << "  beta_i" << "    beta"
      << '\n';
  const int beta_row = (report.d - 1) / 2;
  for (int i = 0; i < report.d; ++i) {
    char num[16];
    std::snprintf(num, sizeof(num), "%8s", format_3dp(report.components[i]).c_str());
    out << pad(labels[i], w1) << "  " << pad(rests[i], w2) << "  " << num;
    if (i == beta_row) {
      std::snprintf(num, sizeof(num), "%8s", format_3dp(report.beta).c_str());
      out << num;
    }
    out << '\n';
  }
  return out.str();
}

void write_report(const CoefficientsReport& report, std::ostream& out, ReportFormat format,
                  const BootstrapResult* ci) {
  if (format == ReportFormat::json) {
    out << report_to_json(report, ci).dump(2) << '\n';
  } else {
    out << format_report_table(report);
    if (ci != nullptr) {
      out << "beta " << static_cast<int>(ci->level * 100 + 0.5) << "% CI: ["
          << format_3dp(ci->beta.lo) << ", " << format_3dp(ci->beta.hi) << "] ("
          << ci->replicates << " replicates)\n";
    }
  }
}

void write_report(const CoefficientsReport& report, const std::string& path, ReportFormat format,
                  const BootstrapResult* ci) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_report(report, out, format, ci);
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace medialcorr
