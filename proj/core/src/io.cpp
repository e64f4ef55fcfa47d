#include "kci/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kci {

namespace {

// One CSV record; handles quoted fields and embedded commas/quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_double(const std::string& s, double* out) {
  std::size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return false;
  std::size_t end = s.find_last_not_of(" \t") + 1;
  const char* first = s.data() + begin;
  const char* last = s.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && std::isfinite(*out);
}

}  // namespace

std::vector<int> resolve_columns(const DataMatrix& data,
                                 const std::vector<std::string>& selectors) {
  std::vector<int> out;
  for (const auto& tok : selectors) {
    int idx = data.column_index(tok);
    if (idx < 0) {
      double v;
      if (parse_double(tok, &v) && v == std::floor(v) && v >= 0 &&
          v < static_cast<double>(data.d())) {
        idx = static_cast<int>(v);
      } else {
        throw CsvError(CsvErrorCode::missing_column,
                       "no column named '" + tok + "'");
      }
    }
    out.push_back(idx);
  }
  return out;
}

IngestResult ingest_csv(const std::string& path,
                        const std::vector<std::string>& selectors) {
  std::ifstream in(path);
  if (!in) throw CsvError(CsvErrorCode::missing_file, "cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw CsvError(CsvErrorCode::parse, "empty file (header required): " + path);
  const std::vector<std::string> header = split_csv_line(line);

  std::vector<int> selected;
  if (selectors.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) selected.push_back(static_cast<int>(j));
  } else {
    for (const auto& tok : selectors) {
      int idx = -1;
      for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == tok) { idx = static_cast<int>(j); break; }
      if (idx < 0) {
        double v;
        if (parse_double(tok, &v) && v == std::floor(v) && v >= 0 &&
            v < static_cast<double>(header.size()))
          idx = static_cast<int>(v);
        else
          throw CsvError(CsvErrorCode::missing_column, "no column named '" + tok + "'");
      }
      selected.push_back(idx);
    }
  }

  std::vector<std::vector<double>> rows;
  long dropped = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row(selected.size());
    bool ok = true;
    for (std::size_t j = 0; j < selected.size(); ++j) {
      if (selected[j] >= static_cast<int>(fields.size()) ||
          !parse_double(fields[selected[j]], &row[j])) {
        ok = false;
        break;
      }
    }
    if (ok)
      rows.push_back(std::move(row));
    else
      ++dropped;
  }

  if (rows.size() < 2)
    throw CsvError(CsvErrorCode::no_rows,
                   "fewer than 2 usable rows in " + path + " (" +
                   std::to_string(dropped) + " dropped)");

  IngestResult result;
  result.dropped_rows = dropped;
  result.raw.values.resize(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(selected.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < selected.size(); ++j)
      result.raw.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  for (int idx : selected) result.raw.column_names.push_back(header[idx]);
  result.data = standardize(result.raw);
  return result;
}

void write_csv(const std::string& path, const DataMatrix& data) {
  std::ofstream out(path);
  if (!out) throw CsvError(CsvErrorCode::missing_file, "cannot write file: " + path);
  out.precision(17);
  for (std::size_t j = 0; j < data.column_names.size(); ++j)
    out << (j ? "," : "") << data.column_names[j];
  out << "\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.d(); ++j)
      out << (j ? "," : "") << data.values(i, j);
    out << "\n";
  }
}

const char* method_name(PValueMethod m) {
  switch (m) {
    case PValueMethod::gamma: return "gamma";
    case PValueMethod::monte_carlo: return "mc";
    case PValueMethod::both: return "both";
  }
  return "?";
}

namespace {

nlohmann::json base_report(const std::string& command, double statistic,
                           double p_value, PValueMethod method, Eigen::Index n) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["statistic"] = statistic;
  j["p_value"] = p_value;
  j["method"] = method_name(method);
  j["n"] = n;
  return j;
}

}  // namespace

std::string report_to_json(const UITestReport& r, const std::string& command) {
  nlohmann::json j = base_report(command, r.statistic, r.p_value, r.method, r.n);
  if (r.p_gamma) j["p_value_gamma"] = *r.p_gamma;
  if (r.p_mc) j["p_value_mc"] = *r.p_mc;
  j["hyperparameters"] = {{"width_x", r.width_x}, {"width_y", r.width_y}};
  j["retained_eigs"] = {r.retained_x, r.retained_y};
  j["degenerate"] = r.degenerate;
  return j.dump(2);
}

std::string report_to_json(const CITestReport& r, const std::string& command) {
  nlohmann::json j = base_report(command, r.statistic, r.p_value, r.method, r.n);
  if (r.p_gamma) j["p_value_gamma"] = *r.p_gamma;
  if (r.p_mc) j["p_value_mc"] = *r.p_mc;
  j["cond_dim"] = r.cond_dim;
  j["hyperparameters"] = {{"width_xz", r.width_xz},
                          {"width_y", r.width_y},
                          {"epsilon_f", r.hyperparams.epsilon_f},
                          {"epsilon_g", r.hyperparams.epsilon_g},
                          {"sigma_z_f", r.hyperparams.sigma_z_f},
                          {"sigma_z_g", r.hyperparams.sigma_z_g},
                          {"used_gp", r.hyperparams.used_gp},
                          {"gp_fallback", r.hyperparams.gp_fallback}};
  j["retained_null_weights"] = r.retained_null_weights;
  j["degenerate"] = r.degenerate;
  j["degenerate_z"] = r.degenerate_z;
  j["jitter_steps"] = r.jitter_steps;
  return j.dump(2);
}

}  // namespace kci
