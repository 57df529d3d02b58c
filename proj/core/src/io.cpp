#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nygap/harness.hpp"

namespace nygap {

namespace {

double parse_real(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": not a number: '" + tok + "'");
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// nlohmann's dump() prints the shortest round-tripping decimal; reports are
// required to carry >= 15 significant digits, so numbers are re-printed here.
void dump_fixed(const nlohmann::json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in << nlohmann::json(it.key()).dump() << ": ";
        dump_fixed(it.value(), out, indent + 1);
      }
      out << "\n" << pad << "}";
      break;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in;
        dump_fixed(v, out, indent + 1);
      }
      out << "\n" << pad << "]";
      break;
    }
    case nlohmann::json::value_t::number_float:
      out << format_real(j.get<double>());
      break;
    default:
      out << j.dump();
  }
}

std::string dump_fixed(const nlohmann::json& j) {
  std::ostringstream out;
  dump_fixed(j, out, 0);
  out << "\n";
  return out.str();
}

nlohmann::json bounds_to_json(const BoundReport& b) {
  return nlohmann::json{
      {"eigengap", b.eigengap},
      {"hs", b.hs},
      {"confidence", b.confidence},
      {"lambda1", b.lambda1},
      {"lambda_r", b.lambda_r},
      {"sample_lambda_r", b.sample_lambda_r},
      {"dh_norm", b.dh_norm},
      {"p_frob", b.p_frob},
      {"k_diff_frob", b.k_diff_frob},
      {"n", b.n},
      {"m", b.m},
      {"rank", b.rank},
      {"concentration_bound", b.concentration},
      {"k_diff_op_bound", b.k_diff_op_bound},
      {"k_diff_op_bound_loose", b.k_diff_op_bound_loose},
      {"p_bound_tight", b.p_bound_tight},
      {"p_bound_loose", b.p_bound_loose},
      {"dh_bound_tight", b.dh_bound_tight},
      {"dh_bound_loose", b.dh_bound_loose},
      {"k_diff_bound_tight", b.k_diff_bound_tight},
      {"k_diff_bound_loose", b.k_diff_bound_loose},
      {"lidskii_floor_scaled", b.lidskii_floor_scaled},
      {"lidskii_floor_raw", b.lidskii_floor_raw},
      {"gap_condition", b.gap_condition},
      {"bigger_gap_condition", b.bigger_gap_condition},
      {"verdict_k_diff_op", to_string(b.k_diff_op_ok)},
      {"verdict_p", to_string(b.p_ok)},
      {"verdict_dh", to_string(b.dh_ok)},
      {"verdict_k_diff", to_string(b.k_diff_ok)},
      {"verdict_lidskii", to_string(b.lidskii_ok)},
      {"lidskii_raw_ok", b.lidskii_raw_ok},
  };
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "not_applicable") return Verdict::NotApplicable;
  throw std::invalid_argument("unknown verdict token: " + s);
}

BoundReport bounds_from_json(const nlohmann::json& j) {
  BoundReport b;
  b.eigengap = j.at("eigengap");
  b.hs = j.at("hs");
  b.confidence = j.at("confidence");
  b.lambda1 = j.at("lambda1");
  b.lambda_r = j.at("lambda_r");
  b.sample_lambda_r = j.at("sample_lambda_r");
  b.dh_norm = j.at("dh_norm");
  b.p_frob = j.at("p_frob");
  b.k_diff_frob = j.at("k_diff_frob");
  b.n = j.at("n");
  b.m = j.at("m");
  b.rank = j.at("rank");
  b.concentration = j.at("concentration_bound");
  b.k_diff_op_bound = j.at("k_diff_op_bound");
  b.k_diff_op_bound_loose = j.at("k_diff_op_bound_loose");
  b.p_bound_tight = j.at("p_bound_tight");
  b.p_bound_loose = j.at("p_bound_loose");
  b.dh_bound_tight = j.at("dh_bound_tight");
  b.dh_bound_loose = j.at("dh_bound_loose");
  b.k_diff_bound_tight = j.at("k_diff_bound_tight");
  b.k_diff_bound_loose = j.at("k_diff_bound_loose");
  b.lidskii_floor_scaled = j.at("lidskii_floor_scaled");
  b.lidskii_floor_raw = j.at("lidskii_floor_raw");
  b.gap_condition = j.at("gap_condition");
  b.bigger_gap_condition = j.at("bigger_gap_condition");
  b.k_diff_op_ok = verdict_from_string(j.at("verdict_k_diff_op"));
  b.p_ok = verdict_from_string(j.at("verdict_p"));
  b.dh_ok = verdict_from_string(j.at("verdict_dh"));
  b.k_diff_ok = verdict_from_string(j.at("verdict_k_diff"));
  b.lidskii_ok = verdict_from_string(j.at("verdict_lidskii"));
  b.lidskii_raw_ok = j.at("lidskii_raw_ok");
  return b;
}

}  // namespace

PointSet load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(parse_real(tok, line_no));
    if (row.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": empty row");
    if (arity == 0) arity = row.size();
    if (row.size() != arity)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": ragged row (" +
                                  std::to_string(row.size()) + " fields, expected " +
                                  std::to_string(arity) + ")");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no data rows");
  PointSet ps;
  ps.points = Matrix(rows.size(), arity);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < arity; ++j) ps.points(i, j) = rows[i][j];
  return ps;
}

PointSet load_points_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;  // blank line; the first token is the label
    std::vector<std::pair<std::size_t, double>> row;
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": malformed pair '" + tok + "'");
      std::size_t idx = 0;
      const auto res =
          std::from_chars(tok.data(), tok.data() + colon, idx);
      if (res.ec != std::errc{} || res.ptr != tok.data() + colon || idx == 0)
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": bad feature index in '" + tok + "'");
      row.emplace_back(idx, parse_real(tok.substr(colon + 1), line_no));
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || max_index == 0)
    throw std::invalid_argument(path + ": no feature data");
  PointSet ps;
  ps.points = Matrix(rows.size(), max_index);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [idx, val] : rows[i]) ps.points(i, idx - 1) = val;
  return ps;
}

std::string trial_to_json(const TrialReport& r, bool include_timing) {
  nlohmann::json j{
      {"seed", r.seed},
      {"n", r.n},
      {"m", r.m},
      {"rank", r.rank},
      {"kernel_family", r.kernel_family},
      {"kernel_lambda", r.kernel_lambda},
      {"kernel_d2", r.kernel_d2},
      {"rng_algorithm", r.rng_algorithm},
      {"eigengap", r.eigengap},
      {"hs", r.hs},
      {"dh_norm", r.dh_norm},
      {"p_frob", r.p_frob},
      {"frob_total", r.frob_total},
      {"frob_additional", r.frob_additional},
      {"spec_total", r.spec_total},
      {"spec_additional", r.spec_additional},
      {"bounds", bounds_to_json(r.bounds)},
  };
  if (include_timing) j["wall_ms"] = r.wall_ms;
  return dump_fixed(j);
}

TrialReport trial_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TrialReport r;
  r.seed = j.at("seed");
  r.n = j.at("n");
  r.m = j.at("m");
  r.rank = j.at("rank");
  r.kernel_family = j.at("kernel_family");
  r.kernel_lambda = j.at("kernel_lambda");
  r.kernel_d2 = j.at("kernel_d2");
  r.rng_algorithm = j.at("rng_algorithm");
  r.eigengap = j.at("eigengap");
  r.hs = j.at("hs");
  r.dh_norm = j.at("dh_norm");
  r.p_frob = j.at("p_frob");
  r.frob_total = j.at("frob_total");
  r.frob_additional = j.at("frob_additional");
  r.spec_total = j.at("spec_total");
  r.spec_additional = j.at("spec_additional");
  r.bounds = bounds_from_json(j.at("bounds"));
  if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms");
  return r;
}

const std::vector<double>& CurveSeries::at(const std::string& name) const {
  for (const auto& [key, values] : series)
    if (key == name) return values;
  throw std::invalid_argument("CurveSeries: no series named " + name);
}

std::string curve_to_csv(const CurveSeries& series) {
  for (const auto& [name, values] : series.series)
    if (values.size() != series.x.size())
      throw std::invalid_argument("CurveSeries: length mismatch in " + name);
  std::ostringstream out;
  out << "x";
  for (const auto& [name, values] : series.series) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    out << format_real(series.x[i]);
    for (const auto& [name, values] : series.series) out << "," << format_real(values[i]);
    out << "\n";
  }
  return out.str();
}

std::string curve_to_json(const CurveSeries& series) {
  nlohmann::json j;
  j["x"] = series.x;
  j["trials_per_point"] = series.trials_per_point;
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [name, values] : series.series) s[name] = values;
  j["series"] = s;
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : series.metadata) meta[key] = value;
  j["metadata"] = meta;
  return dump_fixed(j);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv")
    throw std::invalid_argument("unknown format token: " + format);
}

}  // namespace

void emit_report(const TrialReport& report, const std::string& path,
                 const std::string& format, bool include_timing) {
  check_format(format);
  if (format == "json") {
    write_file(path, trial_to_json(report, include_timing));
    return;
  }
  // key,value CSV keeps the trial subcommand uniform across formats
  const nlohmann::json j = nlohmann::json::parse(trial_to_json(report, include_timing));
  std::ostringstream out;
  out << "key,value\n";
  const std::function<void(const nlohmann::json&, const std::string&)> walk =
      [&](const nlohmann::json& node, const std::string& prefix) {
        for (auto it = node.begin(); it != node.end(); ++it) {
          const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
          if (it->is_object()) {
            walk(*it, key);
          } else if (it->is_number_float()) {
            out << key << "," << format_real(it->get<double>()) << "\n";
          } else {
            out << key << "," << it->dump() << "\n";
          }
        }
      };
  walk(j, "");
  write_file(path, out.str());
}

void emit_report(const CurveSeries& series, const std::string& path,
                 const std::string& format) {
  check_format(format);
  write_file(path, format == "json" ? curve_to_json(series) : curve_to_csv(series));
}

}  // namespace nygap
