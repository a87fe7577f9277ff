#include "cli/dataset_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qcorr::cli {
namespace {

void put_number(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  out << buf.data();
}

std::vector<double> column(const nlohmann::json& cols, const char* name) {
  if (!cols.contains(name)) throw IoError(std::string("dataset JSON lacks column ") + name);
  return cols.at(name).get<std::vector<double>>();
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

nlohmann::ordered_json dataset_to_json(const SweepDataset& ds) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : ds.meta) j["meta"][key] = value;
  auto& cols = j["columns"];
  cols["t"] = ds.t;
  cols["q1"] = ds.q1;
  cols["q2"] = ds.q2;
  cols["negativity"] = ds.negativity;
  cols["gd_lower"] = ds.gd_lower;
  if (ds.gd_exact) cols["gd_exact"] = *ds.gd_exact;
  return j;
}

SweepDataset dataset_from_json(const nlohmann::json& j) {
  SweepDataset ds;
  if (j.contains("meta")) {
    for (const auto& [key, value] : j.at("meta").items()) {
      ds.meta.emplace_back(key, value.get<std::string>());
    }
  }
  const auto& cols = j.at("columns");
  ds.t = column(cols, "t");
  ds.q1 = column(cols, "q1");
  ds.q2 = column(cols, "q2");
  ds.negativity = column(cols, "negativity");
  ds.gd_lower = column(cols, "gd_lower");
  if (cols.contains("gd_exact")) ds.gd_exact = column(cols, "gd_exact");
  if (!ds.consistent()) throw IoError("dataset JSON columns differ in length");
  return ds;
}

void write_dataset(const SweepDataset& ds, OutputFormat format, std::ostream& out) {
  if (!ds.consistent()) throw DimensionError("write_dataset: columns differ in length");
  if (format == OutputFormat::Json) {
    out << dataset_to_json(ds).dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : ds.meta) out << "# " << key << ": " << value << '\n';
  out << "t,q1,q2,negativity,gd_lower";
  if (ds.gd_exact) out << ",gd_exact";
  out << '\n';
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    put_number(out, ds.t[i]);
    out << ',';
    put_number(out, ds.q1[i]);
    out << ',';
    put_number(out, ds.q2[i]);
    out << ',';
    put_number(out, ds.negativity[i]);
    out << ',';
    put_number(out, ds.gd_lower[i]);
    if (ds.gd_exact) {
      out << ',';
      put_number(out, (*ds.gd_exact)[i]);
    }
    out << '\n';
  }
}

std::string format_dataset(const SweepDataset& ds, OutputFormat format) {
  std::ostringstream os;
  write_dataset(ds, format, os);
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text, bool force) {
  std::error_code ec;
  if (!force && std::filesystem::exists(path, ec)) {
    throw IoError("refusing to overwrite existing file " + path.string() + " (use --force)");
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

void write_dataset(const SweepDataset& ds, OutputFormat format,
                   const std::filesystem::path& path, bool force) {
  write_text_file(path, format_dataset(ds, format), force);
}

nlohmann::ordered_json report_to_json(const RobustnessReport& report) {
  nlohmann::ordered_json j;
  j["definition"] = std::string(RobustnessReport::kDefinition);
  j["channel_a"] = std::string(to_string(report.family_a));
  j["channel_b"] = std::string(to_string(report.family_b));
  j["qa"] = report.rate_a;
  j["qb"] = report.rate_b;
  j["negativity_defined"] = report.negativity_defined;
  j["gd_defined"] = report.gd_defined;
  j["overall"] = std::string(to_string(report.overall));
  j["negativity_wins"] = report.negativity_wins;
  j["gd_wins"] = report.gd_wins;
  j["ties"] = report.ties;
  j["crossovers"] = report.crossovers;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    pts.push_back({{"t", p.t},
                   {"normalized_negativity", p.normalized_negativity},
                   {"normalized_gd", p.normalized_gd},
                   {"winner", std::string(to_string(p.winner))}});
  }
  return j;
}

}  // namespace qcorr::cli
