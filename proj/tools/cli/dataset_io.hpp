#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qcorr/error.hpp"
#include "qcorr/sweep.hpp"

namespace qcorr::cli {

/// Output file could not be written (exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view name);

/// CSV layout:
///   # key: value            one line per metadata record
///   t,q1,q2,negativity,gd_lower[,gd_exact]
///   rows, each value printed with 12 significant digits
/// JSON layout: {"meta": {...}, "columns": {"t": [...], ...}} with doubles
/// printed round-trip exact.
void write_dataset(const SweepDataset& ds, OutputFormat format, std::ostream& out);
std::string format_dataset(const SweepDataset& ds, OutputFormat format);

/// Writes to `path`. Refuses to overwrite an existing file unless `force`.
/// Throws IoError on collision or when the file cannot be written.
void write_dataset(const SweepDataset& ds, OutputFormat format,
                   const std::filesystem::path& path, bool force);

nlohmann::ordered_json dataset_to_json(const SweepDataset& ds);
SweepDataset dataset_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const RobustnessReport& report);

/// Writes `text` to `path` with the same collision rules as write_dataset.
void write_text_file(const std::filesystem::path& path, std::string_view text, bool force);

}  // namespace qcorr::cli
