#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eitsim/channel.hpp"
#include "eitsim/estimates.hpp"
#include "eitsim/pulse.hpp"

namespace eitsim::cli {

using Json = nlohmann::ordered_json;

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string csv_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_file(const std::filesystem::path& path, const std::string& content);

std::string curve_csv(const SusceptibilityCurve& curve);
std::string time_series_csv(const TimeSeries& series);

// JSON numbers; non-finite values become strings.
Json number(double v);
Json to_json(const ResonanceParams& r);
Json to_json(const AnalyticEstimates& e);
Json to_json(const PulseFigures& f);
Json to_json(const PulseMetrics& m);
Json to_json(const ChannelPerformance& c);
Json to_json(const Environment& e);

}  // namespace eitsim::cli
