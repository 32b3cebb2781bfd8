// Copyright 2026 The RRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRDP_DATAIO_H_
#define RRDP_DATAIO_H_

// Survey data ingestion and analysis.
//
// Two CSV layouts are accepted (UTF-8, comma separated, '#' starts a comment
// line, blank lines ignored):
//
//   counts   header "design,p,p1,p2,pi_y,n,yes" followed by exactly one row.
//            Parameter columns a design does not use may be left empty.
//            design is one of warner, uqrr, frd, kuk, twostep, direct.
//   records  header "response" followed by one literal 0 or 1 per row. The
//            design is supplied by the caller.
//
// A comment of the form "# label: <text>" sets the dataset label.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rrdp/design.h"
#include "rrdp/error.h"
#include "rrdp/inference.h"
#include "rrdp/normal.h"

namespace rrdp {

struct Dataset {
  DesignSpec design;
  std::int64_t n = 0;
  std::int64_t yes_count = 0;
  std::string label;

  double yes_rate() const { return static_cast<double>(yes_count) / static_cast<double>(n); }
  bool operator==(const Dataset&) const = default;
};

enum class DataFormat { kCounts, kRecords };

inline std::optional<DataFormat> ParseDataFormat(std::string_view name) {
  if (name == "counts") return DataFormat::kCounts;
  if (name == "records") return DataFormat::kRecords;
  return std::nullopt;
}

inline constexpr std::string_view kCountsHeader = "design,p,p1,p2,pi_y,n,yes";
inline constexpr std::string_view kRecordsHeader = "response";

// Name used for a design in counts files and JSON ("direct" for direct
// questioning).
inline std::string DesignName(const DesignSpec& spec) {
  return spec.direct ? std::string("direct") : std::string(DesignKindName(spec.kind));
}

namespace internal {

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                             : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Reads lines, dropping a UTF-8 byte-order mark, comments and blank lines,
// and remembering 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool Next(std::string& out) {
    while (std::getline(in_, raw_)) {
      ++line_;
      std::string_view view(raw_);
      if (line_ == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
      view = Trim(view);
      if (view.starts_with("# label:")) {
        label_.assign(Trim(view.substr(8)));
        continue;
      }
      if (view.empty() || view.front() == '#') continue;
      out.assign(view);
      return true;
    }
    return false;
  }
  int line() const { return line_; }
  const std::string& label() const { return label_; }

 private:
  std::istream& in_;
  std::string raw_;
  std::string label_;
  int line_ = 0;
};

inline double ParseDouble(std::string_view s, std::string_view field, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": bad number for " + std::string(field), line);
  return value;
}

inline std::int64_t ParseInt(std::string_view s, std::string_view field, int line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": bad integer for " + std::string(field), line);
  return value;
}

inline std::string LabelLine(const std::string& label) {
  return label.empty() ? std::string() : "# label: " + label + "\n";
}

inline std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace internal

inline Dataset ParseCounts(std::istream& in) {
  using internal::ParseDouble;
  internal::LineReader reader(in);
  std::string line;
  if (!reader.Next(line)) throw Error(ErrorCode::kParseError, "empty input", reader.line() + 1);
  if (line != kCountsHeader)
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(reader.line()) + ": expected header " +
                    std::string(kCountsHeader),
                reader.line());
  if (!reader.Next(line))
    throw Error(ErrorCode::kParseError, "missing data row", reader.line() + 1);
  const int row_line = reader.line();
  const auto fields = internal::SplitCsv(line);
  if (fields.size() != 7)
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(row_line) + ": expected 7 fields, got " +
                    std::to_string(fields.size()),
                row_line);
  auto opt = [&](std::size_t i, std::string_view name) {
    return fields[i].empty() ? 0.0 : ParseDouble(fields[i], name, row_line);
  };
  auto need = [&](std::size_t i, std::string_view name) {
    if (fields[i].empty())
      throw Error(ErrorCode::kInconsistentHeader,
                  "line " + std::to_string(row_line) + ": design needs " + std::string(name),
                  row_line);
    return ParseDouble(fields[i], name, row_line);
  };

  Dataset ds;
  const std::string_view name = fields[0];
  if (name == "direct") {
    ds.design = DesignSpec::Direct();
  } else if (auto kind = ParseDesignKind(name)) {
    switch (*kind) {
      case DesignKind::kWarner:
        ds.design = DesignSpec::Warner(need(1, "p"));
        break;
      case DesignKind::kUnrelatedQuestion:
        ds.design = DesignSpec::UnrelatedQuestion(need(1, "p"), need(4, "pi_y"));
        break;
      case DesignKind::kForcedResponse:
        ds.design = DesignSpec::ForcedResponse(need(2, "p1"), need(3, "p2"));
        break;
      case DesignKind::kKuk:
        ds.design = DesignSpec::Kuk(need(2, "p1"), need(3, "p2"));
        break;
      case DesignKind::kTwoStep:
        ds.design = DesignSpec::TwoStep(need(1, "p"));
        break;
    }
    // Unused columns are ignored but must still be numbers when present.
    for (std::size_t i = 1; i <= 4; ++i) opt(i, "parameter");
  } else {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(row_line) + ": unknown design '" + std::string(name) + "'",
                row_line);
  }
  try {
    Validate(ds.design);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInconsistentHeader,
                "line " + std::to_string(row_line) + ": " + e.what(), row_line);
  }
  ds.n = internal::ParseInt(fields[5], "n", row_line);
  ds.yes_count = internal::ParseInt(fields[6], "yes", row_line);
  if (ds.n < 1)
    throw Error(ErrorCode::kParseError, "line " + std::to_string(row_line) + ": n must be >= 1",
                row_line);
  if (ds.yes_count < 0 || ds.yes_count > ds.n)
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(row_line) + ": yes must lie in [0, n]", row_line);
  if (reader.Next(line))
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(reader.line()) + ": expected a single data row",
                reader.line());
  ds.label = reader.label();
  return ds;
}

inline Dataset ParseRecords(std::istream& in, const DesignSpec& design) {
  try {
    Validate(design);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInconsistentHeader, e.what());
  }
  internal::LineReader reader(in);
  std::string line;
  if (!reader.Next(line)) throw Error(ErrorCode::kParseError, "empty input", reader.line() + 1);
  if (line != kRecordsHeader)
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(reader.line()) + ": expected header " +
                    std::string(kRecordsHeader),
                reader.line());
  Dataset ds;
  ds.design = design;
  while (reader.Next(line)) {
    if (line == "1") {
      ++ds.yes_count;
    } else if (line != "0") {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(reader.line()) + ": response must be 0 or 1",
                  reader.line());
    }
    ++ds.n;
  }
  if (ds.n == 0) throw Error(ErrorCode::kParseError, "no responses", reader.line());
  ds.label = reader.label();
  return ds;
}

// `design` is required for the records format and ignored for counts.
inline Dataset ParseDataset(std::istream& in, DataFormat format,
                            const std::optional<DesignSpec>& design = std::nullopt) {
  if (format == DataFormat::kCounts) return ParseCounts(in);
  if (!design) ThrowInvalid("records input needs a design");
  return ParseRecords(in, *design);
}

inline std::string EmitCounts(const Dataset& ds) {
  using internal::Num;
  const DesignSpec& d = ds.design;
  std::string row = DesignName(d) + ",";
  if (!d.direct) {
    switch (d.kind) {
      case DesignKind::kWarner:
      case DesignKind::kTwoStep:
        row += Num(d.p) + ",,,";
        break;
      case DesignKind::kUnrelatedQuestion:
        row += Num(d.p) + ",,," + Num(d.pi_y);
        break;
      case DesignKind::kForcedResponse:
      case DesignKind::kKuk:
        row += "," + Num(d.p1) + "," + Num(d.p2) + ",";
        break;
    }
  } else {
    row += ",,,";
  }
  row += "," + std::to_string(ds.n) + "," + std::to_string(ds.yes_count);
  return internal::LabelLine(ds.label) + std::string(kCountsHeader) + "\n" + row + "\n";
}

// Ones first, then zeros.
inline std::string EmitRecords(const Dataset& ds) {
  std::string out = internal::LabelLine(ds.label);
  out += kRecordsHeader;
  out += '\n';
  out.reserve(out.size() + 2 * static_cast<std::size_t>(ds.n));
  for (std::int64_t i = 0; i < ds.n; ++i) out += i < ds.yes_count ? "1\n" : "0\n";
  return out;
}

struct AnalysisReport {
  double yes_rate = 0.0;
  double estimate_raw = 0.0;
  double estimate_clamped = 0.0;
  bool out_of_range = false;  // raw estimate outside [0, 1]
  double std_error = 0.0;     // at the clamped estimate
  double ci_low = 0.0;        // raw estimate -/+ z_{0.025} * std_error
  double ci_high = 0.0;
  double epsilon = 0.0;  // +infinity for direct questioning
  std::optional<double> std_error_h0;
  std::optional<WaldResult> test;
};

inline AnalysisReport Analyze(const Dataset& ds, const std::optional<Hypothesis>& hyp = std::nullopt) {
  Validate(ds.design);
  if (ds.n < 1) ThrowInvalid("n must be at least 1");
  if (ds.yes_count < 0 || ds.yes_count > ds.n) ThrowInvalid("yes_count must lie in [0, n]");
  AnalysisReport r;
  r.yes_rate = ds.yes_rate();
  r.estimate_raw = PointEstimate(ds.design, r.yes_rate);
  r.estimate_clamped = std::clamp(r.estimate_raw, 0.0, 1.0);
  r.out_of_range = r.estimate_raw != r.estimate_clamped;
  r.std_error = std::sqrt(EstimatorVariance(ds.design, r.estimate_clamped, ds.n));
  const double z = CriticalValue(0.05);
  r.ci_low = r.estimate_raw - z * r.std_error;
  r.ci_high = r.estimate_raw + z * r.std_error;
  r.epsilon = PrivacyBudgetOrInfinity(ds.design);
  if (hyp) {
    r.std_error_h0 = std::sqrt(EstimatorVariance(ds.design, hyp->pi0, ds.n));
    r.test = WaldTest(ds.design, *hyp, ds.yes_count, ds.n);
  }
  return r;
}

// Published arms of the tax-return survey: direct questioning (84 of 809
// said yes, rate 0.1038) and forced response with die probabilities 1/12 and
// 2/12 among 1,602 respondents. Only the forced-response estimate (0.1398)
// was published, so its yes-count (435) is reconstructed from it.
inline Dataset AmtDirectQuestioning() {
  return {.design = DesignSpec::Direct(), .n = 809, .yes_count = 84, .label = "amt-tax-dq"};
}
inline Dataset AmtForcedResponse() {
  return {.design = DesignSpec::ForcedResponse(1.0 / 12.0, 2.0 / 12.0),
          .n = 1602,
          .yes_count = 435,
          .label = "amt-tax-frd (yes count reconstructed)"};
}

}  // namespace rrdp

#endif  // RRDP_DATAIO_H_
