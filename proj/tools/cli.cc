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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrdp/dataio.h"
#include "rrdp/http_service.h"
#include "rrdp/openapi_document.h"

namespace rrdp::cli {
namespace {

// Flags that become fields of the JSON request. Only flags actually given on
// the command line are copied, so the service applies its own defaults.
class RequestFlags {
 public:
  explicit RequestFlags(CLI::App* app) : app_(app) {}

  void Num(const std::string& flag, const std::string& key, const std::string& help) {
    Entry& e = Add(key, Type::kNum);
    e.opt = app_->add_option(flag, e.num, help);
  }
  void Int(const std::string& flag, const std::string& key, const std::string& help) {
    Entry& e = Add(key, Type::kInt);
    e.opt = app_->add_option(flag, e.integer, help);
  }
  CLI::Option* U64(const std::string& flag, const std::string& key, const std::string& help) {
    Entry& e = Add(key, Type::kU64);
    e.opt = app_->add_option(flag, e.u64, help);
    return e.opt;
  }
  void Str(const std::string& flag, const std::string& key, const std::string& help) {
    Entry& e = Add(key, Type::kStr);
    e.opt = app_->add_option(flag, e.str, help);
  }
  void Flag(const std::string& flag, const std::string& key, const std::string& help) {
    Entry& e = Add(key, Type::kBool);
    e.opt = app_->add_flag(flag, e.flag, help);
  }

  // Standard design parameters.
  void Design(bool with_values) {
    Str("--design", "design", "warner, uqrr, frd, kuk, twostep (or direct)");
    if (with_values) Num("--p", "p", "design probability p");
    Num("--p1", "p1", "first design probability");
    Num("--p2", "p2", "second design probability");
    Num("--pi-y", "pi_y", "prevalence of the unrelated question (uqrr)");
  }
  void Hypothesis(bool with_pi1 = true) {
    Num("--pi0", "pi0", "null proportion");
    if (with_pi1) Num("--pi1", "pi1", "alternative proportion");
    Num("--alpha", "alpha", "significance level (default 0.05)");
  }

  Json ToJson() const {
    Json j = Json::object();
    for (const Entry& e : entries_) {
      if (e.opt->empty()) continue;
      switch (e.type) {
        case Type::kNum: j[e.key] = e.num; break;
        case Type::kInt: j[e.key] = e.integer; break;
        case Type::kU64: j[e.key] = e.u64; break;
        case Type::kStr: j[e.key] = e.str; break;
        case Type::kBool: j[e.key] = e.flag; break;
      }
    }
    return j;
  }

 private:
  enum class Type { kNum, kInt, kU64, kStr, kBool };
  struct Entry {
    std::string key;
    Type type;
    double num = 0.0;
    std::int64_t integer = 0;
    std::uint64_t u64 = 0;
    std::string str;
    bool flag = false;
    CLI::Option* opt = nullptr;
  };

  Entry& Add(const std::string& key, Type type) {
    entries_.push_back(Entry{key, type});
    return entries_.back();
  }

  CLI::App* app_;
  std::deque<Entry> entries_;
};

std::string FormatNumber(const Json& v, int precision) {
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v.get<double>());
  return buf;
}

std::string FormatScalar(const Json& v, int precision) {
  if (v.is_null()) return "null";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return FormatNumber(v, precision);
  return v.dump();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Scalar fields, with nested objects flattened to "parent.child".
void Flatten(const Json& obj, const std::string& prefix,
             std::vector<std::pair<std::string, Json>>& out) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      Flatten(*it, key, out);
    } else if (!it->is_array()) {
      out.emplace_back(key, *it);
    }
  }
}

// Column names and rows of an array-valued field.
struct Rows {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
};

Rows Tabulate(const std::string& name, const Json& arr, int precision) {
  Rows rows;
  if (arr.empty()) return rows;
  if (arr.front().is_object()) {
    std::vector<std::pair<std::string, Json>> first;
    Flatten(arr.front(), "", first);
    for (const auto& kv : first) rows.columns.push_back(kv.first);
    for (const Json& item : arr) {
      std::vector<std::pair<std::string, Json>> flat;
      Flatten(item, "", flat);
      std::vector<std::string> row;
      for (const auto& kv : flat) row.push_back(FormatScalar(kv.second, precision));
      rows.cells.push_back(std::move(row));
    }
  } else if (arr.front().is_array()) {
    const std::size_t width = arr.front().size();
    for (std::size_t c = 0; c < width; ++c) {
      rows.columns.push_back(name == "cells" && width == 2 ? (c == 0 ? "p1" : "p2")
                                                           : name + "[" + std::to_string(c) + "]");
    }
    for (const Json& item : arr) {
      std::vector<std::string> row;
      for (const Json& v : item) row.push_back(FormatScalar(v, precision));
      rows.cells.push_back(std::move(row));
    }
  } else {
    rows.columns.push_back(name);
    for (const Json& v : arr) rows.cells.push_back({FormatScalar(v, precision)});
  }
  return rows;
}

const char* ArrayFieldOf(const Json& body) {
  for (const char* key : {"points", "solutions", "intervals", "cells"}) {
    if (body.contains(key) && body.at(key).is_array()) return key;
  }
  return nullptr;
}

}  // namespace

std::string RenderTable(const Json& body, int precision) {
  std::ostringstream os;
  std::vector<std::pair<std::string, Json>> scalars;
  Flatten(body, "", scalars);
  std::size_t width = 0;
  for (const auto& kv : scalars) width = std::max(width, kv.first.size());
  for (const auto& kv : scalars) {
    os << kv.first << std::string(width - kv.first.size() + 2, ' ')
       << FormatScalar(kv.second, precision) << "\n";
  }
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (!it->is_array() || it->empty()) continue;
    const Rows rows = Tabulate(it.key(), *it, precision);
    std::vector<std::size_t> w(rows.columns.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
      w[c] = rows.columns[c].size();
      for (const auto& row : rows.cells) {
        if (c < row.size()) w[c] = std::max(w[c], row[c].size());
      }
    }
    os << "\n" << it.key() << ":\n";
    auto line = [&](const std::vector<std::string>& fields) {
      for (std::size_t c = 0; c < w.size(); ++c) {
        const std::string& f = c < fields.size() ? fields[c] : std::string();
        os << "  " << f << std::string(w[c] - f.size(), ' ');
      }
      os << "\n";
    };
    line(rows.columns);
    for (const auto& row : rows.cells) line(row);
  }
  return os.str();
}

std::string RenderCsv(const Json& body, int precision) {
  std::ostringstream os;
  auto emit = [&os](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << CsvField(fields[i]);
    os << "\n";
  };
  if (const char* key = ArrayFieldOf(body)) {
    const Rows rows = Tabulate(key, body.at(key), precision);
    if (rows.columns.empty()) return os.str();
    emit(rows.columns);
    for (const auto& row : rows.cells) emit(row);
    return os.str();
  }
  std::vector<std::pair<std::string, Json>> scalars;
  Flatten(body, "", scalars);
  std::vector<std::string> header, values;
  for (const auto& kv : scalars) {
    header.push_back(kv.first);
    values.push_back(FormatScalar(kv.second, precision));
  }
  emit(header);
  emit(values);
  return os.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Randomized-response design under privacy and power constraints", "rrdp"};
  app.require_subcommand(1);
  std::string format = "json";
  int precision = 6;
  int threads = 1;
  app.add_option("--format", format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--precision", precision, "significant digits in csv/table output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads for grid and simulation work")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  std::deque<RequestFlags> flags;
  std::map<std::string, RequestFlags*> by_name;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    // Shared options are accepted after the subcommand too.
    s->fallthrough();
    flags.emplace_back(s);
    by_name[name] = &flags.back();
    return &flags.back();
  };

  RequestFlags* budget = sub("budget", "privacy budget of a design");
  budget->Design(true);

  RequestFlags* power = sub("power", "Wald-test power at sample size n");
  power->Design(true);
  power->Hypothesis();
  power->Int("--n", "n", "sample size");

  RequestFlags* samplesize = sub("samplesize", "sample size reaching a target power");
  samplesize->Design(true);
  samplesize->Hypothesis();
  samplesize->Num("--power", "power", "target power");
  samplesize->Int("--n-max", "n_max", "search limit for the exact sample size");

  RequestFlags* solve = sub("solve-p", "design parameter meeting a budget or a power target");
  solve->Design(false);
  solve->Num("--epsilon", "epsilon", "privacy budget to solve for");
  solve->Num("--power", "power", "power to solve for");
  solve->Hypothesis();
  solve->Int("--n", "n", "sample size (power mode)");

  RequestFlags* optimize = sub("optimize", "most powerful design under a privacy cap");
  optimize->Design(false);
  optimize->Hypothesis();
  optimize->Num("--epsilon", "epsilon", "privacy cap c");
  optimize->Flag("--strict", "strict", "require epsilon < c");
  optimize->Num("--power", "power", "target power");
  optimize->Int("--n", "n", "fixed sample size (omit for joint search over n)");
  optimize->Int("--n-max", "n_max", "largest n considered by the joint search");
  optimize->Num("--grid", "grid", "parameter grid step");

  RequestFlags* feasible = sub("feasible", "parameter region meeting privacy and/or power");
  feasible->Design(false);
  feasible->Hypothesis();
  feasible->Num("--epsilon", "epsilon", "privacy cap c");
  feasible->Flag("--strict", "strict", "require epsilon < c");
  feasible->Num("--power", "power", "target power");
  feasible->Int("--n", "n", "sample size");
  feasible->Num("--grid", "grid", "parameter grid step");
  feasible->Str("--mode", "mode", "privacy, power or both (inferred when omitted)");

  RequestFlags* simulate = sub("simulate", "Monte-Carlo study of the estimator and test");
  simulate->Design(true);
  simulate->Num("--pi", "pi", "true proportion");
  simulate->Int("--n", "n", "sample size");
  simulate->Int("--replications", "replications", "number of replications");
  simulate->U64("--seed", "seed", "random seed")->envname("RRDP_SEED");
  simulate->Hypothesis();
  simulate->Str("--method", "method", "binomial or respondent");

  RequestFlags* analyze = sub("analyze", "estimate and test from collected data");
  analyze->Design(true);
  analyze->Int("--n", "n", "number of respondents");
  analyze->Int("--yes", "yes", "number of yes answers");
  analyze->Hypothesis(false);
  std::string input, input_format = "counts";
  CLI::App* analyze_app = app.get_subcommand("analyze");
  analyze_app->add_option("--input", input, "CSV file of counts or records");
  analyze_app->add_option("--input-format", input_format, "counts or records")
      ->check(CLI::IsMember({"counts", "records"}))
      ->capture_default_str();

  RequestFlags* curves = sub("curves", "power and privacy along the parameter grid");
  curves->Design(false);
  curves->Hypothesis();
  curves->Int("--n", "n", "sample size");
  curves->Num("--grid", "grid", "parameter grid step");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::uint64_t serve_seed = 0;
  CLI::App* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->fallthrough();
  serve->add_option("--host", host, "bind address")->capture_default_str();
  serve->add_option("--port", port, "port")->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--static", static_dir, "directory of web assets served at /");
  serve->add_option("--seed", serve_seed, "default seed for /simulate")->envname("RRDP_SEED");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  DispatchOptions opts;
  opts.threads = threads;

  if (serve->parsed()) {
    HttpOptions http;
    http.dispatch = opts;
    http.dispatch.default_seed = serve_seed;
    http.static_dir = static_dir;
    http.openapi_document = kOpenApiDocument;
    HttpService service(http);
    if (!service.Bind(host, port)) {
      err << "error: cannot bind " << host << ":" << port << "\n";
      return kExitError;
    }
    err << "listening on http://" << host << ":" << port << "\n";
    return service.ListenAfterBind() ? kExitOk : kExitError;
  }

  const std::string op = app.get_subcommands().front()->get_name();
  Json request = by_name.at(op)->ToJson();

  if (op == "analyze" && !input.empty()) {
    try {
      std::ifstream file(input);
      if (!file) {
        err << "error: cannot open " << input << "\n";
        return kExitError;
      }
      const DataFormat fmt = *ParseDataFormat(input_format);
      std::optional<DesignSpec> design;
      if (fmt == DataFormat::kRecords) design = service::DesignFromJson(request);
      const Dataset ds = ParseDataset(file, fmt, design);
      Json merged = DesignToJson(ds.design);
      merged["n"] = ds.n;
      merged["yes"] = ds.yes_count;
      if (!ds.label.empty()) merged["label"] = ds.label;
      for (const char* key : {"pi0", "alpha"}) {
        if (request.contains(key)) merged[key] = request[key];
      }
      request = std::move(merged);
    } catch (const Error& e) {
      err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
      return kExitError;
    } catch (const service::BadRequest& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

  const ServiceResult result = Dispatch(op, request, opts);
  if (format == "json") {
    out << result.body.dump(2) << "\n";
  } else if (format == "csv") {
    if (result.status == 200 || result.status == 422) out << RenderCsv(result.body, precision);
  } else {
    if (result.status == 200 || result.status == 422) out << RenderTable(result.body, precision);
  }
  if (result.status == 200) return kExitOk;
  if (result.body.contains("error")) {
    err << "error: " << result.body["error"].value("code", "") << ": "
        << result.body["error"].value("message", "") << "\n";
  }
  return result.status == 422 ? kExitInfeasible : kExitError;
}

}  // namespace rrdp::cli
