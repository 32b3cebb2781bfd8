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

#ifndef RRDP_SERVICE_H_
#define RRDP_SERVICE_H_

// JSON request/response schema shared by the command line and the HTTP
// service. Dispatch() is the single entry point both front ends call, so the
// CLI's JSON output and the service's response bodies are the same document.
//
// Every response carries "schema_version" and "operation". Failures carry
// {"error": {"code": ..., "message": ...}} with status 400 (bad request) or
// 422 (no feasible design; the best design found is attached).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rrdp/dataio.h"
#include "rrdp/design.h"
#include "rrdp/error.h"
#include "rrdp/inference.h"
#include "rrdp/optimizer.h"
#include "rrdp/simulator.h"

namespace rrdp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kOperations[] = {
    "budget", "power", "samplesize", "solve-p", "optimize",
    "feasible", "simulate", "analyze", "curves"};

struct ServiceResult {
  int status = 200;
  Json body;
};

struct DispatchOptions {
  int threads = 1;
  std::uint64_t default_seed = 0;
};

namespace service {

// Request could not be interpreted (missing or mistyped field).
class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const Json& Field(const Json& req, const char* key) {
  if (!req.contains(key) || req.at(key).is_null())
    throw BadRequest(std::string("missing field '") + key + "'");
  return req.at(key);
}

inline double GetDouble(const Json& req, const char* key) {
  const Json& v = Field(req, key);
  if (!v.is_number()) throw BadRequest(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline std::optional<double> OptDouble(const Json& req, const char* key) {
  if (!req.contains(key) || req.at(key).is_null()) return std::nullopt;
  return GetDouble(req, key);
}

inline std::int64_t GetInt(const Json& req, const char* key) {
  const Json& v = Field(req, key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::fabs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  throw BadRequest(std::string("field '") + key + "' must be an integer");
}

inline std::optional<std::int64_t> OptInt(const Json& req, const char* key) {
  if (!req.contains(key) || req.at(key).is_null()) return std::nullopt;
  return GetInt(req, key);
}

inline std::string GetString(const Json& req, const char* key) {
  const Json& v = Field(req, key);
  if (!v.is_string()) throw BadRequest(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline bool OptBool(const Json& req, const char* key, bool fallback) {
  if (!req.contains(key) || req.at(key).is_null()) return fallback;
  if (!req.at(key).is_boolean()) throw BadRequest(std::string("field '") + key + "' must be a boolean");
  return req.at(key).get<bool>();
}

// Finite numbers as-is; non-finite values become null.
inline Json Number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline bool IsDirect(const Json& req) {
  return req.contains("design") && req.at("design").is_string() &&
         req.at("design").get<std::string>() == "direct";
}

inline DesignKind GetKind(const Json& req) {
  const std::string name = GetString(req, "design");
  auto kind = ParseDesignKind(name);
  if (!kind) throw BadRequest("unknown design '" + name + "'");
  return *kind;
}

inline DesignSpec DesignFromJson(const Json& req) {
  if (IsDirect(req)) return DesignSpec::Direct();
  switch (GetKind(req)) {
    case DesignKind::kWarner:
      return DesignSpec::Warner(GetDouble(req, "p"));
    case DesignKind::kUnrelatedQuestion:
      return DesignSpec::UnrelatedQuestion(GetDouble(req, "p"), GetDouble(req, "pi_y"));
    case DesignKind::kForcedResponse:
      return DesignSpec::ForcedResponse(GetDouble(req, "p1"), GetDouble(req, "p2"));
    case DesignKind::kKuk:
      return DesignSpec::Kuk(GetDouble(req, "p1"), GetDouble(req, "p2"));
    case DesignKind::kTwoStep:
      return DesignSpec::TwoStep(GetDouble(req, "p"));
  }
  throw BadRequest("unknown design");
}

// Kind plus the coordinates held fixed: pi_y for UQRR, optional p2 for the
// two-parameter designs.
inline DesignFamily FamilyFromJson(const Json& req) {
  DesignFamily family = DesignFamily::Of(GetKind(req));
  if (family.kind == DesignKind::kUnrelatedQuestion) family.pi_y = GetDouble(req, "pi_y");
  if (!IsScalarDesign(family.kind)) family.fixed_p2 = OptDouble(req, "p2");
  return family;
}

inline Hypothesis HypothesisFromJson(const Json& req) {
  Hypothesis hyp;
  hyp.pi0 = GetDouble(req, "pi0");
  hyp.pi1 = GetDouble(req, "pi1");
  hyp.alpha = OptDouble(req, "alpha").value_or(0.05);
  return hyp;
}

// Privacy cap; "c" is accepted as an alias of "epsilon".
inline std::optional<double> OptCap(const Json& req) {
  if (auto c = OptDouble(req, "epsilon")) return c;
  return OptDouble(req, "c");
}

inline Grid GridFromJson(const Json& req) { return Grid::FromStep(OptDouble(req, "grid").value_or(0.01)); }

}  // namespace service

inline Json DesignToJson(const DesignSpec& spec) {
  Json j;
  j["design"] = DesignName(spec);
  if (spec.direct) return j;
  switch (spec.kind) {
    case DesignKind::kWarner:
    case DesignKind::kTwoStep:
      j["p"] = spec.p;
      break;
    case DesignKind::kUnrelatedQuestion:
      j["p"] = spec.p;
      j["pi_y"] = spec.pi_y;
      break;
    case DesignKind::kForcedResponse:
    case DesignKind::kKuk:
      j["p1"] = spec.p1;
      j["p2"] = spec.p2;
      break;
  }
  return j;
}

inline Json HypothesisToJson(const Hypothesis& hyp) {
  return {{"pi0", hyp.pi0}, {"pi1", hyp.pi1}, {"alpha", hyp.alpha}};
}

inline Json SolutionToJson(const DesignSolution& sol) {
  Json j;
  j["feasible"] = sol.feasible;
  j["n_star"] = sol.n_star ? Json(*sol.n_star) : Json(nullptr);
  j["params"] = sol.params_star ? DesignToJson(*sol.params_star) : Json(nullptr);
  j["achieved_power"] = sol.params_star ? Json(sol.achieved_power) : Json(nullptr);
  j["achieved_epsilon"] = sol.params_star ? Json(sol.achieved_epsilon) : Json(nullptr);
  j["candidates"] = sol.candidates;
  return j;
}

inline Json IntervalsToJson(const std::vector<Interval>& intervals) {
  Json arr = Json::array();
  for (const Interval& iv : intervals) {
    arr.push_back({{"lo", iv.lo},
                   {"hi", iv.hi},
                   {"lo_refined", iv.lo_refined},
                   {"hi_refined", iv.hi_refined},
                   {"lo_open", iv.lo_open},
                   {"hi_open", iv.hi_open}});
  }
  return arr;
}

inline Json ReportToJson(const AnalysisReport& r) {
  Json j;
  j["yes_rate"] = r.yes_rate;
  j["estimate"] = r.estimate_raw;
  j["estimate_clamped"] = r.estimate_clamped;
  j["out_of_range"] = r.out_of_range;
  j["std_error"] = r.std_error;
  j["ci95_low"] = r.ci_low;
  j["ci95_high"] = r.ci_high;
  j["epsilon"] = service::Number(r.epsilon);
  j["epsilon_unbounded"] = !std::isfinite(r.epsilon);
  if (r.std_error_h0) j["std_error_h0"] = *r.std_error_h0;
  if (r.test) {
    j["test"] = {{"estimate", r.test->estimate},
                 {"z", r.test->z},
                 {"critical", r.test->critical},
                 {"reject", r.test->reject}};
  }
  return j;
}

namespace service {

inline Json Budget(const Json& req) {
  const DesignSpec spec = DesignFromJson(req);
  Json out = DesignToJson(spec);
  out["epsilon"] = PrivacyBudget(spec);
  return out;
}

inline Json PowerOp(const Json& req) {
  const DesignSpec spec = DesignFromJson(req);
  const Hypothesis hyp = HypothesisFromJson(req);
  const std::int64_t n = GetInt(req, "n");
  const PowerResult r = Power(spec, hyp, n);
  Json out = DesignToJson(spec);
  out.update(HypothesisToJson(hyp));
  out["n"] = n;
  out["power"] = r.power;
  out["d1"] = r.d1;
  out["d2"] = r.d2;
  out["var0"] = r.var0;
  out["var1"] = r.var1;
  return out;
}

inline Json SampleSize(const Json& req) {
  const DesignSpec spec = DesignFromJson(req);
  const Hypothesis hyp = HypothesisFromJson(req);
  const double target = GetDouble(req, "power");
  const std::int64_t n_max = OptInt(req, "n_max").value_or(10'000'000);
  Json out = DesignToJson(spec);
  out.update(HypothesisToJson(hyp));
  out["target_power"] = target;
  out["approx_n"] = RequiredSampleSize(spec, hyp, target);
  const auto exact = ExactSampleSize(spec, hyp, target, n_max);
  out["exact_n"] = exact ? Json(*exact) : Json(nullptr);
  out["baseline_n"] = BinomialBaselineN(hyp, target);
  return out;
}

inline Json SolveP(const Json& req) {
  const DesignFamily family = FamilyFromJson(req);
  Json out;
  out["design"] = std::string(DesignKindName(family.kind));
  if (auto c = OptDouble(req, "epsilon")) {
    out["by"] = "epsilon";
    out["epsilon"] = *c;
    Json solutions = Json::array();
    for (const DesignSpec& spec : SolveParamForBudget(family, *c)) {
      Json s = DesignToJson(spec);
      s["epsilon"] = PrivacyBudget(spec);
      solutions.push_back(std::move(s));
    }
    out["solutions"] = std::move(solutions);
    return out;
  }
  if (auto target = OptDouble(req, "power")) {
    const Hypothesis hyp = HypothesisFromJson(req);
    const std::int64_t n = GetInt(req, "n");
    out["by"] = "power";
    out["target_power"] = *target;
    out["n"] = n;
    out.update(HypothesisToJson(hyp));
    Json solutions = Json::array();
    for (double x : SolveParamForPower(family, hyp, n, *target)) {
      const DesignSpec spec = family.At(x);
      Json s = DesignToJson(spec);
      s["epsilon"] = PrivacyBudget(spec);
      s["power"] = Power(spec, hyp, n).power;
      solutions.push_back(std::move(s));
    }
    if (solutions.empty())
      throw Error(ErrorCode::kNoSolution, "power never crosses the target for this design");
    out["solutions"] = std::move(solutions);
    return out;
  }
  throw BadRequest("solve-p needs 'epsilon' or 'power'");
}

// Fixed-n maximization when "n" is present; Algorithm-1 style joint search
// over n in [1, n_max] otherwise.
inline ServiceResult Optimize(const Json& req, const DispatchOptions& opts) {
  const DesignFamily family = FamilyFromJson(req);
  const Hypothesis hyp = HypothesisFromJson(req);
  const auto c = OptCap(req);
  if (!c) throw BadRequest("missing field 'epsilon'");
  const PrivacyCap cap{*c, OptBool(req, "strict", false)};
  const double target = GetDouble(req, "power");
  const Grid grid = GridFromJson(req);
  const ExecOptions exec{opts.threads};
  DesignSolution sol;
  Json out;
  out["design"] = std::string(DesignKindName(family.kind));
  if (auto n = OptInt(req, "n")) {
    out["mode"] = "fixed_n";
    sol = OptimizeFixedN(family, hyp, *n, cap, target, grid, exec);
  } else {
    out["mode"] = "joint";
    const std::int64_t n_max = OptInt(req, "n_max").value_or(1'000'000);
    out["n_max"] = n_max;
    sol = JointOptimize(family, hyp, cap, target, n_max, grid, exec);
  }
  out.update(HypothesisToJson(hyp));
  out["target_power"] = target;
  out["cap"] = {{"c", cap.c}, {"strict", cap.strict}};
  out["grid"] = grid.step();
  out.update(SolutionToJson(sol));
  if (sol.feasible) return {200, out};
  out["best_found"] = SolutionToJson(sol);
  out["error"] = {{"code", "infeasible"},
                  {"message",
                   "no design parameter meets both the privacy cap and the power target; relax "
                   "the privacy constraint or increase the sample size"}};
  return {422, out};
}

inline Json Feasible(const Json& req, const DispatchOptions& opts) {
  const DesignFamily family = FamilyFromJson(req);
  RegionQuery q;
  const auto c = OptCap(req);
  const auto target = OptDouble(req, "power");
  if (req.contains("mode") && !req.at("mode").is_null()) {
    auto mode = ParseRegionMode(GetString(req, "mode"));
    if (!mode) throw BadRequest("mode must be privacy, power or both");
    q.mode = *mode;
  } else if (c && target) {
    q.mode = RegionMode::kBoth;
  } else if (c) {
    q.mode = RegionMode::kPrivacy;
  } else if (target) {
    q.mode = RegionMode::kPower;
  } else {
    throw BadRequest("feasible needs 'epsilon', 'power', or both");
  }
  if (q.mode != RegionMode::kPower) q.cap = {c ? *c : GetDouble(req, "epsilon"), OptBool(req, "strict", false)};
  if (q.mode != RegionMode::kPrivacy) {
    q.hyp = HypothesisFromJson(req);
    q.n = GetInt(req, "n");
    q.target_power = target ? *target : GetDouble(req, "power");
  }
  const Grid grid = GridFromJson(req);
  const ExecOptions exec{opts.threads};

  Json out;
  out["design"] = std::string(DesignKindName(family.kind));
  out["mode"] = std::string(RegionModeName(q.mode));
  out["grid"] = grid.step();
  if (q.mode != RegionMode::kPower) out["cap"] = {{"c", q.cap.c}, {"strict", q.cap.strict}};
  if (q.mode != RegionMode::kPrivacy) {
    out.update(HypothesisToJson(q.hyp));
    out["n"] = q.n;
    out["target_power"] = q.target_power;
  }
  if (family.one_dimensional()) {
    if (family.kind == DesignKind::kUnrelatedQuestion) out["pi_y"] = family.pi_y;
    if (family.fixed_p2) out["p2"] = *family.fixed_p2;
    const Region1d region = FeasibleRegion1d(family, q, grid, exec);
    out["region"] = "intervals";
    out["intervals"] = IntervalsToJson(region.intervals);
    out["text"] = FormatIntervals(region.intervals);
    out["point_count"] = region.points.size();
    return out;
  }
  const Region2d region = FeasibleRegion2d(family.kind, q, grid, exec);
  out["region"] = "grid";
  Json cells = Json::array();
  for (const auto& [p1, p2] : region.AcceptedCells()) cells.push_back({p1, p2});
  out["cells"] = std::move(cells);
  out["cell_count"] = region.AcceptedCount();
  return out;
}

inline Json Simulate(const Json& req, const DispatchOptions& opts) {
  SimConfig cfg;
  cfg.spec = DesignFromJson(req);
  cfg.true_pi = GetDouble(req, "pi");
  cfg.n = GetInt(req, "n");
  cfg.replications = OptInt(req, "replications").value_or(10'000);
  if (req.contains("seed") && !req.at("seed").is_null()) {
    const Json& s = req.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw BadRequest("field 'seed' must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  } else {
    cfg.seed = opts.default_seed;
  }
  if (req.contains("pi0") && !req.at("pi0").is_null()) {
    Hypothesis hyp;
    hyp.pi0 = GetDouble(req, "pi0");
    hyp.pi1 = OptDouble(req, "pi1").value_or(cfg.true_pi);
    hyp.alpha = OptDouble(req, "alpha").value_or(0.05);
    cfg.hyp = hyp;
  }
  if (req.contains("method") && !req.at("method").is_null()) {
    auto m = ParseSamplingMethod(GetString(req, "method"));
    if (!m) throw BadRequest("method must be binomial or respondent");
    cfg.method = *m;
  }
  const SimReport r = RunSimulation(cfg, opts.threads);
  Json out = DesignToJson(cfg.spec);
  out["pi"] = cfg.true_pi;
  out["n"] = cfg.n;
  out["replications"] = r.replications;
  out["seed"] = r.seed;
  out["method"] = std::string(SamplingMethodName(cfg.method));
  out["mean_estimate"] = r.mean_estimate;
  out["sd_estimate"] = r.sd_estimate;
  out["bias"] = r.bias;
  out["mse"] = r.mse;
  out["analytic_sd"] = r.analytic_sd;
  if (cfg.hyp) {
    out.update(HypothesisToJson(*cfg.hyp));
    out["empirical_power"] = *r.empirical_power;
    out["analytic_power"] = Power(cfg.spec, *cfg.hyp, cfg.n).power;
  }
  return out;
}

inline Json AnalyzeOp(const Json& req) {
  Dataset ds;
  ds.design = DesignFromJson(req);
  ds.n = GetInt(req, "n");
  ds.yes_count = GetInt(req, "yes");
  if (req.contains("label") && req.at("label").is_string()) ds.label = req.at("label").get<std::string>();
  std::optional<Hypothesis> hyp;
  if (req.contains("pi0") && !req.at("pi0").is_null()) {
    Hypothesis h;
    h.pi0 = GetDouble(req, "pi0");
    // pi1 is irrelevant to the test on observed data.
    h.pi1 = OptDouble(req, "pi1").value_or(h.pi0 < 0.5 ? h.pi0 + 0.1 : h.pi0 - 0.1);
    h.alpha = OptDouble(req, "alpha").value_or(0.05);
    hyp = h;
  }
  const AnalysisReport r = Analyze(ds, hyp);
  Json out = DesignToJson(ds.design);
  out["n"] = ds.n;
  out["yes"] = ds.yes_count;
  if (!ds.label.empty()) out["label"] = ds.label;
  if (hyp) {
    out["pi0"] = hyp->pi0;
    out["alpha"] = hyp->alpha;
  }
  out.update(ReportToJson(r));
  return out;
}

inline Json Curves(const Json& req, const DispatchOptions& opts) {
  const DesignFamily family = FamilyFromJson(req);
  const Hypothesis hyp = HypothesisFromJson(req);
  const std::int64_t n = GetInt(req, "n");
  const Grid grid = GridFromJson(req);
  Json out;
  out["design"] = std::string(DesignKindName(family.kind));
  if (family.kind == DesignKind::kUnrelatedQuestion) out["pi_y"] = family.pi_y;
  if (family.fixed_p2) out["p2"] = *family.fixed_p2;
  out.update(HypothesisToJson(hyp));
  out["n"] = n;
  out["grid"] = grid.step();
  Json points = Json::array();
  for (const CurvePoint& pt : PowerPrivacyCurve(family, hyp, n, grid, ExecOptions{opts.threads}))
    points.push_back({{"p", pt.p}, {"epsilon", pt.epsilon}, {"power", pt.power}});
  out["points"] = std::move(points);
  return out;
}

inline Json ErrorBody(std::string_view code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace service

// Runs one operation on a JSON request object.
inline ServiceResult Dispatch(std::string_view operation, const Json& request,
                              const DispatchOptions& opts = {}) {
  using namespace service;
  ServiceResult result;
  try {
    if (!request.is_object()) throw BadRequest("request body must be a JSON object");
    if (operation == "budget") {
      result.body = Budget(request);
    } else if (operation == "power") {
      result.body = PowerOp(request);
    } else if (operation == "samplesize") {
      result.body = SampleSize(request);
    } else if (operation == "solve-p") {
      result.body = SolveP(request);
    } else if (operation == "optimize") {
      result = Optimize(request, opts);
    } else if (operation == "feasible") {
      result.body = Feasible(request, opts);
    } else if (operation == "simulate") {
      result.body = Simulate(request, opts);
    } else if (operation == "analyze") {
      result.body = AnalyzeOp(request);
    } else if (operation == "curves") {
      result.body = Curves(request, opts);
    } else {
      result = {404, ErrorBody("unknown_operation", "unknown operation '" + std::string(operation) + "'")};
    }
  } catch (const BadRequest& e) {
    result = {400, ErrorBody("bad_request", e.what())};
  } catch (const Error& e) {
    const bool infeasible = e.code() == ErrorCode::kNoSolution;
    result = {infeasible ? 422 : 400, ErrorBody(ErrorCodeName(e.code()), e.what())};
  } catch (const Json::exception& e) {
    result = {400, ErrorBody("bad_request", e.what())};
  } catch (const std::exception&) {
    result = {500, ErrorBody("internal", "internal error")};
  }
  result.body["schema_version"] = kSchemaVersion;
  result.body["operation"] = std::string(operation);
  return result;
}

}  // namespace rrdp

#endif  // RRDP_SERVICE_H_
