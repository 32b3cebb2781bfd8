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

#ifndef RRDP_OPTIMIZER_H_
#define RRDP_OPTIMIZER_H_

// Design-parameter search under a privacy cap:
//
//  * SolveParamForBudget   invert epsilon(p) = c
//  * SolveParamForPower    parameters where power(p) crosses a target
//  * OptimizeFixedN        maximize power at fixed n subject to epsilon <= c
//  * JointOptimize         minimal n (and its parameter) reaching a target
//                          power subject to epsilon <= c, by a per-parameter
//                          binary search over n
//  * FeasibleRegion1d/2d   grid cells meeting the privacy cap, the power
//                          floor, or both
//
// All grid searches evaluate cells independently and reduce in grid order, so
// results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rrdp/design.h"
#include "rrdp/error.h"
#include "rrdp/inference.h"
#include "rrdp/parallel.h"

namespace rrdp {

// A design kind plus whatever is held fixed while the optimizer varies the
// remaining coordinate(s).
struct DesignFamily {
  DesignKind kind = DesignKind::kWarner;
  double pi_y = 0.0;              // required for UQRR
  std::optional<double> fixed_p2;  // FRD/Kuk: vary p1 only

  static DesignFamily Of(DesignKind kind) {
    DesignFamily f;
    f.kind = kind;
    return f;
  }
  static DesignFamily UnrelatedQuestion(double pi_y) {
    DesignFamily f = Of(DesignKind::kUnrelatedQuestion);
    f.pi_y = pi_y;
    return f;
  }
  static DesignFamily WithFixedP2(DesignKind kind, double p2) {
    return {.kind = kind, .fixed_p2 = p2};
  }

  // True when a single coordinate is searched.
  bool one_dimensional() const { return IsScalarDesign(kind) || fixed_p2.has_value(); }

  // Member of the family at the searched coordinate x (and p2 for 2-D
  // families without a fixed p2).
  DesignSpec At(double x, double p2 = 0.0) const {
    return DesignSpec::Make(kind, x, fixed_p2.value_or(p2), pi_y);
  }
};

inline void Validate(const DesignFamily& family) {
  if (family.kind == DesignKind::kUnrelatedQuestion && !internal::OpenUnit(family.pi_y))
    ThrowInvalid("pi_y must lie in (0, 1)");
  if (family.fixed_p2 && IsScalarDesign(family.kind))
    ThrowInvalid("a fixed p2 only applies to forced-response and Kuk designs");
  if (family.fixed_p2 && !internal::OpenUnit(*family.fixed_p2))
    ThrowInvalid("fixed p2 must lie in (0, 1)");
}

// Open interval of the searched coordinate over which family members exist.
inline std::pair<double, double> SearchDomain(const DesignFamily& family) {
  if (family.kind == DesignKind::kForcedResponse && family.fixed_p2)
    return {0.0, 1.0 - *family.fixed_p2};
  return {0.0, 1.0};
}

struct PrivacyCap {
  double c = 1.0;
  bool strict = false;  // epsilon < c instead of epsilon <= c

  bool Admits(double epsilon) const { return strict ? epsilon < c : epsilon <= c; }
};

inline void Validate(const PrivacyCap& cap) {
  if (!(std::isfinite(cap.c) && cap.c > 0.0)) ThrowInvalid("privacy cap c must be positive");
}

// Uniform grid {k / divisions : 0 < k < divisions} on (0, 1).
struct Grid {
  int divisions = 100;

  static Grid FromStep(double step) {
    if (!(step > 0.0 && step <= 0.5)) ThrowInvalid("grid step must lie in (0, 0.5]");
    const double inv = 1.0 / step;
    const double rounded = std::round(inv);
    if (std::fabs(inv - rounded) > 1e-6 * rounded)
      ThrowInvalid("grid step must divide 1 evenly");
    if (rounded > 100000) ThrowInvalid("grid step must be at least 1e-5");
    return Grid{static_cast<int>(rounded)};
  }

  double step() const { return 1.0 / divisions; }
  double At(int k) const { return static_cast<double>(k) / divisions; }
  // Interior points are k = 1 .. divisions - 1.
  int size() const { return divisions - 1; }
  // Nearest grid index to x, or -1 if x is off the grid by more than 1e-6 of a step.
  int IndexOf(double x) const {
    const double k = std::round(x * divisions);
    if (std::fabs(k - x * divisions) > 1e-6) return -1;
    return static_cast<int>(k);
  }
};

struct ExecOptions {
  int threads = 1;
};

// Every valid family member on the grid, ordered by (p1 or p, then p2).
inline std::vector<DesignSpec> EnumerateCandidates(const DesignFamily& family, const Grid& grid) {
  Validate(family);
  std::vector<DesignSpec> out;
  if (family.one_dimensional()) {
    out.reserve(grid.size());
    for (int k = 1; k < grid.divisions; ++k) {
      DesignSpec spec = family.At(grid.At(k));
      if (IsValid(spec)) out.push_back(spec);
    }
    return out;
  }
  const std::int64_t cells = static_cast<std::int64_t>(grid.size()) * grid.size();
  if (cells > 4'000'000) ThrowInvalid("two-parameter grid too fine; fix p2 or coarsen the grid");
  out.reserve(static_cast<std::size_t>(cells));
  for (int i = 1; i < grid.divisions; ++i) {
    for (int j = 1; j < grid.divisions; ++j) {
      DesignSpec spec = family.At(grid.At(i), grid.At(j));
      if (IsValid(spec)) out.push_back(spec);
    }
  }
  return out;
}

namespace internal {

inline constexpr double kTieTolerance = 1e-12;

// Deterministic preference among candidates that tie on the objective:
// smaller epsilon first, then smaller p (or p1), then smaller p2.
inline bool PreferOnTie(const DesignSpec& a, double eps_a, const DesignSpec& b, double eps_b) {
  if (std::fabs(eps_a - eps_b) > kTieTolerance) return eps_a < eps_b;
  if (a.primary() != b.primary()) return a.primary() < b.primary();
  return a.p2 < b.p2;
}

// Roots of f on the open interval (lo, hi): sign changes between `samples`
// equally spaced probes (plus probes just inside each end), refined by
// bisection. Probes where f is NaN are skipped.
inline std::vector<double> FindRoots(const std::function<double(double)>& f, double lo, double hi,
                                     int samples) {
  std::vector<double> xs;
  xs.reserve(samples + 2);
  const double width = hi - lo;
  xs.push_back(lo + width * 1e-9);
  for (int i = 1; i < samples; ++i) xs.push_back(lo + width * i / samples);
  xs.push_back(hi - width * 1e-9);

  std::vector<double> roots;
  double prev_x = NAN, prev_f = NAN;
  for (double x : xs) {
    const double fx = f(x);
    if (std::isnan(fx)) continue;
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (!std::isnan(prev_f) && prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0)) {
      double a = prev_x, b = x, fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (std::isnan(fm)) {
          m = std::nextafter(m, b);
          fm = f(m);
        }
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

// Boundary between a point where pred is false and one where it is true, to
// within `tol`. Either argument order works.
inline double RefineBoundary(const std::function<bool(double)>& pred, double false_x,
                             double true_x, double tol = 1e-7) {
  double f = false_x, t = true_x;
  while (std::fabs(t - f) > tol) {
    const double m = 0.5 * (f + t);
    if (pred(m)) {
      t = m;
    } else {
      f = m;
    }
  }
  return 0.5 * (f + t);
}

}  // namespace internal

// Family members whose budget equals c, sorted by the searched coordinate.
// Warner uses the closed form p = e^c / (1 + e^c) and its mirror; the other
// designs bracket sign changes of epsilon(p) - c on a scan and bisect, so
// non-monotone budgets (two-step, Kuk) are handled. Throws kNoSolution when
// no member attains c.
inline std::vector<DesignSpec> SolveParamForBudget(const DesignFamily& family, double c) {
  Validate(family);
  if (!(std::isfinite(c) && c > 0.0)) ThrowInvalid("budget c must be positive");
  if (!family.one_dimensional())
    ThrowInvalid("fix p2 to solve a two-parameter design for its budget");
  std::vector<DesignSpec> out;
  if (family.kind == DesignKind::kWarner) {
    const double hi = std::exp(c) / (1.0 + std::exp(c));
    const double lo = 1.0 / (1.0 + std::exp(c));
    out = {DesignSpec::Warner(lo), DesignSpec::Warner(hi)};
    return out;
  }
  auto f = [&](double x) {
    const DesignSpec spec = family.At(x);
    if (!IsValid(spec)) return static_cast<double>(NAN);
    return PrivacyBudget(spec) - c;
  };
  const auto [lo, hi] = SearchDomain(family);
  for (double x : internal::FindRoots(f, lo, hi, 20000)) {
    const DesignSpec spec = family.At(x);
    if (IsValid(spec) && std::fabs(PrivacyBudget(spec) - c) <= 1e-9) out.push_back(spec);
  }
  if (out.empty())
    throw Error(ErrorCode::kNoSolution, "no design parameter attains the requested budget");
  return out;
}

// Values of the searched coordinate where power at sample size n crosses
// target_power, sorted ascending. Empty if the power curve never crosses.
inline std::vector<double> SolveParamForPower(const DesignFamily& family, const Hypothesis& hyp,
                                              std::int64_t n, double target_power) {
  Validate(family);
  Validate(hyp);
  CheckTargetPower(target_power);
  if (!family.one_dimensional()) ThrowInvalid("fix p2 to solve a two-parameter design for power");
  auto f = [&](double x) {
    const DesignSpec spec = family.At(x);
    if (!IsValid(spec)) return static_cast<double>(NAN);
    return Power(spec, hyp, n).power - target_power;
  };
  const auto [lo, hi] = SearchDomain(family);
  return internal::FindRoots(f, lo, hi, 4000);
}

struct DesignSolution {
  bool feasible = false;
  std::optional<std::int64_t> n_star;
  std::optional<DesignSpec> params_star;  // best found, even when infeasible
  double achieved_power = 0.0;
  double achieved_epsilon = 0.0;
  std::size_t candidates = 0;  // grid points admitted by the cap
};

// Power-maximizing grid member at n = n0 among those meeting the cap.
// Infeasible (with the best member attached) when that power is below
// target_power; params_star is empty when no member meets the cap.
inline DesignSolution OptimizeFixedN(const DesignFamily& family, const Hypothesis& hyp,
                                     std::int64_t n0, const PrivacyCap& cap, double target_power,
                                     const Grid& grid, const ExecOptions& exec = {}) {
  Validate(hyp);
  Validate(cap);
  CheckTargetPower(target_power);
  if (n0 < 1) ThrowInvalid("n must be at least 1");
  const std::vector<DesignSpec> specs = EnumerateCandidates(family, grid);
  std::vector<double> eps(specs.size()), powers(specs.size());
  ParallelFor(specs.size(), exec.threads, [&](std::size_t i) {
    eps[i] = PrivacyBudget(specs[i]);
    powers[i] = cap.Admits(eps[i]) ? Power(specs[i], hyp, n0).power : -1.0;
  });

  DesignSolution sol;
  sol.n_star = n0;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!cap.Admits(eps[i])) continue;
    ++sol.candidates;
    if (!best) {
      best = i;
      continue;
    }
    const double diff = powers[i] - powers[*best];
    if (diff > internal::kTieTolerance ||
        (std::fabs(diff) <= internal::kTieTolerance &&
         internal::PreferOnTie(specs[i], eps[i], specs[*best], eps[*best]))) {
      best = i;
    }
  }
  if (best) {
    sol.params_star = specs[*best];
    sol.achieved_power = powers[*best];
    sol.achieved_epsilon = eps[*best];
    sol.feasible = powers[*best] >= target_power;
  }
  return sol;
}

// Minimal sample size n in [1, n_max] whose power reaches target_power for
// some grid member meeting the cap, with that member. For each admitted
// member the smallest sufficient n is found by binary search over [1, n_max];
// the overall minimum wins, ties broken by PreferOnTie. When nothing
// qualifies, the member with the highest power at n_max is attached.
inline DesignSolution JointOptimize(const DesignFamily& family, const Hypothesis& hyp,
                                    const PrivacyCap& cap, double target_power,
                                    std::int64_t n_max, const Grid& grid,
                                    const ExecOptions& exec = {}) {
  Validate(hyp);
  Validate(cap);
  CheckTargetPower(target_power);
  if (n_max < 1) ThrowInvalid("n_max must be at least 1");
  const std::vector<DesignSpec> specs = EnumerateCandidates(family, grid);
  std::vector<double> eps(specs.size());
  std::vector<std::int64_t> n_for(specs.size(), 0);  // 0 = none
  ParallelFor(specs.size(), exec.threads, [&](std::size_t i) {
    eps[i] = PrivacyBudget(specs[i]);
    if (!cap.Admits(eps[i])) return;
    std::int64_t l = 1, r = n_max, n_p = 0;
    while (l <= r) {
      const std::int64_t n = l + (r - l) / 2;
      if (Power(specs[i], hyp, n).power >= target_power) {
        n_p = n;
        r = n - 1;
      } else {
        l = n + 1;
      }
    }
    n_for[i] = n_p;
  });

  DesignSolution sol;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!cap.Admits(eps[i])) continue;
    ++sol.candidates;
    if (n_for[i] == 0) continue;
    if (!best || n_for[i] < n_for[*best] ||
        (n_for[i] == n_for[*best] &&
         internal::PreferOnTie(specs[i], eps[i], specs[*best], eps[*best]))) {
      best = i;
    }
  }
  if (best) {
    sol.feasible = true;
    sol.n_star = n_for[*best];
    sol.params_star = specs[*best];
    sol.achieved_epsilon = eps[*best];
    sol.achieved_power = Power(specs[*best], hyp, n_for[*best]).power;
    return sol;
  }
  if (sol.candidates > 0) {
    DesignSolution fallback = OptimizeFixedN(family, hyp, n_max, cap, target_power, grid, exec);
    fallback.feasible = false;
    return fallback;
  }
  return sol;
}

enum class RegionMode { kPrivacy, kPower, kBoth };

inline std::string_view RegionModeName(RegionMode mode) {
  switch (mode) {
    case RegionMode::kPrivacy:
      return "privacy";
    case RegionMode::kPower:
      return "power";
    case RegionMode::kBoth:
      return "both";
  }
  return "both";
}

inline std::optional<RegionMode> ParseRegionMode(std::string_view name) {
  if (name == "privacy" || name == "epsilon") return RegionMode::kPrivacy;
  if (name == "power") return RegionMode::kPower;
  if (name == "both") return RegionMode::kBoth;
  return std::nullopt;
}

// Constraint set shared by the 1-D and 2-D region searches.
struct RegionQuery {
  Hypothesis hyp;
  std::int64_t n = 1000;
  PrivacyCap cap;
  double target_power = 0.8;
  RegionMode mode = RegionMode::kBoth;

  bool Accepts(const DesignSpec& spec) const {
    if (!IsValid(spec)) return false;
    if (mode != RegionMode::kPower && !cap.Admits(PrivacyBudget(spec))) return false;
    if (mode != RegionMode::kPrivacy && !(Power(spec, hyp, n).power >= target_power)) return false;
    return true;
  }
};

inline void Validate(const RegionQuery& q) {
  if (q.mode != RegionMode::kPrivacy) {
    Validate(q.hyp);
    CheckTargetPower(q.target_power);
    if (q.n < 1) ThrowInvalid("n must be at least 1");
  }
  if (q.mode != RegionMode::kPower) Validate(q.cap);
}

// Closed interval [lo, hi] of grid points, plus its boundary located to
// ~1e-7 by bisection. An end is open when the region runs to the edge of the
// parameter domain, in which case the refined value is that edge.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double lo_refined = 0.0;
  double hi_refined = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

struct Region1d {
  double step = 0.01;
  std::vector<Interval> intervals;
  std::vector<double> points;  // accepted grid points
};

// Renders "(0.00, 0.28] ∪ [0.72, 1.00)"; "∅" when empty. Open ends print
// the domain edge.
inline std::string FormatIntervals(const std::vector<Interval>& intervals, int decimals = 2) {
  if (intervals.empty()) return "\xE2\x88\x85";  // U+2205
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (i > 0) out += " \xE2\x88\xAA ";  // U+222A
    std::snprintf(buf, sizeof(buf), "%c%.*f, %.*f%c", iv.lo_open ? '(' : '[', decimals,
                  iv.lo_open ? iv.lo_refined : iv.lo, decimals,
                  iv.hi_open ? iv.hi_refined : iv.hi, iv.hi_open ? ')' : ']');
    out += buf;
  }
  return out;
}

namespace internal {

// Merges accepted grid indices into runs. Grid points that are not valid
// designs (Warner p = 1/2, Kuk p1 = p2, beyond the FRD simplex) neither
// extend nor break a run.
inline std::vector<std::pair<int, int>> MergeRuns(const std::vector<signed char>& state) {
  // state[k]: -1 invalid, 0 rejected, 1 accepted; index 0 unused.
  std::vector<std::pair<int, int>> runs;
  int start = -1, last = -1;
  for (int k = 1; k < static_cast<int>(state.size()); ++k) {
    if (state[k] < 0) continue;
    if (state[k] == 1) {
      if (start < 0) start = k;
      last = k;
    } else if (start >= 0) {
      runs.emplace_back(start, last);
      start = -1;
    }
  }
  if (start >= 0) runs.emplace_back(start, last);
  return runs;
}

}  // namespace internal

// Grid points of a one-dimensional family satisfying `query`, merged into
// intervals with refined boundaries.
inline Region1d FeasibleRegion1d(const DesignFamily& family, const RegionQuery& query,
                                 const Grid& grid, const ExecOptions& exec = {}) {
  Validate(family);
  Validate(query);
  if (!family.one_dimensional()) ThrowInvalid("fix p2 for a one-dimensional region");
  std::vector<signed char> state(grid.divisions, -1);
  ParallelFor(static_cast<std::size_t>(grid.size()), exec.threads, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    const DesignSpec spec = family.At(grid.At(k));
    if (IsValid(spec)) state[k] = query.Accepts(spec) ? 1 : 0;
  });

  Region1d region;
  region.step = grid.step();
  const auto [dom_lo, dom_hi] = SearchDomain(family);
  auto pred = [&](double x) { return query.Accepts(family.At(x)); };
  int first_valid = -1, last_valid = -1;
  for (int k = 1; k < grid.divisions; ++k) {
    if (state[k] >= 0) {
      if (first_valid < 0) first_valid = k;
      last_valid = k;
    }
    if (state[k] == 1) region.points.push_back(grid.At(k));
  }
  for (const auto& [a, b] : internal::MergeRuns(state)) {
    Interval iv;
    iv.lo = grid.At(a);
    iv.hi = grid.At(b);
    if (a == first_valid) {
      const double edge = dom_lo + 1e-9;
      if (pred(edge)) {
        iv.lo_open = true;
        iv.lo_refined = dom_lo;
      } else {
        iv.lo_refined = internal::RefineBoundary(pred, edge, iv.lo);
      }
    } else {
      iv.lo_refined = internal::RefineBoundary(pred, grid.At(a - 1), iv.lo);
    }
    if (b == last_valid) {
      const double edge = dom_hi - 1e-9;
      if (pred(edge)) {
        iv.hi_open = true;
        iv.hi_refined = dom_hi;
      } else {
        iv.hi_refined = internal::RefineBoundary(pred, edge, iv.hi);
      }
    } else {
      iv.hi_refined = internal::RefineBoundary(pred, grid.At(b + 1), iv.hi);
    }
    region.intervals.push_back(iv);
  }
  return region;
}

// Feasibility over the (p1, p2) grid of a forced-response or Kuk design.
struct Region2d {
  Grid grid;
  // state[(i - 1) * size + (j - 1)] for p1 = i/divisions, p2 = j/divisions:
  // -1 invalid design, 0 rejected, 1 accepted.
  std::vector<signed char> state;

  signed char At(int i, int j) const {
    return state[static_cast<std::size_t>(i - 1) * grid.size() + (j - 1)];
  }
  std::size_t AcceptedCount() const {
    return static_cast<std::size_t>(std::count(state.begin(), state.end(), 1));
  }
  // Accepted (p1, p2) pairs in grid order.
  std::vector<std::pair<double, double>> AcceptedCells() const {
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i < grid.divisions; ++i)
      for (int j = 1; j < grid.divisions; ++j)
        if (At(i, j) == 1) out.emplace_back(grid.At(i), grid.At(j));
    return out;
  }
  // Grid-snapped p1 intervals at a fixed grid value of p2 (no refinement).
  std::vector<Interval> Slice(double p2) const {
    const int j = grid.IndexOf(p2);
    if (j < 1 || j >= grid.divisions) ThrowInvalid("slice p2 must be an interior grid point");
    std::vector<signed char> column(grid.divisions, -1);
    for (int i = 1; i < grid.divisions; ++i) column[i] = At(i, j);
    std::vector<Interval> out;
    for (const auto& [a, b] : internal::MergeRuns(column)) {
      Interval iv;
      iv.lo = iv.lo_refined = grid.At(a);
      iv.hi = iv.hi_refined = grid.At(b);
      out.push_back(iv);
    }
    return out;
  }
};

inline Region2d FeasibleRegion2d(DesignKind kind, const RegionQuery& query, const Grid& grid,
                                 const ExecOptions& exec = {}) {
  if (IsScalarDesign(kind)) ThrowInvalid("two-dimensional regions need a forced-response or Kuk design");
  Validate(query);
  const std::int64_t cells = static_cast<std::int64_t>(grid.size()) * grid.size();
  if (cells > 4'000'000) ThrowInvalid("two-parameter grid too fine");
  Region2d region{grid, std::vector<signed char>(static_cast<std::size_t>(cells), -1)};
  ParallelFor(static_cast<std::size_t>(grid.size()), exec.threads, [&](std::size_t row) {
    const int i = static_cast<int>(row) + 1;
    for (int j = 1; j < grid.divisions; ++j) {
      const DesignSpec spec = DesignSpec::Make(kind, grid.At(i), grid.At(j));
      if (!IsValid(spec)) continue;
      region.state[row * grid.size() + (j - 1)] = query.Accepts(spec) ? 1 : 0;
    }
  });
  return region;
}

// One point of a power / privacy curve over the searched coordinate.
struct CurvePoint {
  double p = 0.0;
  double epsilon = 0.0;
  double power = 0.0;
};

// (p, epsilon, power) at every valid grid point of a one-dimensional family.
inline std::vector<CurvePoint> PowerPrivacyCurve(const DesignFamily& family, const Hypothesis& hyp,
                                                 std::int64_t n, const Grid& grid,
                                                 const ExecOptions& exec = {}) {
  Validate(hyp);
  if (n < 1) ThrowInvalid("n must be at least 1");
  Validate(family);
  if (!family.one_dimensional()) ThrowInvalid("fix p2 to trace a curve for a two-parameter design");
  const std::vector<DesignSpec> specs = EnumerateCandidates(family, grid);
  std::vector<CurvePoint> out(specs.size());
  ParallelFor(specs.size(), exec.threads, [&](std::size_t i) {
    out[i] = {specs[i].primary(), PrivacyBudget(specs[i]), Power(specs[i], hyp, n).power};
  });
  return out;
}

}  // namespace rrdp

#endif  // RRDP_OPTIMIZER_H_
