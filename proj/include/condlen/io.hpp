#pragma once

// JSON and CSV serialization.  Systems:
//   {"n": 2, "degrees": [2, 2],
//    "polys": [[{"exponents": [1, 1, 0], "re": 1.0, "im": 0.0}, ...], ...]}
// Points: [[re, im], ...].  Doubles are written in shortest round-trip form,
// so write-then-read is bit exact.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "condlen/experiments.hpp"

namespace condlen {

using Json = nlohmann::ordered_json;

inline Json to_json(const PolySystem& f) {
  Json polys = Json::array();
  for (int i = 0; i < f.n(); ++i) {
    const auto& p = f[i];
    const auto& t = p.table();
    Json terms = Json::array();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Complex c = p.coeffs()[static_cast<Eigen::Index>(k)];
      if (c.real() == 0.0 && c.imag() == 0.0 && !std::signbit(c.real()) && !std::signbit(c.imag())) continue;
      const auto e = t.exponents(k);
      terms.push_back({{"exponents", std::vector<int>(e.begin(), e.end())}, {"re", c.real()}, {"im", c.imag()}});
    }
    polys.push_back(std::move(terms));
  }
  return {{"n", f.n()}, {"degrees", f.profile().degrees()}, {"polys", std::move(polys)}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

inline double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

}  // namespace detail

/// Parses a system, rejecting entries whose exponent tuple has the wrong
/// length or degree; the message names the entry as polys[i][k].
inline PolySystem system_from_json(const Json& j) {
  const int n = detail::as_int(detail::field(j, "n", "system"), "n");
  const Json& dj = detail::field(j, "degrees", "system");
  if (!dj.is_array()) throw ParseError("degrees: expected an array");
  std::vector<int> degrees;
  for (std::size_t i = 0; i < dj.size(); ++i) degrees.push_back(detail::as_int(dj[i], "degrees[" + std::to_string(i) + "]"));
  std::optional<DegreeProfile> profile;
  try {
    profile.emplace(n, degrees);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  const Json& pj = detail::field(j, "polys", "system");
  if (!pj.is_array() || static_cast<int>(pj.size()) != n)
    throw ParseError("polys: expected an array of " + std::to_string(n) + " polynomials");
  PolySystem f(*profile);
  for (int i = 0; i < n; ++i) {
    const Json& terms = pj[static_cast<std::size_t>(i)];
    const std::string pw = "polys[" + std::to_string(i) + "]";
    if (!terms.is_array()) throw ParseError(pw + ": expected an array of terms");
    const int d = profile->degree(i);
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string where = pw + "[" + std::to_string(k) + "]";
      const Json& ej = detail::field(terms[k], "exponents", where);
      if (!ej.is_array() || static_cast<int>(ej.size()) != n + 1)
        throw ParseError(where + ": exponents must list " + std::to_string(n + 1) + " integers");
      std::vector<int> e;
      int total = 0;
      for (const auto& x : ej) {
        const int v = detail::as_int(x, where + ".exponents");
        if (v < 0) throw ParseError(where + ": negative exponent");
        e.push_back(v);
        total += v;
      }
      if (total != d)
        throw ParseError(where + ": exponents sum to " + std::to_string(total) + " but polynomial " +
                         std::to_string(i) + " has degree " + std::to_string(d));
      if (!seen.insert(e).second) throw ParseError(where + ": duplicate monomial");
      const double re = detail::as_double(detail::field(terms[k], "re", where), where + ".re");
      const double im = terms[k].contains("im") ? detail::as_double(terms[k].at("im"), where + ".im") : 0.0;
      f[i].coeff(MultiIndex{e}) = Complex(re, im);
    }
  }
  return f;
}

inline Json to_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v[k].real(), v[k].imag()});
  return a;
}

inline Json to_json(const ProjPoint& x) { return to_json(x.rep()); }

inline ProjPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point: expected a nonempty array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "point[" + std::to_string(k) + "]";
    if (j[k].is_number()) {
      v[static_cast<Eigen::Index>(k)] = detail::as_double(j[k], where);
    } else if (j[k].is_array() && j[k].size() == 2) {
      v[static_cast<Eigen::Index>(k)] = Complex(detail::as_double(j[k][0], where), detail::as_double(j[k][1], where));
    } else {
      throw ParseError(where + ": expected [re, im]");
    }
  }
  try {
    return ProjPoint(v);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("point: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

inline Json profile_json(const DegreeProfile& p) {
  return {{"n", p.n()},
          {"degrees", p.degrees()},
          {"D", p.max_degree()},
          {"bezout", p.bezout()},
          {"N", p.size()}};
}

// JSON has no infinity; non-finite values become null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const TrackResult& r) {
  return {{"status", to_string(r.status)},
          {"final_point", to_json(r.final_point)},
          {"steps", r.steps},
          {"condition_length", number(r.condition_length)},
          {"mu_peak", number(r.mu_peak)},
          {"certified", r.certified},
          {"max_jump", number(r.max_jump)}};
}

inline Json to_json(const SolveReport& r) {
  Json j = {{"input_hash", r.input_hash},
            {"algorithm", to_string(r.algorithm)},
            {"start", {{"system", to_json(r.start.system)}, {"zero", to_json(r.start.zero)}}},
            {"track", to_json(r.track)},
            {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
            {"redraws", r.redraws}};
  j["meta"] = {{"wall_seconds", r.wall_seconds}};
  return j;
}

inline Json to_json(const AllZerosResult& r) {
  Json zeros = Json::array();
  for (const auto& z : r.zeros) zeros.push_back(to_json(z));
  return {{"complete", r.complete},
          {"count", r.zeros.size()},
          {"zeros", std::move(zeros)},
          {"failed_paths", r.failed_paths},
          {"suspected_duplicates", r.suspected_duplicates},
          {"total_steps", r.total_steps}};
}

inline Json to_json(const InitialPair& p) {
  return {{"system", to_json(p.system)}, {"zero", to_json(p.zero)}, {"residual", p.residual}};
}

inline Json to_json(const ExperimentReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  Json extra = Json::object();
  for (const auto& [k, v] : r.extra) extra[k] = number(v);
  Json buckets = Json::array();
  for (double b : r.bucket_values) buckets.push_back(number(b));
  Json j = {{"name", r.name},
            {"identity", r.identity},
            {"profile", r.profile ? profile_json(*r.profile) : Json(nullptr)},
            {"parameters", std::move(params)},
            {"trials", r.trials},
            {"used", r.used},
            {"discarded", r.discarded},
            {"seed", r.seed},
            {"estimator", r.estimator},
            {"estimate", number(r.estimate)},
            {"standard_error", number(r.standard_error)},
            {"target", number(r.target)},
            {"relation", to_string(r.relation)},
            {"tolerance", r.tolerance},
            {"verdict", to_string(r.verdict)},
            {"buckets", r.buckets},
            {"bucket_values", std::move(buckets)},
            {"extra", std::move(extra)}};
  j["meta"] = {{"wall_seconds", r.wall_seconds}};
  return j;
}

namespace detail {

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

/// One row per trial: trial index, validity flag, then the table columns.
inline std::string to_csv(const TrialTable& t) {
  std::ostringstream os;
  os << "trial,valid";
  for (const auto& c : t.columns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < t.trials(); ++i) {
    os << i << ',' << int(t.valid[i]);
    for (std::size_t c = 0; c < t.width(); ++c) os << ',' << detail::csv_number(t.at(i, c));
    os << '\n';
  }
  return os.str();
}

inline std::string to_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os << "s,t,mu,mu_F,ds,residual\n";
  for (const auto& r : rows)
    os << detail::csv_number(r.s) << ',' << detail::csv_number(r.t) << ',' << detail::csv_number(r.mu) << ','
       << detail::csv_number(r.mu_frobenius) << ',' << detail::csv_number(r.ds) << ','
       << detail::csv_number(r.residual) << '\n';
  return os.str();
}

}  // namespace condlen
