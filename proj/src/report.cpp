#include "cmverify/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cmverify::report {

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        write(j[i], depth + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const SuiteReport& rep, bool timing) {
  Json doc;
  doc["suite"] = rep.suite;
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json j;
    j["name"] = e.name;
    j["target"] = number(e.target);
    j["computed"] = number(e.computed);
    j["tol"] = number(e.tol);
    j["pass"] = e.pass;
    if (!e.reason.empty()) j["reason"] = e.reason;
    entries.push_back(std::move(j));
  }
  doc["entries"] = std::move(entries);
  if (!rep.details.is_null()) doc["details"] = rep.details;
  doc["pass"] = rep.pass();
  if (timing) doc["seconds"] = rep.seconds;
  return doc;
}

Json to_json(const std::vector<SuiteReport>& reps, bool timing) {
  Json doc;
  Json suites = Json::array();
  bool pass = true;
  double seconds = 0.0;
  for (const auto& r : reps) {
    suites.push_back(to_json(r, timing));
    pass = pass && r.pass();
    seconds += r.seconds;
  }
  doc["suites"] = std::move(suites);
  doc["pass"] = pass;
  if (timing) doc["seconds"] = seconds;
  return doc;
}

std::string dump(const Json& doc) {
  std::string out;
  write(doc, 0, out);
  out += "\n";
  return out;
}

std::string density_csv(const std::vector<arctan_cm::DensityPoint>& pts) {
  std::string out = "s,w,err\n";
  for (const auto& p : pts) {
    out += format_number(p.s) + "," + format_number(p.w) + "," + format_number(p.err) + "\n";
  }
  return out;
}

std::string entries_csv(const std::vector<SuiteReport>& reps) {
  std::string out = "suite,name,target,computed,tol,pass\n";
  for (const auto& r : reps) {
    for (const auto& e : r.entries) {
      // names never contain double quotes
      out += r.suite + ",\"" + e.name + "\"," + format_number(e.target) + "," + format_number(e.computed) + "," +
             format_number(e.tol) + "," + (e.pass ? "true" : "false") + "\n";
    }
  }
  return out;
}

}  // namespace cmverify::report
