#include "morlicz/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace morlicz {

using nlohmann::json;

json to_json(const PiecewiseOrlicz& f) {
  json bps = json::array();
  for (const Breakpoint& b : f.breakpoints()) {
    bps.push_back(json::array({b.t, b.v}));
  }
  json out;
  out["breakpoints"] = std::move(bps);
  if (f.finite_tail()) {
    out["tail_slope"] = f.tail_slope();
  } else {
    out["tail_slope"] = "inf";
  }
  return out;
}

json to_json(const PowerOrlicz& f) {
  return json{{"power", f.exponent()}, {"coefficient", f.coefficient()}};
}

json to_json(const OrliczFunction& f) {
  if (const auto* pw = std::get_if<PiecewiseOrlicz>(&f)) return to_json(*pw);
  return to_json(std::get<PowerOrlicz>(f));
}

json to_json(const MusielakSpace& space) {
  json fs = json::array();
  for (const OrliczFunction& f : space.functions()) fs.push_back(to_json(f));
  return json{{"functions", std::move(fs)}, {"normalized", space.normalized()}};
}

json to_json(const Instance& inst) {
  json rows = json::array();
  for (std::size_t i = 0; i < inst.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < inst.cols; ++j) {
      row.push_back(inst.matrix[i * inst.cols + j]);
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", inst.n},       {"N", inst.cols},
              {"matrix", std::move(rows)}, {"x", inst.x},
              {"seed", inst.seed}, {"kind", instance_kind_name(inst.kind)}};
}

json to_json(const VerifyReport& r) {
  return json{{"theorem", r.theorem}, {"n", r.n},
              {"A", r.value},         {"L", r.reference},
              {"c_low", r.c_low},     {"c_high", r.c_high},
              {"pass", r.pass},       {"method", r.method},
              {"seed", r.seed}};
}

PiecewiseOrlicz piecewise_from_json(const json& j) {
  std::vector<Breakpoint> pts;
  for (const json& b : j.at("breakpoints")) {
    pts.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
  }
  const json& tail = j.at("tail_slope");
  const double ts = tail.is_string() ? kInfinity : tail.get<double>();
  if (tail.is_string() && tail.get<std::string>() != "inf") {
    throw std::invalid_argument("piecewise_from_json: bad tail_slope tag");
  }
  return PiecewiseOrlicz(std::move(pts), ts);
}

OrliczFunction function_from_json(const json& j) {
  if (j.contains("power")) {
    return PowerOrlicz(j.at("power").get<double>(),
                       j.at("coefficient").get<double>());
  }
  return piecewise_from_json(j);
}

MusielakSpace space_from_json(const json& j) {
  std::vector<OrliczFunction> fs;
  for (const json& f : j.at("functions")) fs.push_back(function_from_json(f));
  // The normalized flag is derived from the functions, not trusted.
  return MusielakSpace(std::move(fs));
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.cols = j.at("N").get<std::size_t>();
  inst.seed = j.value("seed", std::uint64_t{0});
  inst.kind = instance_kind_from_name(j.value("kind", std::string("USER")));
  const json& rows = j.at("matrix");
  if (rows.size() != inst.n) {
    throw std::invalid_argument("instance_from_json: row count mismatch");
  }
  inst.matrix.reserve(inst.n * inst.cols);
  for (const json& row : rows) {
    if (row.size() != inst.cols) {
      throw std::invalid_argument("instance_from_json: column count mismatch");
    }
    for (const json& e : row) inst.matrix.push_back(e.get<double>());
  }
  inst.x = j.at("x").get<std::vector<double>>();
  if (inst.x.size() != inst.n) {
    throw std::invalid_argument("instance_from_json: x length mismatch");
  }
  return inst;
}

VerifyReport report_from_json(const json& j) {
  VerifyReport r;
  r.theorem = j.at("theorem").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.value = j.at("A").get<double>();
  r.reference = j.at("L").get<double>();
  r.c_low = j.at("c_low").get<double>();
  r.c_high = j.at("c_high").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.method = j.at("method").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::string report_csv_header() {
  return "theorem,n,A,L,c_low,c_high,pass,method,seed";
}

std::string report_csv_row(const VerifyReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%.17g,%.17g,%d,%s,%llu",
                r.theorem.c_str(), r.n, r.value, r.reference, r.c_low, r.c_high,
                r.pass ? 1 : 0, r.method.c_str(),
                static_cast<unsigned long long>(r.seed));
  return buf;
}

}  // namespace morlicz
