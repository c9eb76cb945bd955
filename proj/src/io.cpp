#include "nldist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace nldist {

using nlohmann::json;

json box_to_json(const Box& box) {
  const int d = box.dim();
  json p = json::array();
  for (int x = 0; x < 2; ++x) {
    json px = json::array();
    for (int y = 0; y < 2; ++y) {
      json pxy = json::array();
      for (int a = 0; a < d; ++a) {
        json row = json::array();
        for (int b = 0; b < d; ++b) row.push_back(box(x, y, a, b));
        pxy.push_back(std::move(row));
      }
      px.push_back(std::move(pxy));
    }
    p.push_back(std::move(px));
  }
  return json{{"d", d}, {"p", std::move(p)}};
}

namespace {

const json& require_array(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw std::invalid_argument(std::string(what) + ": expected an array of length " +
                                std::to_string(n));
  }
  return j;
}

int read_dim(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.at("d").is_number_integer()) {
    throw std::invalid_argument("missing integer field \"d\"");
  }
  const int d = j.at("d").get<int>();
  require_dimension(d);
  return d;
}

std::vector<std::vector<int>> read_int_table(const json& j, const char* key, std::size_t rows,
                                             std::size_t cols) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  const json& t = require_array(j.at(key), rows, key);
  std::vector<std::vector<int>> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = require_array(t[r], cols, key);
    for (const json& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + ": entries must be integers");
      out[r].push_back(v.get<int>());
    }
  }
  return out;
}

}  // namespace

Box box_from_json(const json& j, double tol) {
  const int d = read_dim(j);
  if (!j.contains("p")) throw std::invalid_argument("missing field \"p\"");
  const auto n = static_cast<std::size_t>(d);
  ProbTable t(d);
  const json& p = require_array(j.at("p"), 2, "p");
  for (int x = 0; x < 2; ++x) {
    const json& px = require_array(p[x], 2, "p[x]");
    for (int y = 0; y < 2; ++y) {
      const json& pxy = require_array(px[y], n, "p[x][y]");
      for (int a = 0; a < d; ++a) {
        const json& row = require_array(pxy[a], n, "p[x][y][a]");
        for (int b = 0; b < d; ++b) {
          if (!row[b].is_number()) throw std::invalid_argument("p entries must be numbers");
          t(x, y, a, b) = row[b].get<double>();
        }
      }
    }
  }
  return Box::from_table(std::move(t), tol);
}

json wiring_to_json(const WiringSpec& spec) {
  return json{{"d", spec.dim()},
              {"fa", spec.fa_table()},
              {"fb", spec.fb_table()},
              {"ga", spec.ga_table()},
              {"gb", spec.gb_table()}};
}

WiringSpec wiring_from_json(const json& j) {
  const int d = read_dim(j);
  const auto n = static_cast<std::size_t>(d);
  return WiringSpec(d, read_int_table(j, "fa", 2, n), read_int_table(j, "fb", 2, n),
                    read_int_table(j, "ga", n, n), read_int_table(j, "gb", n, n));
}

json cglmp_to_json(const CglmpReport& r) {
  return json{{"correlators", {{r.correlators[0][0], r.correlators[0][1]},
                               {r.correlators[1][0], r.correlators[1][1]}}},
              {"value", r.value}};
}

json distillation_to_json(const DistillationResult& r, bool include_box) {
  json out{{"d", r.final_box.dim()},
           {"initial_cglmp", r.initial_cglmp},
           {"final_cglmp", r.final_cglmp},
           {"closed_form_prediction", nullptr},
           {"oracle_residual", nullptr},
           {"cglmp_residual", nullptr}};
  if (r.prediction) {
    json pred{{"cglmp", r.prediction->cglmp}};
    if (r.prediction->epsilon_in) pred["epsilon_in"] = *r.prediction->epsilon_in;
    if (r.prediction->epsilon_out) pred["epsilon_out"] = *r.prediction->epsilon_out;
    out["closed_form_prediction"] = std::move(pred);
  }
  if (r.oracle_residual) out["oracle_residual"] = *r.oracle_residual;
  if (r.cglmp_residual) out["cglmp_residual"] = *r.cglmp_residual;
  if (include_box) out["final_box"] = box_to_json(r.final_box);
  return out;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace

Box read_box_file(const std::string& path, double tol) { return box_from_json(read_json_file(path), tol); }

WiringSpec read_wiring_file(const std::string& path) { return wiring_from_json(read_json_file(path)); }

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string format_decimal(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_efficiency_header(std::ostream& os) {
  os << "protocol,d,epsilon,cglmp_initial,cglmp_final\n";
}

void write_efficiency_row(std::ostream& os, const EfficiencyRow& r) {
  os << to_string(r.protocol) << ',' << r.d.str() << ',' << format_decimal(r.epsilon) << ','
     << format_decimal(r.cglmp_initial) << ',' << format_decimal(r.cglmp_final) << '\n';
}

void write_region_header(std::ostream& os) { os << "xi,gamma,d,cglmp_initial,cglmp_final,works\n"; }

void write_region_row(std::ostream& os, const RegionPoint& r) {
  os << format_decimal(r.xi) << ',' << format_decimal(r.gamma) << ',' << r.d.str() << ','
     << format_decimal(r.cglmp_initial) << ',' << format_decimal(r.cglmp_final) << ','
     << (r.works ? "true" : "false") << '\n';
}

void write_trajectory_header(std::ostream& os) { os << "round,copies,epsilon,cglmp,oracle_residual\n"; }

void write_trajectory_row(std::ostream& os, const IterationRow& r) {
  os << r.round << ',' << format_decimal(std::ldexp(1.0, r.round)) << ',' << format_decimal(r.epsilon)
     << ',' << format_decimal(r.cglmp) << ',' << format_decimal(r.residual) << '\n';
}

}  // namespace nldist
