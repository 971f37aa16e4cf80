#include "cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace lks::cli {

namespace {

void emit(const Json& j, std::string& out, int depth) {
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
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        emit(v, out, depth + 1);
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
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void bad(const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); }

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += '\n';
  return out;
}

void write_output(const std::string& content, const std::optional<std::string>& path, std::ostream& out) {
  if (!path || path->empty()) {
    out << content;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(*path);
  const fs::path tmp = target.string() + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) bad("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      bad("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    bad("cannot move output into " + target.string());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed JSON input: ") + e.what());
  }
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known |= (k == a);
    if (!known) bad("unknown field '" + k + "' in " + where);
  }
}

double get_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "' in " + where);
  const Json& v = j.at(key);
  if (!v.is_number()) bad(std::string("field '") + key + "' in " + where + " must be a number");
  return v.get<double>();
}

double get_number_or(const Json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? get_number(j, key, where) : fallback;
}

namespace {

std::vector<double> get_array(const Json& j, const char* key, std::size_t n, const std::string& where) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "' in " + where);
  const Json& v = j.at(key);
  if (!v.is_array() || v.size() != n)
    bad(std::string("field '") + key + "' in " + where + " must be an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(std::string("field '") + key + "' in " + where + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Vec3 get_vec3(const Json& j, const char* key, const std::string& where) {
  const auto a = get_array(j, key, 3, where);
  return {a[0], a[1], a[2]};
}

Quaternion get_quaternion(const Json& j, const char* key, const std::string& where) {
  const auto a = get_array(j, key, 4, where);
  return {a[0], a[1], a[2], a[3]};
}

Json to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const Quaternion& q) { return Json::array({q.s0, q.v.x, q.v.y, q.v.z}); }

Json to_json(const CartesianPhaseExt& p) {
  Json j;
  j["x_star"] = p.x_star;
  j["x"] = to_json(p.x);
  j["X_star"] = p.X_star;
  j["X"] = to_json(p.X);
  return j;
}

Json to_json(const KSPhase& k) {
  Json j;
  j["v_star"] = k.v_star;
  j["v"] = to_json(k.v);
  j["V_star"] = k.V_star;
  j["V"] = to_json(k.V);
  return j;
}

Json to_json(const LKSState& s) {
  Json j;
  j["s"] = s.s;
  j["l"] = s.l;
  j["lambda"] = s.lambda;
  j["g"] = s.g;
  j["gamma"] = s.gamma;
  j["S"] = s.S;
  j["L"] = s.L;
  j["Lambda"] = s.Lambda;
  j["G"] = s.G;
  j["Gamma"] = s.Gamma;
  return j;
}

Json to_json(const KeplerElements& el) {
  Json j;
  j["a"] = el.a;
  j["e"] = el.e;
  j["I"] = el.I;
  j["arg_pericentre"] = el.arg_pericentre;
  j["node"] = el.node;
  j["true_anomaly"] = el.true_anomaly;
  return j;
}

Json to_json(const ElementExtraction& ex) {
  Json j;
  j["degeneracy"] = to_string(ex.degeneracy);
  j["a"] = ex.a;
  j["e"] = ex.e;
  auto opt = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  opt("I", ex.I);
  opt("arg_pericentre", ex.arg_pericentre);
  opt("node", ex.node);
  opt("true_anomaly", ex.true_anomaly);
  opt("arg_latitude", ex.arg_latitude);
  opt("longitude_of_pericentre", ex.longitude_of_pericentre);
  opt("true_longitude", ex.true_longitude);
  if (ex.apsidal_direction) j["apsidal_direction"] = to_json(*ex.apsidal_direction);
  return j;
}

Json to_json(const LissajousPlane& p, double omega) {
  const auto [a, b] = lissajous_semiaxes(p, omega);
  Json j;
  j["plane"] = to_string(p.tag);
  j["l"] = p.l;
  j["g"] = p.g;
  j["L"] = p.L;
  j["G"] = p.G;
  j["semi_major"] = a;
  j["semi_minor"] = b;
  return j;
}

Json to_json(const Equilibrium& e) {
  Json j;
  j["lambda"] = e.lambda;
  j["Lambda"] = e.Lambda;
  j["family"] = to_string(e.family);
  j["stability"] = to_string(e.stability);
  j["eigenvalues"] = Json::array();
  for (const auto& z : e.eigenvalues) j["eigenvalues"].push_back(Json::array({z.real(), z.imag()}));
  j["lambda_defined"] = e.lambda_defined;
  if (!e.extremum.empty()) j["extremum"] = e.extremum;
  return j;
}

Json error_json(const std::exception& e) {
  Json err;
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    err["kind"] = std::string(to_string(le->kind()));
    const ErrorCategory c = le->category();
    err["category"] = c == ErrorCategory::Geometric ? "geometric" : c == ErrorCategory::InvalidInput ? "invalid_input"
                                                                                                      : "numerical";
  } else {
    err["kind"] = "InvalidArgument";
    err["category"] = "invalid_input";
  }
  err["message"] = e.what();
  if (const auto* ua = dynamic_cast<const UndefinedAnglesError*>(&e)) {
    err["undetermined"] = ua->undetermined();
    Json s = Json::object();
    for (const auto& a : ua->surviving()) s[a.name] = a.value;
    err["surviving"] = s;
  }
  Json j;
  j["error"] = err;
  return j;
}

}  // namespace lks::cli
