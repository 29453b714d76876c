#include "rapnc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rapnc/errors.hpp"
#include "rapnc/reductions.hpp"

namespace rapnc {

namespace {

using nlohmann::json;

std::vector<double> get_array(const json& j, const char* key,
                              std::size_t expect) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DomainError(std::string("instance file: missing array '") + key +
                      "'");
  }
  std::vector<double> v = j[key].get<std::vector<double>>();
  if (v.size() != expect) {
    throw DomainError(std::string("instance file: '") + key + "' must have " +
                      std::to_string(expect) + " entries");
  }
  return v;
}

json objective_to_json(const ObjectiveSpec& obj) {
  json j;
  j["kind"] = objective_kind_name(obj.kind);
  switch (obj.kind) {
    case ObjectiveKind::kLinear:
    case ObjectiveKind::kF:
      j["p"] = obj.p;
      break;
    case ObjectiveKind::kQuadratic:
      j["w"] = obj.w;
      j["t"] = obj.t;
      break;
    case ObjectiveKind::kCrash:
      j["k"] = obj.k;
      j["p"] = obj.p;
      break;
    case ObjectiveKind::kFuel:
      j["p"] = obj.p;
      j["c"] = obj.c;
      break;
    case ObjectiveKind::kCustom:
      if (obj.custom_tag == "speed") {
        j["kind"] = "speed";
        j["p"] = obj.p;
        j["delta"] = obj.c;
        j["v_opt"] = obj.t;
        break;
      }
      throw DomainError("custom objectives have no file representation");
  }
  return j;
}

ObjectiveSpec objective_from_json(const json& j, int n) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw DomainError("instance file: objective needs a 'kind'");
  }
  if (j["kind"].get<std::string>() == "speed") {
    return make_speed_objective(get_array(j, "p", n), get_array(j, "delta", n),
                                get_array(j, "v_opt", n));
  }
  const auto kind = objective_kind_from_name(j["kind"].get<std::string>());
  if (!kind) {
    throw DomainError("instance file: unknown objective kind '" +
                      j["kind"].get<std::string>() + "'");
  }
  switch (*kind) {
    case ObjectiveKind::kLinear:
      return ObjectiveSpec::linear(get_array(j, "p", n));
    case ObjectiveKind::kF:
      return ObjectiveSpec::family_f(get_array(j, "p", n));
    case ObjectiveKind::kQuadratic:
      return ObjectiveSpec::quadratic(get_array(j, "w", n),
                                      get_array(j, "t", n));
    case ObjectiveKind::kCrash:
      return ObjectiveSpec::crash(get_array(j, "k", n), get_array(j, "p", n));
    case ObjectiveKind::kFuel:
      return ObjectiveSpec::fuel(get_array(j, "p", n), get_array(j, "c", n));
    case ObjectiveKind::kCustom:
      break;
  }
  throw DomainError("instance file: custom objectives cannot be loaded");
}

json parse_stream(std::istream& in, const char* what) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
  return j;
}

}  // namespace

InstanceDoc read_instance(std::istream& in) {
  const json j = parse_stream(in, "instance file");
  InstanceDoc doc;
  if (!j.contains("n") || !j.contains("m")) {
    throw DomainError("instance file: missing n or m");
  }
  const int n = j["n"].get<int>();
  const int m = j["m"].get<int>();
  if (n < 1 || m < 1) throw DomainError("instance file: n and m must be >= 1");

  std::vector<int> sigma;
  {
    const auto s = get_array(j, "sigma", m);
    for (double v : s) {
      if (v != (int)v) {
        throw DomainError("instance file: sigma entries must be integers");
      }
      sigma.push_back((int)v);
    }
  }
  const auto a = get_array(j, "a", m);
  const auto b = get_array(j, "b", m);
  const auto c = get_array(j, "c", n);
  const auto d = get_array(j, "d", n);
  if (!j.contains("objective")) {
    throw DomainError("instance file: missing objective");
  }
  ObjectiveSpec obj = objective_from_json(j["objective"], n);
  doc.instance = NestedInstance::make(sigma, a, b, c, d, std::move(obj));

  if (j.contains("mode")) {
    const auto mode = mode_from_name(j["mode"].get<std::string>());
    if (!mode) {
      throw DomainError("instance file: mode must be integer or continuous");
    }
    doc.mode = *mode;
  }
  if (doc.mode == Mode::kInteger) {
    auto all_int = [](const std::vector<double>& v) {
      for (double x : v) {
        if (!is_integral(x, 0.0)) return false;
      }
      return true;
    };
    if (!all_int(a) || !all_int(b) || !all_int(c) || !all_int(d)) {
      throw DomainError("instance file: integer mode rejects fractional bounds");
    }
  }
  return doc;
}

InstanceDoc read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const InstanceDoc& doc) {
  const NestedInstance& ins = doc.instance;
  json j;
  j["n"] = ins.n;
  j["m"] = ins.m;
  j["sigma"] = std::vector<int>(ins.sigma.begin() + 1, ins.sigma.end());
  j["a"] = std::vector<double>(ins.a.begin() + 1, ins.a.end());
  j["b"] = std::vector<double>(ins.b.begin() + 1, ins.b.end());
  j["c"] = ins.c;
  j["d"] = ins.d;
  j["objective"] = objective_to_json(ins.objective);
  j["mode"] = mode_name(doc.mode);
  out << j.dump(2) << "\n";
}

void write_instance_file(const std::string& path, const InstanceDoc& doc) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write instance file: " + path);
  write_instance(out, doc);
}

Allocation read_allocation(std::istream& in) {
  const json j = parse_stream(in, "allocation file");
  Allocation alloc;
  if (!j.contains("x") || !j["x"].is_array()) {
    throw DomainError("allocation file: missing x");
  }
  alloc.x = j["x"].get<std::vector<double>>();
  if (j.contains("objective_value")) {
    alloc.objective_value = j["objective_value"].get<double>();
  }
  if (j.contains("mode")) {
    const auto mode = mode_from_name(j["mode"].get<std::string>());
    if (mode) alloc.mode = *mode;
  }
  return alloc;
}

Allocation read_allocation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open allocation file: " + path);
  return read_allocation(in);
}

void write_allocation(std::ostream& out, const Allocation& alloc) {
  json j;
  j["x"] = alloc.x;
  j["objective_value"] = alloc.objective_value;
  j["mode"] = mode_name(alloc.mode);
  out << j.dump(2) << "\n";
}

void write_allocation_file(const std::string& path, const Allocation& alloc) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write allocation file: " + path);
  write_allocation(out, alloc);
}

}  // namespace rapnc
