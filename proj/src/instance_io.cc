// Copyright 2026 The carshare Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "carshare/errors.h"
#include "carshare/instance.h"
#include "json.hpp"

namespace carshare {

using nlohmann::json;

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "expected integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected number");
  return v.get<double>();
}

Instance from_json(const json& doc, bool check) {
  if (!doc.is_object()) field_error("<root>", "expected object");
  Instance instance;

  const int locations = as_int(require(doc, "locations", ""), "locations");
  if (locations < 0) throw DomainError("locations must be nonnegative");

  const json& distances = require(doc, "distances", "");
  if (!distances.is_array()) field_error("distances", "expected array of rows");
  if (static_cast<int>(distances.size()) != locations) {
    throw DomainError("distances has " + std::to_string(distances.size()) +
                      " rows but locations = " + std::to_string(locations));
  }
  std::vector<std::vector<double>> rows(locations);
  for (int x = 0; x < locations; ++x) {
    const std::string ctx = "distances[" + std::to_string(x) + "]";
    const json& row = distances[x];
    if (!row.is_array()) field_error(ctx, "expected array");
    if (static_cast<int>(row.size()) != locations) {
      throw DomainError(ctx + " has " + std::to_string(row.size()) +
                        " entries but locations = " + std::to_string(locations));
    }
    for (int y = 0; y < locations; ++y) {
      const std::string cell = ctx + "[" + std::to_string(y) + "]";
      const double d = as_number(row[y], cell);
      if (d < 0) throw DomainError(cell + " is negative (" + std::to_string(d) + ")");
      rows[x].push_back(d);
    }
  }
  instance.metric = DistanceMatrix::FromRows(rows);

  const json& cars = require(doc, "cars", "");
  if (!cars.is_array()) field_error("cars", "expected array");
  for (std::size_t k = 0; k < cars.size(); ++k) {
    const std::string ctx = "cars[" + std::to_string(k) + "]";
    if (!cars[k].is_object()) field_error(ctx, "expected object");
    Car car;
    car.location = as_int(require(cars[k], "location", ctx), ctx + ".location");
    if (auto it = cars[k].find("speed"); it != cars[k].end()) {
      car.speed = as_number(*it, ctx + ".speed");
    }
    instance.cars.push_back(car);
  }

  const json& requests = require(doc, "requests", "");
  if (!requests.is_array()) field_error("requests", "expected array");
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const std::string ctx = "requests[" + std::to_string(i) + "]";
    if (!requests[i].is_object()) field_error(ctx, "expected object");
    Request r;
    r.pickup = as_int(require(requests[i], "pickup", ctx), ctx + ".pickup");
    r.dropoff = as_int(require(requests[i], "dropoff", ctx), ctx + ".dropoff");
    instance.requests.push_back(r);
  }

  if (auto it = doc.find("capacity"); it != doc.end()) {
    instance.capacity = as_int(*it, "capacity");
  }
  if (auto it = doc.find("padded"); it != doc.end()) {
    if (!it->is_boolean()) field_error("padded", "expected boolean");
    instance.padded = it->get<bool>();
  }
  if (auto it = doc.find("dummy_cars"); it != doc.end()) {
    instance.dummy_cars = as_int(*it, "dummy_cars");
  }
  if (auto it = doc.find("dummy_requests"); it != doc.end()) {
    instance.dummy_requests = as_int(*it, "dummy_requests");
  }
  if (check) check_instance(instance);
  return instance;
}

json to_json(const Instance& instance) {
  json doc;
  doc["locations"] = instance.metric.size();
  doc["distances"] = instance.metric.rows();
  json cars = json::array();
  for (const Car& car : instance.cars) {
    json c = {{"location", car.location}};
    if (car.speed != 1.0) c["speed"] = car.speed;
    cars.push_back(c);
  }
  doc["cars"] = cars;
  json requests = json::array();
  for (const Request& r : instance.requests) {
    requests.push_back({{"pickup", r.pickup}, {"dropoff", r.dropoff}});
  }
  doc["requests"] = requests;
  doc["capacity"] = instance.capacity;
  if (instance.padded) doc["padded"] = true;
  if (instance.dummy_cars != 0) doc["dummy_cars"] = instance.dummy_cars;
  if (instance.dummy_requests != 0) doc["dummy_requests"] = instance.dummy_requests;
  return doc;
}

}  // namespace

Instance parse_instance(std::string_view text, bool check) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_column(text, e.byte) + ": " +
                     e.what());
  }
  try {
    return from_json(doc, check);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  return to_json(instance).dump();
}

Instance load_instance(const std::filesystem::path& path, bool check) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str(), check);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << to_json(instance).dump(2) << "\n";
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : serialize_instance(instance)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace carshare
