// Copyright 2026 The dyncover Authors
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

#include "dyncover/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace dyncover {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Maps external integer ids to dense internal ids by first appearance.
class IdMap {
 public:
  ElementId intern(long long external) {
    auto [it, inserted] =
        map_.emplace(external, static_cast<ElementId>(map_.size()));
    (void)inserted;
    return it->second;
  }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<long long, ElementId> map_;
};

long long parse_int(const std::string& tok, int line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError("expected integer, got '" + tok + "'", line);
  }
  return v;
}

double parse_number(const std::string& tok, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError("expected number, got '" + tok + "'", line);
  }
  return v;
}

void dry_replay(const Instance& instance) {
  UniverseState universe(instance.system);
  for (std::size_t i = 0; i < instance.trace.size(); ++i) {
    try {
      apply_update(universe, instance.trace[i]);
    } catch (const TraceError& e) {
      throw ValidationError("trace step " + std::to_string(i + 1) + ": " +
                            e.what());
    }
  }
}

Instance parse_instance_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Instance instance;
  try {
    if (j.at("format") != "setcover" || j.at("version") != 1) {
      throw ParseError("not a setcover v1 JSON instance");
    }
    instance.system.capacity = j.at("n").get<std::int32_t>();
    instance.system.aspect_ratio = j.at("C").get<double>();
    IdMap elements;
    for (const auto& set : j.at("sets")) {
      instance.system.cost.push_back(set.at("cost").get<double>());
      std::vector<ElementId> mem;
      for (const auto& e : set.at("elements")) {
        mem.push_back(elements.intern(e.get<long long>()));
      }
      instance.system.members.push_back(std::move(mem));
    }
    instance.system.finalize(static_cast<std::int32_t>(elements.size()));
    for (const auto& step : j.at("trace")) {
      const std::string op = step.at("op").get<std::string>();
      const long long ext = step.at("element").get<long long>();
      const ElementId e = elements.intern(ext);
      if (e >= instance.system.num_elements()) {
        throw ValidationError("trace references element " +
                              std::to_string(ext) + " that is in no set");
      }
      if (op == "+") {
        instance.trace.push_back(UpdateStep::insert(e));
      } else if (op == "-") {
        instance.trace.push_back(UpdateStep::remove(e));
      } else {
        throw ParseError("trace op must be '+' or '-'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON schema: ") + e.what());
  }
  return instance;
}

void write_instance_json(const Instance& instance, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "setcover";
  j["version"] = 1;
  j["n"] = instance.system.capacity;
  j["C"] = instance.system.aspect_ratio;
  j["sets"] = nlohmann::json::array();
  for (SetId s = 0; s < instance.system.num_sets(); ++s) {
    nlohmann::json set;
    set["id"] = s;
    set["cost"] = instance.system.cost[static_cast<std::size_t>(s)];
    set["elements"] = instance.system.members[static_cast<std::size_t>(s)];
    j["sets"].push_back(std::move(set));
  }
  j["trace"] = nlohmann::json::array();
  for (const UpdateStep& step : instance.trace) {
    j["trace"].push_back(
        {{"op", step.kind == UpdateStep::Kind::Insert ? "+" : "-"},
         {"element", step.element}});
  }
  out << j.dump(1) << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

Instance parse_instance_text(std::istream& in) {
  Instance instance;
  IdMap elements;
  std::unordered_map<long long, SetId> set_ids;
  bool saw_header = false;
  bool in_trace = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (!saw_header) {
      if (tok != "setcover") throw ParseError("missing 'setcover' header", line_no);
      std::string version;
      if (!(ls >> version) || version != "v1") {
        throw ParseError("unsupported version '" + version + "'", line_no);
      }
      std::string kv;
      bool have_n = false, have_c = false;
      while (ls >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("bad header field '" + kv + "'", line_no);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "n") {
          instance.system.capacity =
              static_cast<std::int32_t>(parse_int(val, line_no));
          have_n = true;
        } else if (key == "C") {
          instance.system.aspect_ratio = parse_number(val, line_no);
          have_c = true;
        } else {
          throw ParseError("unknown header field '" + key + "'", line_no);
        }
      }
      if (!have_n || !have_c) throw ParseError("header needs n= and C=", line_no);
      saw_header = true;
      continue;
    }
    if (tok == "TRACE") {
      if (in_trace) throw ParseError("duplicate TRACE marker", line_no);
      in_trace = true;
      continue;
    }
    if (!in_trace) {
      if (tok != "S") throw ParseError("expected set line 'S ...'", line_no);
      std::string id_tok, cost_tok;
      if (!(ls >> id_tok >> cost_tok)) {
        throw ParseError("set line needs id and cost", line_no);
      }
      const long long ext_id = parse_int(id_tok, line_no);
      if (!set_ids.emplace(ext_id, instance.system.num_sets()).second) {
        throw ParseError("duplicate set id " + id_tok, line_no);
      }
      instance.system.cost.push_back(parse_number(cost_tok, line_no));
      std::vector<ElementId> mem;
      while (ls >> tok) {
        if (tok[0] == '#') break;
        mem.push_back(elements.intern(parse_int(tok, line_no)));
      }
      instance.system.members.push_back(std::move(mem));
    } else {
      if (tok != "+" && tok != "-") {
        throw ParseError("trace step must start with '+' or '-'", line_no);
      }
      std::string elem_tok;
      if (!(ls >> elem_tok)) throw ParseError("trace step needs an element", line_no);
      const long long ext = parse_int(elem_tok, line_no);
      const auto it_size_before = elements.size();
      const ElementId e = elements.intern(ext);
      if (elements.size() != it_size_before) {
        throw ValidationError("trace references element " + elem_tok +
                              " that is in no set (line " +
                              std::to_string(line_no) + ")");
      }
      instance.trace.push_back(tok == "+" ? UpdateStep::insert(e)
                                          : UpdateStep::remove(e));
    }
  }
  if (!saw_header) throw ParseError("empty instance file");
  instance.system.finalize(static_cast<std::int32_t>(elements.size()));
  return instance;
}

void write_instance_text(const Instance& instance, std::ostream& out) {
  out << "setcover v1 n=" << instance.system.capacity
      << " C=" << format_double(instance.system.aspect_ratio) << '\n';
  for (SetId s = 0; s < instance.system.num_sets(); ++s) {
    out << "S " << s << ' '
        << format_double(instance.system.cost[static_cast<std::size_t>(s)]);
    for (ElementId e : instance.system.members[static_cast<std::size_t>(s)]) {
      out << ' ' << e;
    }
    out << '\n';
  }
  out << "TRACE\n";
  for (const UpdateStep& step : instance.trace) {
    out << (step.kind == UpdateStep::Kind::Insert ? '+' : '-') << ' '
        << step.element << '\n';
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Instance instance = ends_with(path, ".json") ? parse_instance_json(in)
                                               : parse_instance_text(in);
  instance.system.validate();
  dry_replay(instance);
  return instance;
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  if (ends_with(path, ".json")) {
    write_instance_json(instance, out);
  } else {
    write_instance_text(instance, out);
  }
}

}  // namespace dyncover
