#include "sepfol/structure.hpp"

#include <json.hpp>

namespace sepfol {

std::size_t Structure::table_size(int arity) const {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(universe_size);
  return n;
}

std::size_t Structure::index(const std::vector<int>& tuple) const {
  std::size_t idx = 0;
  for (int v : tuple) idx = idx * static_cast<std::size_t>(universe_size) + static_cast<std::size_t>(v);
  return idx;
}

bool Structure::holds(const std::string& predicate, const std::vector<int>& tuple) const {
  auto it = predicates.find(predicate);
  if (it == predicates.end()) throw MissingInterpretation("no interpretation for predicate '" + predicate + "'");
  if (it->second.arity < 0) return false;
  if (it->second.arity != static_cast<int>(tuple.size()))
    throw ArityConflict("predicate '" + predicate + "' interpreted with a different arity");
  return it->second.bits[index(tuple)] != 0;
}

int Structure::apply(const std::string& function, const std::vector<int>& tuple) const {
  auto it = functions.find(function);
  if (it == functions.end()) throw MissingInterpretation("no interpretation for function '" + function + "'");
  if (it->second.arity != static_cast<int>(tuple.size()))
    throw ArityConflict("function '" + function + "' interpreted with a different arity");
  return it->second.values[index(tuple)];
}

void Structure::declare(const Signature& sig) {
  for (const auto& [name, arity] : sig.predicates) {
    auto& table = predicates[name];
    if (table.arity < 0 || table.bits.empty()) {
      table.arity = arity;
      table.bits.assign(table_size(arity), 0);
    }
  }
  for (const auto& [name, arity] : sig.functions) {
    if (!functions.count(name)) functions[name] = FunctionTable{arity, std::vector<int>(table_size(arity), 0)};
  }
  for (const auto& name : sig.constants) constants.emplace(name, 0);
}

void Structure::set(const std::string& predicate, const std::vector<int>& tuple, bool value) {
  auto& table = predicates[predicate];
  if (table.arity < 0 || table.bits.empty()) {
    table.arity = static_cast<int>(tuple.size());
    table.bits.assign(table_size(table.arity), 0);
  }
  table.bits[index(tuple)] = value ? 1 : 0;
}

void Structure::set_function(const std::string& function, const std::vector<int>& tuple, int value) {
  auto& table = functions[function];
  if (table.values.empty()) {
    table.arity = static_cast<int>(tuple.size());
    table.values.assign(table_size(table.arity), 0);
  }
  table.values[index(tuple)] = value;
}

Signature Structure::signature() const {
  Signature sig;
  for (const auto& [name, table] : predicates)
    if (table.arity >= 0) sig.add_predicate(name, table.arity);
  for (const auto& [name, table] : functions) sig.add_function(name, table.arity);
  for (const auto& [name, value] : constants) sig.add_constant(name);
  return sig;
}

bool Structure::interprets(const Signature& sig) const {
  for (const auto& [name, arity] : sig.predicates) {
    auto it = predicates.find(name);
    if (it == predicates.end() || (it->second.arity >= 0 && it->second.arity != arity)) return false;
  }
  for (const auto& [name, arity] : sig.functions) {
    auto it = functions.find(name);
    if (it == functions.end() || it->second.arity != arity) return false;
  }
  for (const auto& name : sig.constants)
    if (!constants.count(name)) return false;
  return true;
}

std::vector<std::vector<int>> all_tuples(int universe_size, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(arity), 0);
  for (;;) {
    out.push_back(t);
    int i = arity - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == universe_size - 1) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
    ++t[static_cast<std::size_t>(i)];
  }
}

// ---------------------------------------------------------------- JSON

namespace {

using json = nlohmann::ordered_json;

int element(const json& j, int n, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an element index");
  long long v = j.get<long long>();
  if (v < 0 || v >= n) throw SchemaError(where + ": element " + std::to_string(v) + " outside universe");
  return static_cast<int>(v);
}

std::vector<int> tuple_of(const json& j, int n, const std::string& where) {
  if (j.is_number_integer()) return {element(j, n, where)};
  if (!j.is_array()) throw SchemaError(where + ": expected a tuple");
  std::vector<int> t;
  for (const auto& e : j) t.push_back(element(e, n, where));
  return t;
}

}  // namespace

Structure parse_structure(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("structure must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "universe" && key != "constants" && key != "functions" && key != "predicates" && key != "schema")
      throw SchemaError("unknown key '" + key + "'");
  if (!j.contains("universe") || !j["universe"].is_number_integer()) throw SchemaError("missing integer 'universe'");
  Structure s;
  long long n = j["universe"].get<long long>();
  if (n < 1) throw SchemaError("universe must be nonempty");
  if (n > 1'000'000) throw SchemaError("universe too large");
  s.universe_size = static_cast<int>(n);

  if (j.contains("constants")) {
    if (!j["constants"].is_object()) throw SchemaError("'constants' must be an object");
    for (const auto& [name, value] : j["constants"].items())
      s.constants[name] = element(value, s.universe_size, "constant " + name);
  }
  if (j.contains("functions")) {
    if (!j["functions"].is_object()) throw SchemaError("'functions' must be an object");
    for (const auto& [name, table] : j["functions"].items()) {
      if (!table.is_object()) throw SchemaError("function " + name + ": expected an object");
      FunctionTable ft;
      ft.arity = -1;
      std::vector<bool> seen;
      for (const auto& [key, value] : table.items()) {
        json k;
        try {
          k = json::parse(key);
        } catch (const json::parse_error&) {
          throw SchemaError("function " + name + ": malformed argument key '" + key + "'");
        }
        auto args = tuple_of(k, s.universe_size, "function " + name);
        if (ft.arity < 0) {
          ft.arity = static_cast<int>(args.size());
          ft.values.assign(s.table_size(ft.arity), 0);
          seen.assign(ft.values.size(), false);
        } else if (ft.arity != static_cast<int>(args.size())) {
          throw SchemaError("function " + name + ": inconsistent arity");
        }
        auto idx = s.index(args);
        if (seen[idx]) throw SchemaError("function " + name + ": duplicate entry " + key);
        seen[idx] = true;
        ft.values[idx] = element(value, s.universe_size, "function " + name);
      }
      if (ft.arity < 1) throw SchemaError("function " + name + ": empty table");
      for (bool b : seen)
        if (!b) throw SchemaError("function " + name + ": table is not total");
      s.functions[name] = std::move(ft);
    }
  }
  if (j.contains("predicates")) {
    if (!j["predicates"].is_object()) throw SchemaError("'predicates' must be an object");
    for (const auto& [name, tuples] : j["predicates"].items()) {
      if (!tuples.is_array()) throw SchemaError("predicate " + name + ": expected a list of tuples");
      PredicateTable pt;
      pt.arity = -1;
      for (const auto& t : tuples) {
        auto tuple = tuple_of(t, s.universe_size, "predicate " + name);
        if (pt.arity < 0) {
          pt.arity = static_cast<int>(tuple.size());
          pt.bits.assign(s.table_size(pt.arity), 0);
        } else if (pt.arity != static_cast<int>(tuple.size())) {
          throw SchemaError("predicate " + name + ": inconsistent arity");
        }
        pt.bits[s.index(tuple)] = 1;
      }
      s.predicates[name] = std::move(pt);
    }
  }
  return s;
}

std::string print_structure(const Structure& s) {
  json j = json::object();
  j["universe"] = s.universe_size;
  for (const auto& [name, value] : s.constants) j["constants"][name] = value;
  for (const auto& [name, table] : s.functions) {
    json entries = json::object();
    auto tuples = all_tuples(s.universe_size, table.arity);
    for (std::size_t i = 0; i < tuples.size(); ++i) entries[json(tuples[i]).dump()] = table.values[i];
    j["functions"][name] = std::move(entries);
  }
  for (const auto& [name, table] : s.predicates) {
    json list = json::array();
    if (table.arity >= 0) {
      auto tuples = all_tuples(s.universe_size, table.arity);
      for (std::size_t i = 0; i < tuples.size(); ++i)
        if (table.bits[i]) list.push_back(tuples[i]);
    }
    j["predicates"][name] = std::move(list);
  }
  return j.dump();
}

}  // namespace sepfol
