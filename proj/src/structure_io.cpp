#include "gamelab/structure_io.hpp"

#include <fstream>
#include <sstream>

#include "gamelab/errors.hpp"
#include "gamelab/json_util.hpp"

namespace gamelab {

using nlohmann::json;

json structure_to_json(const Structure& s) {
  json j;
  json rels = json::array();
  for (const auto& r : s.schema().relations()) rels.push_back({{"name", r.name}, {"arity", r.arity}});
  j["schema"] = {{"relations", rels}, {"constants", s.schema().constants()}};
  j["universe_size"] = s.size();
  json data = json::object();
  for (std::size_t i = 0; i < s.relation_count(); ++i)
    data[s.schema().relations()[i].name] = s.relation(i).tuples();
  j["relations"] = data;
  json consts = json::object();
  for (std::size_t i = 0; i < s.constants().size(); ++i)
    consts[s.schema().constants()[i]] = s.constants()[i];
  j["constants"] = consts;
  if (!s.labels().empty()) {
    json labels = json::object();
    for (const auto& [e, name] : s.labels()) labels[std::to_string(e)] = name;
    j["labels"] = labels;
  }
  return j;
}

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad field '" + key + "': " + e.what());
  }
}

}  // namespace

Structure structure_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("structure: expected an object");
  json schema = field<json>(j, "schema", "structure");
  std::vector<RelationSymbol> rels;
  for (const auto& r : field<json>(schema, "relations", "schema"))
    rels.push_back({field<std::string>(r, "name", "schema.relations"),
                    field<int>(r, "arity", "schema.relations")});
  std::vector<std::string> consts;
  if (schema.contains("constants")) consts = field<std::vector<std::string>>(schema, "constants", "schema");
  Schema sch(rels, consts);
  auto n = field<std::size_t>(j, "universe_size", "structure");
  json data = j.contains("relations") ? j["relations"] : json::object();
  std::vector<std::vector<Tuple>> tuples;
  for (const auto& r : sch.relations()) {
    if (!data.contains(r.name)) {
      tuples.emplace_back();
      continue;
    }
    tuples.push_back(field<std::vector<Tuple>>(data, r.name.c_str(), "relations"));
  }
  for (const auto& [name, _] : data.items())
    if (!sch.relation_index(name)) throw ParseError("relations: unknown relation '" + name + "'");
  std::vector<Element> cdata;
  json cj = j.contains("constants") ? j["constants"] : json::object();
  for (const auto& c : sch.constants()) cdata.push_back(field<Element>(cj, c.c_str(), "constants"));
  std::map<Element, std::string> labels;
  if (j.contains("labels")) {
    for (const auto& [k, v] : j["labels"].items()) {
      try {
        labels.emplace(static_cast<Element>(std::stoul(k)), v.get<std::string>());
      } catch (const std::exception&) {
        throw ParseError("labels: bad entry '" + k + "'");
      }
    }
  }
  try {
    return Structure(sch, n, std::move(tuples), std::move(cdata), std::move(labels));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
}

std::string save_structure(const Structure& s) { return structure_to_json(s).dump(1) + "\n"; }

Structure load_structure(const std::string& text) { return structure_from_json(parse_json(text)); }

std::string save_pebbled(const PebbledStructure& p) {
  json j = structure_to_json(p.structure());
  if (!p.pebbles().empty()) {
    json peb = json::array();
    for (const auto& pb : p.pebbles()) peb.push_back({pb.color, pb.element});
    j["pebbles"] = peb;
  }
  return j.dump(1) + "\n";
}

PebbledStructure pebbled_from_json(const json& j) {
  auto s = std::make_shared<const Structure>(structure_from_json(j));
  std::vector<Pebble> pebbles;
  if (j.contains("pebbles")) {
    for (const auto& p : j["pebbles"]) {
      if (!p.is_array() || p.size() != 2) throw ParseError("pebbles: expected [color, element]");
      pebbles.push_back({p[0].get<std::string>(), p[1].get<Element>()});
    }
  }
  try {
    return PebbledStructure(s, std::move(pebbles));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("pebbles: ") + e.what());
  }
}

PebbledStructure load_pebbled(const std::string& text) { return pebbled_from_json(parse_json(text)); }

nlohmann::json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to a line number.
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(e.what(), line);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write " + path);
  out << text;
}

}  // namespace gamelab
