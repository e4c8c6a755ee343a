#include "gentor/json_io.hpp"

#include <fstream>

#include "gentor/errors.hpp"

namespace gentor::io {

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("not an integer: \"" + j.get<std::string>() + "\"");
    return x;
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j, std::size_t expected_size) {
  if (!j.is_array() || j.size() != expected_size)
    throw InvalidInput("expected an integer array of length " + std::to_string(expected_size) + ", got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

namespace {

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw InvalidInput(std::string(what) + ": expected a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json spec_to_json(const ext::ExtensionSpec& spec) {
  Json j;
  j["q_size"] = spec.q_size;
  j["q_table"] = spec.q_table;
  j["n"] = spec.n;
  Json phi = Json::array();
  for (const auto& m : spec.phi) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
    phi.push_back(rows);
  }
  j["phi"] = phi;
  Json coc = Json::array();
  for (const auto& row : spec.coc) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(vector_to_json(v));
    coc.push_back(r);
  }
  j["coc"] = coc;
  Json gens = Json::object();
  for (const auto& [name, g] : spec.generators) gens[name] = element_to_json(g);
  j["generators"] = gens;
  return j;
}

ext::GroupTable group_table_from_json(const Json& j) {
  const Json& t = j.is_object() ? field(j, "q_table") : j;
  if (!t.is_array()) throw InvalidInput("q_table must be an array of arrays");
  ext::GroupTable table;
  for (const auto& row : t) {
    if (!row.is_array()) throw InvalidInput("q_table rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& x : row) r.push_back(index_from_json(x, "q_table entry"));
    table.push_back(std::move(r));
  }
  return table;
}

ext::ExtensionSpec spec_from_json(const Json& j) {
  ext::ExtensionSpec spec;
  spec.q_size = index_from_json(field(j, "q_size"), "q_size");
  spec.q_table = group_table_from_json(field(j, "q_table"));
  spec.n = index_from_json(field(j, "n"), "n");
  const Json& phi = field(j, "phi");
  if (!phi.is_array() || phi.size() != spec.q_size) throw InvalidInput("phi must hold q_size matrices");
  for (const auto& m : phi) {
    if (!m.is_array() || m.size() != spec.n) throw InvalidInput("each phi matrix must have n rows");
    std::vector<IntVector> rows;
    for (const auto& r : m) rows.push_back(vector_from_json(r, spec.n));
    spec.phi.push_back(IntMatrix::from_rows(rows, spec.n));
  }
  const Json& coc = field(j, "coc");
  if (!coc.is_array() || coc.size() != spec.q_size) throw InvalidInput("coc must be a q_size x q_size array");
  for (const auto& row : coc) {
    if (!row.is_array() || row.size() != spec.q_size) throw InvalidInput("coc must be a q_size x q_size array");
    std::vector<IntVector> r;
    for (const auto& v : row) r.push_back(vector_from_json(v, spec.n));
    spec.coc.push_back(std::move(r));
  }
  const Json& gens = field(j, "generators");
  if (!gens.is_object()) throw InvalidInput("generators must map names to {q, a}");
  for (const auto& [name, g] : gens.items()) spec.generators.emplace_back(name, ext_element_from_json(g, spec.n));
  return spec;
}

catalog::FreeAbelExtInput free_abel_input_from_json(const Json& j) {
  catalog::FreeAbelExtInput in;
  in.rank = index_from_json(field(j, "rank"), "rank");
  in.q_table = group_table_from_json(field(j, "q_table"));
  const Json& images = field(j, "images");
  if (!images.is_array()) throw InvalidInput("images must be an array");
  for (const auto& x : images) in.images.push_back(index_from_json(x, "image"));
  if (j.contains("names")) in.names = j.at("names").get<std::vector<std::string>>();
  return in;
}

Json element_to_json(const ext::ExtElement& g) {
  Json j;
  j["q"] = g.q;
  j["a"] = vector_to_json(g.a);
  return j;
}

ext::ExtElement ext_element_from_json(const Json& j, std::size_t n) {
  return {index_from_json(field(j, "q"), "q"), vector_from_json(field(j, "a"), n)};
}

Json element_to_json(const metab::MetabElement& g) {
  Json j;
  j["alpha"] = integer_to_json(g.alpha);
  j["beta"] = integer_to_json(g.beta);
  j["v"] = vector_to_json(g.v);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string dump_members(const Json& j) {
  if (!j.is_object() || j.empty()) return j.dump();
  std::string out = "{\n";
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) {
    out += "  " + Json(key).dump() + ": " + value.dump();
    out += ++i < j.size() ? ",\n" : "\n";
  }
  return out + "}";
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["group"] = c.group;
  j["base_word"] = c.base_word;
  j["conjugator_words"] = c.conjugator_words;
  j["conjugators_raw"] = c.conjugators_raw;
  j["length"] = c.length;
  j["verified"] = c.verified;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  try {
    c.group = field(j, "group").get<std::string>();
    c.base_word = field(j, "base_word").get<std::string>();
    c.conjugator_words = field(j, "conjugator_words").get<std::vector<std::string>>();
    if (j.contains("conjugators_raw")) c.conjugators_raw = j.at("conjugators_raw");
    c.length = index_from_json(field(j, "length"), "length");
    c.verified = j.value("verified", false);
  } catch (const Json::type_error& e) {
    throw InvalidInput(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

}  // namespace gentor::io
