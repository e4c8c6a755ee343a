#pragma once

// JSON forms of extension specs, catalog inputs and certificates.
//
// Spec:  {"q_size", "q_table", "n", "phi", "coc", "generators": {name: {"q", "a"}}}
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.

#include <string>
#include <vector>

#include "json.hpp"

#include "gentor/catalog.hpp"
#include "gentor/extgroup.hpp"
#include "gentor/metab.hpp"

namespace gentor::io {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j, std::size_t expected_size);

Json spec_to_json(const ext::ExtensionSpec& spec);
/// Shape errors raise InvalidInput; group-theoretic checks are left to validate_extension.
ext::ExtensionSpec spec_from_json(const Json& j);

/// Accepts {"q_table": [[...]]} or a bare table.
ext::GroupTable group_table_from_json(const Json& j);
/// {"rank", "q_table", "images", "names"?}
catalog::FreeAbelExtInput free_abel_input_from_json(const Json& j);

Json element_to_json(const ext::ExtElement& g);
ext::ExtElement ext_element_from_json(const Json& j, std::size_t n);
Json element_to_json(const metab::MetabElement& g);

Json read_json_file(const std::string& path);
/// One top-level member per line, values compact.
std::string dump_members(const Json& j);

struct Certificate {
  std::string group;
  std::string base_word;
  std::vector<std::string> conjugator_words;
  Json conjugators_raw = Json::array();
  std::size_t length = 0;
  bool verified = false;
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

}  // namespace gentor::io
