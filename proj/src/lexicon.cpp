#include "mgl/lexicon.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mgl/check.hpp"
#include "mgl/error.hpp"
#include "mgl/parse.hpp"
#include "mgl/plurals.hpp"

namespace mgl {

using nlohmann::json;

const char* to_string(ModifierFlag flag) {
  return flag == ModifierFlag::Flexible ? "flexible" : "rigid";
}

const LexEntry* Lexicon::find(const std::string& word) const {
  for (const auto& entry : entries_)
    if (entry.word == word) return &entry;
  return nullptr;
}

void Lexicon::add_entry(LexEntry entry) {
  if (find(entry.word))
    fail(ErrorCode::DuplicateWord, "entry " + entry.word + " already present");
  auto check_closed = [&](const Term& term, const std::string& what) {
    auto frees = free_vars(term);
    if (!frees.empty())
      fail(ErrorCode::TypeErrorInEntry,
           entry.word + ": " + what + " has free variable " + frees.begin()->first);
  };
  try {
    check_closed(entry.principal, "principal term");
    entry.principal_type = check_type(signature, {}, entry.principal);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TypeErrorInEntry) throw;
    fail(ErrorCode::TypeErrorInEntry, entry.word + ": " + e.what());
  }
  std::set<std::string> labels;
  for (auto& optional : entry.optional_terms) {
    if (optional.label == kIdentityLabel)
      fail(ErrorCode::TypeErrorInEntry,
           entry.word + ": label " + kIdentityLabel + " is reserved");
    if (!labels.insert(optional.label).second)
      fail(ErrorCode::TypeErrorInEntry,
           entry.word + ": duplicate optional-term label " + optional.label);
    Type type = Type::prop();
    try {
      check_closed(optional.term, "optional term " + optional.label);
      type = check_type(signature, {}, optional.term);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::TypeErrorInEntry) throw;
      fail(ErrorCode::TypeErrorInEntry, entry.word + ": " + e.what());
    }
    if (!type.is_arrow())
      fail(ErrorCode::TypeErrorInEntry,
           entry.word + ": optional term " + optional.label + " has non-arrow type " +
               to_string(type));
    optional.from = type.domain();
    optional.to = type.codomain();
  }
  entries_.push_back(std::move(entry));
}

std::vector<OptionalTerm> transformations_for(const LexEntry& entry, const Type& from,
                                              const Type& to) {
  std::vector<OptionalTerm> out;
  if (type_eq(from, to)) {
    out.push_back(OptionalTerm{kIdentityLabel,
                               Term::lam("x", from, Term::var("x", from)),
                               entry.identity_flag, from, to});
  }
  for (const auto& optional : entry.optional_terms) {
    if (type_eq(optional.from, from) && type_eq(optional.to, to)) out.push_back(optional);
  }
  return out;
}

namespace {

ModifierFlag parse_flag(const json& value, const std::string& where) {
  if (!value.is_string())
    fail(ErrorCode::ParseError, where + ": flag must be a string");
  std::string text = value.get<std::string>();
  if (text == "flexible") return ModifierFlag::Flexible;
  if (text == "rigid") return ModifierFlag::Rigid;
  fail(ErrorCode::ParseError, where + ": flag must be \"flexible\" or \"rigid\"");
}

const json& require(const json& doc, const char* field, const std::string& where) {
  auto it = doc.find(field);
  if (it == doc.end())
    fail(ErrorCode::ParseError, where + ": missing field \"" + field + "\"");
  return *it;
}

}  // namespace

Lexicon load_lexicon(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "lexicon document must be an object");

  const json& version = require(doc, "schema_version", "lexicon");
  if (!version.is_number_integer() || version.get<int>() != kLexiconSchemaVersion)
    fail(ErrorCode::ParseError,
         "unsupported schema_version (expected " + std::to_string(kLexiconSchemaVersion) + ")");

  Lexicon lexicon;
  Signature& sig = lexicon.signature;
  install_logical_constants(sig);

  for (const auto& sort : require(doc, "sorts", "lexicon")) {
    if (!sort.is_string()) fail(ErrorCode::ParseError, "sorts must be strings");
    sig.add_sort(sort.get<std::string>());
  }

  if (doc.contains("base_coercions")) {
    for (const auto& edge : doc["base_coercions"]) {
      std::string from = require(edge, "from", "base_coercions").get<std::string>();
      std::string to = require(edge, "to", "base_coercions").get<std::string>();
      std::string name = require(edge, "name", "base_coercions").get<std::string>();
      if (!sig.has_sort(from) || !sig.has_sort(to))
        fail(ErrorCode::UnknownSort, "coercion " + name + " mentions an undeclared sort");
      sig.add_base_coercion(from, to, name);
    }
  }

  // First pass declares every constant type so definitions can refer to each
  // other regardless of order.
  std::vector<std::pair<std::string, std::string>> pending_definitions;
  if (doc.contains("constants")) {
    for (const auto& constant : doc["constants"]) {
      std::string name = require(constant, "name", "constants").get<std::string>();
      std::string type_src = require(constant, "type", "constants").get<std::string>();
      sig.add_constant(name, parse_type(sig, type_src));
      if (constant.contains("def"))
        pending_definitions.emplace_back(name, constant["def"].get<std::string>());
    }
  }

  if (doc.contains("install_plural_operators") &&
      doc["install_plural_operators"].get<bool>()) {
    lexicon.plural_operators = true;
    sig = install_plural_operators(sig);
  }

  for (const auto& [name, def_src] : pending_definitions) {
    Term def = parse_term(sig, def_src);
    sig.add_defined_constant(name, *sig.constant_type(name), def);
  }

  sig.validate();

  if (doc.contains("entries")) {
    for (const auto& entry_doc : doc["entries"]) {
      LexEntry entry;
      entry.word = require(entry_doc, "word", "entries").get<std::string>();
      std::string where = "entry " + entry.word;
      try {
        entry.principal = parse_term(sig, require(entry_doc, "principal", where).get<std::string>());
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownSort)
          fail(ErrorCode::TypeErrorInEntry, where + ": " + e.what());
        throw;
      }
      if (entry_doc.contains("identity_flag"))
        entry.identity_flag = parse_flag(entry_doc["identity_flag"], where);
      if (entry_doc.contains("optional")) {
        for (const auto& optional_doc : entry_doc["optional"]) {
          OptionalTerm optional;
          optional.label = require(optional_doc, "label", where).get<std::string>();
          try {
            optional.term =
                parse_term(sig, require(optional_doc, "term", where).get<std::string>());
          } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownSort)
              fail(ErrorCode::TypeErrorInEntry,
                   where + " (" + optional.label + "): " + e.what());
            throw;
          }
          optional.flag = parse_flag(require(optional_doc, "flag", where), where);
          entry.optional_terms.push_back(std::move(optional));
        }
      }
      lexicon.add_entry(std::move(entry));
    }
  }
  return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_lexicon(buffer.str());
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  json doc;
  doc["schema_version"] = kLexiconSchemaVersion;

  doc["sorts"] = json::array();
  for (const auto& sort : lexicon.signature.sorts()) doc["sorts"].push_back(sort);

  doc["base_coercions"] = json::array();
  std::set<std::string> coercion_constants;
  for (const auto& edge : lexicon.signature.base_coercions()) {
    doc["base_coercions"].push_back({{"from", edge.from}, {"to", edge.to}, {"name", edge.name}});
    coercion_constants.insert(edge.name);
  }

  // Builtin vocabulary and installed operators are re-created on load.
  std::set<std::string> skip = {"and", "or", "implies", "not", "forall", "exists",
                                "iota", "epsilon", "tau", "eta", "most"};
  if (lexicon.plural_operators)
    skip.insert({kIndividualAsSet, kDistributive, kSetDistributive, kCovering, kCardinality});

  doc["constants"] = json::array();
  for (const auto& [name, type] : lexicon.signature.constants()) {
    if (skip.count(name) || coercion_constants.count(name)) continue;
    json constant = {{"name", name}, {"type", to_string(type)}};
    if (const Term* def = lexicon.signature.definition(name))
      constant["def"] = to_string(*def);
    doc["constants"].push_back(constant);
  }

  doc["install_plural_operators"] = lexicon.plural_operators;

  doc["entries"] = json::array();
  for (const auto& entry : lexicon.entries()) {
    json entry_doc = {{"word", entry.word},
                      {"principal", to_string(entry.principal)},
                      {"identity_flag", to_string(entry.identity_flag)}};
    entry_doc["optional"] = json::array();
    for (const auto& optional : entry.optional_terms) {
      entry_doc["optional"].push_back({{"label", optional.label},
                                       {"term", to_string(optional.term)},
                                       {"flag", to_string(optional.flag)}});
    }
    doc["entries"].push_back(entry_doc);
  }
  return doc.dump(2);
}

}  // namespace mgl
