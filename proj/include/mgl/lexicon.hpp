#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

enum class ModifierFlag { Flexible, Rigid };

const char* to_string(ModifierFlag flag);

// A word-anchored transformation. The term is closed and its type is an
// arrow; a flexible modifier may co-occur with other senses of the same word
// occurrence, a rigid one excludes every other transformation there.
struct OptionalTerm {
  std::string label;
  Term term;
  ModifierFlag flag = ModifierFlag::Flexible;
  Type from = Type::prop();
  Type to = Type::prop();
};

struct LexEntry {
  std::string word;
  Term principal;
  Type principal_type = Type::prop();
  std::vector<OptionalTerm> optional_terms;
  // Using the word unmodified is itself a (always available) modifier, with
  // its own flexibility flag.
  ModifierFlag identity_flag = ModifierFlag::Flexible;
};

class Lexicon {
 public:
  Signature signature;
  bool plural_operators = false;

  const std::vector<LexEntry>& entries() const { return entries_; }
  const LexEntry* find(const std::string& word) const;

  // Validates the entry against the signature:
  // principal closed and well-typed, optional terms closed with arrow types,
  // labels unique, word not already present.
  void add_entry(LexEntry entry);

 private:
  std::vector<LexEntry> entries_;
};

// All optional terms of type from -> to, in lexicon order, plus the identity
// modifier (labelled "Id") when from and to coincide.
std::vector<OptionalTerm> transformations_for(const LexEntry& entry, const Type& from,
                                              const Type& to);

// Document format: JSON with schema_version, sorts, base_coercions,
// constants (optionally with definitions), an install_plural_operators flag,
// and entries whose terms use the core textual syntax.
Lexicon load_lexicon(const std::string& json_text);
Lexicon load_lexicon_file(const std::string& path);
std::string serialize_lexicon(const Lexicon& lexicon);

inline constexpr int kLexiconSchemaVersion = 1;
inline constexpr const char* kIdentityLabel = "Id";

}  // namespace mgl
