#pragma once

#include <cstdint>
#include <string>

#include "capprox/hardy.hpp"
#include "capprox/symbols.hpp"

namespace capprox::symspec {

// A symbol document: {"domain": {"blocks": [...]}, "symbol": {"type": ..., ...}}.
// Field names are pinned by schema/symbol.schema.json at the repo root.
struct ParsedSymbol {
  hardy::DomainSpec domain;
  sym::Symbol symbol;
  // Compact re-serialization of the validated document (alphabetical keys),
  // embedded in report headers so a run records what it actually parsed.
  std::string canonical;
};

// Both throw std::invalid_argument on malformed or inconsistent input.
// The seed feeds the self-map sampling done at symbol construction.
ParsedSymbol parse_symbol_json(const std::string& text,
                               std::uint64_t seed = sym::kDefaultSeed);
ParsedSymbol load_symbol_file(const std::string& path,
                              std::uint64_t seed = sym::kDefaultSeed);

}  // namespace capprox::symspec
