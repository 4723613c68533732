#pragma once

#include <string>

#include "medialcorr/copula.hpp"

namespace medialcorr {

/// Parses the textual model grammar used by the CLI:
///
///   model   := simple | "compose:[" model ("|" model)* "]"
///   simple  := name (":" key "=" value ("," key "=" value)*)?
///   name    := "product" | "comonotone" | "countermonotone" | "gumbel" | "mo"
///
/// product/comonotone take d; gumbel takes d and delta; mo takes a1 and a2;
/// countermonotone takes nothing (dimension 2). Composition blocks occupy
/// consecutive coordinates in order of appearance. Whitespace around tokens
/// is ignored. Throws std::invalid_argument with a description on malformed
/// input.
CopulaModel parse_model(const std::string& text);

/// Canonical textual form (parse_model(format_model(m)) reproduces m).
std::string format_model(const CopulaModel& model);

}  // namespace medialcorr
