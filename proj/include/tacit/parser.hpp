#pragma once

#include <string>
#include <string_view>

#include "tacit/ast.hpp"
#include "tacit/errors.hpp"

namespace tacit {

/// Parses DSL source into a Model. Total: returns a Model or throws
/// ParseError, never crashes. Dangling references are left for
/// validate_model so partially consistent drafts still parse.
Model parse_model(std::string_view text, std::string filename);

/// Reads a file and parses it. Throws IoError when unreadable.
Model parse_model_file(const std::string& path);

}  // namespace tacit
