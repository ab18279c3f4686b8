#pragma once

#include <filesystem>
#include <string>

#include "frlstsvm/classifier.hpp"

namespace frlstsvm {

/// Versioned text format. Line 1 is `FRLSTSVM/1 <linear|gaussian>`; every
/// following section starts with `<name> <count...>` and the listed number
/// of lines. Reals are printed with 17 significant digits so a write/read
/// cycle is exact.
std::string serialize_model(const Model& model);
Model deserialize_model(const std::string& text);

/// Writes through a temporary file and renames it into place.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// Atomic text write shared by every output of the CLI.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace frlstsvm
