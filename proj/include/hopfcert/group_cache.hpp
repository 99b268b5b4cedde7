#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcert/group.hpp"

namespace hopfcert {

/// Cache file name for (family, field): "<family>_q<q>_m<modulus digits>.grp".
std::string group_cache_path(const std::string& dir, Family family, const FiniteField& field);

/// Reads a cached element list. Returns nullopt when no file exists and
/// throws CacheIntegrityError when a file exists but fails validation
/// (magic, header mismatch, truncation, checksum, ordering).
std::optional<std::vector<Matrix>> load_group_cache(const std::string& dir, Family family, const FiniteField& field);

/// Writes the element list atomically (temporary file plus rename).
void write_group_cache(const std::string& dir, Family family, const FiniteField& field,
                       const std::vector<Matrix>& elements);

}  // namespace hopfcert
