#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncgalois/algebras.hpp"
#include "ncgalois/groups.hpp"
#include "ncgalois/representations.hpp"

namespace ncgalois::io {

using Json = nlohmann::json;

// {"rows", "cols", "data": [[re, im], ...]} row-major; nested rows of [re, im] or reals also accepted.
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

// Throws InvalidInput naming the first key outside allowed.
void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& what);

GroupPtr group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);

// Representation over a known group; a "group" entry, if present, must match it.
UnitaryRep rep_from_json(const Json& j, const GroupPtr& g);
Json rep_to_json(const UnitaryRep& rep);

Json parse_json(const std::string& text, const std::string& origin);
std::string read_file(const std::filesystem::path& p);

// Canonical form: sorted keys, no whitespace, doubles as %.17g, non-finite numbers as null.
std::string canonical_dump(const Json& j);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t h);

// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& p, const std::string& content);

// Resolves ref against base_dir, then NCGALOIS_FIXTURES; throws InvalidInput if not found.
std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base_dir);

}  // namespace ncgalois::io
