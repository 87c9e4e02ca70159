#include "ncgalois/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ncgalois::io {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) return {e[0].get<double>(), e[1].get<double>()};
  throw Error(ErrorCode::InvalidInput, "matrix entry must be a number or [re, im]");
}

void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      break;
    }
    case Json::value_t::string:
      out += Json(j.get<std::string>()).dump();
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump_to(e, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      // nlohmann objects are std::map backed, so iteration is already key-sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_to(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      throw Error(ErrorCode::InvalidInput, "unsupported JSON value in report");
  }
}

}  // namespace

Matrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    reject_unknown(j, {"rows", "cols", "data"}, "matrix");
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
      throw Error(ErrorCode::InvalidInput, "matrix needs rows, cols and data");
    const Index r = j.at("rows").get<Index>(), c = j.at("cols").get<Index>();
    const Json& data = j.at("data");
    if (r <= 0 || c <= 0 || !data.is_array() || static_cast<Index>(data.size()) != r * c)
      throw Error(ErrorCode::InvalidInput, "matrix data length differs from rows*cols");
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index k = 0; k < c; ++k) m(i, k) = entry_from_json(data[static_cast<std::size_t>(i * c + k)]);
    return m;
  }
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    const Index r = static_cast<Index>(j.size()), c = static_cast<Index>(j[0].size());
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i) {
      const Json& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != c) throw Error(ErrorCode::InvalidInput, "ragged matrix rows");
      for (Index k = 0; k < c; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
  }
  throw Error(ErrorCode::InvalidInput, "matrix must be an object or a list of rows");
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!obj.is_object()) throw Error(ErrorCode::InvalidInput, what + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw Error(ErrorCode::InvalidInput, "unknown field '" + it.key() + "' in " + what);
  }
}

GroupPtr group_from_json(const Json& j) {
  reject_unknown(j, {"order", "mult_table", "labels"}, "group");
  if (!j.contains("mult_table") || !j.at("mult_table").is_array()) throw Error(ErrorCode::InvalidInput, "group needs mult_table");
  MultTable table;
  try {
    table = j.at("mult_table").get<MultTable>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidInput, "mult_table must be a list of integer rows");
  }
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
    throw Error(ErrorCode::InvalidInput, "order differs from the table size");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return group_from_table(std::move(table), std::move(labels));
}

Json group_to_json(const FiniteGroup& g) {
  return Json{{"order", g.order()}, {"mult_table", g.table()}, {"labels", g.labels()}};
}

UnitaryRep rep_from_json(const Json& j, const GroupPtr& g) {
  reject_unknown(j, {"group", "dim", "matrices"}, "representation");
  if (!j.contains("matrices") || !j.at("matrices").is_array()) throw Error(ErrorCode::InvalidInput, "representation needs matrices");
  std::vector<Matrix> mats;
  for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json(m));
  if (static_cast<int>(mats.size()) != g->order()) throw Error(ErrorCode::DimensionMismatch, "need one matrix per group element");
  if (j.contains("dim"))
    for (const auto& m : mats)
      if (m.rows() != j.at("dim").get<Index>() || m.cols() != m.rows())
        throw Error(ErrorCode::DimensionMismatch, "matrix size differs from dim");
  return UnitaryRep(g, std::move(mats));
}

Json rep_to_json(const UnitaryRep& rep) {
  Json mats = Json::array();
  for (const auto& m : rep.matrices()) mats.push_back(matrix_to_json(m));
  return Json{{"dim", rep.dim()}, {"matrices", std::move(mats)}};
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, origin + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::InvalidInput, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::InvalidInput, "cannot rename onto " + p.string() + ": " + ec.message());
}

std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base_dir) {
  namespace fs = std::filesystem;
  const fs::path r(ref);
  if (r.is_absolute()) {
    if (fs::exists(r)) return r;
  } else {
    if (fs::exists(base_dir / r)) return base_dir / r;
    if (const char* env = std::getenv("NCGALOIS_FIXTURES")) {
      if (fs::exists(fs::path(env) / r)) return fs::path(env) / r;
    }
  }
  throw Error(ErrorCode::InvalidInput, "file not found: " + ref);
}

}  // namespace ncgalois::io
