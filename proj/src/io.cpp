#include "symratio/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "symratio/error.hpp"
#include "symratio/ranktwo.hpp"

namespace symratio {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse_error, "at " + where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema_error(where, "non-finite number");
  return x;
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

// Comma-separated numbers starting at `offset` in the original text.
std::vector<double> parse_numbers(std::string_view text, std::size_t offset,
                                  std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), x);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() || !std::isfinite(x)) {
      throw Error(ErrorKind::parse_error, "position " + std::to_string(offset + pos) +
                                              ": expected a number, got \"" + std::string(piece) + "\"");
    }
    out.push_back(x);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw Error(ErrorKind::parse_error, "position " + std::to_string(offset) + ": expected " +
                                            std::to_string(expected) + " comma-separated values, got " +
                                            std::to_string(out.size()));
  }
  return out;
}

int as_order(double x, std::size_t offset) {
  if (x != std::floor(x) || x < 2 || x > 1000) {
    throw Error(ErrorKind::parse_error,
                "position " + std::to_string(offset) + ": order must be an integer in [2, 1000]");
  }
  return static_cast<int>(x);
}

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const SymTensor& a) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeff(i) == 0.0) continue;
    const auto e = a.basis().exponents(i);
    coeffs.push_back({{"exp", std::vector<int>(e.begin(), e.end())}, {"value", a.coeff(i)}});
  }
  return {{"order", a.order()}, {"dim", a.dim()}, {"coeffs", coeffs}};
}

SymTensor symtensor_from_json(const Json& j) {
  const int order = as_int(field(j, "order", "/"), "/order");
  const int dim = as_int(field(j, "dim", "/"), "/dim");
  if (order < 1) schema_error("/order", "must be >= 1");
  if (dim < 1) schema_error("/dim", "must be >= 1");
  SymTensor a(dim, order);
  std::vector<double> coeffs(a.size(), 0.0);
  const Json& list = as_array(field(j, "coeffs", "/"), "/coeffs");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "/coeffs/" + std::to_string(k);
    const Json& e = as_array(field(list[k], "exp", where), where + "/exp");
    if (static_cast<int>(e.size()) != dim) schema_error(where + "/exp", "needs dim entries");
    std::vector<int> exps;
    int total = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const int x = as_int(e[i], where + "/exp/" + std::to_string(i));
      if (x < 0) schema_error(where + "/exp/" + std::to_string(i), "negative exponent");
      exps.push_back(x);
      total += x;
    }
    if (total != order) schema_error(where + "/exp", "exponents must sum to the order");
    coeffs[a.basis().index_of(exps)] = as_double(field(list[k], "value", where), where + "/value");
  }
  return SymTensor(dim, order, std::move(coeffs));
}

Json to_json(const DenseTensor& t) { return {{"dims", t.dims()}, {"entries", t.entries()}}; }

DenseTensor dense_from_json(const Json& j) {
  const Json& dims_json = as_array(field(j, "dims", "/"), "/dims");
  std::vector<int> dims;
  for (std::size_t i = 0; i < dims_json.size(); ++i) {
    const int d = as_int(dims_json[i], "/dims/" + std::to_string(i));
    if (d < 1) schema_error("/dims/" + std::to_string(i), "must be >= 1");
    dims.push_back(d);
  }
  if (dims.empty()) schema_error("/dims", "needs at least one mode");
  const Json& entries_json = as_array(field(j, "entries", "/"), "/entries");
  std::vector<double> entries;
  for (std::size_t i = 0; i < entries_json.size(); ++i) {
    entries.push_back(as_double(entries_json[i], "/entries/" + std::to_string(i)));
  }
  std::size_t expected = 1;
  for (int d : dims) expected *= static_cast<std::size_t>(d);
  if (entries.size() != expected) {
    schema_error("/entries", "expected " + std::to_string(expected) + " entries, got " +
                                 std::to_string(entries.size()));
  }
  return DenseTensor(std::move(dims), std::move(entries));
}

Json to_json(const MaximizerSet& m) {
  Json points = Json::array();
  for (const auto& p : m.points) points.push_back(to_json(p));
  return {{"value", m.value}, {"points", points}, {"is_exact", m.is_exact}};
}

bool parse_builtin(std::string_view text, Input& out) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) return false;
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  const std::size_t offset = colon + 1;
  if (name == "wd") {
    const auto v = parse_numbers(args, offset, 1);
    out.tensor = make_w(as_order(v[0], offset));
  } else if (name == "ranktwo") {
    const auto v = parse_numbers(args, offset, 4);
    if (!(v[2] > -1.0 && v[2] < 1.0)) {
      throw Error(ErrorKind::parse_error, "position " + std::to_string(offset) +
                                              ": cos theta must lie in (-1, 1)");
    }
    const int d = as_order(v[3], offset);
    const SymTensor a = make_rank_two_planar(v[0], v[1], std::acos(v[2]), d);
    if (a.is_zero()) throw Error(ErrorKind::zero_tensor, "ranktwo builtin is the zero tensor");
    out.tensor = a;
  } else if (name == "border") {
    const auto v = parse_numbers(args, offset, 3);
    BorderParams p{v[0], v[1], Vector::Unit(2, 0), Vector::Unit(2, 1)};
    out.tensor = make_border(p, as_order(v[2], offset));
  } else {
    return false;
  }
  out.descriptor = std::string(text);
  return true;
}

Input load_input(const std::string& text) {
  Input in{SymTensor(2, 1), text};
  if (parse_builtin(text, in)) return in;
  std::ifstream file(text);
  if (!file) {
    throw Error(ErrorKind::parse_error, "\"" + text + "\" is neither a builtin nor a readable file");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  Json j;
  try {
    j = Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error,
                text + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (j.is_object() && j.contains("dims")) {
    in.tensor = dense_from_json(j);
  } else {
    in.tensor = symtensor_from_json(j);
  }
  return in;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(x);
}

}  // namespace symratio
