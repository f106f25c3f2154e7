#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "symratio/cube222.hpp"
#include "symratio/spectral.hpp"
#include "symratio/symtensor.hpp"

namespace symratio {

using Json = nlohmann::ordered_json;

/// {"order": d, "dim": n, "coeffs": [{"exp": [e1, ..., en], "value": x}]}.
/// Zero coefficients are omitted on output and default to zero on input.
Json to_json(const SymTensor& a);
SymTensor symtensor_from_json(const Json& j);

/// {"dims": [n1, ..., nk], "entries": [...]} in row-major order.
Json to_json(const DenseTensor& t);
DenseTensor dense_from_json(const Json& j);

/// {"value": x, "points": [[...], ...], "is_exact": bool}.
Json to_json(const MaximizerSet& m);

Json to_json(const Vector& v);

/// A tensor named on the command line: either a builtin or a JSON file.
struct Input {
  std::variant<SymTensor, DenseTensor> tensor;
  std::string descriptor;
};

/// Builtins: "wd:<d>", "ranktwo:<alpha>,<beta>,<cos theta>,<d>" (planar
/// alpha u^d - beta v^d with <u,v> = cos theta) and "border:<a>,<b>,<d>"
/// (a e1^d + b d e1^{d-1} e2). Returns false when `text` names no builtin.
/// Malformed arguments throw parse_error with the character position.
bool parse_builtin(std::string_view text, Input& out);

/// Builtin or path to a JSON file in either tensor schema.
Input load_input(const std::string& text);

/// Shortest decimal that round-trips, for CSV output.
std::string format_double(double x);

}  // namespace symratio
