#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "framefield/construct.hpp"
#include "framefield/mask.hpp"
#include "framefield/verify.hpp"

// JSON interchange. Every reader throws InputError on malformed documents.
namespace framefield::io {

using json = nlohmann::json;

json to_json(const FieldParams& p);
FieldParams field_params_from_json(const json& j);

// {"v": int, "digits": [[coord, ...], ...]}
json to_json(const FieldElement& x);
FieldElement element_from_json(const Field& field, const json& j);

// {"stride": int, "coeffs": [[re, im], ...]} plus "role" when non-empty.
json to_json(const Mask& m, const std::string& role = "");
Mask mask_from_json(const Field& field, const json& j);

// {"field": FieldParams, "masks": [m0, wavelets...]}. Loading enforces
// m0(0) = 1 unless `normalized` is false.
json to_json(const FilterBank& b);
FilterBank bank_from_json(const json& j, bool normalized = true);

// {"field": FieldParams, "size": M, "entries": [[Mask, ...], ...]}. A
// document without "field" uses `fallback`.
json to_json(const Paraunitary& a);
Paraunitary paraunitary_from_json(const json& j, const Field& fallback = nullptr);

// {"primal": Bank, "dual": Bank, "provenance": {...}}
json to_json(const FramePair& pair, const json& provenance);
FramePair pair_from_json(const json& j);

json to_json(const CheckReport& r);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline; same document, same bytes.
void write_json_file(const std::string& path, const json& j);
std::string read_text_file(const std::string& path);

// One row per coefficient: level,branch,k,re,im. The final scaling branch
// is written as level J, branch 0.
void write_transform_csv(std::ostream& os, const Decomposition& d);

// Human-readable one-line-per-report table.
std::string format_report_table(const std::vector<CheckReport>& reports);

}  // namespace framefield::io
