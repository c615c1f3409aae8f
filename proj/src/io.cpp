#include "framefield/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace framefield::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("complex numbers are [re, im] pairs");
  return {as_double(j[0], "re"), as_double(j[1], "im")};
}

}  // namespace

json to_json(const FieldParams& p) {
  return {{"p", p.p}, {"c", p.c}, {"modulus", p.modulus}};
}

FieldParams field_params_from_json(const json& j) {
  FieldParams p;
  p.p = static_cast<std::uint32_t>(as_uint(member(j, "p"), "p"));
  p.c = static_cast<std::uint32_t>(as_uint(member(j, "c"), "c"));
  if (j.contains("modulus")) {
    const json& m = j["modulus"];
    if (!m.is_array()) bad("modulus must be an array of integers");
    p.modulus.clear();
    for (const auto& x : m) p.modulus.push_back(static_cast<std::uint32_t>(as_uint(x, "modulus coefficient")));
  } else {
    p = FieldParams::make(p.p, p.c);
  }
  return p;
}

json to_json(const FieldElement& x) {
  json digits = json::array();
  for (const auto& d : x.digits()) digits.push_back(d.coords);
  return {{"v", x.valuation()}, {"digits", digits}};
}

FieldElement element_from_json(const Field& field, const json& j) {
  const json& v = member(j, "v");
  if (!v.is_number_integer()) bad("valuation must be an integer");
  const json& ds = member(j, "digits");
  if (!ds.is_array()) bad("digits must be an array");
  std::vector<GFElem> digits;
  for (const auto& d : ds) {
    if (!d.is_array()) bad("each digit is an array of coordinates");
    GFElem e;
    for (const auto& c : d) e.coords.push_back(static_cast<std::uint32_t>(as_uint(c, "digit coordinate")));
    if (!field->is_valid(e)) bad("digit is not an element of the residue field");
    digits.push_back(std::move(e));
  }
  return FieldElement(field, v.get<int>(), std::move(digits));
}

json to_json(const Mask& m, const std::string& role) {
  json coeffs = json::array();
  for (const auto& z : m.coeffs()) coeffs.push_back(cplx_json(z));
  json j;
  if (!role.empty()) j["role"] = role;
  j["stride"] = m.stride();
  j["coeffs"] = coeffs;
  return j;
}

Mask mask_from_json(const Field& field, const json& j) {
  const std::uint64_t stride = j.contains("stride") ? as_uint(j["stride"], "stride") : 1;
  const json& cs = member(j, "coeffs");
  if (!cs.is_array()) bad("coeffs must be an array");
  std::vector<cplx> coeffs;
  coeffs.reserve(cs.size());
  for (const auto& c : cs) coeffs.push_back(cplx_from(c));
  return Mask(field, std::move(coeffs), stride);
}

json to_json(const FilterBank& b) {
  json masks = json::array();
  masks.push_back(to_json(b.m0(), "m0"));
  for (const auto& w : b.wavelets()) masks.push_back(to_json(w, "wavelet"));
  return {{"field", to_json(b.field()->params())}, {"masks", masks}};
}

FilterBank bank_from_json(const json& j, bool normalized) {
  const Field field = make_field(field_params_from_json(member(j, "field")));
  const json& ms = member(j, "masks");
  if (!ms.is_array() || ms.empty()) bad("masks must be a non-empty array");
  std::optional<Mask> m0;
  std::vector<Mask> wavelets;
  for (const auto& m : ms) {
    const json& role = member(m, "role");
    if (!role.is_string()) bad("mask role must be a string");
    const std::string r = role.get<std::string>();
    if (r == "m0") {
      if (m0) bad("bank has more than one m0 mask");
      m0 = mask_from_json(field, m);
    } else if (r == "wavelet") {
      wavelets.push_back(mask_from_json(field, m));
    } else {
      bad("unknown mask role \"" + r + "\"");
    }
  }
  if (!m0) bad("bank has no m0 mask");
  FilterBank b(std::move(*m0), std::move(wavelets));
  if (normalized) b.require_normalized();
  return b;
}

json to_json(const Paraunitary& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.size(); ++k) row.push_back(to_json(a.entry(i, k)));
    rows.push_back(row);
  }
  return {{"field", to_json(a.field()->params())}, {"size", a.size()}, {"entries", rows}};
}

Paraunitary paraunitary_from_json(const json& j, const Field& fallback) {
  Field field = fallback;
  if (j.is_object() && j.contains("field")) field = make_field(field_params_from_json(j["field"]));
  if (!field) bad("paraunitary document has no field");
  const std::size_t n = as_uint(member(j, "size"), "size");
  const json& rows = member(j, "entries");
  if (!rows.is_array() || rows.size() != n) bad("entries must hold `size` rows");
  std::vector<Mask> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) bad("every entries row must hold `size` masks");
    for (const auto& m : row) entries.push_back(mask_from_json(field, m));
  }
  return Paraunitary(field, n, std::move(entries));
}

json to_json(const FramePair& pair, const json& provenance) {
  return {{"primal", to_json(pair.primal)}, {"dual", to_json(pair.dual)}, {"provenance", provenance}};
}

FramePair pair_from_json(const json& j) {
  FramePair p{bank_from_json(member(j, "primal")), bank_from_json(member(j, "dual"))};
  require_same_field(p.primal.field(), p.dual.field());
  return p;
}

json to_json(const CheckReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return {{"condition", r.condition},
          {"grid_depth", r.grid_depth},
          {"max_deviation", r.max_deviation},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"worst_point", to_json(r.worst_point)},
          {"details", details}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw InputError("write failed for " + path);
}

void write_transform_csv(std::ostream& os, const Decomposition& d) {
  os << "level,branch,k,re,im\n";
  os << std::setprecision(17);
  for (std::size_t level = 0; level < d.details.size(); ++level)
    for (std::size_t l = 0; l < d.details[level].size(); ++l) {
      const auto& s = d.details[level][l].samples;
      for (std::size_t k = 0; k < s.size(); ++k)
        os << level + 1 << ',' << l + 1 << ',' << k << ',' << s[k].real() << ',' << s[k].imag() << '\n';
    }
  for (std::size_t k = 0; k < d.scaling.samples.size(); ++k)
    os << d.details.size() << ",0," << k << ',' << d.scaling.samples[k].real() << ',' << d.scaling.samples[k].imag()
       << '\n';
}

std::string format_report_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "condition" << std::setw(7) << "depth" << std::setw(14) << "deviation"
     << std::setw(12) << "tolerance" << "verdict\n";
  for (const auto& r : reports) {
    std::ostringstream dev, tol;
    dev << std::scientific << std::setprecision(3) << r.max_deviation;
    tol << std::scientific << std::setprecision(1) << r.tolerance;
    os << std::setw(16) << r.condition << std::setw(7) << r.grid_depth << std::setw(14) << dev.str() << std::setw(12)
       << tol.str() << (r.pass ? "pass" : "FAIL") << '\n';
  }
  return os.str();
}

}  // namespace framefield::io
