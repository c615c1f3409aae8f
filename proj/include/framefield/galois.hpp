#pragma once

#include <cstdint>
#include <vector>

namespace framefield {

// Parameters of the residue field GF(q), q = p^c.
//
// `modulus` holds the c+1 coefficients of a monic irreducible polynomial over
// GF(p), lowest degree first. It is only consulted when c > 1.
struct FieldParams {
  std::uint32_t p = 2;
  std::uint32_t c = 1;
  std::vector<std::uint32_t> modulus{0, 1};

  std::uint64_t q() const;

  // Uses the built-in modulus table for (p, c).
  static FieldParams make(std::uint32_t p, std::uint32_t c);

  // Throws ParamError unless p is prime and the modulus is monic, of degree c
  // and irreducible.
  void validate() const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

bool is_prime(std::uint64_t n);

// Exhaustive search for monic factors of degree 1..deg/2 over GF(p).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

// Built-in table for p in {2,3,5}, c in {1,2,3}; falls back to the first
// irreducible monic polynomial in lexicographic order otherwise.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t c);

// An element of GF(q) as coordinates in the basis {1, z_1, ..., z_{c-1}}.
struct GFElem {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const GFElem&, const GFElem&) = default;
};

class GaloisField {
 public:
  explicit GaloisField(FieldParams params);

  const FieldParams& params() const { return params_; }
  std::uint32_t p() const { return params_.p; }
  std::uint32_t c() const { return params_.c; }
  std::uint64_t q() const { return q_; }

  GFElem zero() const;
  GFElem one() const;

  GFElem add(const GFElem& a, const GFElem& b) const;
  GFElem sub(const GFElem& a, const GFElem& b) const;
  GFElem neg(const GFElem& a) const;
  GFElem mul(const GFElem& a, const GFElem& b) const;
  // Exhaustive search; throws ParamError for zero.
  GFElem inverse(const GFElem& a) const;

  // The z_0 coordinate, which alone drives the additive character.
  std::uint32_t proj0(const GFElem& a) const;

  // p-ary digits of d in [0, q) become the coordinates.
  GFElem from_digit(std::uint64_t d) const;
  std::uint64_t to_digit(const GFElem& a) const;

  bool is_valid(const GFElem& a) const;

  // Digit-level shortcuts used by the index group and the character pairing.
  // They go through lookup tables when q is small.
  std::uint64_t digit_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t digit_sub(std::uint64_t a, std::uint64_t b) const;
  // proj0(from_digit(a) * from_digit(b)).
  std::uint32_t digit_pair(std::uint64_t a, std::uint64_t b) const;

 private:
  void check(const GFElem& a) const;

  FieldParams params_;
  std::uint64_t q_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> sub_table_;
  std::vector<std::uint32_t> pair_table_;
};

}  // namespace framefield
