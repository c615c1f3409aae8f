#include "framefield/galois.hpp"

#include <string>

#include "framefield/error.hpp"

namespace framefield {
namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;
constexpr std::uint64_t kTableOrder = 256;

using Poly = std::vector<std::uint32_t>;

// Remainder of num modulo a monic den, coefficients mod p.
Poly poly_mod(Poly num, const Poly& den, std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::uint64_t lead = num[i];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      const std::uint64_t t = (lead * den[j]) % p;
      num[i - dd + j] = static_cast<std::uint32_t>((num[i - dd + j] + p - t) % p);
    }
  }
  num.resize(dd);
  return num;
}

bool is_zero_poly(const Poly& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, const Poly& poly) {
  if (poly.size() < 2) return false;
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  // Every monic candidate factor of degree d <= deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly f(d + 1, 0);
      std::uint64_t x = code;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      f[d] = 1;
      if (is_zero_poly(poly_mod(poly, f, p))) return false;
    }
  }
  return true;
}

Poly default_modulus(std::uint32_t p, std::uint32_t c) {
  if (c <= 1) return {0, 1};
  if (p == 2 && c == 2) return {1, 1, 1};
  if (p == 2 && c == 3) return {1, 1, 0, 1};
  if (p == 3 && c == 2) return {1, 0, 1};
  if (p == 3 && c == 3) return {1, 2, 0, 1};
  if (p == 5 && c == 2) return {2, 0, 1};
  if (p == 5 && c == 3) return {1, 1, 0, 1};
  if (!is_prime(p)) throw ParamError("p = " + std::to_string(p) + " is not prime");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < c; ++i) {
    count *= p;
    if (count > kMaxOrder) throw SizeError("GF(p^c) too large for modulus search");
  }
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(c + 1, 0);
    std::uint64_t x = code;
    for (std::uint32_t i = 0; i < c; ++i) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    f[c] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw ParamError("no irreducible polynomial found");
}

std::uint64_t FieldParams::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < c; ++i) q *= p;
  return q;
}

FieldParams FieldParams::make(std::uint32_t p, std::uint32_t c) {
  if (!is_prime(p)) throw ParamError("p = " + std::to_string(p) + " is not prime");
  if (c < 1) throw ParamError("c must be at least 1");
  FieldParams fp;
  fp.p = p;
  fp.c = c;
  fp.modulus = default_modulus(p, c);
  fp.validate();
  return fp;
}

void FieldParams::validate() const {
  if (!is_prime(p)) throw ParamError("p = " + std::to_string(p) + " is not prime");
  if (p > 65521) throw ParamError("p too large");
  if (c < 1) throw ParamError("c must be at least 1");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < c; ++i) {
    order *= p;
    if (order > kMaxOrder) throw SizeError("q = p^c exceeds the supported range");
  }
  if (c == 1) return;
  if (modulus.size() != c + 1) throw ParamError("modulus must have c+1 coefficients");
  for (auto m : modulus)
    if (m >= p) throw ParamError("modulus coefficient out of range [0,p)");
  if (modulus.back() != 1) throw ParamError("modulus must be monic");
  if (!is_irreducible(p, modulus)) throw ParamError("modulus is reducible over GF(p)");
}

GaloisField::GaloisField(FieldParams params) : params_(std::move(params)) {
  params_.validate();
  q_ = params_.q();
  if (q_ <= kTableOrder) {
    add_table_.resize(q_ * q_);
    sub_table_.resize(q_ * q_);
    pair_table_.resize(q_ * q_);
    for (std::uint64_t a = 0; a < q_; ++a) {
      const GFElem ea = from_digit(a);
      for (std::uint64_t b = 0; b < q_; ++b) {
        const GFElem eb = from_digit(b);
        add_table_[a * q_ + b] = static_cast<std::uint32_t>(to_digit(add(ea, eb)));
        sub_table_[a * q_ + b] = static_cast<std::uint32_t>(to_digit(sub(ea, eb)));
        pair_table_[a * q_ + b] = proj0(mul(ea, eb));
      }
    }
  }
}

bool GaloisField::is_valid(const GFElem& a) const {
  if (a.coords.size() != params_.c) return false;
  for (auto x : a.coords)
    if (x >= params_.p) return false;
  return true;
}

void GaloisField::check(const GFElem& a) const {
  if (!is_valid(a)) throw ParamError("GF element does not belong to this field");
}

GFElem GaloisField::zero() const { return GFElem{std::vector<std::uint32_t>(params_.c, 0)}; }

GFElem GaloisField::one() const {
  GFElem e = zero();
  e.coords[0] = 1;
  return e;
}

GFElem GaloisField::add(const GFElem& a, const GFElem& b) const {
  check(a);
  check(b);
  GFElem r = a;
  for (std::uint32_t i = 0; i < params_.c; ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % params_.p;
  return r;
}

GFElem GaloisField::neg(const GFElem& a) const {
  check(a);
  GFElem r = a;
  for (auto& x : r.coords) x = (params_.p - x) % params_.p;
  return r;
}

GFElem GaloisField::sub(const GFElem& a, const GFElem& b) const { return add(a, neg(b)); }

GFElem GaloisField::mul(const GFElem& a, const GFElem& b) const {
  check(a);
  check(b);
  const std::uint32_t c = params_.c;
  const std::uint64_t p = params_.p;
  Poly prod(2 * c - 1, 0);
  for (std::uint32_t i = 0; i < c; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::uint32_t j = 0; j < c; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a.coords[i]} * b.coords[j]) % p);
  }
  if (c == 1) return GFElem{{prod[0]}};
  return GFElem{poly_mod(std::move(prod), params_.modulus, params_.p)};
}

GFElem GaloisField::inverse(const GFElem& a) const {
  check(a);
  if (a == zero()) throw ParamError("zero has no multiplicative inverse");
  const GFElem e = one();
  for (std::uint64_t d = 1; d < q_; ++d) {
    GFElem cand = from_digit(d);
    if (mul(a, cand) == e) return cand;
  }
  throw ParamError("no inverse found; modulus is not irreducible");
}

std::uint32_t GaloisField::proj0(const GFElem& a) const {
  check(a);
  return a.coords[0];
}

GFElem GaloisField::from_digit(std::uint64_t d) const {
  if (d >= q_) throw RangeError("digit " + std::to_string(d) + " outside [0, q)");
  GFElem e = zero();
  for (std::uint32_t i = 0; i < params_.c; ++i) {
    e.coords[i] = static_cast<std::uint32_t>(d % params_.p);
    d /= params_.p;
  }
  return e;
}

std::uint64_t GaloisField::to_digit(const GFElem& a) const {
  check(a);
  std::uint64_t d = 0;
  for (std::uint32_t i = params_.c; i-- > 0;) d = d * params_.p + a.coords[i];
  return d;
}

std::uint64_t GaloisField::digit_add(std::uint64_t a, std::uint64_t b) const {
  if (!add_table_.empty()) return add_table_[a * q_ + b];
  return to_digit(add(from_digit(a), from_digit(b)));
}

std::uint64_t GaloisField::digit_sub(std::uint64_t a, std::uint64_t b) const {
  if (!sub_table_.empty()) return sub_table_[a * q_ + b];
  return to_digit(sub(from_digit(a), from_digit(b)));
}

std::uint32_t GaloisField::digit_pair(std::uint64_t a, std::uint64_t b) const {
  if (!pair_table_.empty()) return pair_table_[a * q_ + b];
  return proj0(mul(from_digit(a), from_digit(b)));
}

}  // namespace framefield
