#include "framefield/localfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "framefield/error.hpp"

namespace framefield {
namespace {

constexpr std::uint64_t kMaxGrid = std::uint64_t{1} << 26;

}  // namespace

Field make_field(FieldParams params) { return std::make_shared<const GaloisField>(std::move(params)); }

Field make_field(std::uint32_t p, std::uint32_t c) { return make_field(FieldParams::make(p, c)); }

void require_same_field(const Field& a, const Field& b) {
  if (!a || !b) throw ParamError("missing field");
  if (a != b && !(a->params() == b->params())) throw ParamError("operands belong to different fields");
}

FieldElement::FieldElement(Field field) : field_(std::move(field)) {
  if (!field_) throw ParamError("missing field");
}

FieldElement::FieldElement(Field field, int valuation, std::vector<GFElem> digits)
    : field_(std::move(field)), v_(valuation), digits_(std::move(digits)) {
  if (!field_) throw ParamError("missing field");
  for (const auto& d : digits_)
    if (!field_->is_valid(d)) throw ParamError("digit does not belong to the field");
  normalize();
}

FieldElement FieldElement::monomial(Field field, const GFElem& digit, int power) {
  return FieldElement(std::move(field), power, {digit});
}

FieldElement FieldElement::prime_power(Field field, int power) {
  const GFElem one = field->one();
  return monomial(std::move(field), one, power);
}

FieldElement FieldElement::from_digit_indices(Field field, int low, const std::vector<std::uint64_t>& digits) {
  std::vector<GFElem> ds;
  ds.reserve(digits.size());
  for (auto d : digits) ds.push_back(field->from_digit(d));
  return FieldElement(std::move(field), low, std::move(ds));
}

void FieldElement::normalize() {
  const GFElem zero = field_->zero();
  std::size_t lo = 0;
  while (lo < digits_.size() && digits_[lo] == zero) ++lo;
  if (lo == digits_.size()) {
    digits_.clear();
    v_ = 0;
    return;
  }
  std::size_t hi = digits_.size();
  while (digits_[hi - 1] == zero) --hi;
  digits_.erase(digits_.begin() + static_cast<std::ptrdiff_t>(hi), digits_.end());
  digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lo));
  v_ += static_cast<int>(lo);
}

GFElem FieldElement::digit(int power) const {
  if (digits_.empty() || power < v_ || power > top_power()) return field_->zero();
  return digits_[static_cast<std::size_t>(power - v_)];
}

std::uint64_t FieldElement::digit_index(int power) const {
  if (digits_.empty() || power < v_ || power > top_power()) return 0;
  return field_->to_digit(digits_[static_cast<std::size_t>(power - v_)]);
}

double FieldElement::abs() const {
  if (is_zero()) return 0.0;
  return std::pow(static_cast<double>(field_->q()), -v_);
}

FieldElement FieldElement::shifted(int k) const {
  if (is_zero()) return *this;
  FieldElement r = *this;
  r.v_ += k;
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& d : r.digits_) d = field_->neg(d);
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const GaloisField& f = *a.field_;
  const int lo = std::min(a.v_, b.v_);
  const int hi = std::max(a.top_power(), b.top_power());
  std::vector<GFElem> ds;
  ds.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int j = lo; j <= hi; ++j) ds.push_back(f.add(a.digit(j), b.digit(j)));
  return FieldElement(a.field_, lo, std::move(ds));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) return FieldElement(a.field_);
  const GaloisField& f = *a.field_;
  std::vector<GFElem> ds(a.digits_.size() + b.digits_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.digits_.size(); ++i)
    for (std::size_t j = 0; j < b.digits_.size(); ++j)
      ds[i + j] = f.add(ds[i + j], f.mul(a.digits_[i], b.digits_[j]));
  return FieldElement(a.field_, a.v_ + b.v_, std::move(ds));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_ || a.field_->params() == b.field_->params())) return false;
  return a.v_ == b.v_ && a.digits_ == b.digits_;
}

FieldElement u_map(const Field& field, std::uint64_t n) {
  const std::uint64_t q = field->q();
  std::vector<GFElem> ds;
  while (n > 0) {
    ds.push_back(field->from_digit(n % q));
    n /= q;
  }
  if (ds.empty()) return FieldElement(field);
  // b_i sits at power -(i+1): lowest power first means reversed order.
  std::reverse(ds.begin(), ds.end());
  const int low = -static_cast<int>(ds.size());
  return FieldElement(field, low, std::move(ds));
}

std::uint64_t index_add(const GaloisField& f, std::uint64_t m, std::uint64_t n) {
  const std::uint64_t q = f.q();
  std::uint64_t r = 0, scale = 1;
  while (m > 0 || n > 0) {
    r += f.digit_add(m % q, n % q) * scale;
    m /= q;
    n /= q;
    scale *= q;
  }
  return r;
}

std::uint64_t index_sub(const GaloisField& f, std::uint64_t m, std::uint64_t n) {
  const std::uint64_t q = f.q();
  std::uint64_t r = 0, scale = 1;
  while (m > 0 || n > 0) {
    r += f.digit_sub(m % q, n % q) * scale;
    m /= q;
    n /= q;
    scale *= q;
  }
  return r;
}

std::uint64_t index_neg(const GaloisField& f, std::uint64_t n) { return index_sub(f, 0, n); }

cplx root_of_unity(std::uint32_t p, std::uint32_t k) {
  k %= p;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == p) return {-1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

std::uint32_t chi_phase(const FieldElement& x) { return x.field()->proj0(x.digit(-1)); }

cplx chi(const FieldElement& x) { return root_of_unity(x.field()->p(), chi_phase(x)); }

cplx chi_n(std::uint64_t n, const FieldElement& xi) { return chi(u_map(xi.field(), n) * xi); }

std::uint32_t chi_n_phase(const GaloisField& f, std::uint64_t n, const FieldElement& xi) {
  const std::uint64_t q = f.q();
  std::uint64_t acc = 0;
  for (int i = 0; n > 0; ++i, n /= q) {
    const std::uint64_t b = n % q;
    if (b == 0) continue;
    acc += f.digit_pair(b, xi.digit_index(i));
  }
  return static_cast<std::uint32_t>(acc % f.p());
}

std::uint64_t grid_size(const GaloisField& f, unsigned depth) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < depth; ++i) {
    n *= f.q();
    if (n > kMaxGrid) throw SizeError("grid of depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxGrid) + " points");
  }
  return n;
}

FieldElement grid_point(const Field& field, unsigned depth, std::uint64_t index) {
  const std::uint64_t q = field->q();
  std::vector<std::uint64_t> ds(depth);
  for (unsigned j = 0; j < depth; ++j) {
    ds[j] = index % q;
    index /= q;
  }
  return FieldElement::from_digit_indices(field, 0, ds);
}

std::vector<FieldElement> grid(const Field& field, unsigned depth) {
  const std::uint64_t n = grid_size(*field, depth);
  std::vector<FieldElement> pts;
  pts.reserve(n);
  for (std::uint64_t g = 0; g < n; ++g) pts.push_back(grid_point(field, depth, g));
  return pts;
}

}  // namespace framefield
