#include "qlinset/gf.hpp"

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "qlinset/linalg.hpp"

namespace qlinset {

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::vector<std::uint32_t> divisors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= v; ++d)
    if (v % d == 0) out.push_back(d);
  return out;
}

namespace {

// Arithmetic in F_p[X]/(m(X)) for the modulus search. `low` holds the
// non-leading coefficients c_0..c_{m-1} of the monic modulus.
class PolyRing {
 public:
  PolyRing(std::uint32_t p, std::vector<std::uint32_t> low) : p_(p), low_(std::move(low)) {}

  using Vec = std::vector<std::uint32_t>;

  Vec mulmod(const Vec& a, const Vec& b) const {
    const std::size_t m = low_.size();
    std::vector<std::uint64_t> prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
    for (std::size_t k = 2 * m - 1; k-- > m;) {
      std::uint64_t t = prod[k];
      if (t == 0) continue;
      prod[k] = 0;
      // X^k = X^{k-m} * X^m and X^m = -sum c_i X^i
      for (std::size_t i = 0; i < m; ++i)
        prod[k - m + i] = (prod[k - m + i] + (p_ - low_[i]) % p_ * t) % p_;
    }
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  Vec powmod(Vec base, std::uint64_t e) const {
    Vec acc(low_.size(), 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mulmod(acc, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return acc;
  }

  Vec x() const {
    Vec v(low_.size(), 0);
    if (low_.size() == 1)
      v[0] = (p_ - low_[0]) % p_;
    else
      v[1] = 1;
    return v;
  }

  bool is_one(const Vec& v) const {
    if (v[0] != 1) return false;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] != 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
  Vec low_;
};

// X generates the multiplicative group iff X^{N} = 1 and X^{N/r} != 1 for
// every prime r | N, where N = p^m - 1. A unit of order p^m - 1 forces the
// quotient ring to be a field, so this also certifies irreducibility.
bool is_primitive(std::uint32_t p, const std::vector<std::uint32_t>& low, std::uint64_t group_order,
                  const std::vector<std::uint64_t>& factors) {
  if (low[0] == 0) return false;
  PolyRing ring(p, low);
  auto x = ring.x();
  if (!ring.is_one(ring.powmod(x, group_order))) return false;
  for (std::uint64_t r : factors)
    if (ring.is_one(ring.powmod(x, group_order / r))) return false;
  return true;
}

std::uint64_t checked_size(std::uint32_t p, std::uint32_t degree) {
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < degree; ++i) {
    size *= p;
    if (size > kMaxFieldSize) return kMaxFieldSize + 1;
  }
  return size;
}

}  // namespace

FieldPtr build_field(std::uint32_t p, std::uint32_t h, std::uint32_t n,
                     const std::optional<std::vector<std::uint32_t>>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (h == 0 || n == 0) throw Error(ErrorKind::InvalidArgument, "h and n must be positive");
  if (std::uint64_t{h} * n > 64) throw Error(ErrorKind::TooLarge, "extension degree too large");
  const std::uint32_t m = h * n;
  const std::uint64_t size = checked_size(p, m);
  if (size > kMaxFieldSize)
    throw Error(ErrorKind::TooLarge, "p^(hn) exceeds 2^24 for " + std::to_string(p) + "^" +
                                         std::to_string(h) + "^" + std::to_string(n));
  const std::uint64_t group_order = size - 1;
  const auto factors = prime_factors(group_order);

  std::vector<std::uint32_t> low;
  if (modulus) {
    low = *modulus;
    if (low.size() == m + 1) {
      if (low.back() != 1) throw Error(ErrorKind::NotPrimitive, "modulus must be monic");
      low.pop_back();
    }
    if (low.size() != m)
      throw Error(ErrorKind::InvalidArgument, "modulus must have " + std::to_string(m) + " coefficients");
    for (auto c : low)
      if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
    if (!is_primitive(p, low, group_order, factors))
      throw Error(ErrorKind::NotPrimitive, "supplied modulus is not primitive");
  } else {
    // Odometer with c_{m-1} fastest, so the first hit is lex-least with the
    // constant term compared first.
    low.assign(m, 0);
    bool found = false;
    while (true) {
      if (is_primitive(p, low, group_order, factors)) {
        found = true;
        break;
      }
      bool carry = true;
      for (std::size_t i = m; carry && i-- > 0;) {
        if (++low[i] < p)
          carry = false;
        else
          low[i] = 0;
      }
      if (carry) break;
    }
    if (!found) {
      std::cerr << "fatal: no primitive polynomial of degree " << m << " over F_" << p << '\n';
      std::abort();
    }
  }
  low.push_back(1);
  return FieldPtr(new FieldCtx(p, h, n, std::move(low)));
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t h, std::uint32_t n, std::vector<std::uint32_t> modulus)
    : p_(p), h_(h), n_(n), modulus_(std::move(modulus)) {
  q_ = static_cast<std::uint32_t>(checked_size(p, h));
  size_ = static_cast<std::uint32_t>(checked_size(p, h * n));
  order_ = size_ - 1;
  build_tables();
  build_coordinates();
}

void FieldCtx::build_tables() {
  const std::uint32_t m = degree();
  log_.assign(size_, 0);
  antilog_.assign(order_, 0);
  std::vector<std::uint32_t> weight(m + 1, 1);
  for (std::uint32_t i = 1; i <= m; ++i) weight[i] = weight[i - 1] * p_;

  std::vector<std::uint32_t> cur(m, 0);
  cur[0] = 1;
  std::vector<bool> seen(size_, false);
  for (std::uint32_t k = 0; k < order_; ++k) {
    std::uint32_t enc = 0;
    for (std::uint32_t i = 0; i < m; ++i) enc += cur[i] * weight[i];
    if (enc == 0 || seen[enc]) {
      std::cerr << "fatal: modulus root is not primitive\n";
      std::abort();
    }
    seen[enc] = true;
    antilog_[k] = enc;
    log_[enc] = k;
    // cur *= X modulo the modulus
    std::uint32_t top = cur[m - 1];
    for (std::uint32_t i = m - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::uint32_t i = 0; i < m; ++i)
      cur[i] = static_cast<std::uint32_t>((cur[i] + std::uint64_t{top} * ((p_ - modulus_[i]) % p_)) % p_);
  }

  zech_.assign(order_, -1);
  for (std::uint32_t k = 0; k < order_; ++k) {
    std::uint32_t enc = antilog_[k];
    std::uint32_t d0 = enc % p_;
    std::uint32_t plus_one = enc - d0 + (d0 + 1) % p_;
    zech_[k] = plus_one == 0 ? -1 : static_cast<std::int32_t>(log_[plus_one]);
  }

  ppow_.assign(m + 1, 0);
  std::uint64_t acc = 1 % order_;
  for (std::uint32_t e = 0; e <= m; ++e) {
    ppow_[e] = static_cast<std::uint32_t>(acc);
    acc = (acc * p_) % order_;
  }
}

void FieldCtx::build_coordinates() {
  fq_basis_.clear();
  for (std::uint32_t i = 0; i < n_; ++i) fq_basis_.push_back(gpow(i));
  Matrix gram(n_, n_);
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t k = 0; k < n_; ++k) gram(i, k) = trace(mul(fq_basis_[i], fq_basis_[k]));
  Matrix gram_inv = inverse(*this, gram);
  dual_basis_.assign(n_, zero());
  for (std::uint32_t j = 0; j < n_; ++j)
    for (std::uint32_t k = 0; k < n_; ++k)
      dual_basis_[j] = add(dual_basis_[j], mul(gram_inv(j, k), fq_basis_[k]));
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return from_vector(static_cast<std::uint32_t>(r));
}

FieldElem FieldCtx::trace_rel(FieldElem x, std::uint32_t s) const {
  if (s == 0 || n_ % s != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(s) + " does not divide " + std::to_string(n_));
  FieldElem acc = zero();
  for (std::uint32_t k = 0; k < n_ / s; ++k) acc = add(acc, frobenius(x, h_ * s * k));
  return acc;
}

FieldElem FieldCtx::norm_rel(FieldElem x, std::uint32_t s) const {
  if (s == 0 || n_ % s != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(s) + " does not divide " + std::to_string(n_));
  if (x.is_zero()) return x;
  std::uint64_t exponent = 0;
  for (std::uint32_t k = 0; k < n_ / s; ++k) exponent += ppow_[(h_ * s * k) % degree()];
  return pow(x, exponent);
}

std::uint32_t FieldCtx::subfield_degree(FieldElem x) const noexcept {
  for (std::uint32_t d = 1; d <= degree(); ++d)
    if (degree() % d == 0 && frobenius(x, d) == x) return d;
  return degree();
}

std::vector<FieldElem> FieldCtx::subfield_elements(std::uint32_t s) const {
  if (s == 0 || n_ % s != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(s) + " does not divide " + std::to_string(n_));
  std::uint64_t sub_order = checked_size(q_, s) - 1;
  std::uint32_t step = static_cast<std::uint32_t>(order_ / sub_order);
  std::vector<FieldElem> out{zero()};
  for (std::uint32_t k = 0; k < order_; k += step) out.push_back(FieldElem::from_index(k));
  return out;
}

std::vector<FieldElem> FieldCtx::coordinates(FieldElem x) const {
  std::vector<FieldElem> out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = trace(mul(x, dual_basis_[i]));
  return out;
}

std::string FieldCtx::spec_string() const {
  std::ostringstream os;
  os << p_ << '^' << h_ << '^' << n_ << '/';
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

std::string FieldCtx::format(FieldElem x) const {
  if (x.is_zero()) return "0";
  return "g^" + std::to_string(x.index());
}

FieldElem FieldCtx::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view t = trim(text);
  if (t == "0") return zero();
  if (t == "1") return one();
  if (t == "g") return generator();
  if (t.size() > 2 && t[0] == 'g' && t[1] == '^') {
    std::uint64_t k = 0;
    auto digits = t.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return gpow(k);
  }
  throw Error(ErrorKind::ParseError, "bad element '" + std::string(text) + "' (expected 0, 1, g or g^k)");
}

}  // namespace qlinset
