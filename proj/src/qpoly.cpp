#include "qlinset/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qlinset {

QPoly::QPoly(FieldPtr ctx) : ctx_(std::move(ctx)) { coeffs_.assign(ctx_->n(), FieldElem::zero()); }

QPoly::QPoly(FieldPtr ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ctx_->n())
    throw Error(ErrorKind::InvalidArgument, "q-polynomial needs exactly " + std::to_string(ctx_->n()) +
                                                " coefficients, got " + std::to_string(coeffs_.size()));
}

QPoly QPoly::identity(FieldPtr ctx) {
  QPoly f(std::move(ctx));
  f.coeffs_[0] = f.ctx_->one();
  return f;
}

QPoly QPoly::monomial(FieldPtr ctx, FieldElem c, std::uint32_t k) {
  QPoly f(std::move(ctx));
  f.coeffs_[k % f.n()] = c;
  return f;
}

QPoly QPoly::trace(FieldPtr ctx) {
  std::vector<FieldElem> ones(ctx->n(), ctx->one());
  return QPoly(std::move(ctx), std::move(ones));
}

QPoly QPoly::parse(FieldPtr ctx, std::string_view text) {
  std::vector<FieldElem> coeffs;
  std::size_t start = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view token = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    try {
      coeffs.push_back(ctx->parse(token));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError,
                  "coefficient " + std::to_string(pos) + " (column " + std::to_string(start + 1) + "): " + e.what());
    }
    ++pos;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coeffs.size() != ctx->n())
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(ctx->n()) + " coefficients, got " +
                                           std::to_string(coeffs.size()));
  return QPoly(std::move(ctx), std::move(coeffs));
}

bool QPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](FieldElem c) { return c.is_zero(); });
}

std::size_t QPoly::weight() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](FieldElem c) { return !c.is_zero(); }));
}

std::string QPoly::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << ctx_->format(coeffs_[i]);
  return os.str();
}

void require_same_field(const QPoly& f, const QPoly& g) {
  if (f.field_ptr() != g.field_ptr()) throw Error(ErrorKind::FieldMismatch, "polynomials over different fields");
}

FieldElem eval(const QPoly& f, FieldElem x) {
  const FieldCtx& F = f.field();
  if (x.is_zero()) return x;
  FieldElem acc = F.zero();
  for (std::uint32_t i = 0; i < f.n(); ++i) {
    if (f[i].is_zero()) continue;
    FieldElem xi = FieldElem::from_index(F.mul_mod(x.index(), F.qpow_mod(i)));
    acc = F.add(acc, F.mul(f[i], xi));
  }
  return acc;
}

QPoly add(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  std::vector<FieldElem> c(f.n());
  for (std::uint32_t i = 0; i < f.n(); ++i) c[i] = f.field().add(f[i], g[i]);
  return QPoly(f.field_ptr(), std::move(c));
}

QPoly scale(const QPoly& f, FieldElem c) {
  std::vector<FieldElem> out(f.n());
  for (std::uint32_t i = 0; i < f.n(); ++i) out[i] = f.field().mul(c, f[i]);
  return QPoly(f.field_ptr(), std::move(out));
}

QPoly compose(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  std::vector<FieldElem> c(n, F.zero());
  for (std::uint32_t i = 0; i < n; ++i) {
    if (f[i].is_zero()) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (g[j].is_zero()) continue;
      std::uint32_t k = (i + j) % n;
      c[k] = F.add(c[k], F.mul(f[i], F.frob_q(g[j], i)));
    }
  }
  return QPoly(f.field_ptr(), std::move(c));
}

QPoly adjoint(const QPoly& f) {
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  std::vector<FieldElem> c(n, F.zero());
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t j = (n - i) % n;
    c[j] = F.frob_q(f[i], j);
  }
  return QPoly(f.field_ptr(), std::move(c));
}

QPoly frobenius_coeffs(const QPoly& f, std::uint32_t e) {
  std::vector<FieldElem> c(f.n());
  for (std::uint32_t i = 0; i < f.n(); ++i) c[i] = f.field().frobenius(f[i], e);
  return QPoly(f.field_ptr(), std::move(c));
}

Matrix as_matrix(const QPoly& f) {
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  Matrix m(n, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    auto coords = F.coordinates(eval(f, F.fq_basis()[j]));
    for (std::uint32_t i = 0; i < n; ++i) m(i, j) = coords[i];
  }
  return m;
}

std::uint32_t kernel_dim(const QPoly& f) {
  return f.n() - static_cast<std::uint32_t>(rank(f.field(), as_matrix(f)));
}

bool is_invertible(const QPoly& f) { return kernel_dim(f) == 0; }

QPoly interpolate(FieldPtr ctx, const std::vector<FieldElem>& inputs, const std::vector<FieldElem>& outputs) {
  const FieldCtx& F = *ctx;
  const std::uint32_t n = F.n();
  if (inputs.size() != n || outputs.size() != n)
    throw Error(ErrorKind::InvalidArgument, "interpolation needs n inputs and outputs");
  Matrix moore(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) moore(j, k) = F.frob_q(inputs[j], k);
  return QPoly(std::move(ctx), solve(F, moore, outputs));
}

QPoly inverse(const QPoly& f) {
  const FieldCtx& F = f.field();
  Matrix inv;
  try {
    inv = qlinset::inverse(F, as_matrix(f));
  } catch (const Error&) {
    throw Error(ErrorKind::NotInvertible, "q-polynomial " + f.to_string() + " has a nontrivial kernel");
  }
  const auto& basis = F.fq_basis();
  std::vector<FieldElem> preimages(f.n(), F.zero());
  for (std::uint32_t j = 0; j < f.n(); ++j)
    for (std::uint32_t i = 0; i < f.n(); ++i) preimages[j] = F.add(preimages[j], F.mul(inv(i, j), basis[i]));
  return interpolate(f.field_ptr(), basis, preimages);
}

std::uint32_t max_field_of_linearity(const QPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero map has no field of linearity");
  auto divs = divisors(f.n());
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    std::uint32_t s = *it;
    bool ok = true;
    for (std::uint32_t i = 0; i < f.n() && ok; ++i)
      if (i % s != 0 && !f[i].is_zero()) ok = false;
    if (ok) return s;
  }
  return 1;
}

bool is_strictly_linear(const QPoly& f) { return !f.is_zero() && max_field_of_linearity(f) == 1; }

QPoly scale_conjugate(const QPoly& f, FieldElem lambda) {
  if (lambda.is_zero()) throw Error(ErrorKind::ZeroScalar, "scale_conjugate by zero");
  const FieldCtx& F = f.field();
  std::vector<FieldElem> c(f.n());
  for (std::uint32_t i = 0; i < f.n(); ++i) c[i] = F.mul(f[i], F.div(F.frob_q(lambda, i), lambda));
  return QPoly(f.field_ptr(), std::move(c));
}

}  // namespace qlinset
