#include "qlinset/moebius.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qlinset/parallel.hpp"

namespace qlinset {

SemilinearMap::SemilinearMap(FieldPtr ctx, FieldElem a, FieldElem b, FieldElem c, FieldElem d,
                             std::uint32_t sigma_exp)
    : ctx_(std::move(ctx)), a_(a), b_(b), c_(c), d_(d), e_(sigma_exp % ctx_->degree()) {
  if (det().is_zero()) throw Error(ErrorKind::NotInvertible, "semilinear map with ad - bc = 0");
}

SemilinearMap SemilinearMap::identity(FieldPtr ctx) {
  FieldElem one = ctx->one();
  return SemilinearMap(std::move(ctx), one, FieldElem::zero(), FieldElem::zero(), one, 0);
}

SemilinearMap SemilinearMap::parse(FieldPtr ctx, std::string_view text) {
  std::string body;
  std::string sigma;
  auto semi = text.find(';');
  for (char ch : text.substr(0, semi))
    if (ch != '[' && ch != ']' && ch != ' ') body.push_back(ch);
  if (semi != std::string_view::npos) sigma = std::string(text.substr(semi + 1));
  std::vector<FieldElem> entries;
  std::stringstream ss(body);
  std::string token;
  while (std::getline(ss, token, ',')) entries.push_back(ctx->parse(token));
  if (entries.size() != 4) throw Error(ErrorKind::ParseError, "expected [[a,b],[c,d]]");
  std::uint32_t e = 0;
  if (!sigma.empty()) {
    sigma.erase(std::remove(sigma.begin(), sigma.end(), ' '), sigma.end());
    const std::string prefix = "sigma=p^";
    if (sigma.rfind(prefix, 0) != 0) throw Error(ErrorKind::ParseError, "expected sigma=p^e");
    try {
      e = static_cast<std::uint32_t>(std::stoul(sigma.substr(prefix.size())));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad sigma exponent in '" + sigma + "'");
    }
  }
  return SemilinearMap(std::move(ctx), entries[0], entries[1], entries[2], entries[3], e);
}

FieldElem SemilinearMap::det() const noexcept {
  const FieldCtx& F = *ctx_;
  return F.sub(F.mul(a_, d_), F.mul(b_, c_));
}

SemilinearMap SemilinearMap::canonical() const {
  const FieldCtx& F = *ctx_;
  FieldElem lead = !a_.is_zero() ? a_ : !b_.is_zero() ? b_ : c_;
  FieldElem s = F.inv(lead);
  return SemilinearMap(ctx_, F.mul(s, a_), F.mul(s, b_), F.mul(s, c_), F.mul(s, d_), e_);
}

SemilinearMap SemilinearMap::inverse() const {
  const FieldCtx& F = *ctx_;
  FieldElem inv_det = F.inv(det());
  // (M^{-1})^{σ^{-1}} with σ^{-1} = p^{hn - e}
  std::uint32_t back = (F.degree() - e_) % F.degree();
  auto tw = [&](FieldElem x) { return F.frobenius(F.mul(x, inv_det), back); };
  return SemilinearMap(ctx_, tw(d_), tw(F.neg(b_)), tw(F.neg(c_)), tw(a_), back);
}

std::pair<FieldElem, FieldElem> SemilinearMap::apply(FieldElem x, FieldElem y) const noexcept {
  const FieldCtx& F = *ctx_;
  FieldElem xs = F.frobenius(x, e_);
  FieldElem ys = F.frobenius(y, e_);
  return {F.add(F.mul(a_, xs), F.mul(b_, ys)), F.add(F.mul(c_, xs), F.mul(d_, ys))};
}

ProjValue SemilinearMap::apply(ProjValue z) const {
  const FieldCtx& F = *ctx_;
  FieldElem num;
  FieldElem den;
  if (z.is_inf()) {
    den = b_;
    num = d_;
  } else {
    FieldElem zs = F.frobenius(z.value(), e_);
    den = F.add(a_, F.mul(b_, zs));
    num = F.add(c_, F.mul(d_, zs));
  }
  if (den.is_zero()) return ProjValue::inf();
  return ProjValue(F.div(num, den));
}

std::string SemilinearMap::to_string() const {
  const FieldCtx& F = *ctx_;
  std::ostringstream os;
  os << "[[" << F.format(a_) << ',' << F.format(b_) << "],[" << F.format(c_) << ',' << F.format(d_)
     << "]];sigma=p^" << e_;
  return os.str();
}

SemilinearMap compose(const SemilinearMap& outer, const SemilinearMap& inner) {
  if (outer.field_ptr() != inner.field_ptr()) throw Error(ErrorKind::FieldMismatch, "maps over different fields");
  const FieldCtx& F = outer.field();
  // M2 (M1 v^{σ1})^{σ2} = M2 M1^{σ2} v^{σ1 σ2}
  auto tw = [&](FieldElem x) { return F.frobenius(x, outer.sigma_exp()); };
  FieldElem a1 = tw(inner.a()), b1 = tw(inner.b()), c1 = tw(inner.c()), d1 = tw(inner.d());
  return SemilinearMap(outer.field_ptr(), F.add(F.mul(outer.a(), a1), F.mul(outer.b(), c1)),
                       F.add(F.mul(outer.a(), b1), F.mul(outer.b(), d1)),
                       F.add(F.mul(outer.c(), a1), F.mul(outer.d(), c1)),
                       F.add(F.mul(outer.c(), b1), F.mul(outer.d(), d1)),
                       (outer.sigma_exp() + inner.sigma_exp()) % F.degree());
}

bool is_admissible(const QPoly& f, const SemilinearMap& phi) {
  if (f.field_ptr() != phi.field_ptr()) throw Error(ErrorKind::FieldMismatch, "map and polynomial differ in field");
  if (phi.b().is_zero()) return true;
  const FieldCtx& F = f.field();
  std::uint32_t back = (F.degree() - phi.sigma_exp()) % F.degree();
  FieldElem bad = F.frobenius(F.neg(F.div(phi.a(), phi.b())), back);
  return !image_of_ratio(f).contains(bad);
}

QPoly transform_poly(const QPoly& f, const SemilinearMap& phi) {
  if (!is_admissible(f, phi))
    throw Error(ErrorKind::NotAdmissible, phi.to_string() + " is not admissible for " + f.to_string());
  // k_f = K ∘ σ and h_f = H ∘ σ with K = a + b f^σ, H = c + d f^σ, so
  // h_f ∘ k_f^{-1} = H ∘ K^{-1}.
  QPoly fs = frobenius_coeffs(f, phi.sigma_exp());
  QPoly id = QPoly::identity(f.field_ptr());
  QPoly k = add(scale(id, phi.a()), scale(fs, phi.b()));
  QPoly h = add(scale(id, phi.c()), scale(fs, phi.d()));
  return compose(h, inverse(k));
}

bool graph_maps_to(const QPoly& f, const SemilinearMap& phi, const QPoly& g) {
  const FieldCtx& F = f.field();
  std::vector<bool> hit(F.size(), false);
  std::size_t covered = 0;
  for (std::uint32_t key = 0; key < F.size(); ++key) {
    FieldElem u = key == 0 ? FieldElem::zero() : FieldElem::from_index(key - 1);
    auto [x, y] = phi.apply(u, eval(f, u));
    if (eval(g, x) != y) return false;
    if (!hit[x.key()]) {
      hit[x.key()] = true;
      ++covered;
    }
  }
  return covered == F.size();
}

PointSet moebius_image(const PointSet& s, const SemilinearMap& phi) {
  PointSet out(s.field_ptr());
  for (FieldElem z : s.elements()) out.insert(phi.apply(ProjValue(z)));
  if (s.contains_inf()) out.insert(phi.apply(ProjValue::inf()));
  return out;
}

PointSet moebius_image(const ImageSet& s, const SemilinearMap& phi) { return moebius_image(s.points(), phi); }

std::optional<SemilinearMap> find_set_equivalence(const ImageSet& s, const ImageSet& t, unsigned threads) {
  if (s.field_ptr() != t.field_ptr()) throw Error(ErrorKind::FieldMismatch, "image sets over different fields");
  if (s.size() != t.size()) return std::nullopt;
  if (s.size() < 3) throw Error(ErrorKind::DegenerateSet, "set equivalence needs at least three points");

  const FieldCtx& F = s.field();
  const std::uint32_t m = F.degree();
  const std::vector<FieldElem> tv = t.elements();
  const std::size_t tn = tv.size();

  // Per automorphism: the anchor triple (three smallest points of S^σ) and
  // the cross ratios c_j = A_s(s_j) of the remaining points, where A_s sends
  // the anchors to 0, 1, INF.
  struct Anchor {
    FieldElem s1, s2, s3;
    std::vector<FieldElem> cross;
  };
  std::vector<Anchor> anchors(m);
  for (std::uint32_t e = 0; e < m; ++e) {
    std::vector<FieldElem> sig;
    for (FieldElem z : s.elements()) sig.push_back(F.frobenius(z, e));
    std::sort(sig.begin(), sig.end());
    Anchor& an = anchors[e];
    an.s1 = sig[0];
    an.s2 = sig[1];
    an.s3 = sig[2];
    FieldElem vs = F.sub(an.s2, an.s3);
    FieldElem us = F.sub(an.s2, an.s1);
    for (std::size_t j = 3; j < sig.size(); ++j)
      an.cross.push_back(F.div(F.mul(F.sub(sig[j], an.s1), vs), F.mul(F.sub(sig[j], an.s3), us)));
  }

  struct Hit {
    bool found = false;
    std::size_t i2 = 0, i3 = 0;
  };
  const std::size_t tasks = std::size_t{m} * tn;
  std::vector<Hit> hits(tasks);
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  const PointSet& tset = t.points();

  parallel_for(tasks, threads, [&](std::size_t task) {
    if (task > best.load(std::memory_order_relaxed)) return;
    const Anchor& an = anchors[task / tn];
    const std::size_t i1 = task % tn;
    const FieldElem t1 = tv[i1];
    for (std::size_t i2 = 0; i2 < tn; ++i2) {
      if (i2 == i1) continue;
      const FieldElem t2 = tv[i2];
      const FieldElem u = F.sub(t2, t1);
      for (std::size_t i3 = 0; i3 < tn; ++i3) {
        if (i3 == i1 || i3 == i2) continue;
        const FieldElem t3 = tv[i3];
        const FieldElem v = F.sub(t2, t3);
        const FieldElem t1v = F.mul(t1, v);
        const FieldElem t3u = F.neg(F.mul(t3, u));
        const FieldElem neg_u = F.neg(u);
        bool ok = true;
        for (FieldElem c : an.cross) {
          FieldElem den = F.add(v, F.mul(neg_u, c));
          if (den.is_zero()) {
            ok = false;
            break;
          }
          FieldElem val = F.div(F.add(t1v, F.mul(t3u, c)), den);
          if (!tset.contains(val)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          hits[task] = {true, i2, i3};
          std::size_t cur = best.load();
          while (task < cur && !best.compare_exchange_weak(cur, task)) {
          }
          return;
        }
      }
    }
  });

  const std::size_t win = best.load();
  if (win == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  const Anchor& an = anchors[win / tn];
  const FieldElem t1 = tv[win % tn], t2 = tv[hits[win].i2], t3 = tv[hits[win].i3];
  // μ = A_t^{-1} A_s as 2x2 matrices acting by w -> (m11 w + m12)/(m21 w + m22).
  FieldElem vs = F.sub(an.s2, an.s3), us = F.sub(an.s2, an.s1);
  FieldElem s11 = vs, s12 = F.neg(F.mul(an.s1, vs)), s21 = us, s22 = F.neg(F.mul(an.s3, us));
  FieldElem u = F.sub(t2, t1), v = F.sub(t2, t3);
  FieldElem r11 = F.neg(F.mul(t3, u)), r12 = F.mul(t1, v), r21 = F.neg(u), r22 = v;
  FieldElem m11 = F.add(F.mul(r11, s11), F.mul(r12, s21));
  FieldElem m12 = F.add(F.mul(r11, s12), F.mul(r12, s22));
  FieldElem m21 = F.add(F.mul(r21, s11), F.mul(r22, s21));
  FieldElem m22 = F.add(F.mul(r21, s12), F.mul(r22, s22));
  SemilinearMap phi =
      SemilinearMap(s.field_ptr(), m22, m21, m12, m11, static_cast<std::uint32_t>(win / tn)).canonical();
  if (!(moebius_image(s, phi) == t.points()))
    throw std::logic_error("set-equivalence witness failed re-verification: " + phi.to_string());
  return phi;
}

}  // namespace qlinset
