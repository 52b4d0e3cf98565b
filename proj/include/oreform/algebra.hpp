#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/base_poly.hpp"
#include "oreform/coeff_core.hpp"
#include "oreform/errors.hpp"
#include "oreform/field.hpp"

namespace oreform {

/// One term c * x^exp * d^dpow of an Ore polynomial in normal form.
struct OreTerm {
  Exponents exp{};
  std::uint32_t dpow = 0;
  Scalar coeff;
};

enum class Preset { Weyl, Shift, Difference, QWeyl, QDifference, Custom };

inline std::string preset_name(Preset p) {
  switch (p) {
    case Preset::Weyl: return "weyl";
    case Preset::Shift: return "shift";
    case Preset::Difference: return "difference";
    case Preset::QWeyl: return "qweyl";
    case Preset::QDifference: return "qdifference";
    case Preset::Custom: return "custom";
  }
  return "custom";
}

/// Images of the generators under an involutive anti-automorphism theta.
struct InvolutionSpec {
  std::vector<std::vector<OreTerm>> var_images;
  std::vector<OreTerm> op_image;
};

/// Description of K[x_1..x_n][d; sigma, delta] as supplied by the user.
struct AlgebraSpec {
  Field field;
  std::vector<std::string> vars;
  std::string op = "d";
  Preset preset = Preset::Custom;
  std::optional<Scalar> q;
  /// Variable the preset relation acts on; the others are central parameters.
  std::size_t main_var = 0;
  EndoSpec endo;
  DerivSpec deriv;
  std::optional<InvolutionSpec> involution;
  TieBreak tiebreak = TieBreak::Grevlex;
  /// Set on algebras produced by opposite transport.
  bool opposite = false;

  std::size_t nvars() const noexcept { return vars.size(); }
};

namespace detail {

inline std::vector<OreTerm> linear_image(std::size_t n, std::optional<std::size_t> var, bool op,
                                         const Scalar& c) {
  OreTerm t;
  if (var) t.exp[*var] = 1;
  t.dpow = op ? 1 : 0;
  t.coeff = c;
  (void)n;
  return {t};
}

}  // namespace detail

/// Expands a preset into sigma/delta images (and the built-in involution
/// where one is known). Variables other than vars[main_var] get sigma = id,
/// delta = 0.
inline AlgebraSpec preset_spec(Preset preset, Field field, std::vector<std::string> vars,
                               std::string op = "d", std::optional<std::size_t> main_var = std::nullopt,
                               std::optional<Scalar> q = std::nullopt) {
  if (vars.empty()) throw ValidationError(ValidationError::Reason::Unsupported, "at least one base variable is required");
  AlgebraSpec s;
  s.field = field;
  s.vars = std::move(vars);
  s.op = std::move(op);
  s.preset = preset;
  const std::size_t n = s.vars.size();
  s.main_var = main_var.value_or(n - 1);
  if (s.main_var >= n) throw ValidationError(ValidationError::Reason::Unsupported, "main variable index out of range");
  s.endo = EndoSpec::identity(n);
  s.deriv = DerivSpec::zero(field, n);
  const std::size_t m = s.main_var;
  const BasePoly x = BasePoly::variable(field, n, m);
  const BasePoly one = BasePoly::one(field, n);

  auto need_q = [&]() -> Scalar {
    if (!q) throw ValidationError(ValidationError::Reason::Unsupported, preset_name(preset) + " needs a value for q");
    Scalar v = field.reduce(*q);
    if (is_zero(v)) throw ValidationError(ValidationError::Reason::NonInvertibleSigma, "q must be nonzero", m);
    return v;
  };

  switch (preset) {
    case Preset::Weyl:
      s.deriv.images[m] = one;
      break;
    case Preset::Shift:
      s.endo.v[m] = 1;
      break;
    case Preset::Difference:
      s.endo.v[m] = 1;
      s.deriv.images[m] = one;
      break;
    case Preset::QWeyl:
      s.q = need_q();
      s.endo.u[m] = *s.q;
      s.deriv.images[m] = one;
      break;
    case Preset::QDifference:
      s.q = need_q();
      s.endo.u[m] = *s.q;
      s.deriv.images[m] = x.scaled(field.sub(*s.q, Scalar(1)));
      break;
    case Preset::Custom:
      break;
  }

  if (preset == Preset::Weyl || preset == Preset::Shift || preset == Preset::Difference) {
    InvolutionSpec inv;
    for (std::size_t i = 0; i < n; ++i) {
      Scalar c = (i == m && preset != Preset::Weyl) ? field.from_int(-1) : Scalar(1);
      inv.var_images.push_back(detail::linear_image(n, i, false, c));
    }
    Scalar c = preset == Preset::Weyl ? field.from_int(-1) : Scalar(1);
    inv.op_image = detail::linear_image(n, std::nullopt, true, c);
    s.involution = std::move(inv);
  }
  return s;
}

/// Checks the sigma/delta part of a spec; throws ValidationError naming the
/// offending variable(s).
inline AlgebraSpec validate_algebra_spec(AlgebraSpec spec) {
  const std::size_t n = spec.vars.size();
  if (n == 0) throw ValidationError(ValidationError::Reason::Unsupported, "at least one base variable is required");
  if (n > kMaxVars)
    throw ValidationError(ValidationError::Reason::Unsupported,
                          "at most " + std::to_string(kMaxVars) + " base variables are supported");
  if (spec.endo.u.size() != n || spec.endo.v.size() != n || spec.deriv.images.size() != n)
    throw ValidationError(ValidationError::Reason::Unsupported, "sigma/delta arity does not match the variables");
  for (std::size_t i = 0; i < n; ++i) {
    spec.endo.u[i] = spec.field.reduce(spec.endo.u[i]);
    spec.endo.v[i] = spec.field.reduce(spec.endo.v[i]);
    if (is_zero(spec.endo.u[i]))
      throw ValidationError(ValidationError::Reason::NonInvertibleSigma,
                            "NonInvertibleSigma(" + spec.vars[i] + "): sigma(" + spec.vars[i] +
                                ") has zero linear coefficient",
                            i);
    if (spec.deriv.images[i].nvars() != n || !(spec.deriv.images[i].field() == spec.field))
      throw ValidationError(ValidationError::Reason::Unsupported, "delta image lives in a different ring");
  }
  auto [i, j] = find_incompatible_derivation(spec.field, spec.endo, spec.deriv);
  if (i != n)
    throw ValidationError(ValidationError::Reason::IncompatibleDerivation,
                          "IncompatibleDerivation(" + spec.vars[i] + "," + spec.vars[j] + "): delta(" +
                              spec.vars[i] + ")*(sigma(" + spec.vars[j] + ")-" + spec.vars[j] + ") != delta(" +
                              spec.vars[j] + ")*(sigma(" + spec.vars[i] + ")-" + spec.vars[i] + ")",
                          i, j);
  for (const auto& v : spec.vars)
    if (v == spec.op)
      throw ValidationError(ValidationError::Reason::Unsupported, "operator name clashes with a base variable");
  return spec;
}

/// The ring R* = K[x_1..x_n][d; sigma, delta] with its monomial order and
/// multiplication tables.
///
/// Immutable apart from internal caches, which are guarded by a mutex so one
/// instance can be shared by concurrent readers.
class OreAlgebra : public std::enable_shared_from_this<OreAlgebra> {
  struct Private {};

 public:
  OreAlgebra(Private, AlgebraSpec spec) : spec_(std::move(spec)) {}

  /// Validates sigma/delta and builds the ring. Involution images are checked
  /// separately (see make_algebra) because that needs Ore arithmetic.
  static std::shared_ptr<const OreAlgebra> create(AlgebraSpec spec) {
    return std::make_shared<const OreAlgebra>(Private{}, validate_algebra_spec(std::move(spec)));
  }

  const AlgebraSpec& spec() const noexcept { return spec_; }
  Field field() const noexcept { return spec_.field; }
  std::size_t nvars() const noexcept { return spec_.vars.size(); }
  TieBreak tiebreak() const noexcept { return spec_.tiebreak; }
  bool has_involution() const noexcept { return spec_.involution.has_value(); }

  /// Simple domain over K(x): only the Weyl preset in characteristic zero.
  bool is_simple() const noexcept { return spec_.preset == Preset::Weyl && spec_.field.is_rational() && !spec_.opposite; }

  /// Monomial comparison: d-degree first, then the base tie-break.
  int compare(const OreTerm& a, const OreTerm& b) const {
    if (a.dpow != b.dpow) return a.dpow < b.dpow ? -1 : 1;
    return compare_exponents(a.exp, b.exp, nvars(), spec_.tiebreak);
  }

  bool same_ring(const OreAlgebra& o) const {
    if (this == &o) return true;
    return spec_.field == o.spec_.field && spec_.vars.size() == o.spec_.vars.size() &&
           spec_.endo == o.spec_.endo && spec_.deriv == o.spec_.deriv && spec_.tiebreak == o.spec_.tiebreak;
  }

  /// Sorts ascending, merges equal monomials and drops zero coefficients.
  void normalize(std::vector<OreTerm>& terms) const {
    const Field f = field();
    if (!f.is_rational())
      for (auto& t : terms) t.coeff = f.reduce(t.coeff);
    std::sort(terms.begin(), terms.end(), [this](const OreTerm& a, const OreTerm& b) { return compare(a, b) < 0; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms.size(); ++r) {
      if (w > 0 && terms[w - 1].dpow == terms[r].dpow && terms[w - 1].exp == terms[r].exp) {
        terms[w - 1].coeff = f.add(terms[w - 1].coeff, terms[r].coeff);
        continue;
      }
      if (w > 0 && oreform::is_zero(terms[w - 1].coeff)) --w;
      if (w != r) terms[w] = std::move(terms[r]);
      ++w;
    }
    if (w > 0 && oreform::is_zero(terms[w - 1].coeff)) --w;
    terms.resize(w);
  }

  /// sigma(x^e).
  BasePoly sigma_monomial(const Exponents& e) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return sigma_locked(e);
  }

  /// delta(x^e).
  BasePoly delta_monomial(const Exponents& e) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return delta_locked(e);
  }

  /// Normal form of d^b * x^e, ascending. The returned reference stays valid
  /// for the lifetime of the algebra.
  const std::vector<OreTerm>& expansion(std::uint32_t b, const Exponents& e) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return expansion_locked(b, e);
  }

  /// The opposite algebra with sigma' = sigma^-1 and delta' = -delta o sigma^-1.
  std::shared_ptr<const OreAlgebra> opposite() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto back = opposite_of_.lock()) return back;
    if (opposite_) return opposite_;
    AlgebraSpec s;
    s.field = spec_.field;
    s.vars = spec_.vars;
    s.op = spec_.op;
    s.preset = Preset::Custom;
    s.main_var = spec_.main_var;
    s.q = spec_.q;
    s.tiebreak = spec_.tiebreak;
    s.opposite = !spec_.opposite;
    s.endo = spec_.endo.inverse(spec_.field);
    s.deriv = DerivSpec::zero(spec_.field, nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
      s.deriv.images[i] = spec_.deriv.images[i].scaled(field().neg(field().inv(spec_.endo.u[i])));
    auto op = std::make_shared<OreAlgebra>(Private{}, validate_algebra_spec(std::move(s)));
    op->opposite_of_ = std::const_pointer_cast<OreAlgebra>(shared_from_this());
    opposite_ = op;
    return opposite_;
  }

 private:
  const BasePoly& sigma_locked(const Exponents& e) const {
    if (auto it = sigma_cache_.find(e); it != sigma_cache_.end()) return it->second;
    BasePoly r = apply_endomorphism(spec_.endo, BasePoly::monomial(field(), nvars(), e, Scalar(1)));
    return sigma_cache_.emplace(e, std::move(r)).first->second;
  }

  const BasePoly& delta_locked(const Exponents& e) const {
    if (auto it = delta_cache_.find(e); it != delta_cache_.end()) return it->second;
    const std::size_t n = nvars();
    BasePoly r(field(), n);
    if (total_degree(e, n) != 0 && !spec_.deriv.is_zero()) {
      std::size_t i = 0;
      while (e[i] == 0) ++i;
      Exponents rest = e;
      --rest[i];
      BasePoly rest_delta = delta_locked(rest);
      r = spec_.endo.image(field(), i) * rest_delta +
          spec_.deriv.images[i] * BasePoly::monomial(field(), n, rest, Scalar(1));
    }
    return delta_cache_.emplace(e, std::move(r)).first->second;
  }

  const std::vector<OreTerm>& expansion_locked(std::uint32_t b, const Exponents& e) const {
    auto key = std::make_pair(b, e);
    if (auto it = expansion_cache_.find(key); it != expansion_cache_.end()) return it->second;
    std::vector<OreTerm> out;
    if (b == 0) {
      out.push_back({e, 0, Scalar(1)});
    } else {
      const std::vector<OreTerm>& prev = expansion_locked(b - 1, e);
      for (const auto& t : prev) {
        const BasePoly& s = sigma_locked(t.exp);
        for (const auto& st : s.terms()) out.push_back({st.exp, t.dpow + 1, field().mul(t.coeff, st.coeff)});
        const BasePoly& d = delta_locked(t.exp);
        for (const auto& dt : d.terms()) out.push_back({dt.exp, t.dpow, field().mul(t.coeff, dt.coeff)});
      }
      normalize(out);
    }
    return expansion_cache_.emplace(key, std::move(out)).first->second;
  }

  AlgebraSpec spec_;
  mutable std::mutex mutex_;
  mutable std::map<Exponents, BasePoly> sigma_cache_;
  mutable std::map<Exponents, BasePoly> delta_cache_;
  mutable std::map<std::pair<std::uint32_t, Exponents>, std::vector<OreTerm>> expansion_cache_;
  mutable std::shared_ptr<const OreAlgebra> opposite_;
  mutable std::weak_ptr<const OreAlgebra> opposite_of_;
};

using AlgebraPtr = std::shared_ptr<const OreAlgebra>;

}  // namespace oreform
