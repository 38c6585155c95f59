#include "reduce_util.hpp"

namespace bawb {

using namespace detail;

namespace {

Formula phi_at(const Formula& phi, Term a, Term b) { return at(phi, {{"x", std::move(a)}, {"y", std::move(b)}}); }
Formula phi_at(const Formula& phi, Term a) { return phi_at(phi, std::move(a), Y()); }

// phi(v) -> phi(v + 1) and phi(half v) -> phi(v), instantiated at a term
Formula ind_step_at(const Formula& phi, const Term& v) { return imp(phi_at(phi, v), phi_at(phi, add(v, one()))); }
Formula pind_step_at(const Formula& phi, const Term& v) { return imp(phi_at(phi, half(v)), phi_at(phi, v)); }

QKind infer_side(const Formula& phi, QKind requested) {
  if (requested == QKind::SigmaHat || requested == QKind::PiHat) return requested;
  QuantClass c = classify(phi);
  if (c.kind == QKind::PiHat) return QKind::PiHat;
  if (c.kind == QKind::NonStrict) {
    Levels l = block_levels(phi);
    return l.pi < l.sigma ? QKind::PiHat : QKind::SigmaHat;
  }
  return QKind::SigmaHat;
}

QKind dual(QKind k) { return k == QKind::SigmaHat ? QKind::PiHat : QKind::SigmaHat; }

void require_scheme(Scheme s) {
  if (s != Scheme::IND && s != Scheme::PIND) throw ReductionError("scheme must be IND or PIND");
}

std::string scheme_tag(Scheme s) { return s == Scheme::IND ? "ind" : "pind"; }

// dual class: psi(x, y, a) = ~phi(a monus x, y) or ~phi(a / 2^|x|, y)
ReductionCertificate item_dual(const Formula& phi, const BasicOptions& o) {
  require_scheme(o.scheme);
  QKind side = infer_side(phi, o.side);
  int level = require_side(phi, side, o.level, "phi");
  bool ind = o.scheme == Scheme::IND;
  Term a = V("a"), x = X();
  ReductionCertificate c;
  c.name = "dual-" + scheme_tag(o.scheme);
  c.inputs = {phi};
  c.outputs = {neg(phi_at(phi, ind ? monus(a, x) : div2(a, len(x))))};
  c.output_names = {"psi"};
  c.width = 5;
  c.mutations = {"negate", "zero-var", "succ-var"};
  c.rebuild = [phi, ind, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term a = V("a"), x = X();
    auto psi_at = [&](Term t, Term s) { return at(psi, {{"x", std::move(t)}, {"a", std::move(s)}}); };
    Formula step = ind ? imp(ind_step_at(phi, monus(a, add(x, one()))), imp(psi, psi_at(add(x, one()), a)))
                       : imp(pind_step_at(phi, div2(a, monus(len(x), one()))), imp(psi_at(half(x), a), psi));
    c.obligations = {
        ob("base", ff(imp(neg(phi_at(phi, a)), psi_at(zero(), a)), {"y", "a"})),
        ob("step", ff(step, {"x", "y", "a"})),
        ob("conclusion", ff(imp(psi_at(a, a), neg(phi_at(phi, zero()))), {"y", "a"})),
    };
    c.class_claims = {{"psi", psi, {dual(side), level}}};
  };
  c.rebuild(c);
  return c;
}

// Pi_i below Sigma_i: psi(x, y, a, z) = phi(a - x, y) & z <= t(a, y) -> theta(a, y, z)
ReductionCertificate item_pi_sigma(const Formula& phi, const BasicOptions& o) {
  require_scheme(o.scheme);
  int level = require_side(phi, QKind::PiHat, o.level, "phi");
  if (level < 1) throw ReductionError("phi must be pi_i with i >= 1");
  bool ind = o.scheme == Scheme::IND;
  Split s = split_leading(phi, FKind::Forall, {"x", "y", "a", "z"});
  Term a = V("a"), x = X(), z = V("z");
  Formula theta_az = at(s.body, {{"x", a}, {s.var, z}});
  Term t_a = substitute(s.bound, Subst{{"x", a}});
  ReductionCertificate c;
  c.name = "pi-to-sigma-" + scheme_tag(o.scheme);
  c.inputs = {phi};
  c.outputs = {imp(conj(phi_at(phi, ind ? monus(a, x) : div2(a, len(x))), le(z, t_a)), theta_az)};
  c.output_names = {"psi"};
  c.width = 4;
  c.mutations = {"negate", "flip-connective", "drop-antecedent"};
  c.rebuild = [phi, ind, level, s](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term a = V("a"), x = X();
    auto psi_at = [&](Term t, Term u) { return at(psi, {{"x", std::move(t)}, {"a", std::move(u)}}); };
    Formula step = ind ? imp(ind_step_at(phi, monus(a, add(x, one()))), imp(psi, psi_at(add(x, one()), a)))
                       : imp(pind_step_at(phi, div2(a, monus(len(x), one()))), imp(psi_at(half(x), a), psi));
    Formula closed = forall("z", s.bound, psi_at(x, x));
    c.obligations = {
        ob("base", ff(psi_at(zero(), a), {"y", "a", "z"})),
        ob("step", ff(step, {"x", "y", "a", "z"})),
        ob("conclusion", ff(imp(closed, imp(phi_at(phi, zero()), phi)), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, sigma(level)}};
  };
  c.rebuild(c);
  return c;
}

// PIND from IND: psi = forall u <= x. phi(u, y) (pi) or phi(a / 2^(|a| - x), y) (sigma)
ReductionCertificate item_pind_ind(const Formula& phi, const BasicOptions& o) {
  QKind side = infer_side(phi, o.side);
  int level = require_side(phi, side, o.level, "phi");
  Term a = V("a"), x = X();
  ReductionCertificate c;
  c.name = "pind-to-ind";
  c.inputs = {phi};
  c.output_names = {"psi"};
  c.width = 5;
  if (side == QKind::PiHat) {
    std::string un = fresh_name("u", all_vars(phi));
    c.outputs = {forall(un, x, phi_at(phi, V(un)))};
    c.mutations = {"negate", "swap-quantifier", "shrink-bound"};
    c.rebuild = [phi, level](ReductionCertificate& c) {
      Formula psi = c.outputs[0];
      Term x = X();
      auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
      c.obligations = {
          ob("base", ff(imp(phi_at(phi, zero()), psi_at(zero())), {"y"})),
          ob("step", ff(imp(pind_step_at(phi, add(x, one())), imp(psi, psi_at(add(x, one())))), {"x", "y"})),
          ob("conclusion", ff(imp(psi, phi), {"x", "y"})),
      };
      c.class_claims = {{"psi", psi, pi(level)}};
    };
  } else {
    c.outputs = {phi_at(phi, div2(a, monus(len(a), x)))};
    c.mutations = {"negate", "zero-var", "succ-var"};
    c.rebuild = [phi, level](ReductionCertificate& c) {
      Formula psi = c.outputs[0];
      Term a = V("a"), x = X();
      auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
      Formula step = imp(pind_step_at(phi, div2(a, monus(len(a), add(x, one())))), imp(psi, psi_at(add(x, one()))));
      c.obligations = {
          ob("base", ff(imp(phi_at(phi, zero()), psi_at(zero())), {"y", "a"})),
          ob("step", ff(step, {"x", "y", "a"})),
          ob("conclusion", ff(imp(psi_at(len(a)), phi_at(phi, a)), {"y", "a"})),
      };
      c.class_claims = {{"psi", psi, sigma(level)}};
    };
  }
  c.rebuild(c);
  return c;
}

// IND from the PIND rule one level up: psi(x, y, a) states that a failure of
// phi below a is bracketed by an interval of length at most ceil(a / 2^|x|).
ReductionCertificate item_ind_pind(const Formula& phi, const BasicOptions& o) {
  int level = require_side(phi, QKind::SigmaHat, o.level, "phi");
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y", "a"});
  std::string un = fresh_name("u", used);
  used.insert(un);
  std::string vn = fresh_name("v", used);
  Term a = V("a"), x = X(), u = V(un), v = V(vn);
  Term width = div2(monus(add(a, smash(one(), x)), one()), len(x));
  Formula gap = exists(un, a, exists(vn, width, conj_all({le(add(u, v), a), phi_at(phi, u), neg(phi_at(phi, add(u, v)))})));
  ReductionCertificate c;
  c.name = "ind-to-pind-rule";
  c.inputs = {phi};
  c.outputs = {imp(conj(phi_at(phi, zero()), neg(phi_at(phi, a))), gap)};
  c.output_names = {"psi"};
  c.width = 4;
  c.mutations = {"negate", "flip-connective", "drop-antecedent"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term a = V("a"), x = X();
    std::string wn = fresh_name("w", all_vars(psi));
    auto psi_at = [&](Term t, Term s) { return at(psi, {{"x", std::move(t)}, {"a", std::move(s)}}); };
    Formula steps = forall(wn, a, imp(below(V(wn), a), ind_step_at(phi, V(wn))));
    c.obligations = {
        ob("base", ff(psi_at(zero(), a), {"y", "a"})),
        ob("step", ff(imp(psi_at(half(x), a), psi), {"x", "y", "a"})),
        ob("conclusion",
           ff(imp(psi_at(a, a), imp(conj(phi_at(phi, zero()), steps), phi_at(phi, a))), {"y", "a"})),
    };
    c.class_claims = {{"psi", psi, sigma(level + 1)}};
  };
  c.rebuild(c);
  return c;
}

// additivity: psi(x, y, z) = forall v <= z. phi(v, y) & x + v <= z -> phi(x + v, y)
ReductionCertificate item_additive(const Formula& phi, const BasicOptions& o) {
  int level = require_side(phi, QKind::SigmaHat, o.level, "phi");
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y", "z"});
  std::string vn = fresh_name("v", used);
  Term x = X(), z = V("z"), v = V(vn);
  ReductionCertificate c;
  c.name = "additive";
  c.inputs = {phi};
  c.outputs = {forall(vn, z, imp(conj(phi_at(phi, v), le(add(x, v), z)), phi_at(phi, add(x, v))))};
  c.output_names = {"psi"};
  c.width = 4;
  c.mutations = {"negate", "swap-quantifier", "drop-antecedent"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X(), z = V("z");
    std::string wn = fresh_name("w", all_vars(psi));
    auto psi_at = [&](Term t, Term s) { return at(psi, {{"x", std::move(t)}, {"z", std::move(s)}}); };
    Formula steps = forall(wn, z, ind_step_at(phi, V(wn)));
    c.obligations = {
        ob("base", ff(psi_at(zero(), z), {"y", "z"})),
        ob("one", ff(imp(steps, psi_at(one(), z)), {"y", "z"})),
        ob("sum", ff(imp(conj(psi_at(V("x0"), z), psi_at(V("x1"), z)), psi_at(add(V("x0"), V("x1")), z)),
                     {"x0", "x1", "y", "z"})),
        ob("conclusion", ff(imp(psi_at(x, x), imp(phi_at(phi, zero()), phi)), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, pi(level + 1)}};
  };
  c.rebuild(c);
  return c;
}

}  // namespace

ReductionCertificate basic_reduce(int item, const Formula& phi, const BasicOptions& opts) {
  require_free_within(phi, {"x", "y"}, "phi");
  switch (item) {
    case 2: return item_dual(phi, opts);
    case 4: return item_pi_sigma(phi, opts);
    case 5: return item_pind_ind(phi, opts);
    case 6: return item_ind_pind(phi, opts);
    case 7: return item_additive(phi, opts);
    default: throw ReductionError("no construction for item " + std::to_string(item));
  }
}

// chi(z) = forall y <= z. phi(y) & forall x <= z. (B_c(x) + x <= z -> psi(x))
ReductionCertificate merge_nested_pi(const Formula& phi, const Formula& psi, int c) {
  require_free_within(phi, {"y"}, "phi");
  require_free_within(psi, {"x"}, "psi");
  int level = std::max(require_side(phi, QKind::PiHat, -1, "phi"), require_side(psi, QKind::PiHat, -1, "psi"));
  Term z = V("z"), x = X(), y = Y();
  Term b = pow2_len_pow(x, c);
  ReductionCertificate cert;
  cert.name = "merge-nested-pi";
  cert.inputs = {phi, psi};
  cert.outputs = {conj(forall("y", z, phi), forall("x", z, imp(le(add(b, x), z), psi)))};
  cert.output_names = {"chi"};
  cert.width = 4;
  cert.mutations = {"negate", "negate-atom", "bump-atom"};
  cert.rebuild = [phi, psi, c, level](ReductionCertificate& cert) {
    Formula chi = cert.outputs[0];
    Term z = V("z"), x = X(), y = Y();
    Term b = pow2_len_pow(x, c);
    auto chi_at = [&](Term t) { return at(chi, {{"z", std::move(t)}}); };
    std::string wn = fresh_name("w", all_vars(phi));
    Formula phi_below_b = forall(wn, b, at(phi, {{"y", V(wn)}}));
    std::vector<FreeFormula> prem = {
        ff(at(phi, {{"y", zero()}}), {}),
        ff(imp(phi, at(phi, {{"y", add(y, one())}})), {"y"}),
        ff(at(psi, {{"x", zero()}}), {}),
        ff(imp(phi_below_b, imp(psi, at(psi, {{"x", add(x, one())}}))), {"x"}),
    };
    cert.obligations = {
        ob("base", ff(chi_at(zero()), {}), {prem[0], prem[2]}),
        ob("step", ff(imp(chi, chi_at(add(z, one()))), {"z"}), prem),
        ob("conclusion", ff(imp(chi_at(add(b, x)), psi), {"x"})),
    };
    cert.class_claims = {{"chi", chi, pi(std::max(level, 1))}};
  };
  cert.rebuild(cert);
  return cert;
}

}  // namespace bawb
