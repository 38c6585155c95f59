#include "reduce_util.hpp"

namespace bawb {

using namespace detail;

namespace {

Formula phi_at(const Formula& phi, Term a, Term b) { return at(phi, {{"x", std::move(a)}, {"y", std::move(b)}}); }
Formula phi_at(const Formula& phi, Term a) { return at(phi, {{"x", std::move(a)}}); }

Formula ind_step_at(const Formula& phi, const Term& v) { return imp(phi_at(phi, v), phi_at(phi, add(v, one()))); }
Formula pind_step_at(const Formula& phi, const Term& v) { return imp(phi_at(phi, half(v)), phi_at(phi, v)); }

std::string fresh(std::set<std::string>& used, const std::string& base) {
  std::string n = fresh_name(base, used);
  used.insert(n);
  return n;
}

QKind side_of(const Formula& phi) {
  QuantClass c = classify(phi);
  if (c.kind == QKind::PiHat) return QKind::PiHat;
  if (c.kind == QKind::NonStrict) {
    Levels l = block_levels(phi);
    return l.pi < l.sigma ? QKind::PiHat : QKind::SigmaHat;
  }
  return QKind::SigmaHat;
}

int level_of(const Formula& phi, QKind side) { return require_side(phi, side, -1, "phi"); }

void require_scheme(Scheme s) {
  if (s != Scheme::IND && s != Scheme::PIND) throw ReductionError("scheme must be IND or PIND");
}

ReductionCertificate start(const std::string& name, const Formula& phi, Formula out, int width) {
  ReductionCertificate c;
  c.name = name;
  c.inputs = {phi};
  c.outputs = {std::move(out)};
  c.output_names = {"psi"};
  c.width = width;
  return c;
}

ReductionCertificate finish(ReductionCertificate c) {
  c.rebuild(c);
  return c;
}

ReductionCertificate base_position(const Formula& phi, Scheme scheme) {
  require_free_within(phi, {"x"}, "phi (parameter free)");
  require_scheme(scheme);
  auto c = start("base-position", phi, imp(phi_at(phi, zero()), phi), 5);
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  c.rebuild = [phi, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    c.obligations = {
        ob("rule-from-rule0", ff(imp(conj(phi_at(phi, zero()), psi), phi), {"x"})),
        ob("rule0-from-rule", ff(imp(neg(phi_at(phi, zero())), psi), {"x"})),
    };
    // a boolean combination of phi instances sits one level up on both sides
    c.class_claims = {{"psi", psi, sigma(level + 1)}, {"psi", psi, pi(level + 1)}, {"phi", phi, {side, level}}};
  };
  return finish(c);
}

// PIND from LIND: psi(x, y, z) = phi(z / 2^(|z| - x), y)
ReductionCertificate pind_to_lind(const Formula& phi) {
  Term z = V("z"), x = X();
  auto c = start("pind-lind", phi, phi_at(phi, div2(z, monus(len(z), x)), Y()), 5);
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  c.rebuild = [phi, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term z = V("z"), x = X();
    auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
    c.obligations = {
        ob("base", ff(imp(phi_at(phi, zero(), Y()), psi_at(zero())), {"y", "z"})),
        ob("step", ff(imp(pind_step_at(phi, div2(z, monus(len(z), add(x, one())))), imp(psi, psi_at(add(x, one())))),
                      {"x", "y", "z"})),
        ob("conclusion", ff(imp(psi_at(len(z)), phi_at(phi, z, Y())), {"y", "z"})),
    };
    c.class_claims = {{"psi", psi, {side, level}}};
  };
  return finish(c);
}

// LIND from PIND: psi(x, y) = phi(|x|, y)
ReductionCertificate lind_to_pind(const Formula& phi) {
  auto c = start("lind-pind", phi, phi_at(phi, len(X()), Y()), 5);
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  c.rebuild = [phi, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X();
    auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
    c.obligations = {
        ob("base", ff(imp(phi_at(phi, zero(), Y()), psi_at(zero())), {"y"})),
        ob("step", ff(imp(ind_step_at(phi, len(half(x))), imp(psi_at(half(x)), psi)), {"x", "y"})),
        ob("conclusion", ff(imp(psi, phi_at(phi, len(x), Y())), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, {side, level}}};
  };
  return finish(c);
}

// IND_< from IND with psi = forall w <= x. phi(w); PIND_< from PIND with
// psi = forall w <= 2^|x| - 1. phi(w).
ReductionCertificate ind_lt(const Formula& phi, Scheme scheme) {
  require_scheme(scheme);
  bool ind = scheme == Scheme::IND;
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y"});
  std::string wn = fresh(used, "w");
  Term x = X();
  Term bound = ind ? x : monus(smash(one(), x), one());
  auto c = start(ind ? "ind-lt" : "pind-lt", phi, forall(wn, bound, phi_at(phi, V(wn))), 5);
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  int out_level = side == QKind::SigmaHat ? level + 1 : std::max(level, 1);
  c.mutations = {"negate", "negate-atom", "bump-atom"};
  c.rebuild = [phi, ind, out_level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X();
    std::set<std::string> used = all_vars(phi);
    used.insert({"x", "y"});
    std::string pn = fresh(used, "p"), qn = fresh(used, "q");
    // Q(w): the hypothesis of the strong scheme at w
    auto hyp = [&](const Term& w) {
      Formula smaller = ind ? below(V(pn), w) : below(len(V(pn)), len(w));
      return imp(forall(pn, w, imp(smaller, phi_at(phi, V(pn)))), phi_at(phi, w));
    };
    auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
    Formula step = ind ? imp(hyp(add(x, one())), imp(psi, psi_at(add(x, one()))))
                       : imp(forall(qn, monus(smash(one(), x), one()), hyp(V(qn))), imp(psi_at(half(x)), psi));
    c.obligations = {
        ob("base", ff(imp(hyp(zero()), psi_at(zero())), {"y"})),
        ob("step", ff(step, {"x", "y"})),
        ob("conclusion", ff(imp(psi, phi), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, pi(out_level)}};
  };
  return finish(c);
}

// pairing <u, v> = u * 2^|u| + v with projections through |w| / 2
Term pr(Term u, Term v) { return add(mul(u, smash(one(), u)), std::move(v)); }
Term pl(Term w) { return div2(w, half(len(w))); }
Term prr(Term w) { return mod2(w, half(len(w))); }

ReductionCertificate ind_lt_converse(const Formula& phi, Scheme scheme, int c_exp) {
  require_scheme(scheme);
  if (c_exp != 1) throw ReductionError("the converse construction supports c = 1 only");
  require_free_within(phi, {"x"}, "phi (parameter free)");
  if (phi->kind != FKind::Forall || !equal(phi->bound, monus(smash(one(), X()), one())))
    throw ReductionError("phi must have the form ALL z <= (1 # x) monus 1. theta(x, z)");
  bool ind = scheme == Scheme::IND;
  Formula theta = phi->a;
  std::string zv = phi->var;
  int level = require_side(theta, QKind::SigmaHat, -1, "theta");
  Term w = V("w");
  Formula psi = imp(below(prr(w), smash(one(), pl(w))), at(theta, {{"x", pl(w)}, {zv, prr(w)}}));
  auto c = start(ind ? "ind-lt-converse" : "pind-lt-converse", phi, psi, 5);
  ReductionCertificate side = pairing_side_conditions();
  c.rebuild = [phi, ind, level, side](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term w = V("w"), x = X();
    std::set<std::string> used = all_vars(psi);
    used.insert({"w", "x"});
    std::string pn = fresh(used, "p"), zn = fresh(used, "z");
    auto psi_at = [&](Term t) { return at(psi, {{"w", std::move(t)}}); };
    Formula smaller = ind ? below(V(pn), w) : below(len(V(pn)), len(w));
    Formula hyp = imp(forall(pn, w, imp(smaller, psi_at(V(pn)))), psi);
    std::vector<FreeFormula> prem = {ff(phi_at(phi, zero()), {}),
                                     ff(ind ? ind_step_at(phi, x) : pind_step_at(phi, x), {"x"})};
    c.obligations = {
        ob("hypothesis", ff(hyp, {"w"}), prem),
        ob("conclusion", ff(imp(forall(zn, monus(smash(one(), x), one()), psi_at(pr(x, V(zn)))), phi), {"x"})),
    };
    for (const auto& o : side.obligations) c.obligations.push_back(o);
    c.class_claims = {{"psi", psi, sigma(level)}};
  };
  return finish(c);
}

// PIND_res from PIND on psi(x, y) = forall u <= |x|. phi(x / 2^u, y), or the
// sequence-of-witnesses form when phi is sigma.
ReductionCertificate pind_res(const Formula& phi) {
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y"});
  std::string un = fresh(used, "u");
  Term x = X(), u = V(un);
  Formula psi;
  if (side == QKind::PiHat) {
    psi = forall(un, len(x), phi_at(phi, div2(x, u), Y()));
  } else {
    Split s = split_leading(phi, FKind::Exists, used);
    if (!monotone_in(s.bound, "x")) throw ReductionError("witness bound must be monotone in x");
    std::string sn = fresh(used, "s");
    Term entry = seq(V(sn), u);
    Term xu = div2(x, u);
    Formula body = conj(le(entry, at_term(s.bound, xu, Y())), at(s.body, {{"x", xu}, {s.var, entry}}));
    Term e = s.bound;
    Term b = pair(len(e), monus(smash(add(add(x, x), one()), e), one()));
    psi = exists(sn, b, forall(un, len(x), body));
  }
  auto c = start("pind-res", phi, psi, side == QKind::PiHat ? 5 : 4);
  c.rebuild = [phi, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X();
    std::set<std::string> used = all_vars(phi);
    used.insert({"x", "y"});
    std::string vn = fresh(used, "v");
    Term v = V(vn);
    Formula hyp = imp(forall(vn, len(x), imp(le(one(), v), phi_at(phi, div2(x, v), Y()))), phi);
    auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
    c.obligations = {
        ob("base", ff(imp(at(hyp, {{"x", zero()}}), psi_at(zero())), {"y"})),
        ob("step", ff(imp(hyp, imp(psi_at(half(x)), psi)), {"x", "y"})),
        ob("conclusion", ff(imp(psi, phi), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, {side, level}}};
  };
  return finish(c);
}

// rule with the base case in the conclusion from the plain rule:
// psi(x, y, z) = z <= t(0, y) & theta(0, y, z) -> phi(x, y)
ReductionCertificate base_in_conclusion(const Formula& phi, Scheme scheme) {
  require_scheme(scheme);
  bool ind = scheme == Scheme::IND;
  int level = require_side(phi, QKind::SigmaHat, -1, "phi");
  bool has_witness = phi->kind == FKind::Exists;
  Term zb = has_witness ? substitute(phi->bound, Subst{{"x", zero()}}) : zero();
  Formula antecedent =
      has_witness ? conj(le(V("z"), zb), at(phi->a, {{"x", zero()}, {phi->var, V("z")}})) : phi_at(phi, zero());
  auto c = start(ind ? "base-in-conclusion" : "base-in-conclusion-pind", phi, imp(antecedent, phi), 5);
  c.rebuild = [phi, ind, level, zb](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X();
    auto psi_at = [&](Term t) { return at(psi, {{"x", std::move(t)}}); };
    Formula step = ind ? imp(ind_step_at(phi, x), imp(psi, psi_at(add(x, one()))))
                       : imp(pind_step_at(phi, x), imp(psi_at(half(x)), psi));
    c.obligations = {
        ob("base", ff(psi_at(zero()), {"y", "z"})),
        ob("step", ff(step, {"x", "y", "z"})),
        ob("conclusion", ff(imp(forall("z", zb, psi), imp(phi_at(phi, zero()), phi)), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, sigma(level)}};
  };
  return finish(c);
}

// Min(chi)(x): chi(x) and no smaller element satisfies chi
Formula minimal(const Formula& chi, const Term& x, const std::string& pn) {
  return conj(at(chi, {{"x", x}}), forall(pn, x, imp(below(V(pn), x), neg(at(chi, {{"x", V(pn)}})))));
}

ReductionCertificate min_as_ind_lt(const Formula& phi) {
  QKind side = side_of(phi);
  int level = level_of(phi, side);
  auto c = start("min-as-ind-lt", phi, neg(phi), 5);
  c.rebuild = [phi, side, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term a = V("a"), x = X();
    std::set<std::string> used = all_vars(phi);
    std::set<std::string> pv = all_vars(psi);
    used.insert(pv.begin(), pv.end());
    used.insert({"x", "y", "a"});
    std::string pn = fresh(used, "p"), qn = fresh(used, "q");
    Term p = V(pn), q = V(qn);
    Formula below_ok = forall(qn, p, imp(below(q, p), at(psi, {{"x", q}})));
    Formula min_b = imp(exists(pn, a, phi_at(phi, p)), exists(pn, a, minimal(phi, p, qn)));
    Formula indlt_b = imp(forall(pn, a, imp(below_ok, at(psi, {{"x", p}}))), forall(pn, a, at(psi, {{"x", p}})));
    Formula hyp_x = imp(forall(qn, x, imp(below(q, x), at(psi, {{"x", q}}))), psi);
    c.obligations = {
        ob("equivalence", ff(iff(min_b, indlt_b), {"a", "y"})),
        ob("pointwise", ff(iff(minimal(phi, x, qn), neg(hyp_x)), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, {side == QKind::SigmaHat ? QKind::PiHat : QKind::SigmaHat, level}}};
  };
  return finish(c);
}

// MIN rule from MIN: psi(x, y, x0) = (x <= t(x0, y) -> theta(x0, y, x)) -> phi(x, y)
ReductionCertificate min_rule(const Formula& phi) {
  int level = require_side(phi, QKind::PiHat, -1, "phi");
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y", "x0"});
  Split s = split_leading(phi, FKind::Forall, used);
  Term x = X(), x0 = V("x0");
  Formula theta_t = imp(le(x, at_term(s.bound, x0, Y())), at(s.body, {{"x", x0}, {s.var, x}}));
  auto c = start("min-rule", phi, imp(theta_t, phi), 5);
  c.rebuild = [phi, level, s](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    Term x = X(), x0 = V("x0");
    std::set<std::string> used = all_vars(phi);
    std::set<std::string> pv = all_vars(psi);
    used.insert(pv.begin(), pv.end());
    std::string pn = fresh(used, "p"), qn = fresh(used, "q");
    Formula ex = exists(pn, add(at_term(s.bound, x0, Y()), x0), at(psi, {{"x", V(pn)}}));
    c.obligations = {
        ob("exists", ff(ex, {"x0", "y"})),
        ob("same-minima", ff(imp(phi_at(phi, x0), iff(minimal(psi, x, qn), minimal(phi, x, qn))), {"x", "y", "x0"})),
    };
    c.class_claims = {{"psi", psi, pi(std::max(level, 1))}};
  };
  return finish(c);
}

}  // namespace

ReductionCertificate pairing_side_conditions() {
  ReductionCertificate c;
  c.name = "pairing-side-conditions";
  Term u = V("u"), v = V("v"), u2 = V("u2"), v2 = V("v2");
  Formula in_range = conj(below(v, smash(one(), u)), below(v2, smash(one(), u2)));
  std::map<std::string, int> w{{"u", 4}, {"v", 4}, {"u2", 4}, {"v2", 4}};
  c.obligations = {
      ob("order", ff(imp(conj(below(u, u2), in_range), below(pr(u, v), pr(u2, v2))), {"u", "v", "u2", "v2"}, w)),
      ob("length-order", ff(imp(conj(below(len(u), len(u2)), in_range), below(len(pr(u, v)), len(pr(u2, v2)))),
                            {"u", "v", "u2", "v2"}, w)),
      ob("projections", ff(imp(below(v, smash(one(), u)), conj(eq(pl(pr(u, v)), u), eq(prr(pr(u, v)), v))),
                           {"u", "v"}, {{"u", 4}, {"v", 4}})),
  };
  c.width = 4;
  return c;
}

ReductionCertificate variant_reduce(Variant v, const Formula& phi, const VariantOptions& o) {
  require_free_within(phi, {"x", "y"}, "phi");
  switch (v) {
    case Variant::BasePosition: return base_position(phi, o.scheme);
    case Variant::PindToLind: return pind_to_lind(phi);
    case Variant::LindToPind: return lind_to_pind(phi);
    case Variant::IndLt: return ind_lt(phi, o.scheme);
    case Variant::IndLtConverse: return ind_lt_converse(phi, o.scheme, o.c);
    case Variant::PindRes: return pind_res(phi);
    case Variant::BaseInConclusion: return base_in_conclusion(phi, o.scheme);
    case Variant::MinAsIndLt: return min_as_ind_lt(phi);
    case Variant::MinRule: return min_rule(phi);
  }
  throw ReductionError("unknown variant");
}

}  // namespace bawb
