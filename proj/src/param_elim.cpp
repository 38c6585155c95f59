#include "reduce_util.hpp"

namespace bawb {

using namespace detail;

Term pow2_len_pow(const Term& x, int c) {
  if (c < 1) throw ReductionError("exponent c must be at least 1");
  Term b = smash(one(), x);
  for (int i = 2; i <= c; ++i) b = smash(x, monus(b, one()));
  return b;
}

namespace {

Formula phi_at(const Formula& phi, Term a, Term b) { return at(phi, {{"x", std::move(a)}, {"y", std::move(b)}}); }

// premises of the rule being simulated
FreeFormula base_premise(const Formula& phi) { return ff(phi_at(phi, zero(), Y()), {"y"}); }
FreeFormula ind_step(const Formula& phi) { return ff(imp(phi, phi_at(phi, add(X(), one()), Y())), {"x", "y"}); }
FreeFormula pind_step(const Formula& phi) { return ff(imp(phi_at(phi, half(X()), Y()), phi), {"x", "y"}); }

ReductionCertificate sigma_ind(const Formula& phi, int level) {
  ReductionCertificate c;
  c.name = "param-free-sigma-ind";
  c.inputs = {phi};
  Term z = V("z");
  Term m = half(add(len(z), one()));
  c.outputs = {disj(eq(z, zero()), phi_at(phi, slice(z, m, len(z)), slice(z, one(), m)))};
  c.output_names = {"psi"};
  c.width = 5;
  c.mutations = {"negate", "negate-atom", "zero-var"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    auto psi_at = [&](Term t) { return at(psi, {{"z", std::move(t)}}); };
    Term p = smash(one(), add(X(), Y()));
    Term enc = add(add(mul(p, p), mul(Y(), p)), X());
    c.obligations = {
        ob("base", ff(psi_at(zero()), {}), {base_premise(phi)}),
        ob("step", ff(imp(psi, psi_at(add(V("z"), one()))), {"z"}), {base_premise(phi), ind_step(phi)}),
        ob("conclusion", ff(imp(psi_at(enc), phi), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, sigma(level)}};
  };
  c.rebuild(c);
  return c;
}

ReductionCertificate pi_ind(const Formula& phi, int level) {
  ReductionCertificate c;
  c.name = "param-free-pi-ind";
  c.inputs = {phi};
  Term z = V("z");
  c.outputs = {forall("x", z, forall("y", z, imp(le(pair(X(), Y()), z), phi)))};
  c.output_names = {"psi"};
  c.width = 5;
  c.mutations = {"negate", "swap-quantifier", "zero-var"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    auto psi_at = [&](Term t) { return at(psi, {{"z", std::move(t)}}); };
    c.obligations = {
        ob("base", ff(psi_at(zero()), {}), {base_premise(phi)}),
        ob("step", ff(imp(psi, psi_at(add(V("z"), one()))), {"z"}), {base_premise(phi), ind_step(phi)}),
        ob("conclusion", ff(imp(psi_at(pair(X(), Y())), phi), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, pi(level)}};
  };
  c.rebuild(c);
  return c;
}

ReductionCertificate pi_pind(const Formula& phi, int level) {
  ReductionCertificate c;
  c.name = "param-free-pi-pind";
  c.inputs = {phi};
  Term z = V("z");
  std::string un = fresh_name("u", all_vars(phi));
  c.outputs = {forall(un, len(z), phi_at(phi, mod2(z, V(un)), div2(z, V(un))))};
  c.output_names = {"psi"};
  c.width = 5;
  c.mutations = {"negate", "swap-quantifier", "zero-var"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    auto psi_at = [&](Term t) { return at(psi, {{"z", std::move(t)}}); };
    Term enc = add(mul(Y(), smash(one(), X())), X());
    c.obligations = {
        ob("base", ff(psi_at(zero()), {}), {base_premise(phi)}),
        ob("step", ff(imp(psi_at(half(V("z"))), psi), {"z"}), {base_premise(phi), pind_step(phi)}),
        ob("conclusion", ff(imp(psi_at(enc), phi), {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, pi(level)}};
  };
  c.rebuild(c);
  return c;
}

// psi(z): a sequence w lists witnesses for every split (i, j) of z with
// pair(i, j) < |z|; entry pair(i, j) witnesses phi(z[j, i+j), z[0, j)).
ReductionCertificate sigma_pind(const Formula& phi, int level) {
  Split s = split_leading(phi, FKind::Exists, {"x", "y", "z"});
  if (!monotone_in(s.bound, "x") || !monotone_in(s.bound, "y"))
    throw ReductionError("witness bound " + render(s.bound) + " must be monotone in x and y");
  std::set<std::string> used = all_vars(phi);
  used.insert({"x", "y", "z"});
  std::string wn = fresh_name("w", used);
  used.insert(wn);
  std::string in = fresh_name("i", used);
  used.insert(in);
  std::string jn = fresh_name("j", used);
  Term z = V("z"), w = V(wn), i = V(in), j = V(jn);
  Term xs = slice(z, j, add(i, j)), ys = slice(z, zero(), j);
  Term entry = seq(w, pair(i, j));
  Formula body = conj(le(entry, at_term(s.bound, xs, ys)), at(s.body, {{"x", xs}, {"y", ys}, {s.var, entry}}));
  Term e = at_term(s.bound, z, z);
  Term b = pair(len(e), monus(smash(z, e), one()));
  Formula psi = exists(wn, b, forall(in, len(z), forall(jn, len(z), imp(below(pair(i, j), len(z)), body))));

  ReductionCertificate c;
  c.name = "param-free-sigma-pind";
  c.inputs = {phi};
  c.outputs = {psi};
  c.output_names = {"psi"};
  c.width = 4;
  c.mutations = {"negate", "bump-atom", "zero-var"};
  c.rebuild = [phi, level](ReductionCertificate& c) {
    Formula psi = c.outputs[0];
    auto psi_at = [&](Term t) { return at(psi, {{"z", std::move(t)}}); };
    Term z = V("z"), i = V("i"), j = V("j");
    Term lx = len(X()), ly = len(Y());
    Term cc = mul(mul(smash(one(), X()), smash(one(), Y())), add(one(), one()));
    Term enc = cond(add(X(), Y()), mul(add(mul(Y(), smash(one(), X())), X()), smash(cc, cc)), one());
    c.obligations = {
        ob("base", ff(psi_at(zero()), {}), {base_premise(phi)}),
        ob("step", ff(imp(psi_at(half(z)), psi), {"z"}), {base_premise(phi), pind_step(phi)}),
        ob("conclusion-slices",
           ff(imp(below(pair(i, j), len(z)), imp(psi, phi_at(phi, slice(z, j, add(i, j)), slice(z, zero(), j)))),
              {"z", "i", "j"})),
        ob("conclusion-encoding", ff(conj_all({eq(slice(enc, ly, add(lx, ly)), X()), eq(slice(enc, zero(), ly), Y()),
                                               below(pair(lx, ly), len(enc))}),
                                     {"x", "y"})),
    };
    c.class_claims = {{"psi", psi, sigma(level)}};
  };
  c.rebuild(c);
  return c;
}

}  // namespace

ReductionCertificate eliminate_parameters(const Formula& phi, const RuleKind& kind) {
  require_free_within(phi, {"x", "y"}, "phi");
  if (kind.cls.kind != QKind::SigmaHat && kind.cls.kind != QKind::PiHat)
    throw ReductionError("class must be sigma_i or pi_i");
  int level = require_side(phi, kind.cls.kind, kind.cls.level, "phi");
  bool sig = kind.cls.kind == QKind::SigmaHat;
  if (kind.scheme == Scheme::IND) return sig ? sigma_ind(phi, level) : pi_ind(phi, level);
  if (kind.scheme == Scheme::PIND) {
    if (level < 1) throw ReductionError("PIND parameter elimination needs level >= 1");
    return sig ? sigma_pind(phi, level) : pi_pind(phi, level);
  }
  throw ReductionError("parameter elimination supports IND and PIND only");
}

}  // namespace bawb
