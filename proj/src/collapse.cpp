#include <algorithm>

#include "reduce_util.hpp"

namespace bawb {

using namespace detail;

// ---- codec

std::uint64_t CollapseCodec::header(const std::vector<Natural>& digits, std::uint64_t b) const {
  std::uint64_t h = 0;
  for (const auto& d : digits) h = h * b + d.bit_length();
  return h + static_cast<std::uint64_t>(k) * L;
}

std::uint64_t CollapseCodec::threshold_bits() const {
  std::uint64_t p = 1;
  for (int i = 0; i < k; ++i) p *= base();
  return p + static_cast<std::uint64_t>(k) * L;
}

Natural CollapseCodec::encode(const std::vector<Natural>& digits) const {
  if (static_cast<int>(digits.size()) != k) throw std::invalid_argument("encode: wrong number of digits");
  Natural data;
  for (const auto& d : digits) {
    if (d.bit_length() > L) throw std::invalid_argument("encode: digit " + d.to_string() + " exceeds the digit width");
    data = data.shl(L) + d;
  }
  if (mode == CollapseMode::IND) return data;
  return Natural::pow2(header(digits, base())) + data;
}

std::vector<Natural> CollapseCodec::decode(const Natural& y, bool* valid) const {
  const std::uint64_t kl = static_cast<std::uint64_t>(k) * L;
  std::vector<Natural> digits;
  for (int l = 1; l <= k; ++l) digits.push_back(y.shr(static_cast<std::uint64_t>(k - l) * L).low_bits(L));
  bool ok;
  if (mode == CollapseMode::IND) {
    ok = y.bit_length() <= kl;
  } else {
    std::uint64_t n = y.bit_length();
    ok = n > 0 && n - 1 == header(digits, base()) && y.low_bits(n - 1).shr(kl).is_zero();
  }
  if (valid) *valid = ok;
  if (!ok) return {};
  return digits;
}

namespace {

Term power(const Term& t, int n) {
  if (n == 0) return one();
  Term p = t;
  for (int i = 1; i < n; ++i) p = mul(p, t);
  return p;
}

Term sum_all(const std::vector<Term>& ts) {
  if (ts.empty()) return zero();
  Term s = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) s = add(s, ts[i]);
  return s;
}

struct ChainTerms {
  int k;
  Term x, B, L, Bk, kL;
  std::vector<Term> Q;  // Q[m] = 2^((L+1)^m)

  ChainTerms(int k_, int c, Term x_) : k(k_), x(std::move(x_)) {
    B = pow2_len_pow(x, c);
    L = monus(len(B), one());
    Bk = power(B, k);
    kL = k == 1 ? L : mul(num(static_cast<std::uint64_t>(k)), L);
    Q.push_back(add(one(), one()));
    for (int m = 1; m <= k; ++m) Q.push_back(smash(monus(Q.back(), one()), B));
  }

  Term digit(const Term& y, int l) const {
    Term shifted = l == k ? y : div2(y, k - l == 1 ? L : mul(num(static_cast<std::uint64_t>(k - l)), L));
    return mod2(shifted, L);
  }

  Term header(const std::vector<Term>& ds) const {
    std::vector<Term> parts;
    for (int l = 1; l <= k; ++l) parts.push_back(mul(len(ds[l - 1]), power(add(L, one()), k - l)));
    parts.push_back(kL);
    return sum_all(parts);
  }

  Term data(const std::vector<Term>& ds) const {
    std::vector<Term> parts;
    for (int l = 1; l <= k; ++l) parts.push_back(mul(ds[l - 1], power(B, k - l)));
    return sum_all(parts);
  }

  Term encode(const std::vector<Term>& ds, CollapseMode mode) const {
    if (mode == CollapseMode::IND) return data(ds);
    Term p = Bk;
    for (int l = 1; l <= k; ++l) p = mul(smash(ds[l - 1], monus(Q[k - l], one())), p);
    return add(p, data(ds));
  }

  Formula valid(const Term& y) const {
    std::vector<Term> ds;
    for (int l = 1; l <= k; ++l) ds.push_back(digit(y, l));
    Term top_bit = monus(len(y), one());
    return conj_all({neg(eq(y, zero())), eq(top_bit, header(ds)), eq(div2(mod2(y, top_bit), kL), zero())});
  }
};

std::string xname(int l) { return "x" + std::to_string(l); }

// theta_j with its last slot renamed to y
Formula normalize_theta(const Formula& th, int j) {
  std::set<std::string> allowed{"y"};
  for (int l = 0; l < j; ++l) allowed.insert(xname(l));
  std::set<std::string> fv = free_vars(th);
  Formula out = th;
  if (fv.count(xname(j))) {
    if (fv.count("y")) throw ReductionError("theta" + std::to_string(j) + " uses both y and " + xname(j));
    out = substitute(th, xname(j), var("y"));
  }
  require_free_within(out, allowed, "theta" + std::to_string(j));
  return out;
}

int fit(int want, const std::function<int(int)>& ywidth, int cap = 20) {
  int w = want;
  while (w > 1 && ywidth(w) > cap) --w;
  return w;
}

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ReductionCertificate collapse_chain(const std::vector<Formula>& thetas_in, const Formula& phi, int c, CollapseMode mode,
                                    int width) {
  const int k = static_cast<int>(thetas_in.size());
  if (k < 1) throw ReductionError("collapse needs at least one theta");
  if (c < 1) throw ReductionError("exponent c must be at least 1");
  require_free_within(phi, {"x"}, "phi");
  std::vector<Formula> thetas;
  int level = 0;
  for (int j = 1; j <= k; ++j) {
    thetas.push_back(normalize_theta(thetas_in[static_cast<std::size_t>(j - 1)], j));
    level = std::max(level, block_levels(thetas.back()).pi);
  }
  const bool ind = mode == CollapseMode::IND;
  Term x = X(), y = Y();
  ChainTerms T(k, c, x);

  auto theta_at = [&](const Term& xx, const Term& yy) {
    ChainTerms t(k, c, xx);
    std::vector<Formula> parts;
    for (int j = 1; j <= k; ++j) {
      Subst s{{"x0", xx}, {"y", t.digit(yy, j)}};
      for (int l = 1; l < j; ++l) s[xname(l)] = t.digit(yy, l);
      parts.push_back(substitute(thetas[static_cast<std::size_t>(j - 1)], s));
    }
    if (ind) return disj(neg(eq(div2(yy, t.kL), zero())), conj_all(parts));
    return disj(le(mul(t.Q[static_cast<std::size_t>(k)], t.Bk), yy), conj(t.valid(yy), conj_all(parts)));
  };

  Formula theta = theta_at(x, y);
  Formula psi = disj(phi, neg(theta));

  // hypotheses on the thetas
  std::vector<FreeFormula> prem;
  for (int j = 1; j <= k; ++j) {
    std::vector<std::string> vars;
    for (int l = 0; l < j; ++l) vars.push_back(xname(l));
    vars.push_back("y");
    Term t0 = monus(pow2_len_pow(var("x0"), c), one());
    prem.push_back(ff(imp(le(t0, y), thetas[static_cast<std::size_t>(j - 1)]), vars));
  }
  {
    std::vector<std::string> vars;
    std::vector<Formula> all, escapes{at(phi, {{"x", var("x0")}})};
    for (int l = 0; l <= k; ++l) vars.push_back(xname(l));
    for (int j = 1; j <= k; ++j) {
      const Formula& th = thetas[static_cast<std::size_t>(j - 1)];
      all.push_back(substitute(th, "y", var(xname(j))));
      std::set<std::string> used = all_vars(th);
      for (const auto& v : vars) used.insert(v);
      std::string zn = fresh_name("z", used);
      Term z = var(zn), xj = var(xname(j));
      Formula smaller = ind ? below(z, xj) : below(len(z), len(xj));
      escapes.push_back(exists(zn, xj, conj(smaller, substitute(th, "y", z))));
    }
    prem.push_back(ff(imp(conj_all(all), disj_all(escapes)), vars));
  }

  // variable widths: y must reach past the largest encoding for every x
  auto ywidth = [&](int xw) {
    int l = ipow(xw, c);
    return ind ? k * l + 1 : ipow(l + 1, k) + k * l + 1;
  };
  int xw = fit(width, ywidth);
  std::map<std::string, int> wide{{"x", xw}, {"y", ywidth(xw)}};
  int cw = fit(std::min(width, 3), ywidth);
  std::map<std::string, int> codec{{"x", cw}, {"y", ywidth(cw)}};

  std::set<std::string> used = all_vars(theta);
  used.insert({"x", "y"});
  std::string zn = fresh_name("z", used);
  Term z = var(zn);
  Formula smaller = ind ? below(z, y) : below(len(z), len(y));
  Formula descent = imp(theta, disj(phi, exists(zn, y, conj(smaller, theta_at(x, z)))));
  Formula companion =
      imp(forall(zn, y, imp(smaller, substitute(psi, "y", z))), psi);

  std::vector<Term> dvars;
  std::vector<std::string> dnames{"x"};
  std::map<std::string, int> dwidths{{"x", cw}};
  for (int l = 1; l <= k; ++l) {
    dvars.push_back(var("d" + std::to_string(l)));
    dnames.push_back("d" + std::to_string(l));
    dwidths["d" + std::to_string(l)] = std::min(ipow(cw, c), 6);
  }
  std::vector<Formula> in_range, roundtrip;
  Term enc = T.encode(dvars, mode);
  for (int l = 1; l <= k; ++l) {
    in_range.push_back(below(dvars[static_cast<std::size_t>(l - 1)], T.B));
    roundtrip.push_back(eq(T.digit(enc, l), dvars[static_cast<std::size_t>(l - 1)]));
  }
  if (!ind) roundtrip.push_back(T.valid(enc));
  std::vector<Term> ydigits;
  for (int l = 1; l <= k; ++l) ydigits.push_back(T.digit(y, l));
  Formula is_code = ind ? below(y, T.Bk) : T.valid(y);

  Term emax = ind ? monus(T.Bk, one()) : add(mul(half(T.Q[static_cast<std::size_t>(k)]), T.Bk), monus(T.Bk, one()));
  Formula large = ind ? imp(le(monus(T.Bk, one()), y), theta) : imp(le(mul(T.Q[static_cast<std::size_t>(k)], T.Bk), y), theta);

  ReductionCertificate cert;
  cert.name = std::string("collapse-chain-") + (ind ? "ind" : "pind");
  cert.inputs = thetas;
  cert.inputs.push_back(phi);
  cert.outputs = {theta, psi};
  cert.output_names = {"theta", "psi"};
  cert.width = width;
  std::vector<FreeFormula> p17(prem.begin(), prem.begin() + k);
  // the companion scans every shorter z for each y; keep y below 2^12 there
  std::map<std::string, int> narrow = wide;
  narrow["y"] = std::min(narrow["y"], 12);
  cert.obligations = {
      ob("codec-decode", ff(imp(conj_all(in_range), conj_all(roundtrip)), dnames, dwidths)),
      ob("codec-encode", ff(imp(is_code, eq(T.encode(ydigits, mode), y)), {"x", "y"}, codec)),
      ob("max-encoding", ff(substitute(theta, "y", emax), {"x"}), p17),
      ob("large", ff(large, {"x", "y"}, wide), p17),
      ob("descent", ff(descent, {"x", "y"}, wide), prem),
      ob("companion", ff(companion, {"x", "y"}, narrow), prem),
  };
  if (k == 1 && ind)
    cert.obligations.push_back(ob("identity", ff(iff(theta, substitute(thetas[0], "x0", x)), {"x", "y"}, {{"y", width + 1}}), p17));
  cert.class_claims = {{"theta", theta, pi(level)}};
  return cert;
}

// ---- Kaye style expansion

namespace {

void subsets(int n, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, m, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(n, m, 0, cur, out);
  return out;
}

}  // namespace

ReductionCertificate kaye_expand(const std::vector<KayeInstance>& inst, const Formula& phi,
                                 const std::vector<FreeFormula>& theory) {
  const int k = static_cast<int>(inst.size());
  if (k < 1) throw ReductionError("need at least one (alpha, beta) pair");
  std::set<std::string> fv = free_vars(phi);
  for (const auto& i : inst) {
    for (const auto& v : free_vars(i.alpha)) fv.insert(v);
    for (const auto& v : free_vars(i.beta)) fv.insert(v);
  }
  std::vector<std::string> vars(fv.begin(), fv.end());
  auto betas = [&](const std::vector<int>& J) {
    std::vector<Formula> fs;
    for (int j : J) fs.push_back(inst[static_cast<std::size_t>(j)].beta);
    return fs;
  };
  auto alphas = [&](const std::vector<int>& J) {
    std::vector<Formula> fs;
    for (int j : J) fs.push_back(inst[static_cast<std::size_t>(j)].alpha);
    return fs;
  };
  auto complement = [&](const std::vector<int>& J) {
    std::vector<int> out;
    for (int j = 0; j < k; ++j)
      if (std::find(J.begin(), J.end(), j) == J.end()) out.push_back(j);
    return out;
  };
  std::vector<Formula> tau, sigma_;
  for (int m = 0; m <= k; ++m) {
    std::vector<Formula> t{phi}, s{phi};
    for (const auto& J : subsets(k, m)) {
      t.push_back(conj_all(betas(J)));
      s.push_back(conj(conj_all(betas(J)), disj_all(alphas(complement(J)))));
    }
    tau.push_back(disj_all(t));
    sigma_.push_back(disj_all(s));
  }
  std::vector<Formula> implications;
  for (const auto& i : inst) implications.push_back(imp(i.alpha, i.beta));
  std::vector<FreeFormula> prem = theory;
  prem.push_back(ff(imp(conj_all(implications), phi), vars));

  ReductionCertificate c;
  c.name = "kaye-expand";
  c.inputs = {phi};
  for (const auto& i : inst) {
    c.inputs.push_back(i.alpha);
    c.inputs.push_back(i.beta);
  }
  for (int m = 0; m <= k; ++m) {
    c.outputs.push_back(tau[static_cast<std::size_t>(m)]);
    c.output_names.push_back("tau" + std::to_string(m));
  }
  for (int m = 0; m <= k; ++m) {
    c.outputs.push_back(sigma_[static_cast<std::size_t>(m)]);
    c.output_names.push_back("sigma" + std::to_string(m));
  }
  c.width = 4;
  c.obligations.push_back(ob("tau0", ff(tau[0], vars)));
  c.obligations.push_back(ob("sigma" + std::to_string(k) + "-to-phi", ff(imp(sigma_[static_cast<std::size_t>(k)], phi), vars)));
  for (int m = 0; m <= k; ++m)
    c.obligations.push_back(
        ob("tau-sigma-" + std::to_string(m), ff(imp(tau[static_cast<std::size_t>(m)], sigma_[static_cast<std::size_t>(m)]), vars), prem));
  for (int m = 0; m < k; ++m) {
    std::vector<Formula> cover;
    for (const auto& I : subsets(k, k - m)) {
      std::vector<Formula> d{phi};
      for (const auto& b : betas(I)) d.push_back(b);
      cover.push_back(disj_all(d));
      for (const auto& a : alphas(I)) d.push_back(a);
      std::string tag;
      for (int i : I) tag += std::to_string(i + 1);
      c.obligations.push_back(ob("split-" + std::to_string(m) + "-" + tag,
                                 ff(imp(sigma_[static_cast<std::size_t>(m)], disj_all(d)), vars)));
    }
    c.obligations.push_back(
        ob("next-" + std::to_string(m), ff(imp(conj_all(cover), tau[static_cast<std::size_t>(m + 1)]), vars)));
  }
  std::vector<Formula> atoms{phi};
  for (const auto& i : inst) {
    atoms.push_back(i.alpha);
    atoms.push_back(i.beta);
  }
  for (int m = 0; m <= k; ++m) {
    c.syntactic.push_back({"monotone-tau" + std::to_string(m), monotone_shape(tau[static_cast<std::size_t>(m)], atoms)});
    c.syntactic.push_back({"monotone-sigma" + std::to_string(m), monotone_shape(sigma_[static_cast<std::size_t>(m)], atoms)});
  }
  return c;
}

}  // namespace bawb
