#include "tatecalc/spectral.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace tatecalc::spectral {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok)
    throw InvalidArgument(what);
}

struct Generators {
  std::vector<int> alphas;
  int theta_count = 0;
  std::vector<Bidegree> betas;
};

Generators generators_for(const Signature& sig, Variant variant) {
  require(sig.size() >= 2, "E2 page needs a signature with at least two entries, got " + catalog::to_string(sig));
  const int a = sig[sig.size() - 2];
  const int b = sig.back();
  Generators g;
  for (int i = b - a + 1; i <= b; ++i)
    g.alphas.push_back(i);
  g.theta_count = a;

  TateMotive source = catalog::motive_a(sig.without_last());
  if (variant == Variant::flag)
    source = height_filter(source, 0, HeightMode::eq);
  for (const auto& [deg, mult] : source.summands())
    for (Count c = 0; c < mult; ++c)
      g.betas.push_back(deg);
  std::stable_sort(g.betas.begin(), g.betas.end(), [](Bidegree x, Bidegree y) {
    return std::make_tuple(chow_height(x), x.q, x.p) < std::make_tuple(chow_height(y), y.q, y.p);
  });
  return g;
}

Tridegree beta_tridegree(Bidegree b) { return {0, b.p, b.q}; }

Poly2 collapsed(Tridegree t) { return Poly2::monomial({t.l + t.p, t.q}); }

Poly2 beta_series(const std::vector<Bidegree>& betas, long max_weight) {
  Poly2 out;
  for (const auto& b : betas)
    if (b.q <= max_weight)
      out.add_term(b, 1);
  return out;
}

/// 1 + x + x^2 + ... with x = t^{2i} u^i, truncated at weight max_weight.
Poly2 theta_geometric(int i, long max_weight) {
  Poly2 out;
  for (long k = 0; k * i <= max_weight; ++k)
    out.add_term({2 * i * k, i * k}, 1);
  return out;
}

Poly2 series(const Generators& g, long max_weight, bool cancel_alphas) {
  Poly2 out = beta_series(g.betas, max_weight);
  for (int i : g.alphas) {
    Poly2 factor = Poly2::constant(1);
    if (cancel_alphas)
      factor.add_term({2L * i, i}, -1);
    else
      factor.add_term({2L * i - 1, i}, 1);
    out = multiply_truncated(out, factor, max_weight);
  }
  for (int i = 1; i <= g.theta_count; ++i)
    out = multiply_truncated(out, theta_geometric(i, max_weight), max_weight);
  return out;
}

std::string tri_string(Tridegree t) {
  return "(" + std::to_string(t.l) + "," + std::to_string(t.p) + "," + std::to_string(t.q) + ")";
}

std::string join_pages(const std::vector<int>& pages) {
  std::string s = "{";
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(pages[i]);
  }
  return s + "}";
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::full ? "full" : "flag"; }

E2Page E2Page::build(const Signature& sig, Variant variant, long max_weight) {
  require(max_weight >= 0, "max_weight must be nonnegative");
  const Generators g = generators_for(sig, variant);

  E2Page page(sig);
  page.variant_ = variant;
  page.max_weight_ = max_weight;
  page.alpha_indices_ = g.alphas;
  page.theta_count_ = g.theta_count;
  page.betas_ = g.betas;

  struct Part {
    std::vector<int> key;
    Tridegree degree;
  };

  std::vector<Part> alpha_parts;
  const std::size_t na = g.alphas.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << na); ++mask) {
    Part part{{}, {}};
    for (std::size_t k = 0; k < na; ++k)
      if (mask & (std::size_t{1} << k)) {
        part.key.push_back(g.alphas[k]);
        part.degree = part.degree + alpha_tridegree(g.alphas[k]);
      }
    if (part.degree.q <= max_weight)
      alpha_parts.push_back(std::move(part));
  }

  std::vector<Part> theta_parts;
  std::vector<int> exps(static_cast<std::size_t>(g.theta_count), 0);
  std::function<void(int, Tridegree)> walk = [&](int i, Tridegree acc) {
    if (i > g.theta_count) {
      theta_parts.push_back({exps, acc});
      return;
    }
    for (int e = 0; acc.q + static_cast<long>(e) * i <= max_weight; ++e) {
      exps[static_cast<std::size_t>(i - 1)] = e;
      Tridegree d = acc;
      for (int k = 0; k < e; ++k)
        d = d + theta_tridegree(i);
      walk(i + 1, d);
    }
    exps[static_cast<std::size_t>(i - 1)] = 0;
  };
  if (g.theta_count == 0)
    theta_parts.push_back({{}, {}});
  else
    walk(1, {});

  for (std::size_t j = 0; j < g.betas.size(); ++j) {
    const Tridegree bd = beta_tridegree(g.betas[j]);
    if (bd.q > max_weight)
      continue;
    for (const auto& ap : alpha_parts) {
      if (bd.q + ap.degree.q > max_weight)
        continue;
      for (const auto& tp : theta_parts) {
        const Tridegree d = bd + ap.degree + tp.degree;
        if (d.q <= max_weight)
          page.basis_.push_back({ap.key, tp.key, j, d});
      }
    }
  }

  std::sort(page.basis_.begin(), page.basis_.end(), [](const BasisClass& x, const BasisClass& y) {
    return std::tie(x.degree.q, x.degree.l, x.degree.p, x.alphas, x.theta, x.beta) <
           std::tie(y.degree.q, y.degree.l, y.degree.p, y.alphas, y.theta, y.beta);
  });
  for (std::size_t idx = 0; idx < page.basis_.size(); ++idx)
    page.by_degree_[page.basis_[idx].degree].push_back(idx);
  return page;
}

E2Page build_e2(const Signature& sig, Variant variant, long max_weight) {
  return E2Page::build(sig, variant, max_weight);
}

std::optional<std::size_t> E2Page::find(const BasisClass& key) const {
  Tridegree d = beta_tridegree(betas_.at(key.beta));
  for (int i : key.alphas)
    d = d + alpha_tridegree(i);
  for (std::size_t i = 0; i < key.theta.size(); ++i)
    for (int e = 0; e < key.theta[i]; ++e)
      d = d + theta_tridegree(static_cast<int>(i) + 1);
  auto it = by_degree_.find(d);
  if (it == by_degree_.end())
    return std::nullopt;
  for (std::size_t idx : it->second)
    if (basis_[idx] == key)
      return idx;
  return std::nullopt;
}

std::vector<std::size_t> E2Page::classes_at(Tridegree t) const {
  auto it = by_degree_.find(t);
  return it == by_degree_.end() ? std::vector<std::size_t>{} : it->second;
}

std::optional<std::size_t> E2Page::alpha_class(int i) const {
  if (std::find(alpha_indices_.begin(), alpha_indices_.end(), i) == alpha_indices_.end())
    return std::nullopt;
  return find({{i}, std::vector<int>(static_cast<std::size_t>(theta_count_), 0), 0, {}});
}

std::optional<std::size_t> E2Page::beta_class(std::size_t j) const {
  if (j >= betas_.size())
    return std::nullopt;
  return find({{}, std::vector<int>(static_cast<std::size_t>(theta_count_), 0), j, {}});
}

std::optional<std::size_t> E2Page::theta_class(int i) const {
  if (i < 1 || i > theta_count_)
    return std::nullopt;
  std::vector<int> e(static_cast<std::size_t>(theta_count_), 0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return find({{}, e, 0, {}});
}

std::string E2Page::label(const BasisClass& c) const {
  std::vector<std::string> parts;
  for (int i : c.alphas)
    parts.push_back("α′" + std::to_string(i));
  for (std::size_t i = 0; i < c.theta.size(); ++i) {
    if (c.theta[i] == 0)
      continue;
    std::string t = "θ" + std::to_string(i + 1);
    if (c.theta[i] > 1)
      t += "^" + std::to_string(c.theta[i]);
    parts.push_back(t);
  }
  if (c.beta != 0)
    parts.push_back("β′" + std::to_string(c.beta + 1));
  if (parts.empty())
    return "1";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    s += "·" + parts[i];
  return s;
}

std::vector<std::size_t> differential_targets(const E2Page& page, std::size_t source, int s) {
  require(s >= 2, "differentials start on page s = 2");
  return page.classes_at(differential_target_degree(page.basis().at(source).degree, s));
}

std::optional<std::size_t> project_to_flag(const E2Page& full, const E2Page& flag, std::size_t cls) {
  const auto& c = full.basis().at(cls);
  if (c.beta >= flag.betas().size())
    return std::nullopt;
  return flag.find(c);
}

std::size_t include_from_flag(const E2Page& flag, const E2Page& full, std::size_t cls) {
  auto idx = full.find(flag.basis().at(cls));
  if (!idx)
    throw Error("flag class " + flag.label(cls) + " has no image on the full page");
  return *idx;
}

// Reports -----------------------------------------------------------------------------

namespace {

BetaFinding beta_finding(const E2Page& page, std::size_t j, int max_s, bool rank_identity) {
  BetaFinding f;
  f.index = j;
  f.degree = page.betas()[j];
  f.tch = chow_height(f.degree);
  const auto cls = page.beta_class(j);
  if (cls)
    for (int s = 2; s <= max_s; ++s)
      if (!differential_targets(page, *cls, s).empty())
        f.pages_with_targets.push_back(s);
  if (f.pages_with_targets.empty()) {
    f.obstruction = "tch";
    f.ok = true;
  } else {
    f.obstruction = "rank";
    f.ok = f.tch > 0 && rank_identity;
  }
  return f;
}

}  // namespace

SSReport check_ss_description(const Signature& sig, long max_weight) {
  require(sig.size() >= 2, "spectral sequence check needs r >= 2");
  require(max_weight >= sig.back(), "max_weight must be at least n_r = " + std::to_string(sig.back()) +
                                        " so every alpha' class is materialized");
  SSReport r{sig, max_weight, {}, {}, {}, false, false, {}};
  const int max_s = static_cast<int>(2 * max_weight);
  const auto flag = build_e2(sig, Variant::flag, max_weight);
  const auto full = build_e2(sig, Variant::full, max_weight);
  r.rank_identity = einfty_rank_check(sig, max_weight).passed;

  bool ok = r.rank_identity;
  for (int i : flag.alpha_indices()) {
    AlphaFinding a;
    a.index = i;
    a.degree = alpha_tridegree(i);
    const auto flag_cls = flag.alpha_class(i);
    const auto full_cls = full.alpha_class(i);
    if (!flag_cls || !full_cls)
      throw Error("alpha' class " + std::to_string(i) + " missing below the weight bound");
    for (int s = 2; s <= max_s; ++s) {
      const auto ft = differential_targets(flag, *flag_cls, s);
      const auto gt = differential_targets(full, *full_cls, s);
      if (!ft.empty()) {
        a.flag_pages.push_back(s);
        for (auto t : ft)
          a.targets[s].push_back(flag.label(t));
      }
      if (!gt.empty())
        a.full_pages.push_back(s);
      std::vector<std::size_t> included;
      for (auto t : ft)
        included.push_back(include_from_flag(flag, full, t));
      std::sort(included.begin(), included.end());
      if (included != gt)
        a.targets_agree = false;
    }
    ok = ok && !a.flag_pages.empty() && a.targets_agree;
    r.alphas.push_back(std::move(a));
  }
  for (std::size_t j = 0; j < flag.betas().size(); ++j) {
    auto f = beta_finding(flag, j, max_s, r.rank_identity);
    f.ok = f.pages_with_targets.empty();  // every flag generator has tch 0
    ok = ok && f.ok;
    r.flag_betas.push_back(std::move(f));
  }
  for (std::size_t j = 0; j < full.betas().size(); ++j) {
    auto f = beta_finding(full, j, max_s, r.rank_identity);
    ok = ok && f.ok;
    r.full_betas.push_back(std::move(f));
  }
  r.passed = ok;
  r.notes.push_back("E2 presentation assumes the trivial coaction of GL_{n_{r-1}} on A(n_1..n_{r-1}); "
                    "the base case is checked by 'verify adjoint'");
  r.notes.push_back("candidate pages only: differential coefficients are not determined");
  return r;
}

RankReport einfty_rank_check(const Signature& sig, long max_weight) {
  require(sig.size() >= 2, "rank check needs r >= 2");
  require(max_weight >= 0, "max_weight must be nonnegative");
  RankReport r{sig, max_weight, {}, {}, {}, false};
  const auto prefix = sig.without_last();
  r.target = poincare(catalog::motive_a(sig)).truncated(max_weight);
  r.product = multiply_truncated(poincare(catalog::motive_gr(sig[sig.size() - 2], sig.back())),
                                 poincare(catalog::motive_a(prefix)), max_weight);
  r.e_infinity = series(generators_for(sig, Variant::full), max_weight, true);
  r.passed = r.target == r.product && r.target == r.e_infinity;
  return r;
}

Poly2 e2_series(const E2Page& page) {
  Generators g{page.alpha_indices(), page.theta_count(), page.betas()};
  return series(g, page.max_weight(), false);
}

Poly2 e2_series_from_basis(const E2Page& page) {
  Poly2 out;
  for (const auto& c : page.basis())
    out += collapsed(c.degree);
  return out;
}

// Rendering -----------------------------------------------------------------------------

std::string generator_table(const E2Page& page) {
  std::ostringstream os;
  os << "E2 page for signature " << catalog::to_string(page.signature()) << ", " << to_string(page.variant())
     << " variant, weight <= " << page.max_weight() << "\n";
  os << "generator     l    p    q  tch\n";
  auto row = [&](const std::string& name, Tridegree t) {
    os << name;
    // labels contain multibyte glyphs; pad by code points
    std::size_t width = 0;
    for (unsigned char ch : name)
      if ((ch & 0xC0) != 0x80)
        ++width;
    os << std::string(width < 10 ? 10 - width : 1, ' ');
    char buf[64];
    std::snprintf(buf, sizeof buf, "%5ld%5ld%5ld%5ld\n", t.l, t.p, t.q, tch(t));
    os << buf;
  };
  for (int i : page.alpha_indices())
    row("α′" + std::to_string(i), alpha_tridegree(i));
  for (int i = 1; i <= page.theta_count(); ++i)
    row("θ" + std::to_string(i), theta_tridegree(i));
  for (std::size_t j = 0; j < page.betas().size(); ++j)
    row(j == 0 ? std::string("β′1 = 1") : "β′" + std::to_string(j + 1), beta_tridegree(page.betas()[j]));
  os << "basis classes with q <= " << page.max_weight() << ": " << page.basis().size() << "\n";
  return os.str();
}

nlohmann::json to_json(const E2Page& page) {
  auto tri = [](Tridegree t) { return nlohmann::json::array({t.l, t.p, t.q}); };
  auto alphas = nlohmann::json::array();
  for (int i : page.alpha_indices())
    alphas.push_back({{"index", i}, {"tridegree", tri(alpha_tridegree(i))}, {"tch", tch(alpha_tridegree(i))}});
  auto thetas = nlohmann::json::array();
  for (int i = 1; i <= page.theta_count(); ++i)
    thetas.push_back({{"index", i}, {"tridegree", tri(theta_tridegree(i))}, {"tch", 0}});
  auto betas = nlohmann::json::array();
  for (std::size_t j = 0; j < page.betas().size(); ++j) {
    const auto t = beta_tridegree(page.betas()[j]);
    betas.push_back({{"index", j + 1}, {"tridegree", tri(t)}, {"tch", tch(t)}});
  }
  auto classes = nlohmann::json::array();
  for (std::size_t idx = 0; idx < page.basis().size(); ++idx) {
    const auto& c = page.basis()[idx];
    classes.push_back({{"label", page.label(c)}, {"tridegree", tri(c.degree)}, {"tch", tch(c.degree)}});
  }
  return {{"signature", page.signature().entries()},
          {"variant", to_string(page.variant())},
          {"max_weight", page.max_weight()},
          {"generators", {{"alpha", alphas}, {"theta", thetas}, {"beta", betas}}},
          {"classes", classes}};
}

namespace {

std::vector<std::size_t> generator_classes(const E2Page& page) {
  std::vector<std::size_t> out;
  for (int i : page.alpha_indices())
    if (auto c = page.alpha_class(i))
      out.push_back(*c);
  for (std::size_t j = 0; j < page.betas().size(); ++j)
    if (auto c = page.beta_class(j))
      out.push_back(*c);
  return out;
}

}  // namespace

nlohmann::json targets_json(const E2Page& page, int max_s) {
  auto arr = nlohmann::json::array();
  for (auto cls : generator_classes(page)) {
    auto pages = nlohmann::json::array();
    for (int s = 2; s <= max_s; ++s) {
      auto targets = nlohmann::json::array();
      for (auto t : differential_targets(page, cls, s))
        targets.push_back(page.label(t));
      if (!targets.empty())
        pages.push_back({{"s", s}, {"targets", targets}});
    }
    const auto d = page.basis()[cls].degree;
    arr.push_back({{"class", page.label(cls)},
                   {"tridegree", nlohmann::json::array({d.l, d.p, d.q})},
                   {"tch", tch(d)},
                   {"pages", pages}});
  }
  return {{"signature", page.signature().entries()},
          {"variant", to_string(page.variant())},
          {"max_weight", page.max_weight()},
          {"targets", arr}};
}

std::string targets_text(const E2Page& page, int max_s) {
  std::ostringstream os;
  for (auto cls : generator_classes(page)) {
    const auto d = page.basis()[cls].degree;
    os << page.label(cls) << " " << tri_string(d) << " tch=" << tch(d) << ":";
    bool any = false;
    for (int s = 2; s <= max_s; ++s) {
      const auto targets = differential_targets(page, cls, s);
      if (targets.empty())
        continue;
      any = true;
      os << "  d" << s << " ->";
      for (std::size_t k = 0; k < targets.size(); ++k)
        os << (k ? ", " : " ") << page.label(targets[k]);
    }
    if (!any)
      os << "  no targets";
    os << "\n";
  }
  return os.str();
}

std::string to_text(const SSReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " spectral sequence description for " << catalog::to_string(r.signature)
     << ", weight <= " << r.max_weight << "\n";
  for (const auto& a : r.alphas) {
    os << "  α′" << a.index << " " << tri_string(a.degree) << ": candidate pages " << join_pages(a.flag_pages);
    if (!a.targets_agree)
      os << "  (full and flag targets differ)";
    os << "\n";
  }
  auto betas = [&](const char* name, const std::vector<BetaFinding>& fs) {
    for (const auto& f : fs) {
      os << "  " << name << " β′" << f.index + 1 << " (" << f.degree.p << "," << f.degree.q << ") tch=" << f.tch
         << ": ";
      if (f.pages_with_targets.empty())
        os << "no targets (tch)";
      else
        os << "targets on pages " << join_pages(f.pages_with_targets) << ", vanishing by rank count";
      os << (f.ok ? "" : "  FAILED") << "\n";
    }
  };
  betas("flag", r.flag_betas);
  betas("full", r.full_betas);
  os << "  rank identity: " << (r.rank_identity ? "holds" : "fails") << "\n";
  for (const auto& n : r.notes)
    os << "  note: " << n << "\n";
  return os.str();
}

nlohmann::json to_json(const SSReport& r) {
  auto tri = [](Tridegree t) { return nlohmann::json::array({t.l, t.p, t.q}); };
  auto alphas = nlohmann::json::array();
  for (const auto& a : r.alphas) {
    auto targets = nlohmann::json::object();
    for (const auto& [s, labels] : a.targets)
      targets[std::to_string(s)] = labels;
    alphas.push_back({{"index", a.index},
                      {"tridegree", tri(a.degree)},
                      {"flag_pages", a.flag_pages},
                      {"full_pages", a.full_pages},
                      {"targets_agree", a.targets_agree},
                      {"targets", targets}});
  }
  auto betas = [](const std::vector<BetaFinding>& fs) {
    auto arr = nlohmann::json::array();
    for (const auto& f : fs)
      arr.push_back({{"index", f.index + 1},
                     {"bidegree", {f.degree.p, f.degree.q}},
                     {"tch", f.tch},
                     {"pages_with_targets", f.pages_with_targets},
                     {"obstruction", f.obstruction},
                     {"ok", f.ok}});
    return arr;
  };
  return {{"check", "ss"},
          {"signature", r.signature.entries()},
          {"max_weight", r.max_weight},
          {"alphas", alphas},
          {"flag_betas", betas(r.flag_betas)},
          {"full_betas", betas(r.full_betas)},
          {"rank_identity", r.rank_identity},
          {"notes", r.notes},
          {"passed", r.passed}};
}

std::string to_text(const RankReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " rank count for " << catalog::to_string(r.signature)
     << ", weight <= " << r.max_weight << "\n";
  os << "  M(A(sig))          : " << to_string(r.target) << "\n";
  os << "  Gr x A(prefix)     : " << to_string(r.product) << "\n";
  os << "  E_inf (collapsed)  : " << to_string(r.e_infinity) << "\n";
  if (!r.passed) {
    os << "  target - product   : " << to_string(r.target - r.product) << "\n";
    os << "  target - E_inf     : " << to_string(r.target - r.e_infinity) << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const RankReport& r) {
  return {{"check", "rank"},
          {"signature", r.signature.entries()},
          {"max_weight", r.max_weight},
          {"target", to_string(r.target)},
          {"product", to_string(r.product)},
          {"e_infinity", to_string(r.e_infinity)},
          {"diff_product", to_string(r.target - r.product)},
          {"diff_e_infinity", to_string(r.target - r.e_infinity)},
          {"passed", r.passed}};
}

}  // namespace tatecalc::spectral
