#include "tatecalc/hopf.hpp"

#include <algorithm>
#include <cstdlib>

namespace tatecalc::hopf {

namespace {

long reduce(long value, unsigned eps) {
  if (eps == 0)
    return value;
  return std::labs(value) % 2;
}

struct NormalMonomial {
  std::vector<int> gens;
  Coefficient coeff;
};

void check_range(int i, const RingPresentation& ring) {
  if (!ring.in_range(i))
    throw IndexOutOfRange("generator index " + std::to_string(i) + " is outside " + ring.name() +
                          " (allowed " + std::to_string(ring.first_generator()) + ".." +
                          std::to_string(ring.last_generator()) + ")");
}

std::optional<NormalMonomial> normal_form(std::span<const int> word, Coefficient coeff,
                                          const RingPresentation& ring, RewriteStats* stats) {
  for (int i : word)
    check_range(i, ring);
  if (coeff.is_zero())
    return std::nullopt;

  std::vector<int> acc;
  acc.reserve(word.size());
  long value = coeff.value;
  unsigned eps = coeff.eps;

  for (int x : word) {
    int pending = x;
    for (;;) {
      // `pending` enters at the right end and moves left past every larger generator.
      auto upper = std::upper_bound(acc.begin(), acc.end(), pending);
      const auto passed = static_cast<std::size_t>(acc.end() - upper);
      if (passed % 2 == 1)
        value = -value;
      if (stats)
        stats->transpositions += passed;

      if (upper != acc.begin() && *(upper - 1) == pending) {
        acc.erase(upper - 1);
        if (stats)
          ++stats->square_rewrites;
        auto target = ring.square_target(pending);
        if (!target)
          return std::nullopt;
        ++eps;
        value = reduce(value, eps);
        if (value == 0)
          return std::nullopt;
        pending = *target;
        continue;
      }
      acc.insert(upper, pending);
      break;
    }
  }
  return NormalMonomial{std::move(acc), Coefficient(value, eps)};
}

std::vector<int> concat(const IndexSequence& a, const IndexSequence& b) {
  std::vector<int> w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

int parity(const IndexSequence& s) { return static_cast<int>(s.size() % 2); }

void render_coefficient_and_body(std::string& out, bool first, long value, unsigned eps,
                                 const std::string& body) {
  const bool negative = value < 0;
  const long mag = std::labs(value);
  if (first)
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";

  std::string prefix;
  if (mag != 1)
    prefix = std::to_string(mag);
  if (eps > 0) {
    if (!prefix.empty())
      prefix += "·";
    prefix += "ε";
    if (eps > 1)
      prefix += "^" + std::to_string(eps);
  }
  if (prefix.empty())
    out += body;
  else if (body == "1")
    out += prefix;
  else
    out += prefix + "·" + body;
}

std::string render_gens(const IndexSequence& gens, const std::string& symbol) {
  if (gens.empty())
    return "1";
  std::string s = symbol + "[";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(gens[i]);
  }
  return s + "]";
}

}  // namespace

Coefficient::Coefficient(long v, unsigned k) : value(reduce(v, k)), eps(k) {}

Bidegree bidegree(const BasisElement& e) {
  const long k = static_cast<long>(e.eps);
  return bidegree_d(e.gens) + Bidegree{k, k};
}

int degree_parity(const BasisElement& e) {
  return static_cast<int>((e.gens.size() + e.eps) % 2);
}

// FormalSum ------------------------------------------------------------------------

FormalSum::FormalSum(const Monomial& m) { add({m.coeff.eps, m.gens}, m.coeff.value); }

void FormalSum::add(const BasisElement& e, long coeff) {
  auto& slot = terms_[e];
  slot = reduce(slot + coeff, e.eps);
  if (slot == 0)
    terms_.erase(e);
}

long FormalSum::coefficient(const BasisElement& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
  for (const auto& [e, c] : o.terms_)
    add(e, c);
  return *this;
}

// RingPresentation -------------------------------------------------------------------

RingPresentation RingPresentation::general_linear(int n) {
  if (n < 0)
    throw InvalidArgument("GL_n needs n >= 0");
  return {RingKind::general_linear, n, n};
}

RingPresentation RingPresentation::stiefel(int m, int n) {
  if (m < 0 || m > n)
    throw InvalidArgument("V(m,n) needs 0 <= m <= n");
  return {RingKind::stiefel, m, n};
}

std::optional<int> RingPresentation::square_target(int i) const {
  if (2 * i - 1 > n_)
    return std::nullopt;
  return 2 * i - 1;
}

std::string RingPresentation::symbol() const {
  return kind_ == RingKind::general_linear ? "ρ" : "α";
}

std::string RingPresentation::name() const {
  if (kind_ == RingKind::general_linear)
    return "GL_" + std::to_string(n_);
  return "V(" + std::to_string(m_) + "," + std::to_string(n_) + ")";
}

std::vector<IndexSequence> RingPresentation::basis() const {
  std::vector<IndexSequence> out;
  const int lo = first_generator();
  for (const auto& seq : increasing_sequences(m_)) {
    std::vector<int> shifted;
    for (int i : seq)
      shifted.push_back(i + lo - 1);
    out.emplace_back(std::move(shifted));
  }
  std::sort(out.begin(), out.end(), [](const IndexSequence& a, const IndexSequence& b) {
    return BasisElement{0, a} < BasisElement{0, b};
  });
  return out;
}

// Multiplication -----------------------------------------------------------------------

FormalSum normalize_word(std::span<const int> word, Coefficient coeff, const RingPresentation& ring,
                         RewriteStats* stats) {
  FormalSum out;
  if (auto nf = normal_form(word, coeff, ring, stats))
    out.add({nf->coeff.eps, IndexSequence(std::move(nf->gens))}, nf->coeff.value);
  return out;
}

FormalSum multiply(const Monomial& x, const Monomial& y, const RingPresentation& ring,
                   RewriteStats* stats) {
  const auto word = concat(x.gens, y.gens);
  return normalize_word(word, x.coeff * y.coeff, ring, stats);
}

FormalSum multiply(const FormalSum& x, const FormalSum& y, const RingPresentation& ring) {
  FormalSum out;
  for (const auto& [ex, cx] : x.terms())
    for (const auto& [ey, cy] : y.terms())
      out += multiply(Monomial{ex.gens, {cx, ex.eps}}, Monomial{ey.gens, {cy, ey.eps}}, ring);
  return out;
}

// TensorSum ------------------------------------------------------------------------------

TensorSum TensorSum::unit(std::vector<RingPresentation> rings) {
  TensorSum t(std::move(rings));
  t.add({0, std::vector<IndexSequence>(t.arity())}, 1);
  return t;
}

long TensorSum::coefficient(const TensorBasis& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? 0 : it->second;
}

bool TensorSum::has_eps_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.eps > 0; });
}

void TensorSum::add(const TensorBasis& b, long coeff) {
  if (b.factors.size() != arity())
    throw InvalidArgument("tensor term arity does not match its rings");
  auto& slot = terms_[b];
  slot = reduce(slot + coeff, b.eps);
  if (slot == 0)
    terms_.erase(b);
}

TensorSum& TensorSum::operator+=(const TensorSum& o) {
  if (o.rings_ != rings_)
    throw InvalidArgument("cannot add tensors over different rings");
  for (const auto& [b, c] : o.terms_)
    add(b, c);
  return *this;
}

Bidegree bidegree(const TensorBasis& b) {
  const long k = static_cast<long>(b.eps);
  Bidegree total{k, k};
  for (const auto& f : b.factors)
    total = total + bidegree_d(f);
  return total;
}

TensorSum multiply(const TensorSum& x, const TensorSum& y) {
  if (x.rings() != y.rings())
    throw InvalidArgument("cannot multiply tensors over different rings");
  const std::size_t k = x.arity();
  TensorSum out(x.rings());
  for (const auto& [bx, cx] : x.terms()) {
    for (const auto& [by, cy] : y.terms()) {
      int sign_parity = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j)
          sign_parity ^= parity(bx.factors[i]) & parity(by.factors[j]);
      Coefficient c(sign_parity ? -cx * cy : cx * cy, bx.eps + by.eps);
      TensorBasis prod;
      bool vanished = false;
      for (std::size_t i = 0; i < k && !vanished; ++i) {
        const auto word = concat(bx.factors[i], by.factors[i]);
        auto nf = normal_form(word, Coefficient(1), x.rings()[i], nullptr);
        if (!nf) {
          vanished = true;
          break;
        }
        c = c * nf->coeff;
        prod.factors.emplace_back(std::move(nf->gens));
      }
      if (vanished || c.is_zero())
        continue;
      prod.eps = c.eps;
      out.add(prod, c.value);
    }
  }
  return out;
}

namespace {

TensorSum primitive_image(int i, int n) {
  const auto gl = RingPresentation::general_linear(n);
  TensorSum t({gl, gl});
  t.add({0, {IndexSequence{i}, IndexSequence{}}}, 1);
  t.add({0, {IndexSequence{}, IndexSequence{i}}}, 1);
  return t;
}

}  // namespace

TensorSum comultiply(const Monomial& x, int n) {
  const auto gl = RingPresentation::general_linear(n);
  for (int i : x.gens)
    check_range(i, gl);
  TensorSum result({gl, gl});
  result.add({x.coeff.eps, {IndexSequence{}, IndexSequence{}}}, x.coeff.value);
  for (int i : x.gens)
    result = multiply(result, primitive_image(i, n));
  return result;
}

TensorSum comultiply(const FormalSum& x, int n) {
  const auto gl = RingPresentation::general_linear(n);
  TensorSum out({gl, gl});
  for (const auto& [e, c] : x.terms())
    out += comultiply(Monomial{e.gens, {c, e.eps}}, n);
  return out;
}

Monomial antipode(const Monomial& x) {
  const long sign = x.gens.size() % 2 ? -1 : 1;
  return {x.gens, Coefficient(sign * x.coeff.value, x.coeff.eps)};
}

FormalSum antipode(const FormalSum& x) {
  FormalSum out;
  for (const auto& [e, c] : x.terms())
    out.add(e, e.gens.size() % 2 ? -c : c);
  return out;
}

TensorSum comultiply_factor(const TensorSum& x, std::size_t pos) {
  const auto& ring = x.rings().at(pos);
  if (ring.kind() != RingKind::general_linear)
    throw InvalidArgument("comultiplication needs a GL_n factor, got " + ring.name());
  std::vector<RingPresentation> rings = x.rings();
  rings.insert(rings.begin() + static_cast<long>(pos), ring);
  TensorSum out(rings);
  for (const auto& [b, c] : x.terms()) {
    const auto delta = comultiply(Monomial{b.factors[pos], {}}, ring.n());
    for (const auto& [db, dc] : delta.terms()) {
      TensorBasis nb;
      nb.factors.assign(b.factors.begin(), b.factors.begin() + static_cast<long>(pos));
      nb.factors.insert(nb.factors.end(), db.factors.begin(), db.factors.end());
      nb.factors.insert(nb.factors.end(), b.factors.begin() + static_cast<long>(pos) + 1, b.factors.end());
      Coefficient coeff = Coefficient(c, b.eps) * Coefficient(dc, db.eps);
      nb.eps = coeff.eps;
      out.add(nb, coeff.value);
    }
  }
  return out;
}

TensorSum antipode_factor(const TensorSum& x, std::size_t pos) {
  if (x.rings().at(pos).kind() != RingKind::general_linear)
    throw InvalidArgument("antipode needs a GL_n factor");
  TensorSum out(x.rings());
  for (const auto& [b, c] : x.terms())
    out.add(b, b.factors[pos].size() % 2 ? -c : c);
  return out;
}

TensorSum swap_factors(const TensorSum& x, std::size_t pos) {
  if (pos + 1 >= x.arity())
    throw InvalidArgument("swap position out of range");
  auto rings = x.rings();
  std::swap(rings[pos], rings[pos + 1]);
  TensorSum out(rings);
  for (const auto& [b, c] : x.terms()) {
    TensorBasis nb = b;
    std::swap(nb.factors[pos], nb.factors[pos + 1]);
    const bool odd = parity(b.factors[pos]) && parity(b.factors[pos + 1]);
    out.add(nb, odd ? -c : c);
  }
  return out;
}

TensorSum multiply_factors(const TensorSum& x, std::size_t pos) {
  if (pos + 1 >= x.arity())
    throw InvalidArgument("multiplication position out of range");
  if (x.rings()[pos] != x.rings()[pos + 1])
    throw InvalidArgument("cup product needs equal factor rings");
  auto rings = x.rings();
  rings.erase(rings.begin() + static_cast<long>(pos) + 1);
  TensorSum out(rings);
  for (const auto& [b, c] : x.terms()) {
    const auto word = concat(b.factors[pos], b.factors[pos + 1]);
    auto nf = normal_form(word, Coefficient(c, b.eps), x.rings()[pos], nullptr);
    if (!nf)
      continue;
    TensorBasis nb;
    nb.eps = nf->coeff.eps;
    for (std::size_t i = 0; i < b.factors.size(); ++i) {
      if (i == pos)
        nb.factors.emplace_back(std::move(nf->gens));
      else if (i != pos + 1)
        nb.factors.push_back(b.factors[i]);
    }
    out.add(nb, nf->coeff.value);
  }
  return out;
}

// Coactions -----------------------------------------------------------------------------

TensorSum apply_coaction(const CoactionFormula& f, const Monomial& x) {
  TensorSum result({f.group, f.module});
  result.add({x.coeff.eps, {IndexSequence{}, IndexSequence{}}}, x.coeff.value);
  for (int i : x.gens) {
    check_range(i, f.module);
    result = multiply(result, f.images.at(i));
  }
  return result;
}

bool preserves_bidegree(const CoactionFormula& f) {
  for (const auto& [i, image] : f.images) {
    const Bidegree source = bidegree_d(IndexSequence{i});
    for (const auto& [b, c] : image.terms())
      if (bidegree(b) != source)
        return false;
  }
  return true;
}

CoactionFormula trivial_coaction(int n) {
  const auto gl = RingPresentation::general_linear(n);
  CoactionFormula f{"trivial", gl, gl, {}};
  for (int i = 1; i <= n; ++i) {
    TensorSum t({gl, gl});
    t.add({0, {IndexSequence{}, IndexSequence{i}}}, 1);
    f.images.emplace(i, std::move(t));
  }
  return f;
}

std::vector<DerivationStep> adjoint_pullback(const Monomial& x, int n) {
  std::vector<DerivationStep> steps;
  steps.push_back({"m^*", comultiply(x, n)});
  steps.push_back({"(m×id)^*", comultiply_factor(steps.back().value, 0)});
  steps.push_back({"σ23^*", swap_factors(steps.back().value, 1)});
  steps.push_back({"(id×ι×id)^*", antipode_factor(steps.back().value, 1)});
  steps.push_back({"(Δ×id)^*", multiply_factors(steps.back().value, 0)});
  return steps;
}

AdjointDerivation derive_adjoint_coaction(int n) {
  if (n < 1)
    throw InvalidArgument("adjoint coaction needs n >= 1");
  const auto gl = RingPresentation::general_linear(n);
  AdjointDerivation d{{"adjoint", gl, gl, {}}, {}};
  for (int i = 1; i <= n; ++i) {
    auto steps = adjoint_pullback(Monomial::generator(i), n);
    d.formula.images.emplace(i, steps.back().value);
    d.steps.emplace(i, std::move(steps));
  }
  return d;
}

CoactionFormula stiefel_coaction(int m, int n) {
  if (m < 1 || m > n)
    throw InvalidArgument("Stiefel coaction needs 0 < m <= n");
  const auto group = RingPresentation::general_linear(m);
  const auto module = RingPresentation::stiefel(m, n);
  CoactionFormula f{"stiefel", group, module, {}};
  for (int i = module.first_generator(); i <= module.last_generator(); ++i) {
    TensorSum t({group, module});
    if (i <= m)
      t.add({0, {IndexSequence{i}, IndexSequence{}}}, 1);
    t.add({0, {IndexSequence{}, IndexSequence{i}}}, 1);
    f.images.emplace(i, std::move(t));
  }
  return f;
}

// Dual algebra ------------------------------------------------------------------------------

FormalSum DualAlgebra::product(const IndexSequence& a, const IndexSequence& b) const {
  auto it = products.find({a, b});
  return it == products.end() ? FormalSum{} : it->second;
}

DualAlgebra dual_algebra(int n, int max_word) {
  if (n < 1)
    throw InvalidArgument("dual algebra needs n >= 1");
  DualAlgebra d{n, max_word, {}, {}};
  for (const auto& k : RingPresentation::general_linear(n).basis()) {
    if (static_cast<int>(k.size()) > max_word)
      continue;
    d.basis.push_back(k);
    const TensorSum delta = comultiply(Monomial{k, {}}, n);
    for (const auto& [b, c] : delta.terms())
      d.products[{b.factors[0], b.factors[1]}].add({b.eps, k}, c);
  }
  std::erase_if(d.products, [](const auto& kv) { return kv.second.is_zero(); });
  return d;
}

namespace {

FormalSum dual_times_generator(const DualAlgebra& d, const FormalSum& x, int j) {
  FormalSum out;
  for (const auto& [e, c] : x.terms()) {
    const FormalSum prod = d.product(e.gens, IndexSequence{j});
    for (const auto& [pe, pc] : prod.terms()) {
      Coefficient coeff = Coefficient(c, e.eps) * Coefficient(pc, pe.eps);
      out.add({coeff.eps, pe.gens}, coeff.value);
    }
  }
  return out;
}

FormalSum dual_basis(const IndexSequence& k) {
  FormalSum s;
  s.add({0, k}, 1);
  return s;
}

}  // namespace

ExteriorCheck check_exterior(const DualAlgebra& d) {
  ExteriorCheck r;
  for (int i = 1; i <= d.n; ++i) {
    if (d.max_word >= 2 && !d.product(IndexSequence{i}, IndexSequence{i}).is_zero()) {
      r.squares_vanish = false;
      r.failures.push_back("dual square of generator " + std::to_string(i) + " is nonzero");
    }
    for (int j = i + 1; j <= d.n && d.max_word >= 2; ++j) {
      const auto ij = d.product(IndexSequence{i}, IndexSequence{j});
      const auto ji = d.product(IndexSequence{j}, IndexSequence{i});
      FormalSum sum = ij;
      sum += ji;
      if (ij.is_zero() || !sum.is_zero()) {
        r.anticommute = false;
        r.failures.push_back("dual generators " + std::to_string(i) + "," + std::to_string(j) +
                             " do not anticommute");
      }
    }
  }
  for (const auto& k : d.basis) {
    if (d.product(IndexSequence{}, k) != dual_basis(k) || d.product(k, IndexSequence{}) != dual_basis(k)) {
      r.unit = false;
      r.failures.push_back("dual of 1 is not a unit on " + to_string(k));
    }
    if (k.empty())
      continue;
    FormalSum acc = dual_basis(IndexSequence{k[0]});
    for (std::size_t t = 1; t < k.size(); ++t)
      acc = dual_times_generator(d, acc, k[t]);
    if (acc != dual_basis(k)) {
      r.generated = false;
      r.failures.push_back("ordered product of dual generators differs from dual basis element " +
                           to_string(k));
    }
  }
  return r;
}

// Rendering ----------------------------------------------------------------------------

std::string to_string(const FormalSum& x, const std::string& symbol) {
  if (x.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : x.terms()) {
    render_coefficient_and_body(out, first, c, e.eps, render_gens(e.gens, symbol));
    first = false;
  }
  return out;
}

std::string to_string(const TensorSum& x) {
  if (x.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : x.terms()) {
    std::string body;
    for (std::size_t i = 0; i < b.factors.size(); ++i) {
      if (i)
        body += "⊗";
      body += render_gens(b.factors[i], x.rings()[i].symbol());
    }
    render_coefficient_and_body(out, first, c, b.eps, body);
    first = false;
  }
  return out;
}

nlohmann::json to_json(const FormalSum& x) {
  auto arr = nlohmann::json::array();
  for (const auto& [e, c] : x.terms())
    arr.push_back({{"coeff", c}, {"eps", e.eps}, {"gens", e.gens.indices()}});
  return arr;
}

nlohmann::json to_json(const TensorSum& x) {
  auto rings = nlohmann::json::array();
  for (const auto& r : x.rings())
    rings.push_back(r.name());
  auto terms = nlohmann::json::array();
  for (const auto& [b, c] : x.terms()) {
    auto factors = nlohmann::json::array();
    for (const auto& f : b.factors)
      factors.push_back(f.indices());
    terms.push_back({{"coeff", c}, {"eps", b.eps}, {"factors", factors}});
  }
  return {{"rings", rings}, {"terms", terms}, {"text", to_string(x)}};
}

nlohmann::json to_json(const CoactionFormula& f) {
  auto images = nlohmann::json::array();
  for (const auto& [i, t] : f.images)
    images.push_back({{"generator", i}, {"image", to_json(t)}});
  return {{"name", f.name}, {"group", f.group.name()}, {"module", f.module.name()}, {"images", images}};
}

nlohmann::json to_json(const DualAlgebra& d) {
  auto products = nlohmann::json::array();
  for (const auto& [key, value] : d.products)
    products.push_back({{"left", key.first.indices()}, {"right", key.second.indices()}, {"value", to_json(value)}});
  return {{"n", d.n}, {"max_word", d.max_word}, {"products", products}};
}

}  // namespace tatecalc::hopf
