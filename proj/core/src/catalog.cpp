#include "tatecalc/catalog.hpp"

#include <functional>
#include <sstream>

namespace tatecalc::catalog {

Signature::Signature(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty())
    throw InvalidArgument("signature must have at least one entry");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0)
      throw InvalidArgument("signature entries must be nonnegative: " + to_string(*this));
    if (i > 0 && entries_[i - 1] >= entries_[i])
      throw InvalidArgument("signature must be strictly increasing (n_1 < ... < n_r): " + to_string(*this));
  }
}

Signature Signature::parse(const std::string& text) {
  std::vector<int> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("signature entry '" + item + "' is not an integer");
    }
    if (used != item.size())
      throw InvalidArgument("signature entry '" + item + "' is not an integer");
    entries.push_back(value);
  }
  if (!text.empty() && text.back() == ',')
    throw InvalidArgument("signature has a trailing comma: " + text);
  return Signature(std::move(entries));
}

Signature Signature::without_last() const {
  if (entries_.size() < 2)
    throw InvalidArgument("signature " + to_string(*this) + " has no proper prefix");
  return Signature(std::vector<int>(entries_.begin(), entries_.end() - 1));
}

Signature Signature::prepended(int m) const {
  std::vector<int> e{m};
  e.insert(e.end(), entries_.begin(), entries_.end());
  return Signature(std::move(e));
}

std::string to_string(const Signature& sig) {
  std::string s = "(";
  for (std::size_t i = 0; i < sig.entries().size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(sig.entries()[i]);
  }
  return s + ")";
}

std::vector<std::vector<int>> bounded_partitions(int m, int bound) {
  std::vector<std::vector<int>> out;
  if (m < 0 || bound < 0)
    return out;
  std::vector<int> current;
  std::function<void(int)> extend = [&](int low) {
    if (static_cast<int>(current.size()) == m) {
      out.push_back(current);
      return;
    }
    for (int v = low; v <= bound; ++v) {
      current.push_back(v);
      extend(v);
      current.pop_back();
    }
  };
  extend(0);
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok)
    throw InvalidArgument(what);
}

/// Adds d(I) for every increasing I in {lo..hi} with at least `min_len` entries.
void add_sequences(int lo, int hi, int min_len, TateMotive& out) {
  std::function<void(int, int, Bidegree)> walk = [&](int next, int len, Bidegree acc) {
    if (len >= min_len)
      out.add(acc);
    for (int i = next; i <= hi; ++i)
      walk(i + 1, len + 1, acc + Bidegree{2L * i - 1, i});
  };
  walk(lo, 0, {0, 0});
}

}  // namespace

TateMotive motive_gl(int n) {
  require(n >= 0, "motive_gl needs n >= 0");
  TateMotive out;
  add_sequences(1, n, 0, out);
  return out;
}

TateMotive motive_gr(int m, int n) {
  require(m >= 0 && m <= n, "motive_gr needs 0 <= m <= n, got m=" + std::to_string(m) +
                                " n=" + std::to_string(n));
  const int bound = n - m;
  std::vector<Count> by_size(static_cast<std::size_t>(m) * bound + 1);
  std::function<void(int, int, int)> walk = [&](int placed, int low, int sum) {
    if (placed == m) {
      by_size[static_cast<std::size_t>(sum)] += 1;
      return;
    }
    for (int v = low; v <= bound; ++v)
      walk(placed + 1, v, sum + v);
  };
  walk(0, 0, 0);
  TateMotive out;
  for (std::size_t size = 0; size < by_size.size(); ++size)
    if (by_size[size] > 0)
      out.add({2 * static_cast<long>(size), static_cast<long>(size)}, by_size[size]);
  return out;
}

TateMotive motive_fl(const Signature& sig) {
  TateMotive out = TateMotive::unit();
  for (std::size_t i = 0; i + 1 < sig.size(); ++i)
    out = tensor(out, motive_gr(sig[i], sig[i + 1]));
  return out;
}

TateMotive motive_v(int m, int n) {
  require(m >= 0 && m <= n, "motive_v needs 0 <= m <= n, got m=" + std::to_string(m) +
                                " n=" + std::to_string(n));
  TateMotive out;
  add_sequences(n - m + 1, n, 0, out);
  return out;
}

TateMotive motive_a(const Signature& sig) { return tensor(motive_gl(sig.front()), motive_fl(sig)); }

TateMotive reduced_motive_x(int m, const Signature& sig) {
  require(m >= 0 && m <= sig.front(), "reduced_motive_x needs 0 <= m <= n_1");
  TateMotive twists;
  add_sequences(1, sig.front(), m, twists);
  if (twists.empty())
    return {};
  return tensor(twists, motive_fl(sig));
}

std::vector<BijectionEntry> height_bijection(int m, int n1) {
  require(m >= 0 && m <= n1, "height_bijection needs 0 <= m <= n1");
  std::vector<BijectionEntry> out;
  for (auto& lambda : bounded_partitions(m, n1 - m)) {
    std::vector<int> seq(lambda.size());
    for (std::size_t j = 0; j < lambda.size(); ++j)
      seq[j] = lambda[j] + static_cast<int>(j) + 1;
    out.push_back({std::move(lambda), IndexSequence(std::move(seq))});
  }
  return out;
}

std::optional<Mismatch> first_mismatch(const TateMotive& expected, const TateMotive& actual) {
  auto e = expected.summands().begin();
  auto a = actual.summands().begin();
  const CanonicalOrder less;
  while (e != expected.summands().end() || a != actual.summands().end()) {
    if (a == actual.summands().end() || (e != expected.summands().end() && less(e->first, a->first)))
      return Mismatch{e->first, e->second, 0};
    if (e == expected.summands().end() || less(a->first, e->first))
      return Mismatch{a->first, 0, a->second};
    if (e->second != a->second)
      return Mismatch{e->first, e->second, a->second};
    ++e;
    ++a;
  }
  return std::nullopt;
}

SplittingReport verify_splitting(int n) {
  require(n >= 1, "verify_splitting needs n >= 1");
  SplittingReport r;
  r.n = n;
  const TateMotive lhs = cone_of_inclusion(TateMotive::unit(), motive_gl(n));
  r.reduced_rank = lhs.rank();
  TateMotive rhs;
  for (int m = 1; m <= n; ++m) {
    const auto piece = twist(motive_gr(m, n), bidegree_d(IndexSequence::range(1, m)));
    r.per_m.push_back(piece.rank());
    rhs = direct_sum(rhs, piece);
  }
  r.matched = rhs.rank();
  r.mismatch = first_mismatch(lhs, rhs);
  r.passed = !r.mismatch.has_value();
  return r;
}

namespace {

std::string describe(const Mismatch& m) {
  std::ostringstream os;
  os << "(" << m.degree.p << "," << m.degree.q << "): expected multiplicity " << m.expected
     << ", got " << m.actual;
  return os.str();
}

nlohmann::json mismatch_json(const std::optional<Mismatch>& m) {
  if (!m)
    return nullptr;
  return {{"p", m->degree.p},
          {"q", m->degree.q},
          {"expected", count_to_json(m->expected)},
          {"actual", count_to_json(m->actual)}};
}

}  // namespace

std::string to_text(const SplittingReport& r) {
  if (r.passed)
    return "PASS (" + r.matched.str() + " summands matched)";
  return "FAIL at " + describe(*r.mismatch);
}

nlohmann::json to_json(const SplittingReport& r) {
  auto per_m = nlohmann::json::array();
  for (std::size_t i = 0; i < r.per_m.size(); ++i)
    per_m.push_back({{"m", i + 1}, {"summands", count_to_json(r.per_m[i])}});
  return {{"check", "splitting"},
          {"n", r.n},
          {"reduced_summands", count_to_json(r.reduced_rank)},
          {"matched", count_to_json(r.matched)},
          {"per_m", per_m},
          {"first_mismatch", mismatch_json(r.mismatch)},
          {"passed", r.passed}};
}

BijectionReport check_bijection(const Signature& sig) {
  BijectionReport r{sig, {}, true};
  const TateMotive target = motive_a(sig);
  for (int m = 0; m < sig.front(); ++m) {
    const TateMotive source = motive_a(sig.prepended(m));
    const auto lhs = height_filter(source, m, HeightMode::eq);
    const auto rhs = height_filter(target, m, HeightMode::eq);

    bool degrees = true;
    const Bidegree base = bidegree_d(IndexSequence::range(1, m));
    for (const auto& entry : height_bijection(m, sig.front())) {
      long size = 0;
      for (int v : entry.partition)
        size += v;
      if (base + Bidegree{2 * size, size} != bidegree_d(entry.sequence))
        degrees = false;
    }

    BijectionReport::Level level{m, lhs.rank(), first_mismatch(lhs, rhs), degrees};
    r.passed = r.passed && !level.mismatch && degrees;
    r.levels.push_back(std::move(level));
  }
  return r;
}

std::string to_text(const BijectionReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " bijection for signature " << to_string(r.signature) << "\n";
  for (const auto& l : r.levels) {
    os << "  m=" << l.m << "  summands=" << l.summands;
    if (l.mismatch)
      os << "  mismatch " << describe(*l.mismatch);
    if (!l.bidegrees_match)
      os << "  bidegree map broken";
    os << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const BijectionReport& r) {
  auto levels = nlohmann::json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"m", l.m},
                      {"summands", count_to_json(l.summands)},
                      {"first_mismatch", mismatch_json(l.mismatch)},
                      {"bidegrees_match", l.bidegrees_match}});
  return {{"check", "bijection"},
          {"signature", r.signature.entries()},
          {"levels", levels},
          {"passed", r.passed}};
}

}  // namespace tatecalc::catalog
