#include "tatecalc/realization.hpp"

#include <sstream>

namespace tatecalc::realization {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok)
    throw InvalidArgument(what);
}

void bump(RankTable& r, long degree, const Count& by) {
  if (by == 0)
    return;
  auto& slot = r[degree];
  slot += by;
  if (slot == 0)
    r.erase(degree);
}

}  // namespace

RankTable unitary_word_length_ranks(int n, int m) {
  require(m >= 0 && m <= n, "unitary_word_length_ranks needs 0 <= m <= n");
  // by_len[k] holds the degree table of words of length k in the first i generators
  std::vector<RankTable> by_len(static_cast<std::size_t>(m) + 1);
  by_len[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = std::min(i, m); k >= 1; --k)
      for (const auto& [deg, c] : by_len[static_cast<std::size_t>(k - 1)])
        bump(by_len[static_cast<std::size_t>(k)], deg + 2L * i - 1, c);
  return by_len[static_cast<std::size_t>(m)];
}

RankTable grassmannian_betti(int m, int n) {
  require(m >= 0 && m <= n, "grassmannian_betti needs 0 <= m <= n");
  const int box = n - m;
  // ways[v][N]: weakly increasing tuples of the current length ending at v with sum N
  std::vector<std::map<long, Count>> ways(static_cast<std::size_t>(box) + 1);
  if (m == 0)
    return {{0, 1}};
  for (int v = 0; v <= box; ++v)
    ways[static_cast<std::size_t>(v)][v] = 1;
  for (int len = 2; len <= m; ++len) {
    std::vector<std::map<long, Count>> next(ways.size());
    std::map<long, Count> prefix;  // sum over last <= v
    for (int v = 0; v <= box; ++v) {
      for (const auto& [s, c] : ways[static_cast<std::size_t>(v)])
        prefix[s] += c;
      for (const auto& [s, c] : prefix)
        next[static_cast<std::size_t>(v)][s + v] += c;
    }
    ways = std::move(next);
  }
  RankTable out;
  for (const auto& w : ways)
    for (const auto& [s, c] : w)
      bump(out, 2 * s, c);
  return out;
}

RankTable realize_motive(const TateMotive& a) {
  RankTable out;
  for (const auto& [b, mult] : a.summands())
    bump(out, b.p, mult);
  return out;
}

RankTable convolution(const RankTable& a, const RankTable& b) {
  RankTable out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b)
      bump(out, da + db, ca * cb);
  return out;
}

RankTable shifted(const RankTable& a, long by) {
  RankTable out;
  for (const auto& [d, c] : a)
    out[d + by] = c;
  return out;
}

ThomReport thom_decomposition_check(int n) {
  require(n >= 1, "thom_decomposition_check needs n >= 1");
  ThomReport r{n, {}, true};
  for (int m = 0; m <= n; ++m) {
    ThomLevel level;
    level.m = m;
    level.word_length = unitary_word_length_ranks(n, m);
    level.thom = shifted(grassmannian_betti(m, n), static_cast<long>(m) * m);
    level.equal = level.word_length == level.thom;
    r.passed = r.passed && level.equal;
    r.levels.push_back(std::move(level));
  }
  return r;
}

QSeriesReport qseries_splitting_check(int n) {
  require(n >= 0, "qseries_splitting_check needs n >= 0");
  QSeriesReport r;
  r.n = n;
  r.product = Poly2::constant(1);
  for (int i = 1; i <= n; ++i) {
    Poly2 factor = Poly2::constant(1);
    factor.add_term({2L * i - 1, i}, 1);
    r.product = r.product * factor;
  }

  // Gaussian binomials in x = t^2 u by the q-Pascal rule
  // G(m, k) = G(m-1, k-1) + x^m G(m, k-1), coefficient vectors indexed by the power of x.
  using Series = std::vector<Count>;
  std::vector<Series> row(static_cast<std::size_t>(n) + 1);  // row[m] = G(m, k) for current k
  row[0] = {1};
  for (int k = 1; k <= n; ++k) {
    for (int m = k; m >= 1; --m) {
      Series next = row[static_cast<std::size_t>(m - 1)];
      const Series& same = row[static_cast<std::size_t>(m)];
      if (next.size() < same.size() + static_cast<std::size_t>(m))
        next.resize(same.size() + static_cast<std::size_t>(m));
      for (std::size_t e = 0; e < same.size(); ++e)
        next[e + static_cast<std::size_t>(m)] += same[e];
      row[static_cast<std::size_t>(m)] = std::move(next);
    }
  }
  for (int m = 0; m <= n; ++m) {
    const long shift_p = static_cast<long>(m) * m;
    const long shift_q = static_cast<long>(m) * (m + 1) / 2;
    const Series& g = row[static_cast<std::size_t>(m)];
    for (std::size_t e = 0; e < g.size(); ++e)
      if (g[e] != 0)
        r.sum.add_term({shift_p + 2 * static_cast<long>(e), shift_q + static_cast<long>(e)}, g[e]);
  }
  r.passed = r.product == r.sum;
  return r;
}

std::string to_string(const RankTable& r) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [d, c] : r) {
    os << (first ? "" : ", ") << d << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

nlohmann::json to_json(const RankTable& r) {
  auto obj = nlohmann::json::object();
  // keys sort lexicographically in nlohmann::json, so emit an ordered array
  auto arr = nlohmann::json::array();
  for (const auto& [d, c] : r)
    arr.push_back({{"degree", d}, {"rank", count_to_json(c)}});
  obj["ranks"] = arr;
  return obj;
}

RankTable rank_table_from_json(const nlohmann::json& j) {
  RankTable out;
  for (const auto& e : j.at("ranks")) {
    Count c = count_from_json(e.at("rank"));
    if (c <= 0)
      throw InvalidArgument("rank table entries must be positive");
    out[e.at("degree").get<long>()] = c;
  }
  return out;
}

std::string to_text(const ThomReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " word length vs Thom-shifted Grassmannians, n=" << r.n << "\n";
  for (const auto& l : r.levels) {
    os << "  m=" << l.m << "  " << to_string(l.word_length);
    if (!l.equal)
      os << "  != " << to_string(l.thom);
    os << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const ThomReport& r) {
  auto levels = nlohmann::json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"m", l.m},
                      {"word_length", to_json(l.word_length)},
                      {"thom", to_json(l.thom)},
                      {"equal", l.equal}});
  return {{"check", "thom"}, {"n", r.n}, {"levels", levels}, {"passed", r.passed}};
}

std::string to_text(const QSeriesReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " q-series splitting, n=" << r.n << " (" << r.product.terms().size()
     << " terms)";
  if (!r.passed)
    os << "\n  difference: " << to_string(r.product - r.sum);
  return os.str();
}

nlohmann::json to_json(const QSeriesReport& r) {
  return {{"check", "qseries"},
          {"n", r.n},
          {"terms", r.product.terms().size()},
          {"difference", to_string(r.product - r.sum)},
          {"passed", r.passed}};
}

}  // namespace tatecalc::realization
